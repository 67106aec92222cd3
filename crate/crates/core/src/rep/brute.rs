//! Exhaustive classification of small modules over `F_2`, used as an oracle.

use std::sync::Arc;

use crate::algebra::{Algebra, Relation};
use crate::error::{Error, Result};
use crate::exactla::{Fp, Matrix};

use super::{hom_basis, Rep};

/// Largest total dimension accepted by [`brute_indec_classes`].
pub const BRUTE_TOTAL_DIM_CAP: usize = 5;
const MAX_BITS: usize = 20;
const MAX_VERTEX_DIM: usize = 4;

/// The same quiver and relations over `F_2` (coefficients read as signed integers).
pub fn over_f2(alg: &Algebra) -> Result<Arc<Algebra>> {
    let fp = alg.field();
    let f2 = Fp::new(2)?;
    let rels = alg
        .relations()
        .iter()
        .filter_map(|r| {
            let terms: Vec<(u32, Vec<usize>)> = r
                .terms
                .iter()
                .filter(|(c, _)| fp.signed(*c).rem_euclid(2) == 1)
                .map(|(_, p)| (1, p.clone()))
                .collect();
            (!terms.is_empty()).then_some(Relation { terms })
        })
        .collect();
    Algebra::new(f2, alg.quiver().clone(), rels)
}

fn general_linear(n: usize) -> Vec<(Matrix, Matrix)> {
    let f2 = Fp::new(2).unwrap();
    let mut out = Vec::new();
    for code in 0u32..(1u32 << (n * n)) {
        let m = Matrix::from_fn(f2, n, n, |r, c| (code >> (r * n + c)) & 1);
        if let Some(inv) = m.inverse() {
            out.push((m, inv));
        }
    }
    out
}

fn decode(alg: &Arc<Algebra>, dims: &[usize], code: u64) -> Vec<Matrix> {
    let fp = alg.field();
    let mut bit = 0;
    alg.arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let m = Matrix::from_fn(fp, r, c, |i, j| ((code >> (bit + i * c + j)) & 1) as u32);
            bit += r * c;
            m
        })
        .collect()
}

fn encode(maps: &[Matrix]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for m in maps {
        for (k, &x) in m.data().iter().enumerate() {
            code |= (x as u64) << (bit + k);
        }
        bit += m.data().len();
    }
    code
}

/// Indecomposability by searching all of `End(M)` for a nontrivial idempotent.
pub fn is_indecomposable_exhaustive(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let h = hom_basis(m, m)?;
    let p = m.field().p() as u64;
    let d = h.dim();
    let total = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&x| x <= 1 << 20));
    let total = total.ok_or(Error::CapExceeded(format!("End has {}^{} elements", p, d)))?;
    let id = m.identity();
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(d);
        let mut c = code;
        for _ in 0..d {
            coeffs.push((c % p) as u32);
            c /= p;
        }
        let e = h.combination(&coeffs);
        if e.is_zero() || e == id {
            continue;
        }
        if e.compose(&e) == e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Representatives of all isomorphism classes of indecomposable modules over `F_2`
/// with the given dimension vector, by orbit enumeration under `∏ GL(d_v, F_2)`.
pub fn brute_indec_classes(alg: &Algebra, dims: &[usize]) -> Result<Vec<Rep>> {
    if dims.len() != alg.vertices() {
        return Err(Error::DimensionMismatch("dimension vector length".into()));
    }
    let total: usize = dims.iter().sum();
    if total > BRUTE_TOTAL_DIM_CAP || dims.iter().any(|&d| d > MAX_VERTEX_DIM) {
        return Err(Error::CapExceeded(format!(
            "brute force needs total dimension <= {} and vertex dimension <= {}",
            BRUTE_TOTAL_DIM_CAP, MAX_VERTEX_DIM
        )));
    }
    let alg2 = over_f2(alg)?;
    let bits: usize = alg2.arrows().iter().map(|a| dims[a.target] * dims[a.source]).sum();
    if bits > MAX_BITS {
        return Err(Error::CapExceeded(format!("{} matrix entries to enumerate", bits)));
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let gl: Vec<Vec<(Matrix, Matrix)>> = dims.iter().map(|&d| general_linear(d)).collect();
    let mut group: Vec<Vec<usize>> = vec![Vec::new()];
    for g in &gl {
        group = group
            .into_iter()
            .flat_map(|prefix| {
                (0..g.len()).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    let mut seen = vec![false; 1usize << bits];
    let mut out = Vec::new();
    for code in 0..(1u64 << bits) {
        if seen[code as usize] {
            continue;
        }
        let maps = decode(&alg2, dims, code);
        let rep = match Rep::new(alg2.clone(), dims.to_vec(), maps.clone()) {
            Ok(r) => r,
            Err(Error::RelationViolated(_)) => {
                seen[code as usize] = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        for g in &group {
            let moved: Vec<Matrix> = alg2
                .arrows()
                .iter()
                .zip(&maps)
                .map(|(a, m)| gl[a.target][g[a.target]].0.mul(m).mul(&gl[a.source][g[a.source]].1))
                .collect();
            seen[encode(&moved) as usize] = true;
        }
        if is_indecomposable_exhaustive(&rep)? {
            out.push(rep);
        }
    }
    Ok(out)
}
