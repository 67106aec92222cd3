use crate::error::{Error, Result};
use crate::exactla::{Fp, Matrix, Span};

use super::{hom_basis, HomSpace, Rep, RepMap};

/// Largest `p^dim End` for which idempotents are searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Radical of the trace form of the regular representation; needs `p > dim End`.
    TraceForm,
    /// Small fields: idempotents (and the radical, when feasible) by enumeration.
    Exhaustive,
}

/// The endomorphism algebra of a module, with its multiplication table and radical.
#[derive(Clone, Debug)]
pub struct EndAnalysis {
    hom: HomSpace,
    // table[i][j] = coordinates of basis[i] ∘ basis[j]
    table: Vec<Vec<Vec<u32>>>,
    one: Vec<u32>,
    radical: Option<Span>,
    method: RadicalMethod,
    indecomposable: bool,
    splitting_idempotent: Option<Vec<u32>>,
}

fn pow_fits(p: u32, d: usize, limit: u64) -> bool {
    let mut acc = 1u64;
    for _ in 0..d {
        acc = acc.saturating_mul(p as u64);
        if acc > limit {
            return false;
        }
    }
    true
}

impl EndAnalysis {
    pub fn new(m: &Rep) -> Result<EndAnalysis> {
        if m.is_zero() {
            return Err(Error::ZeroModule);
        }
        let fp = m.field();
        let hom = hom_basis(m, m)?;
        let d = hom.dim();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = hom.basis()[i].compose(&hom.basis()[j]);
                table[i][j] = hom.coords(&prod).expect("End is closed under composition");
            }
        }
        let one = hom.coords(&m.identity()).expect("identity is an endomorphism");
        let mut an = EndAnalysis {
            hom,
            table,
            one,
            radical: None,
            method: RadicalMethod::TraceForm,
            indecomposable: false,
            splitting_idempotent: None,
        };
        if (fp.p() as usize) > d {
            an.radical = Some(an.trace_radical());
            an.indecomposable = an.local_by_frobenius();
        } else if pow_fits(fp.p(), d, EXHAUSTIVE_LIMIT) {
            an.method = RadicalMethod::Exhaustive;
            an.splitting_idempotent = an.find_idempotent();
            an.indecomposable = an.splitting_idempotent.is_none();
            if pow_fits(fp.p(), 2 * d, 1 << 20) {
                an.radical = Some(an.exhaustive_radical());
            }
        } else {
            return Err(Error::PrimeTooSmall { p: fp.p(), dim: d });
        }
        Ok(an)
    }

    pub fn field(&self) -> Fp {
        self.hom.source().field()
    }

    pub fn module(&self) -> &Rep {
        self.hom.source()
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn method(&self) -> RadicalMethod {
        self.method
    }

    pub fn is_indecomposable(&self) -> bool {
        self.indecomposable
    }

    pub fn one(&self) -> &[u32] {
        &self.one
    }

    /// Nontrivial idempotent found by the exhaustive search, if any.
    pub fn splitting_idempotent(&self) -> Option<&[u32]> {
        self.splitting_idempotent.as_deref()
    }

    /// `x ∘ y` in coordinates.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let fp = self.field();
        let d = self.dim();
        let mut out = vec![0u32; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = fp.mul(a, b);
                for (k, &c) in self.table[i][j].iter().enumerate() {
                    if c != 0 {
                        out[k] = fp.mul_add(out[k], ab, c);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[u32], mut e: u64) -> Vec<u32> {
        let mut r = self.one.clone();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn to_map(&self, coords: &[u32]) -> RepMap {
        self.hom.combination(coords)
    }

    pub fn coords(&self, f: &RepMap) -> Option<Vec<u32>> {
        self.hom.coords(f)
    }

    /// Radical as a subspace of coordinates.
    pub fn radical(&self) -> Result<&Span> {
        self.radical.as_ref().ok_or(Error::PrimeTooSmall {
            p: self.field().p(),
            dim: self.dim(),
        })
    }

    pub fn radical_maps(&self) -> Result<Vec<RepMap>> {
        Ok(self.radical()?.basis().iter().map(|c| self.to_map(c)).collect())
    }

    pub fn in_radical(&self, f: &RepMap) -> Result<bool> {
        let c = self.coords(f).expect("endomorphism of this module");
        Ok(self.radical()?.contains(&c))
    }

    fn left_regular(&self, x: &[u32]) -> Matrix {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut e = vec![0u32; d];
            e[j] = 1;
            cols.push(self.mul(x, &e));
        }
        Matrix::from_columns(self.field(), d, &cols)
    }

    fn trace_radical(&self) -> Span {
        let fp = self.field();
        let d = self.dim();
        // trace of left multiplication by each basis element
        let t: Vec<u32> = (0..d)
            .map(|k| (0..d).fold(0u32, |acc, m| fp.add(acc, self.table[k][m][m])))
            .collect();
        let gram = Matrix::from_fn(fp, d, d, |i, j| {
            self.table[i][j]
                .iter()
                .zip(&t)
                .fold(0u32, |acc, (&c, &tk)| fp.mul_add(acc, c, tk))
        });
        let ker = gram.kernel_basis();
        Span::from_vectors(fp, d, &ker.columns())
    }

    /// `E/rad` is a product of fields exactly once, and Frobenius fixes a line.
    fn local_by_frobenius(&self) -> bool {
        let fp = self.field();
        let d = self.dim();
        let rad = self.radical.as_ref().expect("radical computed");
        let free: Vec<usize> = (0..d).filter(|i| !rad.pivots().contains(i)).collect();
        let q = free.len();
        if q == 1 {
            return true;
        }
        let unit = |i: usize| {
            let mut e = vec![0u32; d];
            e[free[i]] = 1;
            e
        };
        for i in 0..q {
            for j in (i + 1)..q {
                let (a, b) = (unit(i), unit(j));
                let ab = self.mul(&a, &b);
                let ba = self.mul(&b, &a);
                let diff: Vec<u32> = ab.iter().zip(&ba).map(|(&x, &y)| fp.sub(x, y)).collect();
                if !rad.contains(&diff) {
                    return false;
                }
            }
        }
        let frob = Matrix::from_fn(fp, q, q, |r, c| {
            let img = rad.reduce(&self.pow(&unit(c), fp.p() as u64));
            img[free[r]]
        });
        let fixed = frob.sub(&Matrix::identity(fp, q)).kernel_basis().cols();
        fixed == 1
    }

    fn for_each_element(&self, mut f: impl FnMut(&[u32]) -> bool) {
        let p = self.field().p();
        let d = self.dim();
        let mut x = vec![0u32; d];
        loop {
            if f(&x) {
                return;
            }
            let mut i = 0;
            loop {
                if i == d {
                    return;
                }
                x[i] += 1;
                if x[i] == p {
                    x[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    fn find_idempotent(&self) -> Option<Vec<u32>> {
        let mut found = None;
        let zero = vec![0u32; self.dim()];
        self.for_each_element(|x| {
            if x != zero.as_slice() && x != self.one.as_slice() && self.mul(x, x) == x {
                found = Some(x.to_vec());
                true
            } else {
                false
            }
        });
        found
    }

    fn is_nilpotent(&self, x: &[u32]) -> bool {
        let l = self.left_regular(x);
        l.pow(self.dim().max(1) as u64).is_zero()
    }

    /// `x ∈ rad E` iff `y x` is nilpotent for every `y`.
    fn exhaustive_radical(&self) -> Span {
        let fp = self.field();
        let d = self.dim();
        let mut nil = Vec::new();
        self.for_each_element(|x| {
            if self.is_nilpotent(x) {
                nil.push(x.to_vec());
            }
            false
        });
        let mut rad = Span::zero(fp, d);
        for x in &nil {
            if rad.contains(x) {
                continue;
            }
            let mut ok = true;
            self.for_each_element(|y| {
                if !self.is_nilpotent(&self.mul(y, x)) {
                    ok = false;
                    return true;
                }
                false
            });
            if ok {
                rad.insert(x);
            }
        }
        rad
    }
}

/// Whether a nonzero module is indecomposable (its endomorphism ring is local).
pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(EndAnalysis::new(m)?.is_indecomposable())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::Fp;
    use crate::homological::proj;
    use crate::rep::direct_sum;

    #[test]
    fn indecomposability_examples() {
        let a2 = corpus::a2();
        assert!(is_indecomposable(&proj(&a2, 0).unwrap()).unwrap());
        let s1 = Rep::simple(&a2, 0);
        let (ss, _, _) = direct_sum(&a2, &[s1.clone(), s1.clone()]).unwrap();
        assert!(!is_indecomposable(&ss).unwrap());
        assert!(!is_indecomposable(&Rep::zero(&a2)).unwrap());
        let an = EndAnalysis::new(&ss).unwrap();
        assert_eq!(an.dim(), 4);
        assert_eq!(an.radical().unwrap().dim(), 0);
    }

    #[test]
    fn radical_of_local_endomorphisms() {
        let lp = corpus::loop_x2();
        let free = proj(&lp, 0).unwrap();
        let an = EndAnalysis::new(&free).unwrap();
        assert_eq!(an.dim(), 2);
        assert_eq!(an.radical().unwrap().dim(), 1);
        assert!(an.is_indecomposable());
    }

    #[test]
    fn small_field_uses_enumeration() {
        let a2 = corpus::a2_over(Fp::new(2).unwrap());
        let s1 = Rep::simple(&a2, 0);
        let (ss, _, _) = direct_sum(&a2, &[s1.clone(), s1]).unwrap();
        let an = EndAnalysis::new(&ss).unwrap();
        assert_eq!(an.method(), RadicalMethod::Exhaustive);
        assert!(!an.is_indecomposable());
        assert!(an.splitting_idempotent().is_some());
        assert_eq!(an.radical().unwrap().dim(), 0);
        let p1 = proj(&a2, 0).unwrap();
        assert!(is_indecomposable(&p1).unwrap());
    }
}
