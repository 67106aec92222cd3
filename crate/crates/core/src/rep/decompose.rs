use rand::Rng as _;

use crate::error::{Error, Result};
use crate::exactla::{minimal_polynomial, Matrix};

use super::{combine, hom_basis, submodule, EndAnalysis, Rep, RepMap, Rng};

const RANDOM_TRIES: usize = 200;
const ISO_RANDOM_TRIES: usize = 64;

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Rep,
    pub incl: RepMap,
    pub proj: RepMap,
}

/// A Krull–Schmidt decomposition `M = ⊕ X_i` with `Σ incl_i ∘ proj_i = id`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: Rep,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Isomorphism classes of summands: representative, multiplicity, summand indices.
    pub fn grouped(&self) -> Vec<(Rep, usize, Vec<usize>)> {
        let mut groups: Vec<(Rep, usize, Vec<usize>)> = Vec::new();
        for (i, s) in self.summands.iter().enumerate() {
            match groups.iter_mut().find(|g| iso_indecomposable(&g.0, &s.module).is_some()) {
                Some(g) => {
                    g.1 += 1;
                    g.2.push(i);
                }
                None => groups.push((s.module.clone(), 1, vec![i])),
            }
        }
        groups
    }
}

fn split_along(m: &Rep, h: &[Matrix]) -> (Summand, Summand) {
    let kb: Vec<Matrix> = h.iter().map(|c| c.kernel_basis()).collect();
    let ib: Vec<Matrix> = h.iter().map(|c| c.column_basis()).collect();
    let mut pk = Vec::new();
    let mut pi = Vec::new();
    for (k, i) in kb.iter().zip(&ib) {
        let inv = k.hstack(i).inverse().expect("kernel and image of a Fitting power are complementary");
        pk.push(inv.block(0, 0, k.cols(), inv.cols()));
        pi.push(inv.block(k.cols(), 0, i.cols(), inv.cols()));
    }
    let (km, kincl) = submodule(m, kb);
    let (im, iincl) = submodule(m, ib);
    let kproj = RepMap::new_unchecked(m.clone(), km.clone(), pk);
    let iproj = RepMap::new_unchecked(m.clone(), im.clone(), pi);
    (
        Summand { module: km, incl: kincl, proj: kproj },
        Summand { module: im, incl: iincl, proj: iproj },
    )
}

/// Vertexwise `g(f)^D` for the first irreducible factor `g` of the minimal polynomial of `f`,
/// provided that polynomial has at least two distinct irreducible factors.
fn fitting_power(f: &RepMap, rng: &mut Rng) -> Option<Vec<Matrix>> {
    let mu = minimal_polynomial(&f.total_matrix());
    let factors = mu.factor(rng);
    if factors.len() < 2 {
        return None;
    }
    let g = &factors[0].0;
    let d = f.source().total_dim() as u64;
    Some(f.comps().iter().map(|c| g.eval_matrix(c).pow(d)).collect())
}

fn split(an: &EndAnalysis, rng: &mut Rng) -> Result<(Summand, Summand)> {
    let m = an.module();
    if let Some(e) = an.splitting_idempotent() {
        let em = an.to_map(e);
        return Ok(split_along(m, em.comps()));
    }
    let basis = an.hom().basis();
    for f in basis {
        if let Some(h) = fitting_power(f, rng) {
            return Ok(split_along(m, &h));
        }
    }
    let p = m.field().p();
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
        let f = combine(m, m, basis, &coeffs);
        if let Some(h) = fitting_power(&f, rng) {
            return Ok(split_along(m, &h));
        }
    }
    Err(Error::ConstructionFailed("no splitting endomorphism found".into()))
}

/// Decomposes a module into indecomposable summands.
pub fn decompose(m: &Rep, rng: &mut Rng) -> Result<Decomposition> {
    let mut summands = Vec::new();
    if !m.is_zero() {
        decompose_into(m, &m.identity(), &m.identity(), rng, &mut summands)?;
    }
    Ok(Decomposition {
        module: m.clone(),
        summands,
    })
}

fn decompose_into(
    x: &Rep,
    incl: &RepMap,
    proj: &RepMap,
    rng: &mut Rng,
    out: &mut Vec<Summand>,
) -> Result<()> {
    let an = EndAnalysis::new(x)?;
    if an.is_indecomposable() {
        out.push(Summand {
            module: x.clone(),
            incl: incl.clone(),
            proj: proj.clone(),
        });
        return Ok(());
    }
    let (a, b) = split(&an, rng)?;
    for s in [a, b] {
        decompose_into(&s.module, &incl.compose(&s.incl), &s.proj.compose(proj), rng, out)?;
    }
    Ok(())
}

/// Isomorphism between indecomposables: non-isomorphisms form the radical, a proper subspace,
/// so some basis element of `Hom` is invertible when one exists.
pub(crate) fn iso_indecomposable(x: &Rep, y: &Rep) -> Option<RepMap> {
    if x.dims() != y.dims() {
        return None;
    }
    let h = hom_basis(x, y).ok()?;
    h.basis().iter().find(|f| f.is_iso()).cloned()
}

/// An isomorphism `M -> N`, or `None` when the modules are not isomorphic.
pub fn iso(m: &Rep, n: &Rep, rng: &mut Rng) -> Result<Option<RepMap>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(m.zero_map_to(n)));
    }
    let h = hom_basis(m, n)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    if let Some(f) = h.basis().iter().find(|f| f.is_iso()) {
        return Ok(Some(f.clone()));
    }
    let p = m.field().p();
    for _ in 0..ISO_RANDOM_TRIES {
        let coeffs: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
        let f = h.combination(&coeffs);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    // exact fallback: match indecomposable summands
    let dm = decompose(m, rng)?;
    let dn = decompose(n, rng)?;
    if dm.len() != dn.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.len()];
    let mut total = m.zero_map_to(n);
    for sm in &dm.summands {
        let mut matched = false;
        for (j, sn) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = iso_indecomposable(&sm.module, &sn.module) {
                used[j] = true;
                total = total.add(&sn.incl.compose(&phi.compose(&sm.proj)));
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    debug_assert!(total.is_iso());
    Ok(Some(total))
}

/// Whether `x` is isomorphic to a direct summand of `m`.
pub fn is_summand_of(x: &Rep, m: &Rep, rng: &mut Rng) -> Result<bool> {
    let dx = decompose(x, rng)?;
    let dm = decompose(m, rng)?;
    let mut used = vec![false; dm.len()];
    for sx in &dx.summands {
        let hit = dm
            .summands
            .iter()
            .enumerate()
            .find(|(j, sm)| !used[*j] && iso_indecomposable(&sx.module, &sm.module).is_some());
        match hit {
            Some((j, _)) => used[j] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::Fp;
    use crate::homological::proj;
    use crate::rep::{direct_sum, seeded, sum_maps};

    fn check_decomposition(d: &Decomposition) {
        let m = &d.module;
        let parts: Vec<RepMap> = d.summands.iter().map(|s| s.incl.compose(&s.proj)).collect();
        assert!(sum_maps(m, m, &parts).comps().iter().all(|c| c.is_identity()));
        for (i, a) in d.summands.iter().enumerate() {
            for (j, b) in d.summands.iter().enumerate() {
                let c = b.proj.compose(&a.incl);
                if i == j {
                    assert!(c.comps().iter().all(|x| x.is_identity()));
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let a2 = corpus::a2();
        let mut rng = seeded(3);
        let s1 = Rep::simple(&a2, 0);
        let (ss, _, _) = direct_sum(&a2, &[s1.clone(), s1.clone()]).unwrap();
        let d = decompose(&ss, &mut rng).unwrap();
        check_decomposition(&d);
        let g = d.grouped();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].1, 2);
        assert_eq!(g[0].0, s1);
        let p1 = proj(&a2, 0).unwrap();
        let d = decompose(&p1, &mut rng).unwrap();
        assert_eq!(d.len(), 1);
        assert!(decompose(&Rep::zero(&a2), &mut rng).unwrap().is_empty());
    }

    #[test]
    fn decompose_mixed_sum() {
        let a3 = corpus::a3();
        let mut rng = seeded(5);
        let parts = vec![
            proj(&a3, 0).unwrap(),
            Rep::simple(&a3, 1),
            proj(&a3, 1).unwrap(),
            Rep::simple(&a3, 1),
        ];
        let (m, _, _) = direct_sum(&a3, &parts).unwrap();
        let d = decompose(&m, &mut rng).unwrap();
        check_decomposition(&d);
        let mut mults: Vec<usize> = d.grouped().iter().map(|g| g.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 2]);
    }

    #[test]
    fn decompose_over_f2() {
        let a2 = corpus::a2_over(Fp::new(2).unwrap());
        let mut rng = seeded(9);
        let parts = vec![proj(&a2, 0).unwrap(), Rep::simple(&a2, 0), Rep::simple(&a2, 1)];
        let (m, _, _) = direct_sum(&a2, &parts).unwrap();
        let d = decompose(&m, &mut rng).unwrap();
        check_decomposition(&d);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn iso_examples() {
        let a2 = corpus::a2();
        let mut rng = seeded(1);
        let p1 = proj(&a2, 0).unwrap();
        let f = iso(&p1, &p1, &mut rng).unwrap().unwrap();
        assert!(f.is_iso());
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        assert!(iso(&s1, &s2, &mut rng).unwrap().is_none());
        let z = Rep::zero(&a2);
        assert!(iso(&z, &z, &mut rng).unwrap().is_some());
        let (a, _, _) = direct_sum(&a2, &[s1.clone(), p1.clone()]).unwrap();
        let (b, _, _) = direct_sum(&a2, &[p1.clone(), s1.clone()]).unwrap();
        assert!(iso(&a, &b, &mut rng).unwrap().unwrap().is_iso());
        assert!(is_summand_of(&s1, &a, &mut rng).unwrap());
        assert!(!is_summand_of(&s2, &a, &mut rng).unwrap());
    }
}
