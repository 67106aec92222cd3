//! Stable categories modulo injectives or projectives, precovers with error term, and the
//! module-level checks relating the two.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Span};
use crate::homological::{dtr_data, injective_envelope, is_injective, projective_cover, DtrData};
use crate::rep::{factor_from, factor_through, hom_basis, HomSpace, Rep, RepMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableVariant {
    /// Modulo maps factoring through injectives.
    Inj,
    /// Modulo maps factoring through projectives.
    Proj,
}

impl std::str::FromStr for StableVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inj" => Ok(StableVariant::Inj),
            "proj" => Ok(StableVariant::Proj),
            _ => Err(Error::Invalid(format!("unknown stable variant {:?}", s))),
        }
    }
}

/// Witness for `f = g ∘ ι` with `ι` the injective envelope of the source.
pub fn factors_through_injective(f: &RepMap) -> Result<Option<(RepMap, RepMap)>> {
    let (_, _, iota) = injective_envelope(f.source())?;
    Ok(factor_from(&iota, f)?.map(|g| (g, iota)))
}

/// Witness for `f = π ∘ h` with `π` the projective cover of the target.
pub fn factors_through_projective(f: &RepMap) -> Result<Option<(RepMap, RepMap)>> {
    let (_, pi) = projective_cover(f.target())?;
    Ok(factor_through(&pi, f)?.map(|h| (h, pi)))
}

/// `Hom(A, B)` modulo the ideal `I(A, B)` or `P(A, B)`.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub variant: StableVariant,
    pub hom: HomSpace,
    /// The factoring ideal, in coordinates of `hom`.
    pub ideal: Span,
    free: Vec<usize>,
}

impl StableHom {
    pub fn new(a: &Rep, b: &Rep, variant: StableVariant) -> Result<StableHom> {
        let hom = hom_basis(a, b)?;
        let ideal_maps: Vec<RepMap> = match variant {
            StableVariant::Inj => {
                let (_, i, iota) = injective_envelope(a)?;
                hom_basis(&i, b)?.basis().iter().map(|g| g.compose(&iota)).collect()
            }
            StableVariant::Proj => {
                let (ps, pi) = projective_cover(b)?;
                hom_basis(a, &ps.module)?.basis().iter().map(|h| pi.compose(h)).collect()
            }
        };
        let ideal = hom.span_of(&ideal_maps);
        let free = (0..hom.dim()).filter(|i| !ideal.pivots().contains(i)).collect();
        Ok(StableHom {
            variant,
            hom,
            ideal,
            free,
        })
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.dim()
    }

    /// Coset representatives: basis maps of `hom` at non-pivot positions of the ideal.
    pub fn representatives(&self) -> Vec<RepMap> {
        self.free.iter().map(|&i| self.hom.basis()[i].clone()).collect()
    }

    pub fn is_zero_class(&self, f: &RepMap) -> bool {
        self.ideal.contains(&self.hom.coords(f).expect("map in this Hom space"))
    }
}

pub fn stable_hom(a: &Rep, b: &Rep, variant: StableVariant) -> Result<StableHom> {
    StableHom::new(a, b, variant)
}

/// `{f2 ∘ φ : φ ∈ Hom(L, ν P2)}` inside `Hom(L, D Tr M)`, in coordinates of `target_hom`.
pub fn error_term_image(data: &DtrData, l: &Rep, target_hom: &HomSpace) -> Result<Span> {
    let h = hom_basis(l, data.f2.source())?;
    let maps: Vec<RepMap> = h.basis().iter().map(|phi| data.f2.compose(phi)).collect();
    Ok(target_hom.span_of(&maps))
}

/// Span of `{ν ∘ s : s ∈ Hom(L, N)}` inside `target_hom = Hom(L, T)`.
pub fn image_of_postcomposition(nu: &RepMap, l: &Rep, target_hom: &HomSpace) -> Result<Span> {
    let h = hom_basis(l, nu.source())?;
    let maps: Vec<RepMap> = h.basis().iter().map(|s| nu.compose(s)).collect();
    Ok(target_hom.span_of(&maps))
}

/// Per-generator verdicts of a precover-type check.
#[derive(Clone, Debug)]
pub struct PrecoverReport {
    pub rows: Vec<PrecoverRow>,
}

#[derive(Clone, Debug)]
pub struct PrecoverRow {
    pub generator: usize,
    pub pass: bool,
    /// A map `L -> T` that does not factor (modulo the allowed error), when failing.
    pub witness: Option<RepMap>,
    /// `dim Hom(L, T)`, `dim` of the error-term image and `dim I(L, T)`.
    pub hom_dim: usize,
    pub error_dim: usize,
    pub ideal_dim: usize,
}

impl PrecoverReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&PrecoverRow> {
        self.rows.iter().find(|r| !r.pass)
    }
}

fn first_outside(hom: &HomSpace, span: &Span) -> Option<RepMap> {
    hom.basis().iter().enumerate().find_map(|(i, f)| {
        let mut e = vec![0u32; hom.dim()];
        e[i] = 1;
        (!span.contains(&e)).then(|| f.clone())
    })
}

fn check_nu_target(nu: &RepMap, data: &DtrData) -> Result<()> {
    if nu.target() != &data.module {
        return Err(Error::DimensionMismatch("ν must land in D Tr M".into()));
    }
    Ok(())
}

/// For each generator `L`: `Hom(L, D Tr M) = ν ∘ Hom(L, N) + f2 ∘ Hom(L, ν P2)`.
pub fn is_precover_with_error_term(nu: &RepMap, gens: &[Rep], data: &DtrData) -> Result<PrecoverReport> {
    check_nu_target(nu, data)?;
    let t = &data.module;
    let mut rows = Vec::new();
    for (gi, l) in gens.iter().enumerate() {
        let hom = hom_basis(l, t)?;
        let img = image_of_postcomposition(nu, l, &hom)?;
        let err = error_term_image(data, l, &hom)?;
        let total = img.sum(&err);
        let witness = first_outside(&hom, &total);
        let ideal_dim = StableHom::new(l, t, StableVariant::Inj)?.ideal_dim();
        rows.push(PrecoverRow {
            generator: gi,
            pass: witness.is_none(),
            witness,
            hom_dim: hom.dim(),
            error_dim: err.dim(),
            ideal_dim,
        });
    }
    Ok(PrecoverReport { rows })
}

/// For each generator `L`: the induced map on injectively stable `Hom(L, -)` is onto.
pub fn is_stable_precover(nu: &RepMap, gens: &[Rep], data: &DtrData) -> Result<PrecoverReport> {
    check_nu_target(nu, data)?;
    let t = &data.module;
    let mut rows = Vec::new();
    for (gi, l) in gens.iter().enumerate() {
        let st = StableHom::new(l, t, StableVariant::Inj)?;
        let img = image_of_postcomposition(nu, l, &st.hom)?;
        let total = img.sum(&st.ideal);
        let witness = first_outside(&st.hom, &total);
        rows.push(PrecoverRow {
            generator: gi,
            pass: witness.is_none(),
            witness,
            hom_dim: st.hom.dim(),
            error_dim: 0,
            ideal_dim: st.ideal_dim(),
        });
    }
    Ok(PrecoverReport { rows })
}

/// Exactness of `Hom(U, ν P2) -> Hom(U, ν P1) -> Hom(U, ν P0)` at the middle, for injective `U`.
pub fn check_exactness_dp(u: &Rep, m: &Rep) -> Result<bool> {
    if !u.is_zero() && !is_injective(u)? {
        return Err(Error::NotInjective);
    }
    let data = dtr_data(m)?;
    exactness_with(u, &data)
}

pub(crate) fn exactness_with(u: &Rep, data: &DtrData) -> Result<bool> {
    let fp = u.field();
    let mid = hom_basis(u, data.nu_d1.source())?;
    let right = hom_basis(u, data.nu_d1.target())?;
    let left = hom_basis(u, data.nu_d2.source())?;
    // kernel of composition with ν d1, inside Hom(U, ν P1)
    let cols: Vec<Vec<u32>> = mid
        .basis()
        .iter()
        .map(|h| right.coords(&data.nu_d1.compose(h)).expect("lands in Hom(U, ν P0)"))
        .collect();
    let ker = Matrix::from_columns(fp, right.dim(), &cols).kernel_basis();
    let image = mid.span_of(&left.basis().iter().map(|h| data.nu_d2.compose(h)).collect::<Vec<_>>());
    let kernel = Span::from_vectors(fp, mid.dim(), &ker.columns());
    Ok(kernel.contains_span(&image) && image.contains_span(&kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homological::{inj, proj};

    #[test]
    fn factorization_examples() {
        let a2 = corpus::a2();
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        let i1 = inj(&a2, 0).unwrap();
        assert!(factors_through_injective(&i1.identity()).unwrap().is_some());
        assert!(factors_through_injective(&s2.identity()).unwrap().is_none());
        assert!(factors_through_injective(&s2.zero_map_to(&s1)).unwrap().is_some());
        let p2 = proj(&a2, 1).unwrap();
        assert!(factors_through_projective(&p2.identity()).unwrap().is_some());
        assert!(factors_through_projective(&s1.identity()).unwrap().is_none());
    }

    #[test]
    fn stable_hom_examples() {
        let a2 = corpus::a2();
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        for v in 0..2 {
            let i = inj(&a2, v).unwrap();
            for b in [&s1, &s2, &i] {
                assert_eq!(stable_hom(&i, b, StableVariant::Inj).unwrap().dim(), 0);
            }
        }
        assert_eq!(stable_hom(&s2, &s2, StableVariant::Inj).unwrap().dim(), 1);
        assert_eq!(stable_hom(&s1, &s1, StableVariant::Proj).unwrap().dim(), 1);
    }

    #[test]
    fn error_term_examples() {
        let a2 = corpus::a2();
        let s1 = Rep::simple(&a2, 0);
        let data = dtr_data(&s1).unwrap();
        assert!(data.f2.is_zero());
        let hom = hom_basis(&Rep::simple(&a2, 1), &data.module).unwrap();
        assert_eq!(error_term_image(&data, &Rep::simple(&a2, 1), &hom).unwrap().dim(), 0);

        let lp = corpus::loop_x2();
        let s = Rep::simple(&lp, 0);
        let data = dtr_data(&s).unwrap();
        assert_eq!(data.module.dims(), &[1]);
        assert_eq!(data.f2.source().dims(), &[2]);
        let hom = hom_basis(&s, &data.module).unwrap();
        assert_eq!(hom.dim(), 1);
        let e = error_term_image(&data, &s, &hom).unwrap();
        assert!(e.dim() <= 1);
    }

    #[test]
    fn precover_examples_a2() {
        let a2 = corpus::a2();
        let s1 = Rep::simple(&a2, 0);
        let data = dtr_data(&s1).unwrap();
        let t = data.module.clone();
        let gens = vec![t.clone()];
        let nu = t.identity();
        assert!(is_precover_with_error_term(&nu, &gens, &data).unwrap().pass());
        assert!(is_stable_precover(&nu, &gens, &data).unwrap().pass());
        let zero = t.zero_map_to(&t);
        let r = is_precover_with_error_term(&zero, &gens, &data).unwrap();
        assert!(!r.pass());
        assert!(r.first_failure().unwrap().witness.is_some());
        assert!(!is_stable_precover(&zero, &gens, &data).unwrap().pass());
        assert!(is_stable_precover(&zero, &[], &data).unwrap().pass());
    }

    #[test]
    fn exactness_examples() {
        let a2 = corpus::a2();
        for v in 0..2 {
            let u = inj(&a2, v).unwrap();
            for m in [Rep::simple(&a2, 0), Rep::simple(&a2, 1), proj(&a2, 0).unwrap()] {
                assert!(check_exactness_dp(&u, &m).unwrap());
            }
        }
        assert!(check_exactness_dp(&Rep::zero(&a2), &Rep::simple(&a2, 0)).unwrap());
        let lp = corpus::loop_x2();
        let u = inj(&lp, 0).unwrap();
        assert!(check_exactness_dp(&u, &Rep::simple(&lp, 0)).unwrap());
        assert!(matches!(
            check_exactness_dp(&Rep::simple(&a2, 1), &Rep::simple(&a2, 0)),
            Err(Error::NotInjective)
        ));
    }
}
