use std::sync::Arc;

use proptest::prelude::*;

use arsub_core::approx::{
    audit_extension_closed, canonical_preenvelope, canonical_precover, is_precover, is_preenvelope, is_right_minimal,
    right_minimal_reduce, ApproxVariant, Subcat,
};
use arsub_core::arseq::{ar_end_in_subcat, eligible_end, eligible_start, ArOutcome};
use arsub_core::homological::{dtr, inj, is_injective, is_projective, proj, trd, Ext1};
use arsub_core::io::{parse_module, write_module};
use arsub_core::rep::{
    combine, decompose, direct_sum, dual, dual_map_over, dual_over, hom_basis, iso, seeded, sum_maps, Rep, RepMap,
};
use arsub_core::stable::{factors_through_injective, factors_through_projective, StableHom, StableVariant};
use arsub_core::{corpus, Algebra, Fp, Matrix};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn entry(p: u32) -> impl Strategy<Value = u32> {
    prop_oneof![2 => Just(0u32), 1 => Just(1u32), 2 => 0..p]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    let fp = Fp::default();
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(entry(fp.p()), r * c).prop_map(move |v| Matrix::from_vec(fp, r, c, v))
    })
}

/// A random representation of a hereditary corpus quiver with at most `max` per vertex.
fn hereditary_rep(alg: Arc<Algebra>, max: usize) -> impl Strategy<Value = Rep> {
    let n = alg.vertices();
    let p = alg.field().p();
    prop::collection::vec(0..=max, n).prop_flat_map(move |dims| {
        let alg = alg.clone();
        let shapes: Vec<(usize, usize)> = alg
            .quiver()
            .arrows
            .iter()
            .map(|a| (dims[a.target], dims[a.source]))
            .collect();
        let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let dims = dims.clone();
        prop::collection::vec(entry(p), total).prop_map(move |v| {
            let mut at = 0;
            let maps = shapes
                .iter()
                .map(|&(r, c)| {
                    let m = Matrix::from_vec(alg.field(), r, c, v[at..at + r * c].to_vec());
                    at += r * c;
                    m
                })
                .collect();
            Rep::new(alg.clone(), dims.clone(), maps).unwrap()
        })
    })
}

fn kron_rep() -> impl Strategy<Value = Rep> {
    hereditary_rep(corpus::kronecker(), 3)
}

fn a3_rep() -> impl Strategy<Value = Rep> {
    hereditary_rep(corpus::a3(), 2)
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(entry(Fp::default().p()), n)
}

fn random_hom(m: &Rep, n: &Rep, c: &[u32]) -> RepMap {
    let h = hom_basis(m, n).unwrap();
    let k = h.dim();
    combine(m, n, h.basis(), &c[..k.min(c.len())].iter().copied().chain(std::iter::repeat(0)).take(k).collect::<Vec<_>>())
}

fn a3_members() -> (Arc<Algebra>, Vec<Rep>) {
    let a3 = corpus::a3();
    let whole = Subcat::whole(&a3, 20, &mut seeded(1)).unwrap();
    (a3, whole.members)
}

fn a3_sub(mask: u8) -> Subcat {
    let (a3, ms) = a3_members();
    let gens = ms
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(i, m)| (format!("M{}", i), m))
        .collect();
    Subcat::finite(&a3, gens, &mut seeded(2)).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rank_plus_nullity(m in matrix(6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(6)) {
        let (r, piv) = m.rref();
        let (r2, piv2) = r.rref();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn solve_reproduces_consistent_right_sides(m in matrix(5), c in coeffs(5)) {
        let y: Vec<u32> = c.iter().copied().chain(std::iter::repeat(0)).take(m.cols()).collect();
        let b = m.mul_vec(&y);
        let x = m.solve(&b).unwrap().expect("consistent");
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn dual_is_an_involution(m in kron_rep()) {
        let dd = dual(&dual(&m));
        prop_assert_eq!(dd.dims(), m.dims());
        prop_assert_eq!(dd.maps(), m.maps());
    }

    #[test]
    fn hom_dimensions_against_projectives_and_injectives(m in a3_rep()) {
        let a3 = m.algebra().clone();
        for v in 0..3 {
            prop_assert_eq!(hom_basis(&proj(&a3, v).unwrap(), &m).unwrap().dim(), m.dim_at(v));
            prop_assert_eq!(hom_basis(&m, &inj(&a3, v).unwrap()).unwrap().dim(), m.dim_at(v));
        }
    }

    #[test]
    fn duality_preserves_hom_dimension(m in kron_rep(), n in kron_rep()) {
        let op = m.algebra().opposite();
        let a = hom_basis(&m, &n).unwrap().dim();
        let b = hom_basis(&dual_over(&n, &op), &dual_over(&m, &op)).unwrap().dim();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn decomposition_sums_back(m in kron_rep()) {
        prop_assume!(!m.is_zero());
        let mut rng = seeded(3);
        let d = decompose(&m, &mut rng).unwrap();
        let parts: Vec<Rep> = d.summands.iter().map(|s| s.module.clone()).collect();
        let (sum, _, _) = direct_sum(m.algebra(), &parts).unwrap();
        prop_assert!(iso(&sum, &m, &mut rng).unwrap().is_some());
    }

    #[test]
    fn realized_extension_splits_iff_class_is_zero(m in kron_rep(), n in kron_rep(), c in coeffs(12)) {
        let e = Ext1::new(&m, &n).unwrap();
        let cs: Vec<u32> = c.iter().copied().chain(std::iter::repeat(0)).take(e.dim()).collect();
        let xi = e.class(&cs);
        let s = e.realize(&xi).unwrap();
        prop_assert!(s.is_exact());
        prop_assert_eq!(s.is_split().unwrap(), e.is_zero_class(&xi));
    }

    #[test]
    fn ar_formula(m in a3_rep(), n in a3_rep()) {
        let e = Ext1::new(&m, &n).unwrap().dim();
        let t = dtr(&m).unwrap();
        prop_assert_eq!(e, StableHom::new(&n, &t, StableVariant::Inj).unwrap().dim());
    }

    #[test]
    fn ideals_are_closed_under_composition(
        a in kron_rep(), b in kron_rep(), c in kron_rep(), x in coeffs(16), y in coeffs(16), z in coeffs(16)
    ) {
        for variant in [StableVariant::Inj, StableVariant::Proj] {
            let st = StableHom::new(&a, &b, variant).unwrap();
            let Some(v) = st.ideal.basis().first() else { continue };
            let f = st.hom.combination(v);
            let after = random_hom(&b, &c, &x).compose(&f);
            let before = f.compose(&random_hom(&c, &a, &y));
            let g = random_hom(&a, &b, &z);
            let check = |h: &RepMap| match variant {
                StableVariant::Inj => factors_through_injective(h).unwrap().is_some(),
                StableVariant::Proj => factors_through_projective(h).unwrap().is_some(),
            };
            prop_assert!(check(&after));
            prop_assert!(check(&before));
            prop_assert_eq!(check(&g), st.is_zero_class(&g));
        }
    }

    #[test]
    fn canonical_precover_passes_its_check(mask in 1u8..64, t in a3_rep()) {
        let sub = a3_sub(mask);
        for variant in [ApproxVariant::Plain, ApproxVariant::StableInj] {
            let pc = canonical_precover(&sub, &t, variant).unwrap();
            prop_assert!(is_precover(&pc.map, &sub, variant).unwrap().pass());
        }
        for variant in [ApproxVariant::Plain, ApproxVariant::StableProj] {
            let pe = canonical_preenvelope(&sub, &t, variant).unwrap();
            prop_assert!(is_preenvelope(&pe.map, &sub, variant).unwrap().pass());
        }
    }

    #[test]
    fn right_minimal_reduction_is_right_minimal(mask in 1u8..64, t in a3_rep(), picks in prop::collection::vec(0usize..6, 0..5), c in coeffs(40)) {
        let sub = a3_sub(mask);
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for (j, &i) in picks.iter().enumerate() {
            let g = &sub.members[i % sub.len()];
            pieces.push(g.clone());
            maps.push(random_hom(g, &t, &c[(j * 8) % 40..]));
        }
        let (n, _, projs) = direct_sum(t.algebra(), &pieces).unwrap();
        let nu = sum_maps(&n, &t, &maps.iter().zip(&projs).map(|(f, p)| f.compose(p)).collect::<Vec<_>>());
        let mn = right_minimal_reduce(&nu, &mut seeded(4)).unwrap();
        prop_assert!(is_right_minimal(&mn.map).unwrap());
        prop_assert!(mn.incl.is_injective());
        // the reduced map has the same image on every member
        for g in &sub.members {
            let hom = hom_basis(g, &t).unwrap();
            let a = arsub_core::stable::image_of_postcomposition(&nu, g, &hom).unwrap();
            let b = arsub_core::stable::image_of_postcomposition(&mn.map, g, &hom).unwrap();
            prop_assert_eq!(a.dim(), b.dim());
        }
    }

    #[test]
    fn preenvelope_iff_dual_precover(mask in 1u8..64, l in a3_rep(), drop in 0usize..4) {
        let sub = a3_sub(mask);
        let dsub = sub.dual();
        for (v, dv) in [
            (ApproxVariant::Plain, ApproxVariant::Plain),
            (ApproxVariant::StableProj, ApproxVariant::StableInj),
        ] {
            let pe = canonical_preenvelope(&sub, &l, v).unwrap();
            // dropping a summand of the codomain may or may not break the property
            let mu = if pe.incls.len() > drop {
                let all: Vec<Rep> = pe.incls.iter().map(|i| i.source().clone()).collect();
                let (_, _, projs) = direct_sum(&sub.algebra, &all).unwrap();
                let kept: Vec<usize> = (0..all.len()).filter(|&j| j != drop).collect();
                let parts: Vec<Rep> = kept.iter().map(|&j| all[j].clone()).collect();
                let (c, incls, _) = direct_sum(&sub.algebra, &parts).unwrap();
                let pieces: Vec<RepMap> = kept.iter().zip(&incls).map(|(&j, i)| i.compose(&projs[j])).collect();
                sum_maps(pe.map.target(), &c, &pieces).compose(&pe.map)
            } else {
                pe.map.clone()
            };
            let op = &dsub.algebra;
            let dmu = dual_map_over(&mu, &dual_over(mu.target(), op), &dual_over(mu.source(), op));
            let left = is_preenvelope(&mu, &sub, v).unwrap().pass();
            let right = is_precover(&dmu, &dsub, dv).unwrap().pass();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn eligibility_is_symmetric_under_duality(mask in 1u8..64) {
        let sub = a3_sub(mask);
        let dsub = sub.dual();
        for (m, dm) in sub.members.iter().zip(&dsub.members) {
            prop_assert_eq!(eligible_end(m, &sub).unwrap(), eligible_start(dm, &dsub).unwrap());
            prop_assert_eq!(eligible_start(m, &sub).unwrap(), eligible_end(dm, &dsub).unwrap());
        }
    }

    #[test]
    fn left_terms_are_unique(mask in 1u8..64, s1 in 0u64..1000, s2 in 1000u64..2000) {
        let sub = a3_sub(mask);
        prop_assume!(audit_extension_closed(&sub, 24, &mut seeded(5)).unwrap().pass());
        for m in sub.members.clone() {
            let a = ar_end_in_subcat(&m, &sub, &mut seeded(s1)).unwrap();
            let b = ar_end_in_subcat(&m, &sub, &mut seeded(s2)).unwrap();
            if let (ArOutcome::Verified { ses: x, .. }, ArOutcome::Verified { ses: y, .. }) = (&a, &b) {
                prop_assert!(iso(x.left(), y.left(), &mut seeded(6)).unwrap().is_some());
            } else {
                prop_assert_eq!(a.label(), b.label());
            }
        }
    }

    #[test]
    fn module_files_round_trip(m in kron_rep()) {
        let text = write_module("M", &m);
        let back = parse_module(&text, m.algebra()).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn tau_round_trips_on_the_corpus() {
    let mut rng = seeded(7);
    for (_, _, ms) in arsub_core::accept::corpus_indecomposables(&mut rng).unwrap() {
        for m in ms {
            if !is_projective(&m).unwrap() {
                let back = trd(&dtr(&m).unwrap()).unwrap();
                assert!(iso(&back, &m, &mut rng).unwrap().is_some());
            }
            if !is_injective(&m).unwrap() {
                let back = dtr(&trd(&m).unwrap()).unwrap();
                assert!(iso(&back, &m, &mut rng).unwrap().is_some());
            }
        }
    }
}
