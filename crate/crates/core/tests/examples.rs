use std::sync::Arc;

use arsub_core::approx::{canonical_precover, is_precover, Subcat};
use arsub_core::arseq::{
    ar_end_in_subcat, ar_sequence_global, ar_start_in_subcat, check_duality_of_ar, theorem_harness, verify_ar_sequence,
    ArOutcome,
};
use arsub_core::homological::{dtr, inj, nakayama_map, proj, trd, Ext1, ProjSum};
use arsub_core::rep::{decompose, direct_sum, hom_basis, iso, seeded, Rep, Rng};
use arsub_core::{corpus, Algebra, ApproxVariant, Error, Ses};

fn is_iso(a: &Rep, b: &Rep, rng: &mut Rng) -> bool {
    iso(a, b, rng).unwrap().is_some()
}

/// `P(0), P(1), ...` up to `n` in the Kronecker postprojective family.
fn kron_postprojectives(k: &Arc<Algebra>, n: usize) -> Vec<Rep> {
    let mut ps = vec![proj(k, 1).unwrap(), proj(k, 0).unwrap()];
    while ps.len() <= n {
        let next = trd(&ps[ps.len() - 2]).unwrap();
        ps.push(next);
    }
    ps
}

fn classical_a2(a2: &Arc<Algebra>) -> Ses {
    arsub_core::accept::a2_ar_sequence(a2).unwrap()
}

fn verified(o: ArOutcome) -> Ses {
    match o {
        ArOutcome::Verified { ses, report, .. } => {
            assert!(report.pass());
            ses
        }
        other => panic!("expected a verified sequence, got {}", other.label()),
    }
}

#[test]
fn nakayama_on_projective_maps() {
    let a2 = corpus::a2();
    for v in 0..2 {
        let p = ProjSum::new(&a2, vec![v]).unwrap();
        let n = nakayama_map(&p.module.identity(), &p, &p).unwrap();
        assert!(n.is_iso());
        assert!(is_iso(n.source(), &inj(&a2, v).unwrap(), &mut seeded(1)));
        let z = nakayama_map(&p.module.zero_map_to(&p.module), &p, &p).unwrap();
        assert!(z.is_zero());
    }
    let p2 = ProjSum::new(&a2, vec![1]).unwrap();
    let p1 = ProjSum::new(&a2, vec![0]).unwrap();
    let incl = hom_basis(&p2.module, &p1.module).unwrap().basis()[0].clone();
    let n = nakayama_map(&incl, &p2, &p1).unwrap();
    assert_eq!(n.rank(), 1);
}

#[test]
fn nakayama_is_functorial_on_kronecker() {
    let k = corpus::kronecker();
    let p0 = ProjSum::new(&k, vec![1]).unwrap();
    let p1 = ProjSum::new(&k, vec![0]).unwrap();
    let p11 = ProjSum::new(&k, vec![0, 0]).unwrap();
    let h = hom_basis(&p0.module, &p1.module).unwrap();
    let f = h.basis()[0].add(&h.basis()[1].scale(3));
    let g = p11.incls[0].add(&p11.incls[1].scale(5));
    let lhs = nakayama_map(&g.compose(&f), &p0, &p11).unwrap();
    let rhs = nakayama_map(&g, &p1, &p11).unwrap().compose(&nakayama_map(&f, &p0, &p1).unwrap());
    assert_eq!(lhs.comps(), rhs.comps());
}

#[test]
fn kronecker_dtr_and_trd() {
    let k = corpus::kronecker();
    let mut rng = seeded(2);
    let ps = kron_postprojectives(&k, 4);
    for (n, p) in ps.iter().enumerate() {
        assert_eq!(p.dims(), &[n, n + 1]);
    }
    assert!(is_iso(&dtr(&ps[2]).unwrap(), &ps[0], &mut rng));
    assert!(is_iso(&trd(&ps[0]).unwrap(), &ps[2], &mut rng));
    assert!(dtr(&ps[1]).unwrap().is_zero());
}

#[test]
fn kronecker_ar_class_has_middle_p1_squared() {
    let k = corpus::kronecker();
    let mut rng = seeded(3);
    let ps = kron_postprojectives(&k, 2);
    let e = Ext1::new(&ps[2], &ps[0]).unwrap();
    assert_eq!(e.dim(), 1);
    let s = e.realize(&e.basis()[0]).unwrap();
    assert!(!s.is_split().unwrap());
    assert_eq!(s.middle().dims(), &[2, 4]);
    let (p11, _, _) = direct_sum(&k, &[ps[1].clone(), ps[1].clone()]).unwrap();
    assert!(is_iso(s.middle(), &p11, &mut rng));
    let d = decompose(s.middle(), &mut rng).unwrap();
    assert_eq!(d.len(), 2);
}

#[test]
fn global_sequences() {
    let mut rng = seeded(4);
    let a2 = corpus::a2();
    let whole = Subcat::whole(&a2, 10, &mut rng).unwrap();
    let (s, r) = ar_sequence_global(&Rep::simple(&a2, 0), &whole, &mut rng).unwrap();
    assert!(r.pass());
    assert!(is_iso(s.left(), &Rep::simple(&a2, 1), &mut rng));
    assert!(is_iso(s.middle(), &proj(&a2, 0).unwrap(), &mut rng));
    assert!(matches!(
        ar_sequence_global(&proj(&a2, 0).unwrap(), &whole, &mut rng),
        Err(Error::ProjectiveEnd)
    ));

    let k = corpus::kronecker();
    let pp = Subcat::postprojective(&k, 13, &mut rng).unwrap();
    let ps = kron_postprojectives(&k, 2);
    let (s, r) = ar_sequence_global(&ps[2], &pp, &mut rng).unwrap();
    assert!(r.pass(), "{}", r);
    assert!(is_iso(s.left(), &ps[0], &mut rng));
    assert_eq!(s.middle().dims(), &[2, 4]);
}

#[test]
fn end_in_subcat_examples() {
    let mut rng = seeded(5);
    let a2 = corpus::a2();
    let s1 = Rep::simple(&a2, 0);
    let whole = Subcat::whole(&a2, 10, &mut rng).unwrap();
    let s = verified(ar_end_in_subcat(&s1, &whole, &mut rng).unwrap());
    assert!(is_iso(s.left(), &Rep::simple(&a2, 1), &mut rng));

    let p1 = proj(&a2, 0).unwrap();
    let sub = Subcat::finite(&a2, vec![("P1".into(), p1), ("S1".into(), s1.clone())], &mut rng).unwrap();
    assert!(matches!(
        ar_end_in_subcat(&s1, &sub, &mut rng).unwrap(),
        ArOutcome::HypothesisNotSatisfied(_)
    ));

    let k = corpus::kronecker();
    let pp = Subcat::postprojective(&k, 13, &mut rng).unwrap();
    let ps = kron_postprojectives(&k, 4);
    for n in 2..=4 {
        let s = verified(ar_end_in_subcat(&ps[n], &pp, &mut rng).unwrap());
        assert!(is_iso(s.left(), &ps[n - 2], &mut rng));
        let (sq, _, _) = direct_sum(&k, &[ps[n - 1].clone(), ps[n - 1].clone()]).unwrap();
        assert!(is_iso(s.middle(), &sq, &mut rng));
    }
}

#[test]
fn start_in_subcat_examples() {
    let mut rng = seeded(6);
    let a2 = corpus::a2();
    let whole = Subcat::whole(&a2, 10, &mut rng).unwrap();
    let s = verified(ar_start_in_subcat(&Rep::simple(&a2, 1), &whole, &mut rng).unwrap());
    assert!(is_iso(s.right(), &Rep::simple(&a2, 0), &mut rng));
    assert!(is_iso(s.middle(), &proj(&a2, 0).unwrap(), &mut rng));

    let k = corpus::kronecker();
    let pi = Subcat::preinjective(&k, 13, &mut rng).unwrap();
    let l = pi.members.iter().find(|m| m.dims() == [3, 2]).expect("preinjective (3,2)").clone();
    let s = verified(ar_start_in_subcat(&l, &pi, &mut rng).unwrap());
    assert!(is_iso(s.left(), &l, &mut rng));
    assert_eq!(s.right().dims(), &[1, 0]);
    let i1 = pi.members.iter().find(|m| m.dims() == [2, 1]).unwrap().clone();
    let (sq, _, _) = direct_sum(&k, &[i1.clone(), i1]).unwrap();
    assert!(is_iso(s.middle(), &sq, &mut rng));
}

#[test]
fn duality_of_sequences() {
    let mut rng = seeded(7);
    let a2 = corpus::a2();
    let whole = Subcat::whole(&a2, 10, &mut rng).unwrap();
    let r = check_duality_of_ar(&classical_a2(&a2), &whole, &mut rng).unwrap();
    assert!(r.original.pass() && r.dual.pass());

    let s1 = Rep::simple(&a2, 0);
    let s2 = Rep::simple(&a2, 1);
    let (_, incls, projs) = direct_sum(&a2, &[s2, s1]).unwrap();
    let split = Ses::new(incls[0].clone(), projs[1].clone()).unwrap();
    let r = check_duality_of_ar(&split, &whole, &mut rng).unwrap();
    assert!(!r.original.pass() && !r.dual.pass() && r.agree());

    let k = corpus::kronecker();
    let pp = Subcat::postprojective(&k, 13, &mut rng).unwrap();
    let ps = kron_postprojectives(&k, 3);
    let (s, _) = ar_sequence_global(&ps[3], &pp, &mut rng).unwrap();
    let r = check_duality_of_ar(&s, &pp, &mut rng).unwrap();
    assert!(r.original.pass() && r.dual.pass());
}

#[test]
fn kronecker_precover_of_p2_uses_three_members() {
    let mut rng = seeded(8);
    let k = corpus::kronecker();
    let pp = Subcat::postprojective(&k, 13, &mut rng).unwrap();
    let ps = kron_postprojectives(&k, 4);
    let t = dtr(&ps[4]).unwrap();
    assert!(is_iso(&t, &ps[2], &mut rng));
    let pc = canonical_precover(&pp, &t, ApproxVariant::StableInj).unwrap();
    let mut dims: Vec<Vec<usize>> = pc.contributing.iter().map(|(i, _)| pp.members[*i].dims().to_vec()).collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    assert!(is_precover(&pc.map, &pp, ApproxVariant::StableInj).unwrap().pass());
}

#[test]
fn whole_category_matches_global_sequences() {
    let mut rng = seeded(9);
    for alg in [corpus::a2(), corpus::a3()] {
        let whole = Subcat::whole(&alg, 20, &mut rng).unwrap();
        for m in whole.members.clone() {
            let sub_outcome = ar_end_in_subcat(&m, &whole, &mut rng).unwrap();
            match ar_sequence_global(&m, &whole, &mut rng) {
                Err(Error::ProjectiveEnd) => {
                    assert!(sub_outcome.verified().is_none());
                }
                Ok((g, r)) => {
                    assert!(r.pass());
                    let s = verified(sub_outcome);
                    assert!(is_iso(s.left(), g.left(), &mut rng));
                    assert!(is_iso(s.middle(), g.middle(), &mut rng));
                }
                Err(e) => panic!("{}", e),
            }
        }
    }
}

#[test]
fn harness_on_kronecker_postprojectives() {
    let mut rng = seeded(10);
    let k = corpus::kronecker();
    let pp = Subcat::postprojective(&k, 13, &mut rng).unwrap();
    let h = theorem_harness(&pp, &mut rng).unwrap();
    assert!(h.pass(), "{}", h);
    for s in h.verified() {
        assert!(verify_ar_sequence(s, &pp, &mut rng).unwrap().pass());
    }
}
