//! The acceptance suite: eight checks over the small corpus, each producing one report line.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::algebra::Algebra;
use crate::approx::{audit_extension_closed, canonical_precover, preenvelope_via_duality, ApproxVariant, Subcat};
use crate::arseq::{ar_end_in_subcat, ar_start_in_subcat, check_duality_of_ar, theorem_harness, verify_ar_sequence, Verdict};
use crate::corpus;
use crate::equiv::check_equiv_error_vs_stable;
use crate::error::Result;
use crate::exactla::Matrix;
use crate::homological::{dtr, dtr_data, inj, is_injective, is_projective, proj, transpose, trd, Ext1, Ses};
use crate::knit::{enumerate_indec, Direction};
use crate::rep::{brute_indec_classes, decompose, dual_over, hom_basis, iso, Rep, Rng, DEFAULT_SEED};
use crate::stable::{check_exactness_dp, is_stable_precover, StableHom, StableVariant};

pub const KRONECKER_CAP: usize = 13;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks_pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.checks_pass && self.elapsed <= self.limit
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.2}s of {}s) {}",
            self.id,
            self.title,
            if self.pass() { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

struct Tally {
    ok: bool,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            if self.notes.len() < 8 {
                self.notes.push(format!("failed: {}", what.into()));
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn finish(id: usize, title: &'static str, limit_s: u64, start: Instant, t: Tally) -> CriterionReport {
    CriterionReport {
        id,
        title,
        checks_pass: t.ok,
        detail: t.notes.join("; "),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit_s),
    }
}

fn run_guarded(id: usize, title: &'static str, limit_s: u64, body: impl FnOnce(&mut Tally) -> Result<()>) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    if let Err(e) = body(&mut t) {
        t.ok = false;
        t.note(format!("error: {}", e));
    }
    finish(id, title, limit_s, start, t)
}

fn rng() -> Rng {
    crate::rep::seeded(DEFAULT_SEED)
}

fn isomorphic(a: &Rep, b: &Rep, rng: &mut Rng) -> Result<bool> {
    Ok(iso(a, b, rng)?.is_some())
}

/// Canonical `0 -> S2 -> P1 -> S1 -> 0` over `A_2`.
pub fn a2_ar_sequence(a2: &Arc<Algebra>) -> Result<Ses> {
    let s1 = Rep::simple(a2, 0);
    let s2 = Rep::simple(a2, 1);
    let p1 = proj(a2, 0)?;
    let g = hom_basis(&s2, &p1)?.basis()[0].clone();
    let f = hom_basis(&p1, &s1)?.basis()[0].clone();
    Ses::new(g, f)
}

pub fn criterion_1() -> CriterionReport {
    run_guarded(1, "A2 ground truth", 1, |t| {
        let mut rng = rng();
        let a2 = corpus::a2();
        let knit = enumerate_indec(&a2, 20, Direction::FromProjectives, &mut rng)?;
        t.check(knit.len() == 3 && !knit.truncated, format!("knitting found {} modules", knit.len()));
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        t.check(isomorphic(&dtr(&s1)?, &s2, &mut rng)?, "dtr(S1) = S2");
        t.check(isomorphic(&trd(&s2)?, &s1, &mut rng)?, "trd(S2) = S1");
        for v in 0..2 {
            t.check(transpose(&proj(&a2, v)?)?.is_zero(), format!("transpose(P{}) = 0", v + 1));
        }
        let whole = Subcat::whole(&a2, 20, &mut rng)?;
        let s = a2_ar_sequence(&a2)?;
        t.check(verify_ar_sequence(&s, &whole, &mut rng)?.pass(), "0 -> S2 -> P1 -> S1 -> 0 verifies");
        let f2 = crate::rep::over_f2(&a2)?;
        let mut checked = 0;
        for d1 in 0..=2 {
            for d2 in 0..=2 {
                if d1 + d2 == 0 {
                    continue;
                }
                let brute = brute_indec_classes(&f2, &[d1, d2])?.len();
                let knitted = knit.members.iter().filter(|m| m.module.dims() == [d1, d2]).count();
                t.check(brute == knitted, format!("dim ({},{}): brute {} vs knitted {}", d1, d2, brute, knitted));
                checked += 1;
            }
        }
        t.note(format!("3 indecomposables; F2 oracle agrees on {} dimension vectors", checked));
        Ok(())
    })
}

/// Regular Kronecker modules used alongside the knitted families.
pub fn kronecker_regulars(k: &Arc<Algebra>) -> Result<Vec<Rep>> {
    let fp = k.field();
    let m = |a: &[Vec<i64>], b: &[Vec<i64>], n: usize| Rep::new(k.clone(), vec![n, n], vec![Matrix::from_rows(fp, a), Matrix::from_rows(fp, b)]);
    Ok(vec![
        m(&[vec![1]], &[vec![0]], 1)?,
        m(&[vec![0]], &[vec![1]], 1)?,
        m(&[vec![1]], &[vec![1]], 1)?,
        m(&[vec![1, 0], vec![0, 1]], &[vec![0, 1], vec![0, 0]], 2)?,
        m(&[vec![1, 0], vec![0, 1]], &[vec![2, 1], vec![0, 2]], 2)?,
    ])
}

/// Indecomposables of each corpus algebra: knitted families, plus small regular modules for Kronecker.
pub fn corpus_indecomposables(rng: &mut Rng) -> Result<Vec<(&'static str, Arc<Algebra>, Vec<Rep>)>> {
    let mut out = Vec::new();
    for (name, alg, cap) in [
        ("a2", corpus::a2(), 20),
        ("a3", corpus::a3(), 20),
        ("kronecker", corpus::kronecker(), KRONECKER_CAP),
        ("loop", corpus::loop_x2(), 20),
    ] {
        let mut ms = Subcat::whole(&alg, cap, rng)?.members;
        if name == "kronecker" {
            ms.extend(kronecker_regulars(&alg)?);
        }
        out.push((name, alg, ms));
    }
    Ok(out)
}

pub fn criterion_2() -> CriterionReport {
    run_guarded(2, "translate consistency", 30, |t| {
        let mut rng = rng();
        let mut n = 0;
        for (name, alg, ms) in corpus_indecomposables(&mut rng)? {
            let op = alg.opposite();
            for (i, m) in ms.iter().enumerate() {
                if !is_projective(m)? {
                    let tau = dtr(m)?;
                    let dtr_alt = dual_over(&transpose(m)?.rebased(&op)?, &alg);
                    t.check(isomorphic(&tau, &dtr_alt, &mut rng)?, format!("{} #{}: dtr = D Tr", name, i));
                    t.check(isomorphic(&trd(&tau)?, m, &mut rng)?, format!("{} #{}: trd dtr = id", name, i));
                    n += 1;
                }
                if !is_injective(m)? {
                    t.check(isomorphic(&dtr(&trd(m)?)?, m, &mut rng)?, format!("{} #{}: dtr trd = id", name, i));
                }
            }
        }
        t.note(format!("{} non-projective indecomposables", n));
        Ok(())
    })
}

pub fn criterion_3() -> CriterionReport {
    run_guarded(3, "exactness lemma", 30, |t| {
        let mut rng = rng();
        let mut pairs = 0;
        for (name, alg, ms) in corpus_indecomposables(&mut rng)? {
            for v in 0..alg.vertices() {
                let u = inj(&alg, v)?;
                for (i, m) in ms.iter().enumerate() {
                    t.check(check_exactness_dp(&u, m)?, format!("{}: I{} with #{}", name, v + 1, i));
                    pairs += 1;
                }
            }
        }
        t.check(pairs >= 40, format!("only {} pairs", pairs));
        t.note(format!("{} pairs", pairs));
        Ok(())
    })
}

pub fn criterion_4() -> CriterionReport {
    run_guarded(4, "error term vs stable precover", 120, |t| {
        let out = std::env::temp_dir().join("arsub-counterexamples");
        let run = check_equiv_error_vs_stable(DEFAULT_SEED, 100, Some(&out))?;
        t.check(run.pass(), run.to_string().trim().to_string());
        t.note(format!(
            "{}/{} agree (both pass {}, both fail {}, nonzero error image {})",
            run.agreed, run.instances, run.both_pass, run.both_fail, run.nonzero_error_image
        ));
        Ok(())
    })
}

/// Verified sequences with the subcategory they were verified in.
type Verified = Vec<(Ses, Subcat)>;

/// All generator subsets of the `A_3` indecomposables: (subsets, audited, harnessed rows, verified).
fn a3_harness(t: &mut Tally, rng: &mut Rng) -> Result<Verified> {
    let a3 = corpus::a3();
    let whole = Subcat::whole(&a3, 20, rng)?;
    let n = whole.len();
    let mut verified = Vec::new();
    let (mut closed, mut eligible, mut ineligible) = (0, 0, 0);
    for mask in 0u32..(1 << n) {
        let gens = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (whole.names[i].clone(), whole.members[i].clone()))
            .collect();
        let sub = Subcat::finite(&a3, gens, rng)?;
        if !audit_extension_closed(&sub, 64, rng)?.pass() {
            continue;
        }
        closed += 1;
        let h = theorem_harness(&sub, rng)?;
        for r in &h.rows {
            if r.i == Verdict::NotApplicable && r.ii == Verdict::NotApplicable {
                ineligible += 1;
                continue;
            }
            eligible += 1;
            t.check(
                r.i == Verdict::Pass && r.ii == Verdict::Pass,
                format!("subset {:06b} M={} i={} ii={}", mask, r.name, r.i, r.ii),
            );
        }
        for s in h.verified() {
            verified.push((s.clone(), sub.clone()));
        }
    }
    t.note(format!(
        "{} subsets, {} extension-closed, {} eligible rows, {} hypothesis-not-satisfied",
        1u32 << n,
        closed,
        eligible,
        ineligible
    ));
    t.check(n == 6, format!("A3 has {} indecomposables", n));
    Ok(verified)
}

pub fn criterion_5() -> CriterionReport {
    run_guarded(5, "theorem harness on A3", 120, |t| {
        let mut rng = rng();
        a3_harness(t, &mut rng)?;
        Ok(())
    })
}

fn find_dims<'a>(sub: &'a Subcat, dims: &[usize]) -> Option<&'a Rep> {
    sub.members.iter().find(|m| m.dims() == dims)
}

/// `P(n)` has dimension vector `(n, n+1)` and `I(n)` has `(n+1, n)`.
fn kronecker_run(t: &mut Tally, rng: &mut Rng) -> Result<Verified> {
    let k = corpus::kronecker();
    let mut verified = Vec::new();
    let pp = Subcat::postprojective(&k, KRONECKER_CAP, rng)?;
    for n in 2..=4usize {
        let m = find_dims(&pp, &[n, n + 1]).ok_or_else(|| crate::Error::Invalid(format!("P({}) not knitted", n)))?;
        let data = dtr_data(m)?;
        let pc = canonical_precover(&pp, &data.module, ApproxVariant::StableInj)?;
        let contributing: Vec<String> = pc.contributing.iter().map(|(i, d)| format!("{}^{}", pp.names[*i], d)).collect();
        t.check(is_stable_precover(&pc.map, &pp.members, &data)?.pass(), format!("stable precover of dtr P({})", n));
        match ar_end_in_subcat(m, &pp, rng)? {
            crate::arseq::ArOutcome::Verified { ses, route, .. } => {
                let left = find_dims(&pp, &[n - 2, n - 1]).expect("P(n-2) knitted");
                let mid = find_dims(&pp, &[n - 1, n]).expect("P(n-1) knitted");
                t.check(isomorphic(ses.left(), left, rng)?, format!("left end of the sequence at P({})", n));
                let d = decompose(ses.middle(), rng)?;
                let shape = d.len() == 2 && d.summands.iter().all(|s| iso(&s.module, mid, rng).map(|x| x.is_some()).unwrap_or(false));
                t.check(shape, format!("middle at P({}) is P({})^2", n, n - 1));
                t.note(format!("P({}): precover from [{}], route {}", n, contributing.join(" "), route));
                verified.push((ses, pp.clone()));
            }
            other => t.check(false, format!("P({}): {}", n, other.label())),
        }
    }
    let pi = Subcat::preinjective(&k, KRONECKER_CAP, rng)?;
    for n in 2..=4usize {
        let l = find_dims(&pi, &[n + 1, n]).ok_or_else(|| crate::Error::Invalid(format!("I({}) not knitted", n)))?;
        match ar_start_in_subcat(l, &pi, rng)? {
            crate::arseq::ArOutcome::Verified { ses, .. } => {
                let right = find_dims(&pi, &[n - 1, n - 2]).expect("I(n-2) knitted");
                t.check(isomorphic(ses.right(), right, rng)?, format!("right end of the sequence at I({})", n));
                t.check(ses.middle().dims() == [2 * n, 2 * n - 2], format!("middle at I({})", n));
                verified.push((ses, pi.clone()));
            }
            other => t.check(false, format!("I({}): {}", n, other.label())),
        }
    }
    t.note(format!(
        "postprojective {} members, preinjective {} members, cap {}",
        pp.len(),
        pi.len(),
        KRONECKER_CAP
    ));
    Ok(verified)
}

pub fn criterion_6() -> CriterionReport {
    run_guarded(6, "Kronecker families", 120, |t| {
        let mut rng = rng();
        kronecker_run(t, &mut rng)?;
        Ok(())
    })
}

pub fn criterion_7() -> CriterionReport {
    run_guarded(7, "duality", 60, |t| {
        let mut rng = rng();
        let mut scratch = Tally::new();
        let mut seqs = a3_harness(&mut scratch, &mut rng)?;
        seqs.extend(kronecker_run(&mut scratch, &mut rng)?);
        let a2 = corpus::a2();
        seqs.push((a2_ar_sequence(&a2)?, Subcat::whole(&a2, 20, &mut rng)?));
        for (i, (s, sub)) in seqs.iter().enumerate() {
            let d = check_duality_of_ar(s, sub, &mut rng)?;
            t.check(d.original.pass() && d.dual.pass(), format!("sequence {} in {}", i, sub));
        }
        let mut envelopes = 0;
        let a3 = corpus::a3();
        let whole = Subcat::whole(&a3, 20, &mut rng)?;
        for mask in 1u32..(1 << whole.len()) {
            let gens = (0..whole.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| (whole.names[i].clone(), whole.members[i].clone()))
                .collect();
            let sub = Subcat::finite(&a3, gens, &mut rng)?;
            for l in &whole.members {
                for v in [ApproxVariant::Plain, ApproxVariant::StableProj] {
                    let pe = preenvelope_via_duality(&sub, l, v)?;
                    t.check(pe.report.pass(), format!("preenvelope {:06b} {}", mask, v));
                    envelopes += 1;
                }
            }
        }
        t.note(format!("{} sequences dualized, {} preenvelopes checked", seqs.len(), envelopes));
        Ok(())
    })
}

pub fn criterion_8() -> CriterionReport {
    run_guarded(8, "Auslander-Reiten formula", 60, |t| {
        let mut rng = rng();
        let mut pairs = 0;
        for (name, _, ms) in corpus_indecomposables(&mut rng)? {
            for (i, m) in ms.iter().enumerate() {
                let tau = if is_projective(m)? { None } else { Some(dtr_data(m)?) };
                for (j, n) in ms.iter().enumerate() {
                    let ext = Ext1::new(m, n)?.dim();
                    let st = match &tau {
                        Some(d) => StableHom::new(n, &d.module, StableVariant::Inj)?.dim(),
                        None => 0,
                    };
                    t.check(ext == st, format!("{} ({}, {}): ext {} vs stable {}", name, i, j, ext, st));
                    pairs += 1;
                }
            }
        }
        t.note(format!("{} ordered pairs", pairs));
        Ok(())
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}
