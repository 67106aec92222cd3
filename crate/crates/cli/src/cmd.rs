//! Verbs of the `arsub` command line.
//!
//! Exit codes: 0 success, 1 a check ran and failed, 2 usage or input error, 3 cap or field guard.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use arsub_core::accept;
use arsub_core::algebra::Algebra;
use arsub_core::approx::{
    audit_extension_closed, canonical_precover, is_precover, preenvelope_via_duality, right_minimal_reduce,
    ApproxVariant, Subcat,
};
use arsub_core::arseq::{
    ar_end_in_subcat, ar_sequence_global, ar_start_in_subcat, theorem_harness, theorem_harness_start,
    verify_ar_sequence, ArOutcome,
};
use arsub_core::corpus;
use arsub_core::equiv::{check_equiv_error_vs_stable, read_case};
use arsub_core::homological::{dtr, transpose, trd, Ext1};
use arsub_core::io::{
    parse_algebra, parse_document, parse_ses, parse_subcat, write_algebra, write_module, write_morphism, write_ses,
    Document,
};
use arsub_core::knit::{enumerate_indec, is_kronecker, root_oracle_kronecker, Direction};
use arsub_core::rep::{decompose, dual, hom_basis, is_indecomposable, seeded, Rep, Rng, DEFAULT_SEED};
use arsub_core::stable::{check_exactness_dp, StableHom, StableVariant};
use arsub_core::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "arsub", version, about = "Auslander-Reiten sequences in subcategories of module categories")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Algebra file, or one of the built-in names a2, a3, a3-rad2, kronecker, loop.
    #[arg(long)]
    pub algebra: String,
    /// Replaces the prime of the algebra file.
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the printed result to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct WithModules {
    #[command(flatten)]
    pub common: Common,
    /// Module files; all module blocks are read in order.
    #[arg(long = "module", required = true)]
    pub modules: Vec<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct WithSubcat {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub subcat: Option<PathBuf>,
    /// Cap for family subcategories and for the default whole-category test set.
    #[arg(long, default_value_t = 13)]
    pub cap: usize,
    #[arg(long = "module")]
    pub modules: Vec<PathBuf>,
    #[arg(long)]
    pub variant: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Basis of Hom(A, B).
    Hom(WithModules),
    /// Dimension and basis classes of Ext^1(M, N).
    Ext1(WithModules),
    /// D Tr M.
    Dtr(WithModules),
    /// Tr D M.
    Trd(WithModules),
    /// Tr M over the opposite algebra.
    Transpose(WithModules),
    /// D M over the opposite algebra.
    Dual(WithModules),
    /// Indecomposable summands with multiplicities.
    Decompose(WithModules),
    /// Exit 0 when the module is indecomposable, 1 otherwise.
    Indec(WithModules),
    /// Stable Hom(A, B) modulo injectives (--variant inj) or projectives (--variant proj).
    StableHom {
        #[command(flatten)]
        m: WithModules,
        #[arg(long, default_value = "inj")]
        variant: String,
    },
    /// Canonical precover of a module by a subcategory.
    Precover(WithSubcat),
    /// Preenvelope of a module computed over the opposite algebra.
    Preenvelope(WithSubcat),
    /// Right-minimal reduction of the morphism `nu` in a module file.
    Minimal(WithModules),
    /// Extension-closure audit of a subcategory.
    AuditSubcat {
        #[command(flatten)]
        s: WithSubcat,
        /// Only pairs with total dimension at most this are audited.
        #[arg(long, default_value_t = 24)]
        bound: usize,
    },
    /// The Auslander-Reiten sequence ending at a module, in the whole category.
    ArGlobal(WithSubcat),
    /// An Auslander-Reiten sequence in the subcategory ending at a module.
    ArEnd(WithSubcat),
    /// An Auslander-Reiten sequence in the subcategory starting at a module.
    ArStart(WithSubcat),
    /// Verifies a sequence file against a subcategory.
    VerifyAr(WithSubcat),
    /// Harness: stable precover of DTr M versus sequences ending at M.
    Theorem51(WithSubcat),
    /// Harness: stable preenvelope of L versus sequences starting at L.
    Theorem55(WithSubcat),
    /// Seeded comparison of error-term precovers and stable precovers.
    #[command(name = "equiv-4x")]
    Equiv4x {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Directory for counterexamples.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exactness of Hom(U, -) on the Nakayama image of a presentation.
    ExactnessDp(WithModules),
    /// Knitted indecomposables up to a cap.
    Knit {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 13)]
        cap: usize,
        #[arg(long, default_value = "from-projectives")]
        direction: String,
    },
    /// Re-runs a counterexample directory.
    Replay {
        case: PathBuf,
    },
    /// The acceptance suite.
    Accept {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) | Error::PrimeTooSmall { .. } => 3,
            Error::ConstructionFailed(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

type Out = std::result::Result<(String, u8), Failure>;

pub fn run(cli: Cli) -> u8 {
    let (out_path, result) = dispatch(cli.verb);
    match result {
        Ok((text, code)) => {
            print!("{}", text);
            if let Some(p) = out_path {
                if let Err(e) = std::fs::write(&p, &text) {
                    eprintln!("arsub: cannot write {}: {}", p.display(), e);
                    return 2;
                }
            }
            code
        }
        Err(f) => {
            eprintln!("arsub: {}", f.msg);
            f.code
        }
    }
}

pub fn load_algebra(c: &Common) -> std::result::Result<Arc<Algebra>, Failure> {
    let path = Path::new(&c.algebra);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(Error::from)?;
        return Ok(parse_algebra(&text, c.prime)?);
    }
    match corpus::by_name(&c.algebra) {
        Some(a) => match c.prime {
            Some(p) => Ok(parse_algebra(&write_algebra(&a), Some(p))?),
            None => Ok(a),
        },
        None => Err(usage(format!("no algebra file or built-in algebra named {:?}", c.algebra))),
    }
}

fn load_docs(alg: &Arc<Algebra>, files: &[PathBuf]) -> std::result::Result<Document, Failure> {
    let mut all = Document::default();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| usage(format!("cannot read {}: {}", f.display(), e)))?;
        let d = parse_document(&text, alg)?;
        all.modules.extend(d.modules);
        all.morphisms.extend(d.morphisms);
    }
    Ok(all)
}

fn modules(alg: &Arc<Algebra>, files: &[PathBuf], n: usize) -> std::result::Result<Vec<(String, Rep)>, Failure> {
    let d = load_docs(alg, files)?;
    if d.modules.len() < n {
        return Err(usage(format!("expected {} module(s), found {}", n, d.modules.len())));
    }
    Ok(d.modules)
}

fn load_subcat(s: &WithSubcat, alg: &Arc<Algebra>, rng: &mut Rng) -> std::result::Result<Subcat, Failure> {
    match &s.subcat {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {}", p.display(), e)))?;
            let base = p.parent().unwrap_or(Path::new("."));
            Ok(parse_subcat(&text, alg, base, rng)?)
        }
        None => Ok(Subcat::whole(alg, s.cap, rng)?),
    }
}

fn module_block(name: &str, m: &Rep, note: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(n) = note {
        writeln!(s, "# {}", n).unwrap();
    }
    s + &write_module(name, m)
}

fn outcome_text(o: &ArOutcome, header: &str) -> (String, u8) {
    match o {
        ArOutcome::Verified { ses, report, route } => {
            let mut s = format!("# {} verified via {}\n", header, route);
            for line in report.to_string().lines() {
                writeln!(s, "# {}", line).unwrap();
            }
            (s + &write_ses(ses), 0)
        }
        ArOutcome::HypothesisNotSatisfied(why) => (format!("hypothesis-not-satisfied: {}\n", why), 0),
        ArOutcome::Failed(log) => {
            let mut s = String::from("construction failed\n");
            for l in log {
                writeln!(s, "  {}", l).unwrap();
            }
            (s, 1)
        }
    }
}

fn dispatch(verb: Verb) -> (Option<PathBuf>, Out) {
    match verb {
        Verb::Hom(w) => (w.common.out.clone(), hom(&w)),
        Verb::Ext1(w) => (w.common.out.clone(), ext1(&w)),
        Verb::Dtr(w) => (w.common.out.clone(), unary(&w, "dtr")),
        Verb::Trd(w) => (w.common.out.clone(), unary(&w, "trd")),
        Verb::Transpose(w) => (w.common.out.clone(), unary(&w, "transpose")),
        Verb::Dual(w) => (w.common.out.clone(), unary(&w, "dual")),
        Verb::Decompose(w) => (w.common.out.clone(), decompose_cmd(&w)),
        Verb::Indec(w) => (w.common.out.clone(), indec(&w)),
        Verb::StableHom { m, variant } => (m.common.out.clone(), stable_hom_cmd(&m, &variant)),
        Verb::Precover(s) => (s.common.out.clone(), precover(&s)),
        Verb::Preenvelope(s) => (s.common.out.clone(), preenvelope(&s)),
        Verb::Minimal(w) => (w.common.out.clone(), minimal(&w)),
        Verb::AuditSubcat { s, bound } => (s.common.out.clone(), audit(&s, bound)),
        Verb::ArGlobal(s) => (s.common.out.clone(), ar_global(&s)),
        Verb::ArEnd(s) => (s.common.out.clone(), ar_end_start(&s, true)),
        Verb::ArStart(s) => (s.common.out.clone(), ar_end_start(&s, false)),
        Verb::VerifyAr(s) => (s.common.out.clone(), verify_ar(&s)),
        Verb::Theorem51(s) => (s.common.out.clone(), harness(&s, true)),
        Verb::Theorem55(s) => (s.common.out.clone(), harness(&s, false)),
        Verb::Equiv4x { seed, count, out } => (None, equiv(seed, count, out.as_deref())),
        Verb::ExactnessDp(w) => (w.common.out.clone(), exactness(&w)),
        Verb::Knit { common, cap, direction } => (common.out.clone(), knit(&common, cap, &direction)),
        Verb::Replay { case } => (None, replay(&case)),
        Verb::Accept { out } => (out, accept_all()),
    }
}

fn hom(w: &WithModules) -> Out {
    let alg = load_algebra(&w.common)?;
    let ms = modules(&alg, &w.modules, 2)?;
    let (a, b) = (&ms[0], &ms[1]);
    let h = hom_basis(&a.1, &b.1)?;
    let mut s = format!("# dim Hom({}, {}) = {}\n", a.0, b.0, h.dim());
    s += &write_module(&a.0, &a.1);
    if b.0 != a.0 {
        s += &write_module(&b.0, &b.1);
    }
    for (i, f) in h.basis().iter().enumerate() {
        s += &write_morphism(&format!("h{}", i + 1), &a.0, &b.0, f);
    }
    Ok((s, 0))
}

fn ext1(w: &WithModules) -> Out {
    let alg = load_algebra(&w.common)?;
    let ms = modules(&alg, &w.modules, 2)?;
    let e = Ext1::new(&ms[0].1, &ms[1].1)?;
    let mut s = format!("# dim Ext^1({}, {}) = {}\n", ms[0].0, ms[1].0, e.dim());
    for (i, xi) in e.basis().iter().enumerate() {
        let ses = e.realize(xi)?;
        let d = decompose(ses.middle(), &mut seeded(w.common.seed))?;
        let dims: Vec<String> = d.summands.iter().map(|x| format!("{:?}", x.module.dims())).collect();
        writeln!(s, "# class {}: middle term {:?} = {}", i + 1, ses.middle().dims(), dims.join(" + ")).unwrap();
    }
    Ok((s, 0))
}

fn unary(w: &WithModules, op: &str) -> Out {
    let alg = load_algebra(&w.common)?;
    let ms = modules(&alg, &w.modules, 1)?;
    let (name, m) = &ms[0];
    let (r, note) = match op {
        "dtr" => (dtr(m)?, None),
        "trd" => (trd(m)?, None),
        "transpose" => (transpose(m)?, Some("over the opposite algebra")),
        _ => (dual(m), Some("over the opposite algebra")),
    };
    Ok((module_block(&format!("{}({})", op, name), &r, note), 0))
}

fn decompose_cmd(w: &WithModules) -> Out {
    let alg = load_algebra(&w.common)?;
    let ms = modules(&alg, &w.modules, 1)?;
    let d = decompose(&ms[0].1, &mut seeded(w.common.seed))?;
    let mut s = format!("# {} summands\n", d.len());
    for (i, (m, mult, _)) in d.grouped().iter().enumerate() {
        writeln!(s, "# multiplicity {}", mult).unwrap();
        s += &write_module(&format!("{}_{}", ms[0].0, i + 1), m);
    }
    Ok((s, 0))
}

fn indec(w: &WithModules) -> Out {
    let alg = load_algebra(&w.common)?;
    let ms = modules(&alg, &w.modules, 1)?;
    let b = is_indecomposable(&ms[0].1)?;
    Ok((format!("indecomposable {}\n", b), if b { 0 } else { 1 }))
}

fn stable_hom_cmd(w: &WithModules, variant: &str) -> Out {
    let alg = load_algebra(&w.common)?;
    let v: StableVariant = variant.parse()?;
    let ms = modules(&alg, &w.modules, 2)?;
    let st = StableHom::new(&ms[0].1, &ms[1].1, v)?;
    let mut s = format!(
        "# dim Hom = {}, ideal = {}, stable = {} ({})\n",
        st.hom.dim(),
        st.ideal_dim(),
        st.dim(),
        variant
    );
    s += &write_module("A", &ms[0].1);
    s += &write_module("B", &ms[1].1);
    for (i, f) in st.representatives().iter().enumerate() {
        s += &write_morphism(&format!("r{}", i + 1), "A", "B", f);
    }
    Ok((s, 0))
}

fn one_module(s: &WithSubcat, alg: &Arc<Algebra>) -> std::result::Result<(String, Rep), Failure> {
    Ok(modules(alg, &s.modules, 1)?.swap_remove(0))
}

fn precover(s: &WithSubcat) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    let (_, t) = one_module(s, &alg)?;
    let v: ApproxVariant = s.variant.as_deref().unwrap_or("stable-inj").parse()?;
    let pc = canonical_precover(&sub, &t, v)?;
    let rep = is_precover(&pc.map, &sub, v)?;
    let mut out = format!("# {} precover by {}; check {}\n", v, sub, if rep.pass() { "pass" } else { "fail" });
    for (i, d) in &pc.contributing {
        writeln!(out, "# contributing {} x{}", sub.names[*i], d).unwrap();
    }
    out += &write_module("N", pc.map.source());
    out += &write_module("T", &t);
    out += &write_morphism("nu", "N", "T", &pc.map);
    Ok((out, if rep.pass() { 0 } else { 1 }))
}

fn preenvelope(s: &WithSubcat) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    let (_, l) = one_module(s, &alg)?;
    let v: ApproxVariant = s.variant.as_deref().unwrap_or("stable-proj").parse()?;
    let pe = preenvelope_via_duality(&sub, &l, v)?;
    let ok = pe.report.pass();
    let mut out = format!("# {} preenvelope in {}; check {}\n", v, sub, if ok { "pass" } else { "fail" });
    out += &write_module("L", &l);
    out += &write_module("N", pe.map.target());
    out += &write_morphism("mu", "L", "N", &pe.map);
    Ok((out, if ok { 0 } else { 1 }))
}

fn minimal(w: &WithModules) -> Out {
    let alg = load_algebra(&w.common)?;
    let d = load_docs(&alg, &w.modules)?;
    let nu = match d.morphism("nu").or_else(|| d.morphisms.first().map(|(_, f)| f)) {
        Some(f) => f.clone(),
        None => return Err(usage("the module files contain no morphism")),
    };
    let m = right_minimal_reduce(&nu, &mut seeded(w.common.seed))?;
    let mut out = format!("# {} splitting step(s)\n", m.steps);
    out += &write_module("N", m.map.source());
    out += &write_module("T", m.map.target());
    out += &write_morphism("nu", "N", "T", &m.map);
    Ok((out, 0))
}

fn audit(s: &WithSubcat, bound: usize) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    let r = audit_extension_closed(&sub, bound, &mut rng)?;
    let mut out = format!(
        "# audit of {}: {} pairs checked, {} skipped, {} classes; {}\n# policy: {}; seed {}\n",
        sub,
        r.pairs_checked,
        r.pairs_skipped,
        r.classes_checked,
        if r.pass() { "pass" } else { "fail" },
        r.policy,
        s.common.seed
    );
    for (z, x, m) in &r.failures {
        writeln!(out, "# extension of {} by {} has a summand outside", sub.names[*z], sub.names[*x]).unwrap();
        out += &write_module("witness", m);
    }
    Ok((out, if r.pass() { 0 } else { 1 }))
}

fn ar_global(s: &WithSubcat) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    let (_, m) = one_module(s, &alg)?;
    let (ses, rep) = ar_sequence_global(&m, &sub, &mut rng)?;
    let mut out = String::new();
    for line in rep.to_string().lines() {
        writeln!(out, "# {}", line).unwrap();
    }
    Ok((out + &write_ses(&ses), 0))
}

fn ar_end_start(s: &WithSubcat, end: bool) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    let (_, m) = one_module(s, &alg)?;
    let o = if end {
        ar_end_in_subcat(&m, &sub, &mut rng)?
    } else {
        ar_start_in_subcat(&m, &sub, &mut rng)?
    };
    Ok(outcome_text(&o, &format!("sequence in {}", sub)))
}

fn verify_ar(s: &WithSubcat) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    if s.modules.is_empty() {
        return Err(usage("verify-ar needs --module <sequence file>"));
    }
    let mut text = String::new();
    for f in &s.modules {
        text += &std::fs::read_to_string(f).map_err(|e| usage(format!("cannot read {}: {}", f.display(), e)))?;
    }
    let ses = parse_ses(&text, &alg)?;
    let r = verify_ar_sequence(&ses, &sub, &mut rng)?;
    let mut out = format!("{}\n", r);
    if !r.pass() {
        let w = r
            .right
            .first_failure()
            .map(|x| (x, "right"))
            .or_else(|| r.left.first_failure().map(|x| (x, "left")));
        if let Some((row, side)) = w {
            if let Some(h) = &row.witness {
                writeln!(out, "# {} witness from test module {}", side, sub.names[row.test]).unwrap();
                out += &write_module("T", &sub.members[row.test]);
                let (src, tgt) = if side == "right" { ("T", "Z") } else { ("X", "T") };
                if side == "right" {
                    out += &write_module("Z", ses.right());
                } else {
                    out += &write_module("X", ses.left());
                }
                out += &write_morphism("h", src, tgt, h);
            }
        } else if !r.non_split {
            out += "# counterexample: the sequence splits\n";
        }
    }
    Ok((out, if r.pass() { 0 } else { 1 }))
}

fn harness(s: &WithSubcat, end: bool) -> Out {
    let alg = load_algebra(&s.common)?;
    let mut rng = seeded(s.common.seed);
    let sub = load_subcat(s, &alg, &mut rng)?;
    let h = if end {
        theorem_harness(&sub, &mut rng)?
    } else {
        theorem_harness_start(&sub, &mut rng)?
    };
    let mut out = format!("# seed {} cap {}\n", s.common.seed, sub.cap.map(|c| c.to_string()).unwrap_or("-".into()));
    out += &h.to_string();
    Ok((out, if h.pass() { 0 } else { 1 }))
}

fn equiv(seed: u64, count: usize, out: Option<&Path>) -> Out {
    let r = check_equiv_error_vs_stable(seed, count, out)?;
    Ok((r.to_string(), if r.pass() { 0 } else { 1 }))
}

fn exactness(w: &WithModules) -> Out {
    let alg = load_algebra(&w.common)?;
    let ms = modules(&alg, &w.modules, 2)?;
    let ok = check_exactness_dp(&ms[0].1, &ms[1].1)?;
    Ok((format!("exact {}\n", ok), if ok { 0 } else { 1 }))
}

fn knit(c: &Common, cap: usize, direction: &str) -> Out {
    let alg = load_algebra(c)?;
    let d: Direction = direction.parse()?;
    let t = enumerate_indec(&alg, cap, d, &mut seeded(c.seed))?;
    let mut out = t.to_string();
    if is_kronecker(&alg) {
        for m in &t.members {
            writeln!(out, "# root {:?} {}", m.module.dims(), root_oracle_kronecker(&alg, m.module.dims())?).unwrap();
        }
    }
    Ok((out, 0))
}

fn replay(case: &Path) -> Out {
    let inst = read_case(case)?;
    let v = inst.evaluate()?;
    let out = format!(
        "error_term {} stable {} agree {} dims {:?}\n",
        v.error_term,
        v.stable,
        v.agree(),
        v.dims
    );
    Ok((out, if v.agree() { 0 } else { 1 }))
}

fn accept_all() -> Out {
    let mut out = String::new();
    let mut ok = true;
    for r in accept::run_all() {
        ok &= r.pass();
        writeln!(out, "{}", r).unwrap();
    }
    Ok((out, if ok { 0 } else { 1 }))
}
