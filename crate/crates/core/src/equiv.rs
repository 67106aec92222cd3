//! Seeded instances comparing the error-term precover check with the stable precover check,
//! with shrinking and replayable counterexample directories.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::algebra::Algebra;
use crate::approx::Subcat;
use crate::corpus;
use crate::error::{Error, Result};
use crate::homological::{dtr_data, is_projective, DtrData};
use crate::io::{parse_algebra, parse_document, write_algebra, write_module, write_morphism};
use crate::rep::{direct_sum, seeded, sum_maps, Rep, RepMap, Rng};
use crate::stable::{is_precover_with_error_term, is_stable_precover, StableHom, StableVariant};

/// Corpus algebras used by the run, with the cap for their indecomposables.
pub fn instance_algebras() -> Vec<(&'static str, Arc<Algebra>, usize)> {
    vec![
        ("a2", corpus::a2(), 10),
        ("a3", corpus::a3(), 10),
        ("kronecker", corpus::kronecker(), 7),
        ("loop", corpus::loop_x2(), 10),
    ]
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: Arc<Algebra>,
    pub algebra_name: String,
    pub m: Rep,
    pub gens: Vec<Rep>,
    pub nu: RepMap,
}

#[derive(Clone, Debug)]
pub struct Verdicts {
    pub error_term: bool,
    pub stable: bool,
    /// `(hom, error image, ideal)` dimensions per generator.
    pub dims: Vec<(usize, usize, usize)>,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.error_term == self.stable
    }
}

impl Instance {
    pub fn evaluate(&self) -> Result<Verdicts> {
        let data = dtr_data(&self.m)?;
        self.evaluate_with(&data)
    }

    fn evaluate_with(&self, data: &DtrData) -> Result<Verdicts> {
        let e = is_precover_with_error_term(&self.nu, &self.gens, data)?;
        let s = is_stable_precover(&self.nu, &self.gens, data)?;
        Ok(Verdicts {
            error_term: e.pass(),
            stable: s.pass(),
            dims: e.rows.iter().map(|r| (r.hom_dim, r.error_dim, r.ideal_dim)).collect(),
        })
    }
}

/// Random combination of stable representatives (each kept with probability 1/2) plus a random ideal element.
fn random_map(g: &Rep, t: &Rep, rng: &mut Rng) -> Result<RepMap> {
    let st = StableHom::new(g, t, StableVariant::Inj)?;
    let p = g.field().p();
    let mut f = g.zero_map_to(t);
    for r in st.representatives() {
        if rng.gen_bool(0.5) {
            f = f.add(&r.scale(rng.gen_range(1..p)));
        }
    }
    for c in st.ideal.basis() {
        if rng.gen_bool(0.5) {
            f = f.add(&st.hom.combination(c).scale(rng.gen_range(0..p)));
        }
    }
    Ok(f)
}

fn assemble(alg: &Arc<Algebra>, t: &Rep, pieces: &[(Rep, RepMap)]) -> Result<RepMap> {
    let parts: Vec<Rep> = pieces.iter().map(|(g, _)| g.clone()).collect();
    let (n, _, projs) = direct_sum(alg, &parts)?;
    let maps: Vec<RepMap> = pieces.iter().zip(&projs).map(|((_, f), p)| f.compose(p)).collect();
    Ok(sum_maps(&n, t, &maps))
}

/// Instance `index` of the run with base seed `seed`.
pub fn generate(seed: u64, index: usize) -> Result<Instance> {
    let mut rng = seeded(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64));
    let algs = instance_algebras();
    let (name, alg, cap) = algs[index % algs.len()].clone();
    let whole = Subcat::whole(&alg, cap, &mut rng)?;
    let mut candidates = Vec::new();
    for m in &whole.members {
        if !is_projective(m)? {
            candidates.push(m.clone());
        }
    }
    let m = candidates
        .choose(&mut rng)
        .ok_or_else(|| Error::Invalid(format!("{} has no non-projective indecomposable", name)))?
        .clone();
    let t = dtr_data(&m)?.module;
    let k = rng.gen_range(1..=whole.len().min(3));
    let gens: Vec<Rep> = whole.members.choose_multiple(&mut rng, k).cloned().collect();
    let mut pieces = Vec::new();
    for g in &gens {
        for _ in 0..rng.gen_range(0..=2) {
            pieces.push((g.clone(), random_map(g, &t, &mut rng)?));
        }
    }
    let nu = assemble(&alg, &t, &pieces)?;
    Ok(Instance {
        algebra: alg,
        algebra_name: name.into(),
        m,
        gens,
        nu,
    })
}

/// Drops generators and source summands while the verdicts still disagree.
pub fn shrink(inst: &Instance, rng: &mut Rng) -> Result<Instance> {
    let data = dtr_data(&inst.m)?;
    let disagrees = |i: &Instance| -> Result<bool> { Ok(!i.evaluate_with(&data)?.agree()) };
    let mut cur = inst.clone();
    loop {
        let mut progressed = false;
        for i in 0..cur.gens.len() {
            if cur.gens.len() == 1 {
                break;
            }
            let mut cand = cur.clone();
            cand.gens.remove(i);
            if disagrees(&cand)? {
                cur = cand;
                progressed = true;
                break;
            }
        }
        let d = crate::rep::decompose(cur.nu.source(), rng)?;
        for drop in 0..d.len() {
            let pieces: Vec<(Rep, RepMap)> = d
                .summands
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != drop)
                .map(|(_, s)| (s.module.clone(), cur.nu.compose(&s.incl)))
                .collect();
            let mut cand = cur.clone();
            cand.nu = assemble(&cur.algebra, cur.nu.target(), &pieces)?;
            if disagrees(&cand)? {
                cur = cand;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Ok(cur);
        }
    }
}

/// Writes `algebra.alg` and `case.txt` (modules `M`, `N`, `T`, generators `G1..` and the map `nu: N -> T`).
pub fn write_case(inst: &Instance, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("algebra.alg"), write_algebra(&inst.algebra))?;
    let mut s = format!("# error-term vs stable precover, algebra {}\n", inst.algebra_name);
    s += &write_module("M", &inst.m);
    for (i, g) in inst.gens.iter().enumerate() {
        s += &write_module(&format!("G{}", i + 1), g);
    }
    s += &write_module("N", inst.nu.source());
    s += &write_module("T", inst.nu.target());
    s += &write_morphism("nu", "N", "T", &inst.nu);
    std::fs::write(dir.join("case.txt"), s)?;
    Ok(())
}

pub fn read_case(dir: &Path) -> Result<Instance> {
    let alg = parse_algebra(&std::fs::read_to_string(dir.join("algebra.alg"))?, None)?;
    let doc = parse_document(&std::fs::read_to_string(dir.join("case.txt"))?, &alg)?;
    let m = doc.module("M").ok_or_else(|| Error::Invalid("case has no module M".into()))?.clone();
    let gens = doc
        .modules
        .iter()
        .filter(|(n, _)| n.starts_with('G'))
        .map(|(_, g)| g.clone())
        .collect();
    let nu = doc.morphism("nu").ok_or_else(|| Error::Invalid("case has no morphism nu".into()))?;
    let t = dtr_data(&m)?.module;
    if nu.target() != &t {
        return Err(Error::Invalid("target of nu is not DTr M".into()));
    }
    Ok(Instance {
        algebra: alg.clone(),
        algebra_name: "file".into(),
        m,
        gens,
        nu: nu.retarget(nu.source(), &t),
    })
}

#[derive(Clone, Debug)]
pub struct EquivRun {
    pub seed: u64,
    pub instances: usize,
    pub agreed: usize,
    pub both_pass: usize,
    pub both_fail: usize,
    pub nonzero_error_image: usize,
    /// Indices of disagreeing instances and the directories written for them.
    pub disagreements: Vec<(usize, Option<String>)>,
}

impl EquivRun {
    pub fn pass(&self) -> bool {
        self.agreed == self.instances
    }
}

impl fmt::Display for EquivRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "seed={} instances={} agree={} both_pass={} both_fail={} nonzero_error_image={}",
            self.seed, self.instances, self.agreed, self.both_pass, self.both_fail, self.nonzero_error_image
        )?;
        for (i, d) in &self.disagreements {
            writeln!(f, "disagreement instance={} case={}", i, d.as_deref().unwrap_or("-"))?;
        }
        Ok(())
    }
}

/// Runs `count` instances; disagreements are shrunk and written under `out` when given.
pub fn check_equiv_error_vs_stable(seed: u64, count: usize, out: Option<&Path>) -> Result<EquivRun> {
    let mut run = EquivRun {
        seed,
        instances: count,
        agreed: 0,
        both_pass: 0,
        both_fail: 0,
        nonzero_error_image: 0,
        disagreements: Vec::new(),
    };
    for i in 0..count {
        let inst = generate(seed, i)?;
        let v = inst.evaluate()?;
        if v.dims.iter().any(|d| d.1 > 0) {
            run.nonzero_error_image += 1;
        }
        if v.agree() {
            run.agreed += 1;
            if v.error_term {
                run.both_pass += 1;
            } else {
                run.both_fail += 1;
            }
            continue;
        }
        let mut rng = seeded(seed ^ i as u64);
        let small = shrink(&inst, &mut rng)?;
        let dir = match out {
            Some(base) => {
                let d = base.join(format!("equiv-{}-{}", seed, i));
                write_case(&small, &d)?;
                Some(d.display().to_string())
            }
            None => None,
        };
        run.disagreements.push((i, dir));
    }
    Ok(run)
}
