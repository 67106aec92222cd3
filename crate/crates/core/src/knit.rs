//! Knitting: indecomposables reachable from the projectives under `Tr D` (or from the
//! injectives under `D Tr`), with AR-sequence middles, up to a total-dimension cap.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::arseq::construct_global;
use crate::error::{Error, Result};
use crate::homological::{dtr, is_injective, is_projective, proj, radical, trd};
use crate::rep::{decompose, dual_over, iso, Rep, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FromProjectives,
    FromInjectives,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "from-projectives" | "proj" | "projectives" => Ok(Direction::FromProjectives),
            "from-injectives" | "inj" | "injectives" => Ok(Direction::FromInjectives),
            _ => Err(Error::Invalid(format!("unknown knitting direction {:?}", s))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KnitMember {
    pub name: String,
    pub module: Rep,
    /// Index of `D Tr` of this member, when listed.
    pub dtr: Option<usize>,
    /// Index of `Tr D` of this member, when listed.
    pub trd: Option<usize>,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Clone, Debug)]
pub struct KnitTable {
    pub algebra: Arc<Algebra>,
    pub direction: Direction,
    pub cap: usize,
    pub members: Vec<KnitMember>,
    /// Some module beyond the cap was skipped.
    pub truncated: bool,
}

impl KnitTable {
    pub fn modules(&self) -> Vec<Rep> {
        self.members.iter().map(|m| m.module.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn find(&self, m: &Rep, rng: &mut Rng) -> Result<Option<usize>> {
        for (i, k) in self.members.iter().enumerate() {
            if iso(&k.module, m, rng)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Re-checks every listed `τ`-link by an isomorphism test.
    pub fn verify_links(&self, rng: &mut Rng) -> Result<bool> {
        for m in &self.members {
            if let Some(j) = m.dtr {
                if iso(&dtr(&m.module)?, &self.members[j].module, rng)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for KnitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::FromProjectives => "from-projectives",
            Direction::FromInjectives => "from-injectives",
        };
        writeln!(f, "knit {} cap {} members {} truncated {}", dir, self.cap, self.members.len(), self.truncated)?;
        for (i, m) in self.members.iter().enumerate() {
            let link = |o: Option<usize>| o.map(|j| self.members[j].name.clone()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:>3} {:<16} dim {:?} dtr {} trd {}{}{}",
                i,
                m.name,
                m.module.dims(),
                link(m.dtr),
                link(m.trd),
                if m.projective { " projective" } else { "" },
                if m.injective { " injective" } else { "" },
            )?;
        }
        Ok(())
    }
}

struct Knitter<'a> {
    members: Vec<KnitMember>,
    cap: usize,
    truncated: bool,
    rng: &'a mut Rng,
}

impl Knitter<'_> {
    fn add(&mut self, m: Rep, name: String) -> Result<Option<usize>> {
        if m.is_zero() {
            return Ok(None);
        }
        if m.total_dim() > self.cap {
            self.truncated = true;
            return Ok(None);
        }
        for (i, k) in self.members.iter().enumerate() {
            if iso(&k.module, &m, self.rng)?.is_some() {
                return Ok(Some(i));
            }
        }
        let projective = is_projective(&m)?;
        let injective = is_injective(&m)?;
        self.members.push(KnitMember {
            name,
            module: m,
            dtr: None,
            trd: None,
            projective,
            injective,
        });
        Ok(Some(self.members.len() - 1))
    }
}

fn translate_name(name: &str, op: &str) -> String {
    // "P1" -> "trd(P1)" -> "trd^2(P1)"
    let prefix = format!("{}(", op);
    let prefix_pow = format!("{}^", op);
    if let Some(inner) = name.strip_prefix(&prefix).and_then(|s| s.strip_suffix(')')) {
        return format!("{}^2({})", op, inner);
    }
    if let Some(rest) = name.strip_prefix(&prefix_pow) {
        if let Some(open) = rest.find('(') {
            if let Ok(k) = rest[..open].parse::<usize>() {
                return format!("{}^{}{}", op, k + 1, &rest[open..]);
            }
        }
    }
    format!("{}({})", op, name)
}

fn knit_from_projectives(alg: &Arc<Algebra>, cap: usize, rng: &mut Rng) -> Result<(Vec<KnitMember>, bool)> {
    let mut k = Knitter {
        members: Vec::new(),
        cap,
        truncated: false,
        rng,
    };
    for v in 0..alg.vertices() {
        k.add(proj(alg, v)?, format!("P{}", v + 1))?;
    }
    for v in 0..alg.vertices() {
        let (r, _) = radical(&proj(alg, v)?);
        let d = decompose(&r, k.rng)?;
        for s in d.summands {
            let name = format!("X{}", k.members.len() + 1);
            k.add(s.module, name)?;
        }
    }
    let mut i = 0;
    while i < k.members.len() {
        if k.members[i].injective {
            i += 1;
            continue;
        }
        let y = trd(&k.members[i].module)?;
        let name = translate_name(&k.members[i].name, "trd");
        if let Some(j) = k.add(y.clone(), name.clone())? {
            if k.members[j].name.starts_with('X') {
                k.members[j].name = name;
            }
            k.members[i].trd = Some(j);
            if k.members[j].dtr.is_none() {
                k.members[j].dtr = Some(i);
            }
            let ses = construct_global(&y, k.rng)?;
            let d = decompose(ses.middle(), k.rng)?;
            for s in d.summands {
                let name = format!("X{}", k.members.len() + 1);
                k.add(s.module, name)?;
            }
        }
        i += 1;
    }
    Ok((k.members, k.truncated))
}

/// Knitted indecomposables up to total dimension `cap`.
pub fn enumerate_indec(alg: &Arc<Algebra>, cap: usize, direction: Direction, rng: &mut Rng) -> Result<KnitTable> {
    let (members, truncated) = match direction {
        Direction::FromProjectives => knit_from_projectives(alg, cap, rng)?,
        Direction::FromInjectives => {
            let op = alg.opposite();
            let (ms, t) = knit_from_projectives(&op, cap, rng)?;
            let ms = ms
                .into_iter()
                .map(|m| KnitMember {
                    name: m.name.replace("trd", "dtr").replace('P', "I"),
                    module: dual_over(&m.module, alg),
                    dtr: m.trd,
                    trd: m.dtr,
                    projective: m.injective,
                    injective: m.projective,
                })
                .collect();
            (ms, t)
        }
    };
    Ok(KnitTable {
        algebra: alg.clone(),
        direction,
        cap,
        members,
        truncated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootClass {
    Postprojective,
    Preinjective,
    Regular,
    NotIndecomposable,
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootClass::Postprojective => "postprojective",
            RootClass::Preinjective => "preinjective",
            RootClass::Regular => "regular",
            RootClass::NotIndecomposable => "not-indecomposable",
        };
        f.write_str(s)
    }
}

pub fn is_kronecker(alg: &Algebra) -> bool {
    alg.vertices() == 2
        && alg.arrows().len() == 2
        && alg.relations().is_empty()
        && alg.arrows()[0].source == alg.arrows()[1].source
        && alg.arrows()[0].target == alg.arrows()[1].target
        && alg.arrows()[0].source != alg.arrows()[0].target
}

/// Classification of a Kronecker dimension vector `(d_source, d_sink)` by the Tits form.
pub fn root_oracle_kronecker(alg: &Algebra, dims: &[usize]) -> Result<RootClass> {
    if !is_kronecker(alg) {
        return Err(Error::Invalid("the root oracle needs the Kronecker algebra".into()));
    }
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch("Kronecker dimension vectors have two entries".into()));
    }
    let s = alg.arrows()[0].source;
    let (d1, d2) = (dims[s] as i64, dims[1 - s] as i64);
    let q = d1 * d1 + d2 * d2 - 2 * d1 * d2;
    Ok(if (d1 == 0 && d2 == 0) || q > 1 {
        RootClass::NotIndecomposable
    } else if d2 == d1 + 1 {
        RootClass::Postprojective
    } else if d1 == d2 + 1 {
        RootClass::Preinjective
    } else if d1 == d2 {
        RootClass::Regular
    } else {
        RootClass::NotIndecomposable
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rep::seeded;

    #[test]
    fn a2_knit_finds_three() {
        let a2 = corpus::a2();
        let t = enumerate_indec(&a2, 13, Direction::FromProjectives, &mut seeded(1)).unwrap();
        assert_eq!(t.len(), 3);
        assert!(!t.truncated);
        assert!(t.verify_links(&mut seeded(2)).unwrap());
        let t = enumerate_indec(&a2, 13, Direction::FromInjectives, &mut seeded(1)).unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn a3_and_loop_knit() {
        let t = enumerate_indec(&corpus::a3(), 20, Direction::FromProjectives, &mut seeded(1)).unwrap();
        assert_eq!(t.len(), 6);
        let t = enumerate_indec(&corpus::a3_rad2(), 20, Direction::FromProjectives, &mut seeded(1)).unwrap();
        assert_eq!(t.len(), 5);
        let t = enumerate_indec(&corpus::loop_x2(), 20, Direction::FromProjectives, &mut seeded(1)).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn kronecker_knit_matches_roots() {
        let k = corpus::kronecker();
        let mut rng = seeded(1);
        let t = enumerate_indec(&k, 13, Direction::FromProjectives, &mut rng).unwrap();
        assert!(t.truncated);
        let mut dims: Vec<Vec<usize>> = t.members.iter().map(|m| m.module.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(dims, (0..=6).map(|n| vec![n, n + 1]).collect::<Vec<_>>());
        for m in &t.members {
            assert_eq!(root_oracle_kronecker(&k, m.module.dims()).unwrap(), RootClass::Postprojective);
        }
        assert!(t.verify_links(&mut rng).unwrap());
        let t = enumerate_indec(&k, 13, Direction::FromInjectives, &mut rng).unwrap();
        let mut dims: Vec<Vec<usize>> = t.members.iter().map(|m| m.module.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(dims, (0..=6).map(|n| vec![n + 1, n]).collect::<Vec<_>>());
    }

    #[test]
    fn root_oracle_examples() {
        let k = corpus::kronecker();
        assert_eq!(root_oracle_kronecker(&k, &[1, 2]).unwrap(), RootClass::Postprojective);
        assert_eq!(root_oracle_kronecker(&k, &[2, 2]).unwrap(), RootClass::Regular);
        assert_eq!(root_oracle_kronecker(&k, &[3, 1]).unwrap(), RootClass::NotIndecomposable);
        assert_eq!(root_oracle_kronecker(&k, &[2, 1]).unwrap(), RootClass::Preinjective);
        assert!(root_oracle_kronecker(&corpus::a2(), &[1, 1]).is_err());
    }

    #[test]
    fn names_follow_the_orbit() {
        assert_eq!(translate_name("P1", "trd"), "trd(P1)");
        assert_eq!(translate_name("trd(P1)", "trd"), "trd^2(P1)");
        assert_eq!(translate_name("trd^2(P1)", "trd"), "trd^3(P1)");
    }
}
