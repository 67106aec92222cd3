//! Small algebras used throughout the tests and the acceptance runs.

use std::sync::Arc;

use crate::algebra::{Algebra, Arrow, Quiver, Relation};
use crate::exactla::Fp;

fn arrow(name: &str, s: usize, t: usize) -> Arrow {
    Arrow {
        name: name.into(),
        source: s,
        target: t,
    }
}

fn build(fp: Fp, n: usize, arrows: Vec<Arrow>, rels: Vec<Relation>) -> Arc<Algebra> {
    Algebra::new(fp, Quiver::new(n, arrows).expect("valid quiver"), rels).expect("admissible")
}

/// `A_2`: one arrow `a: 1 -> 2`.
pub fn a2() -> Arc<Algebra> {
    a2_over(Fp::default())
}

pub fn a2_over(fp: Fp) -> Arc<Algebra> {
    build(fp, 2, vec![arrow("a", 0, 1)], vec![])
}

/// Linear `A_3`: `a: 1 -> 2`, `b: 2 -> 3`, no relations.
pub fn a3() -> Arc<Algebra> {
    build(Fp::default(), 3, vec![arrow("a", 0, 1), arrow("b", 1, 2)], vec![])
}

/// Linear `A_3` with the relation `b.a = 0`.
pub fn a3_rad2() -> Arc<Algebra> {
    build(
        Fp::default(),
        3,
        vec![arrow("a", 0, 1), arrow("b", 1, 2)],
        vec![Relation {
            terms: vec![(1, vec![0, 1])],
        }],
    )
}

/// Kronecker: two arrows `a, b: 1 -> 2`.
pub fn kronecker() -> Arc<Algebra> {
    kronecker_over(Fp::default())
}

pub fn kronecker_over(fp: Fp) -> Arc<Algebra> {
    build(fp, 2, vec![arrow("a", 0, 1), arrow("b", 0, 1)], vec![])
}

/// One vertex with a loop `x` and `x.x = 0`.
pub fn loop_x2() -> Arc<Algebra> {
    build(
        Fp::default(),
        1,
        vec![arrow("x", 0, 0)],
        vec![Relation {
            terms: vec![(1, vec![0, 0])],
        }],
    )
}

/// Named corpus algebras, in a fixed order.
pub fn all() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![
        ("a2", a2()),
        ("a3", a3()),
        ("a3-rad2", a3_rad2()),
        ("kronecker", kronecker()),
        ("loop", loop_x2()),
    ]
}

pub fn by_name(name: &str) -> Option<Arc<Algebra>> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
