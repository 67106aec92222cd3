//! Fixtures shared by the benchmarks.

use arsub_core::homological::{proj, trd};
use arsub_core::rep::direct_sum;
use arsub_core::{corpus, Rep};

/// Kronecker postprojectives `P(0) ..= P(n)`.
pub fn kronecker_postprojectives(n: usize) -> Vec<Rep> {
    let k = corpus::kronecker();
    let mut ps = vec![proj(&k, 1).unwrap(), proj(&k, 0).unwrap()];
    while ps.len() <= n {
        let next = trd(&ps[ps.len() - 2]).unwrap();
        ps.push(next);
    }
    ps
}

/// `P(n-1)^2 ⊕ P(n)`, a decomposable module with repeated summands.
pub fn mixed_sum(n: usize) -> Rep {
    let ps = kronecker_postprojectives(n);
    let parts = [ps[n - 1].clone(), ps[n].clone(), ps[n - 1].clone()];
    direct_sum(ps[0].algebra(), &parts).unwrap().0
}
