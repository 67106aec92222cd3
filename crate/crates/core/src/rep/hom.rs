use crate::error::{Error, Result};
use crate::exactla::{Matrix, Span};

use super::{combine, Rep, RepMap};

/// A basis of `Hom(M, N)` together with a coordinate solver.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Rep,
    target: Rep,
    basis: Vec<RepMap>,
    // ambient coordinates of the basis, one column each
    columns: Matrix,
}

impl HomSpace {
    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMap] {
        &self.basis
    }

    /// Size of the space of all vertexwise linear maps.
    pub fn ambient_dim(&self) -> usize {
        self.columns.rows()
    }

    /// Coordinates of `f` in the basis, or `None` if `f` is not a homomorphism of this space.
    pub fn coords(&self, f: &RepMap) -> Option<Vec<u32>> {
        self.columns.solve(&f.to_vec()).expect("coordinate length matches")
    }

    pub fn combination(&self, coeffs: &[u32]) -> RepMap {
        combine(&self.source, &self.target, &self.basis, coeffs)
    }

    /// Span of a set of maps, as a subspace of the coordinate space of this Hom.
    pub fn span_of(&self, maps: &[RepMap]) -> Span {
        let fp = self.source.field();
        let mut s = Span::zero(fp, self.dim());
        for m in maps {
            let c = self.coords(m).expect("map lies in this Hom space");
            s.insert(&c);
        }
        s
    }
}

/// Basis of `Hom(M, N)`: the kernel of the commuting conditions on vertexwise matrices.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<HomSpace> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let fp = m.field();
    let alg = m.algebra();
    let nv = alg.vertices();
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dim_at(v) * m.dim_at(v);
    }
    let nvars = off[nv];
    let neqs: usize = alg
        .arrows()
        .iter()
        .map(|a| n.dim_at(a.target) * m.dim_at(a.source))
        .sum();
    let mut eq = Matrix::zeros(fp, neqs, nvars);
    let mut row = 0;
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ms, mt, ns) = (m.dim_at(s), m.dim_at(t), n.dim_at(s));
        let ma = m.arrow_map(ai);
        let na = n.arrow_map(ai);
        for i in 0..n.dim_at(t) {
            for j in 0..ms {
                // (f_t M_a)[i][j] - (N_a f_s)[i][j]
                for k in 0..mt {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let var = off[t] + i * mt + k;
                        eq.set(row, var, fp.add(eq.get(row, var), c));
                    }
                }
                for k in 0..ns {
                    let c = na.get(i, k);
                    if c != 0 {
                        let var = off[s] + k * ms + j;
                        eq.set(row, var, fp.sub(eq.get(row, var), c));
                    }
                }
                row += 1;
            }
        }
    }
    let columns = eq.kernel_basis();
    let basis = columns
        .columns()
        .iter()
        .map(|c| RepMap::from_vec(m, n, c))
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        columns,
    })
}

/// Some `h` with `g ∘ h = f`, where `g: B -> C` and `f: A -> C`.
pub fn factor_through(g: &RepMap, f: &RepMap) -> Result<Option<RepMap>> {
    let h = hom_basis(f.source(), g.source())?;
    let cols: Vec<Vec<u32>> = h.basis().iter().map(|b| g.compose(b).to_vec()).collect();
    let m = Matrix::from_columns(f.field(), f.to_vec().len(), &cols);
    Ok(m.solve(&f.to_vec())?.map(|c| h.combination(&c)))
}

/// Some `h` with `h ∘ i = f`, where `i: A -> B` and `f: A -> C`.
pub fn factor_from(i: &RepMap, f: &RepMap) -> Result<Option<RepMap>> {
    let h = hom_basis(i.target(), f.target())?;
    let cols: Vec<Vec<u32>> = h.basis().iter().map(|b| b.compose(i).to_vec()).collect();
    let m = Matrix::from_columns(f.field(), f.to_vec().len(), &cols);
    Ok(m.solve(&f.to_vec())?.map(|c| h.combination(&c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homological::proj;

    #[test]
    fn hom_examples_a2() {
        let a2 = corpus::a2();
        let p1 = proj(&a2, 0).unwrap();
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        assert_eq!(hom_basis(&p1, &p1).unwrap().dim(), 1);
        assert_eq!(hom_basis(&s2, &p1).unwrap().dim(), 1);
        assert_eq!(hom_basis(&p1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_basis(&s1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_basis(&p1, &s1).unwrap().dim(), 1);
        let z = Rep::zero(&a2);
        assert_eq!(hom_basis(&z, &p1).unwrap().dim(), 0);
        assert_eq!(hom_basis(&p1, &z).unwrap().dim(), 0);
    }

    #[test]
    fn hom_basis_elements_commute() {
        let k = corpus::kronecker();
        let p = proj(&k, 0).unwrap();
        let h = hom_basis(&p, &p).unwrap();
        assert_eq!(h.dim(), 1);
        let p2 = proj(&k, 1).unwrap();
        let h = hom_basis(&p2, &p).unwrap();
        assert_eq!(h.dim(), 2);
        for f in h.basis() {
            assert!(f.commutes());
            assert_eq!(h.coords(f).map(|c| c.iter().filter(|&&x| x != 0).count()), Some(1));
        }
    }

    #[test]
    fn algebra_mismatch_rejected() {
        let a2 = corpus::a2();
        let k = corpus::kronecker();
        assert!(matches!(
            hom_basis(&Rep::simple(&a2, 0), &Rep::simple(&k, 0)),
            Err(Error::AlgebraMismatch)
        ));
    }
}
