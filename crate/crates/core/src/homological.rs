//! Projectives, injectives, minimal presentations, the transpose, `D Tr`, `Tr D` and `Ext^1`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Span};
use crate::rep::{
    cokernel_of, direct_sum, dual_map_over, dual_over, factor_through, hom_basis, kernel_of, quotient, submodule,
    sum_maps, HomSpace, Rep, RepMap,
};

fn position(alg: &Algebra, source: usize, target: usize, idx: usize) -> usize {
    alg.basis_between(source, target)
        .iter()
        .position(|&i| i == idx)
        .expect("basis path between the given vertices")
}

/// The indecomposable projective `Λ e_v`: paths starting at `v`, arrows acting by extension.
pub fn proj(alg: &Arc<Algebra>, v: usize) -> Result<Rep> {
    if v >= alg.vertices() {
        return Err(Error::Invalid(format!("vertex {} out of range", v + 1)));
    }
    let fp = alg.field();
    let dims: Vec<usize> = (0..alg.vertices()).map(|w| alg.basis_between(v, w).len()).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let cols_idx = alg.basis_between(v, a.source);
            let mut m = Matrix::zeros(fp, dims[a.target], cols_idx.len());
            for (c, &pi) in cols_idx.iter().enumerate() {
                let mut arrows = alg.basis()[pi].arrows.clone();
                arrows.push(ai);
                for (k, coef) in alg.reduce_path(v, &arrows) {
                    m.set(position(alg, v, a.target, k), c, coef);
                }
            }
            m
        })
        .collect();
    Ok(Rep::new_unchecked(alg.clone(), dims, maps))
}

/// The indecomposable injective `D(e_v Λ)`.
pub fn inj(alg: &Arc<Algebra>, v: usize) -> Result<Rep> {
    let op = alg.opposite();
    Ok(dual_over(&proj(&op, v)?, alg))
}

/// Radical `rad M = Σ_a im M_a` with its inclusion.
pub fn radical(m: &Rep) -> (Rep, RepMap) {
    submodule(m, radical_bases(m))
}

fn radical_bases(m: &Rep) -> Vec<Matrix> {
    let alg = m.algebra();
    let fp = m.field();
    (0..alg.vertices())
        .map(|v| {
            let mut acc = Matrix::zeros(fp, m.dim_at(v), 0);
            for ai in alg.quiver().arrows_in(v) {
                acc = acc.hstack(m.arrow_map(ai));
            }
            acc.column_basis()
        })
        .collect()
}

/// Top `M / rad M` with the projection.
pub fn top(m: &Rep) -> (Rep, RepMap) {
    quotient(m, &radical_bases(m))
}

/// Socle: vectors killed by every arrow, with the inclusion.
pub fn socle(m: &Rep) -> (Rep, RepMap) {
    let alg = m.algebra();
    let fp = m.field();
    let bases = (0..alg.vertices())
        .map(|v| {
            let mut acc = Matrix::zeros(fp, 0, m.dim_at(v));
            for ai in alg.quiver().arrows_out(v) {
                acc = acc.vstack(m.arrow_map(ai));
            }
            acc.kernel_basis()
        })
        .collect();
    submodule(m, bases)
}

/// A direct sum of indecomposable projectives `⊕ proj(v_j)`.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub vertices: Vec<usize>,
    pub module: Rep,
    pub incls: Vec<RepMap>,
    pub projs: Vec<RepMap>,
}

impl ProjSum {
    pub fn new(alg: &Arc<Algebra>, vertices: Vec<usize>) -> Result<ProjSum> {
        let parts = vertices.iter().map(|&v| proj(alg, v)).collect::<Result<Vec<_>>>()?;
        let (module, incls, projs) = direct_sum(alg, &parts)?;
        Ok(ProjSum {
            vertices,
            module,
            incls,
            projs,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The generator `e_{v_j}` of the `j`-th summand, as a vector of the sum at `v_j`.
    pub fn generator(&self, j: usize) -> Vec<u32> {
        let v = self.vertices[j];
        let alg = self.module.algebra();
        let triv = alg
            .basis_between(v, v)
            .iter()
            .position(|&i| alg.basis()[i].is_trivial())
            .expect("trivial path is a basis element");
        self.incls[j].at(v).col(triv)
    }

    /// The map sending generator `j` to `elems[j] ∈ target_{v_j}`.
    pub fn map_to(&self, target: &Rep, elems: &[Vec<u32>]) -> RepMap {
        let alg = self.module.algebra().clone();
        let fp = alg.field();
        let comps = (0..alg.vertices())
            .map(|w| {
                let mut cols = Vec::new();
                for (j, &v) in self.vertices.iter().enumerate() {
                    for &pi in alg.basis_between(v, w) {
                        let p = &alg.basis()[pi];
                        let col = if p.is_trivial() {
                            elems[j].clone()
                        } else {
                            target.path_matrix(&p.arrows).mul_vec(&elems[j])
                        };
                        cols.push(col);
                    }
                }
                Matrix::from_columns(fp, target.dim_at(w), &cols)
            })
            .collect();
        RepMap::new_unchecked(self.module.clone(), target.clone(), comps)
    }

    /// Path-coefficient form of a map into another sum of projectives: entry `[i][j]` is the
    /// algebra element (paths `w_i -> v_j`) with generator `j` landing on `λ_ij` in summand `i`.
    pub fn coefficients(&self, f: &RepMap, target: &ProjSum) -> Vec<Vec<Vec<u32>>> {
        let alg = self.module.algebra();
        let mut out = vec![vec![vec![0u32; alg.dim()]; self.len()]; target.len()];
        for (j, &v) in self.vertices.iter().enumerate() {
            let img = f.at(v).mul_vec(&self.generator(j));
            for (i, &w) in target.vertices.iter().enumerate() {
                let part = target.projs[i].at(v).mul_vec(&img);
                for (pos, &pi) in alg.basis_between(w, v).iter().enumerate() {
                    out[i][j][pi] = part[pos];
                }
            }
        }
        out
    }
}

/// Projective cover `P -> M`: generators lift a basis of the top.
pub fn projective_cover(m: &Rep) -> Result<(ProjSum, RepMap)> {
    let alg = m.algebra();
    let fp = m.field();
    let rad = radical_bases(m);
    let mut vertices = Vec::new();
    let mut elems = Vec::new();
    for v in 0..alg.vertices() {
        let mut span = Span::from_vectors(fp, m.dim_at(v), &rad[v].columns());
        for k in 0..m.dim_at(v) {
            let mut e = vec![0u32; m.dim_at(v)];
            e[k] = 1;
            if span.insert(&e) {
                vertices.push(v);
                elems.push(e);
            }
        }
    }
    let ps = ProjSum::new(alg, vertices)?;
    let pi = ps.map_to(m, &elems);
    Ok((ps, pi))
}

/// Injective envelope `M -> I` as the dual of the projective cover of `D M`.
pub fn injective_envelope(m: &Rep) -> Result<(Vec<usize>, Rep, RepMap)> {
    let alg = m.algebra();
    let op = alg.opposite();
    let dm = dual_over(m, &op);
    let (ps, pi) = projective_cover(&dm)?;
    let i = dual_over(&ps.module, alg);
    let iota = dual_map_over(&pi, m, &i);
    Ok((ps.vertices, i, iota))
}

/// Minimal projective presentation `P2 -> P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub module: Rep,
    pub p0: ProjSum,
    pub p1: ProjSum,
    pub p2: ProjSum,
    pub d0: RepMap,
    pub d1: RepMap,
    pub d2: RepMap,
    /// First syzygy `Ω M = ker d0` and its inclusion into `P0`.
    pub omega: Rep,
    pub omega_incl: RepMap,
}

pub fn min_presentation(m: &Rep) -> Result<Presentation> {
    let (p0, d0) = projective_cover(m)?;
    let (omega, omega_incl) = kernel_of(&d0);
    let (p1, c1) = projective_cover(&omega)?;
    let d1 = omega_incl.compose(&c1);
    let (omega2, incl2) = kernel_of(&c1);
    let (p2, c2) = projective_cover(&omega2)?;
    let d2 = incl2.compose(&c2);
    Ok(Presentation {
        module: m.clone(),
        p0,
        p1,
        p2,
        d0,
        d1,
        d2,
        omega,
        omega_incl,
    })
}

/// `f^* = Hom(f, Λ)` for a map between sums of projectives, over the opposite algebra.
pub fn proj_dual_map(f: &RepMap, source: &ProjSum, target: &ProjSum) -> Result<(ProjSum, ProjSum, RepMap)> {
    let alg = f.source().algebra();
    let op = alg.opposite();
    let coeffs = source.coefficients(f, target);
    let t_star = ProjSum::new(&op, target.vertices.clone())?;
    let s_star = ProjSum::new(&op, source.vertices.clone())?;
    let elems: Vec<Vec<u32>> = target
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let mut v = vec![0u32; s_star.module.dim_at(w)];
            let mut off = 0;
            for (j, &vj) in source.vertices.iter().enumerate() {
                let rev = alg.to_opposite(&coeffs[i][j]);
                for (pos, &k) in op.basis_between(vj, w).iter().enumerate() {
                    v[off + pos] = rev[k];
                }
                off += op.basis_between(vj, w).len();
            }
            v
        })
        .collect();
    let map = t_star.map_to(&s_star.module, &elems);
    Ok((t_star, s_star, map))
}

/// Nakayama functor `ν = D Hom(-, Λ)` on a map between sums of projectives.
pub fn nakayama_map(f: &RepMap, source: &ProjSum, target: &ProjSum) -> Result<RepMap> {
    let alg = f.source().algebra();
    let (t_star, s_star, fs) = proj_dual_map(f, source, target)?;
    let ns = dual_over(&s_star.module, alg);
    let nt = dual_over(&t_star.module, alg);
    Ok(dual_map_over(&fs, &ns, &nt))
}

/// `Tr M = coker(d1^*)`, a module over the opposite algebra.
pub fn transpose(m: &Rep) -> Result<Rep> {
    let pres = min_presentation(m)?;
    let (_, _, d1s) = proj_dual_map(&pres.d1, &pres.p1, &pres.p0)?;
    Ok(cokernel_of(&d1s).0)
}

/// `D Tr M = ker ν(d1)` with the maps used to build almost split sequences.
#[derive(Clone, Debug)]
pub struct DtrData {
    pub presentation: Presentation,
    pub module: Rep,
    /// `j1 : D Tr M -> ν P1`.
    pub j1: RepMap,
    /// `ν d1 : ν P1 -> ν P0`.
    pub nu_d1: RepMap,
    /// `ν d2 : ν P2 -> ν P1`.
    pub nu_d2: RepMap,
    /// `f2 : ν P2 -> D Tr M`, the corestriction of `ν d2`.
    pub f2: RepMap,
}

pub fn dtr_data(m: &Rep) -> Result<DtrData> {
    let pres = min_presentation(m)?;
    let nu_d1 = nakayama_map(&pres.d1, &pres.p1, &pres.p0)?;
    let nu_d2 = nakayama_map(&pres.d2, &pres.p2, &pres.p1)?;
    let (module, j1) = kernel_of(&nu_d1);
    let cores = nu_d2
        .comps()
        .iter()
        .zip(j1.comps())
        .map(|(c, b)| {
            b.solve_matrix(c)
                .expect("shapes agree")
                .ok_or_else(|| Error::ConstructionFailed("ν d2 does not land in ker ν d1".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f2 = RepMap::new_unchecked(nu_d2.source().clone(), module.clone(), cores);
    Ok(DtrData {
        presentation: pres,
        module,
        j1,
        nu_d1,
        nu_d2,
        f2,
    })
}

/// `τ M = D Tr M`.
pub fn dtr(m: &Rep) -> Result<Rep> {
    Ok(dtr_data(m)?.module)
}

/// `τ^{-1} L = Tr D L`.
pub fn trd(l: &Rep) -> Result<Rep> {
    let op = l.algebra().opposite();
    let t = transpose(&dual_over(l, &op))?;
    t.rebased(l.algebra())
}

pub fn is_projective(m: &Rep) -> Result<bool> {
    let (p0, _) = projective_cover(m)?;
    Ok(p0.module.total_dim() == m.total_dim())
}

pub fn is_injective(m: &Rep) -> Result<bool> {
    let (_, i, _) = injective_envelope(m)?;
    Ok(i.total_dim() == m.total_dim())
}

/// `Ext^1(M, N) = Hom(Ω M, N) / {h ∘ ι : h ∈ Hom(P0, N)}`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub presentation: Presentation,
    pub target: Rep,
    /// `Hom(Ω M, N)`.
    pub hom: HomSpace,
    /// Restrictions of maps `P0 -> N`, in coordinates of `hom`.
    pub inner: Span,
    free: Vec<usize>,
}

impl Ext1 {
    pub fn new(m: &Rep, n: &Rep) -> Result<Ext1> {
        Ext1::with_presentation(min_presentation(m)?, n)
    }

    pub fn with_presentation(pres: Presentation, n: &Rep) -> Result<Ext1> {
        let hom = hom_basis(&pres.omega, n)?;
        let from_p0 = hom_basis(&pres.p0.module, n)?;
        let restr: Vec<RepMap> = from_p0.basis().iter().map(|h| h.compose(&pres.omega_incl)).collect();
        let inner = hom.span_of(&restr);
        let free = (0..hom.dim()).filter(|i| !inner.pivots().contains(i)).collect();
        Ok(Ext1 {
            presentation: pres,
            target: n.clone(),
            hom,
            inner,
            free,
        })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn source(&self) -> &Rep {
        &self.presentation.module
    }

    /// Basis classes, represented by maps `Ω M -> N`.
    pub fn basis(&self) -> Vec<RepMap> {
        (0..self.dim()).map(|k| self.class(&unit(self.dim(), k))).collect()
    }

    /// Representative of the class with the given coordinates.
    pub fn class(&self, coords: &[u32]) -> RepMap {
        let mut full = vec![0u32; self.hom.dim()];
        for (k, &i) in self.free.iter().enumerate() {
            full[i] = coords[k];
        }
        self.hom.combination(&full)
    }

    /// Coordinates of the class of a map `Ω M -> N`.
    pub fn coords(&self, xi: &RepMap) -> Vec<u32> {
        let c = self.hom.coords(xi).expect("map Ω M -> N");
        let r = self.inner.reduce(&c);
        self.free.iter().map(|&i| r[i]).collect()
    }

    pub fn is_zero_class(&self, xi: &RepMap) -> bool {
        self.coords(xi).iter().all(|&x| x == 0)
    }

    /// Pullback action `ξ ↦ ξ φ` of `End(M)` as a matrix on coordinates.
    pub fn right_action(&self, phi: &RepMap) -> Result<Matrix> {
        self.pullback(phi, self)
    }

    /// Pullback `h^* : Ext^1(M, N) -> Ext^1(T, N)` along `h : T -> M`, as a matrix.
    pub fn pullback(&self, h: &RepMap, other: &Ext1) -> Result<Matrix> {
        let h_omega = syzygy_map(&other.presentation, &self.presentation, h)?;
        let cols: Vec<Vec<u32>> = self.basis().iter().map(|xi| other.coords(&xi.compose(&h_omega))).collect();
        Ok(Matrix::from_columns(self.source().field(), other.dim(), &cols))
    }

    /// Pushout action `ξ ↦ ψ ξ` of `ψ : N -> N'` into another `Ext^1(M, N')`.
    pub fn push(&self, psi: &RepMap, other: &Ext1) -> Matrix {
        let cols: Vec<Vec<u32>> = self.basis().iter().map(|xi| other.coords(&psi.compose(xi))).collect();
        Matrix::from_columns(self.source().field(), other.dim(), &cols)
    }

    /// The extension `0 -> N -> E -> M -> 0` represented by `ξ`.
    pub fn realize(&self, xi: &RepMap) -> Result<Ses> {
        realize_extension(&self.presentation, xi)
    }
}

/// Restriction to syzygies of a lift of `h : T -> M` to the projective covers.
pub fn syzygy_map(from: &Presentation, to: &Presentation, h: &RepMap) -> Result<RepMap> {
    let lift = factor_through(&to.d0, &h.compose(&from.d0))?
        .ok_or_else(|| Error::ConstructionFailed("cannot lift a map to the projective covers".into()))?;
    factor_through(&to.omega_incl, &lift.compose(&from.omega_incl))?
        .ok_or_else(|| Error::ConstructionFailed("lift does not preserve the syzygy".into()))
}

/// A short exact sequence `0 -> X --g--> Y --f--> Z -> 0`.
#[derive(Clone, Debug)]
pub struct Ses {
    pub g: RepMap,
    pub f: RepMap,
}

impl Ses {
    pub fn new(g: RepMap, f: RepMap) -> Result<Ses> {
        let s = Ses { g, f };
        if !s.is_exact() {
            return Err(Error::Invalid("sequence is not short exact".into()));
        }
        Ok(s)
    }

    pub fn left(&self) -> &Rep {
        self.g.source()
    }

    pub fn middle(&self) -> &Rep {
        self.g.target()
    }

    pub fn right(&self) -> &Rep {
        self.f.target()
    }

    pub fn is_exact(&self) -> bool {
        if self.g.target().dims() != self.f.source().dims() {
            return false;
        }
        self.g.is_injective()
            && self.f.is_surjective()
            && self.f.compose(&self.g).is_zero()
            && (0..self.g.comps().len())
                .all(|v| self.middle().dim_at(v) == self.left().dim_at(v) + self.right().dim_at(v))
    }

    pub fn is_split(&self) -> Result<bool> {
        Ok(factor_through(&self.f, &self.right().identity())?.is_some())
    }

    /// `0 -> DZ -> DY -> DX -> 0` over the opposite algebra.
    pub fn dual(&self) -> Ses {
        let op = self.middle().algebra().opposite();
        let (dx, dy, dz) = (
            dual_over(self.left(), &op),
            dual_over(self.middle(), &op),
            dual_over(self.right(), &op),
        );
        Ses {
            g: dual_map_over(&self.f, &dz, &dy),
            f: dual_map_over(&self.g, &dy, &dx),
        }
    }

    /// Same sequence with every term read over a structurally equal algebra.
    pub fn rebased(&self, alg: &Arc<Algebra>) -> Result<Ses> {
        let (x, y, z) = (self.left().rebased(alg)?, self.middle().rebased(alg)?, self.right().rebased(alg)?);
        Ok(Ses {
            g: self.g.retarget(&x, &y),
            f: self.f.retarget(&y, &z),
        })
    }
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[k] = 1;
    v
}

/// Pushout of `ξ : Ω M -> N` along `Ω M -> P0`; returns `α : N -> E` and `β : E -> M`.
pub fn realize_extension(pres: &Presentation, xi: &RepMap) -> Result<Ses> {
    let alg = xi.source().algebra();
    let n = xi.target();
    let (sum, incls, projs) = direct_sum(alg, &[n.clone(), pres.p0.module.clone()])?;
    let into = sum_maps(
        &pres.omega,
        &sum,
        &[
            incls[0].compose(xi),
            incls[1].compose(&pres.omega_incl.scale(alg.field().neg(1))),
        ],
    );
    let (e, pi) = cokernel_of(&into);
    let alpha = pi.compose(&incls[0]);
    let out = pres.d0.compose(&projs[1]);
    let comps = out
        .comps()
        .iter()
        .zip(pi.comps())
        .map(|(o, p)| o.mul(&p.right_inverse().expect("cokernel projection is onto")))
        .collect();
    let beta = RepMap::new_unchecked(e, pres.module.clone(), comps);
    Ses::new(alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rep::{dual, is_indecomposable, iso, seeded};

    #[test]
    fn projectives_and_injectives_a2() {
        let a2 = corpus::a2();
        assert_eq!(proj(&a2, 0).unwrap().dims(), &[1, 1]);
        assert_eq!(proj(&a2, 1).unwrap().dims(), &[0, 1]);
        assert_eq!(inj(&a2, 0).unwrap().dims(), &[1, 0]);
        assert_eq!(inj(&a2, 1).unwrap().dims(), &[1, 1]);
        assert!(proj(&a2, 0).unwrap().arrow_map(0).is_identity());
    }

    #[test]
    fn projectives_loop_and_kronecker() {
        let lp = corpus::loop_x2();
        let p = proj(&lp, 0).unwrap();
        assert_eq!(p.dims(), &[2]);
        assert!(!p.arrow_map(0).is_zero());
        assert!(p.arrow_map(0).mul(p.arrow_map(0)).is_zero());
        let k = corpus::kronecker();
        assert_eq!(proj(&k, 0).unwrap().dims(), &[1, 2]);
        assert_eq!(inj(&k, 1).unwrap().dims(), &[2, 1]);
    }

    #[test]
    fn top_socle_cover() {
        let a3 = corpus::a3();
        let p1 = proj(&a3, 0).unwrap();
        assert_eq!(top(&p1).0.dims(), &[1, 0, 0]);
        assert_eq!(socle(&p1).0.dims(), &[0, 0, 1]);
        assert_eq!(radical(&p1).0.dims(), &[0, 1, 1]);
        let (ps, pi) = projective_cover(&Rep::simple(&a3, 1)).unwrap();
        assert_eq!(ps.vertices, vec![1]);
        assert!(pi.is_surjective());
        let (v, i, iota) = injective_envelope(&Rep::simple(&a3, 1)).unwrap();
        assert_eq!(v, vec![1]);
        assert_eq!(i.dims(), &[1, 1, 0]);
        assert!(iota.is_injective() && iota.commutes());
    }

    #[test]
    fn transpose_examples() {
        let a2 = corpus::a2();
        let p1 = proj(&a2, 0).unwrap();
        assert!(transpose(&p1).unwrap().is_zero());
        let s1 = Rep::simple(&a2, 0);
        let t = transpose(&s1).unwrap();
        assert_eq!(t.dims(), &[0, 1]);
        assert!(is_indecomposable(&t).unwrap());
    }

    #[test]
    fn dtr_examples_a2() {
        let a2 = corpus::a2();
        let mut rng = seeded(2);
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        let t = dtr(&s1).unwrap();
        assert!(iso(&t, &s2, &mut rng).unwrap().is_some());
        assert!(dtr(&proj(&a2, 0).unwrap()).unwrap().is_zero());
        assert!(dtr(&s2).unwrap().is_zero());
        let back = trd(&s2).unwrap();
        assert!(iso(&back, &s1, &mut rng).unwrap().is_some());
    }

    #[test]
    fn dtr_kronecker_preprojectives() {
        let k = corpus::kronecker();
        let mut rng = seeded(4);
        let p1 = proj(&k, 0).unwrap();
        let p2 = proj(&k, 1).unwrap();
        assert_eq!(trd(&p2).unwrap().dims(), &[2, 3]);
        let t = trd(&p1).unwrap();
        assert_eq!(t.dims(), &[3, 4]);
        let back = dtr(&t).unwrap();
        assert!(iso(&back, &p1, &mut rng).unwrap().is_some());
    }

    #[test]
    fn dtr_data_is_exact() {
        let k = corpus::kronecker();
        let m = trd(&proj(&k, 1).unwrap()).unwrap();
        let d = dtr_data(&m).unwrap();
        assert!(d.nu_d1.compose(&d.j1).is_zero());
        assert!(d.j1.is_injective());
        assert!(d.j1.compose(&d.f2).comps() == d.nu_d2.comps());
    }

    #[test]
    fn ext1_examples() {
        let a2 = corpus::a2();
        let s1 = Rep::simple(&a2, 0);
        let s2 = Rep::simple(&a2, 1);
        let p1 = proj(&a2, 0).unwrap();
        assert_eq!(Ext1::new(&s1, &s2).unwrap().dim(), 1);
        assert_eq!(Ext1::new(&s2, &s1).unwrap().dim(), 0);
        assert_eq!(Ext1::new(&p1, &s2).unwrap().dim(), 0);
        let e = Ext1::new(&s1, &s2).unwrap();
        let ses = e.realize(&e.basis()[0]).unwrap();
        assert!(!ses.is_split().unwrap());
        let mut rng = seeded(7);
        assert!(iso(ses.middle(), &p1, &mut rng).unwrap().is_some());
        let split = e.realize(&e.class(&[0])).unwrap();
        assert!(split.is_split().unwrap());
        let d = ses.dual();
        assert!(d.is_exact() && !d.is_split().unwrap());
    }

    #[test]
    fn dual_of_injective_is_projective() {
        let a3 = corpus::a3();
        let mut rng = seeded(8);
        for v in 0..3 {
            let i = inj(&a3, v).unwrap();
            let p = proj(&a3.opposite(), v).unwrap();
            assert!(iso(&dual(&i), &p, &mut rng).unwrap().is_some());
            assert!(is_injective(&i).unwrap());
            assert!(is_projective(&proj(&a3, v).unwrap()).unwrap());
        }
    }
}
