//! Finite-dimensional modules as quiver representations, and their morphisms.
//!
//! A module assigns a space `M_v` to every vertex and, to an arrow `a: s -> t`,
//! a matrix `M_a` of shape `dim M_t × dim M_s`. Every relation evaluates to zero.

mod brute;
mod decompose;
mod endo;
mod hom;

use std::fmt;
use std::sync::Arc;

pub use brute::{brute_indec_classes, is_indecomposable_exhaustive, over_f2, BRUTE_TOTAL_DIM_CAP};
pub use decompose::{decompose, is_summand_of, iso, Decomposition, Summand};
pub(crate) use decompose::iso_indecomposable;
pub use endo::{is_indecomposable, EndAnalysis, RadicalMethod};
pub use hom::{factor_from, factor_through, hom_basis, HomSpace};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Fp, Matrix};

/// Seeded generator threaded through every randomized search.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Default seed for all randomized searches.
pub const DEFAULT_SEED: u64 = 0x5eed_a15e;

pub fn seeded(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}

struct RepInner {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A module over a bound quiver algebra. Cheap to clone.
#[derive(Clone)]
pub struct Rep {
    inner: Arc<RepInner>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep(dim {:?}", self.inner.dims)?;
        for (a, m) in self.inner.alg.arrows().iter().zip(&self.inner.maps) {
            write!(f, ", {}: {:?}", a.name, m)?;
        }
        write!(f, ")")
    }
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dims == other.inner.dims
                && self.inner.maps == other.inner.maps
                && self.inner.alg.same_as(&other.inner.alg))
    }
}
impl Eq for Rep {}

impl Rep {
    /// Validates shapes and relations.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        if dims.len() != alg.vertices() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector has {} entries, algebra has {} vertices",
                dims.len(),
                alg.vertices()
            )));
        }
        if maps.len() != alg.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow matrices for {} arrows",
                maps.len(),
                alg.arrows().len()
            )));
        }
        for (a, m) in alg.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::Invalid(format!("arrow {} matrix is over another field", a.name)));
            }
        }
        let rep = Rep::new_unchecked(alg, dims, maps);
        rep.check_relations()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Rep {
        Rep {
            inner: Arc::new(RepInner { alg, dims, maps }),
        }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Rep {
        let fp = alg.field();
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(fp, 0, 0)).collect();
        Rep::new_unchecked(alg.clone(), vec![0; alg.vertices()], maps)
    }

    /// The simple module at vertex `v` (0-based).
    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Rep {
        let fp = alg.field();
        let dims: Vec<usize> = (0..alg.vertices()).map(|w| (w == v) as usize).collect();
        let maps = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(fp, dims[a.target], dims[a.source]))
            .collect();
        Rep::new_unchecked(alg.clone(), dims, maps)
    }

    fn check_relations(&self) -> Result<()> {
        for rel in self.algebra().relations() {
            let mut acc: Option<Matrix> = None;
            for (c, path) in &rel.terms {
                let m = self.path_matrix(path).scale(*c);
                acc = Some(match acc {
                    Some(a) => a.add(&m),
                    None => m,
                });
            }
            if let Some(a) = acc {
                if !a.is_zero() {
                    return Err(Error::RelationViolated(rel.written(self.algebra().quiver())));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.alg
    }

    pub fn field(&self) -> Fp {
        self.inner.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.inner.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.inner.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.inner.maps[a]
    }

    /// Action of a path given in traversal order; the empty path needs [`Rep::identity_at`].
    pub fn path_matrix(&self, arrows: &[usize]) -> Matrix {
        let mut m = self.inner.maps[arrows[0]].clone();
        for &a in &arrows[1..] {
            m = self.inner.maps[a].mul(&m);
        }
        m
    }

    pub fn identity_at(&self, v: usize) -> Matrix {
        Matrix::identity(self.field(), self.inner.dims[v])
    }

    /// Action of a basis path of the algebra.
    pub fn basis_path_matrix(&self, idx: usize) -> Matrix {
        let p = &self.algebra().basis()[idx];
        if p.is_trivial() {
            self.identity_at(p.source)
        } else {
            self.path_matrix(&p.arrows)
        }
    }

    /// Action of an algebra element supported on paths from `source` to `target`.
    pub fn element_matrix(&self, elem: &[u32], source: usize, target: usize) -> Matrix {
        let fp = self.field();
        let mut acc = Matrix::zeros(fp, self.dim_at(target), self.dim_at(source));
        for &i in self.algebra().basis_between(source, target) {
            if elem[i] != 0 {
                acc = acc.add_scaled(&self.basis_path_matrix(i), elem[i]);
            }
        }
        acc
    }

    /// Vertex offsets into the concatenated total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.inner.dims.len() + 1);
        let mut acc = 0;
        for &d in &self.inner.dims {
            off.push(acc);
            acc += d;
        }
        off.push(acc);
        off
    }

    pub fn identity(&self) -> RepMap {
        let comps = (0..self.inner.dims.len()).map(|v| self.identity_at(v)).collect();
        RepMap::new_unchecked(self.clone(), self.clone(), comps)
    }

    pub fn zero_map_to(&self, target: &Rep) -> RepMap {
        let fp = self.field();
        let comps = (0..self.inner.dims.len())
            .map(|v| Matrix::zeros(fp, target.dim_at(v), self.dim_at(v)))
            .collect();
        RepMap::new_unchecked(self.clone(), target.clone(), comps)
    }

    /// Same module viewed over a structurally equal algebra handle.
    pub fn rebased(&self, alg: &Arc<Algebra>) -> Result<Rep> {
        if !self.algebra().same_as(alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Rep::new_unchecked(alg.clone(), self.inner.dims.clone(), self.inner.maps.clone()))
    }

    pub fn same_algebra(&self, other: &Rep) -> bool {
        self.algebra().same_as(other.algebra())
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone)]
pub struct RepMap {
    source: Rep,
    target: Rep,
    comps: Vec<Matrix>,
}

impl fmt::Debug for RepMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMap({:?} -> {:?}: {:?})", self.source.dims(), self.target.dims(), self.comps)
    }
}

impl PartialEq for RepMap {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps && self.source == other.source && self.target == other.target
    }
}
impl Eq for RepMap {}

impl RepMap {
    /// Validates shapes and the commuting condition for every arrow.
    pub fn new(source: Rep, target: Rep, comps: Vec<Matrix>) -> Result<RepMap> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        if comps.len() != source.dims().len() {
            return Err(Error::DimensionMismatch("one matrix per vertex required".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dim_at(v), source.dim_at(v)) {
                return Err(Error::DimensionMismatch(format!(
                    "component at vertex {} has shape {:?}, expected {:?}",
                    v + 1,
                    c.shape(),
                    (target.dim_at(v), source.dim_at(v))
                )));
            }
        }
        let f = RepMap::new_unchecked(source, target, comps);
        if !f.commutes() {
            return Err(Error::Invalid("components do not commute with the arrow actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Rep, target: Rep, comps: Vec<Matrix>) -> RepMap {
        RepMap { source, target, comps }
    }

    pub fn commutes(&self) -> bool {
        let alg = self.source.algebra();
        alg.arrows().iter().enumerate().all(|(i, a)| {
            self.comps[a.target].mul(self.source.arrow_map(i)) == self.target.arrow_map(i).mul(&self.comps[a.source])
        })
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn at(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    pub fn field(&self) -> Fp {
        self.source.field()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &RepMap) -> RepMap {
        assert!(
            first.target.dims() == self.source.dims(),
            "composition of maps with mismatched middle module"
        );
        let comps = self.comps.iter().zip(&first.comps).map(|(a, b)| a.mul(b)).collect();
        RepMap::new_unchecked(first.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        RepMap::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn sub(&self, other: &RepMap) -> RepMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect();
        RepMap::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: u32) -> RepMap {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        RepMap::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<RepMap> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(RepMap::new_unchecked(self.target.clone(), self.source.clone(), comps))
    }

    /// Coordinates: all components flattened row-major, vertex by vertex.
    pub fn to_vec(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for c in &self.comps {
            v.extend_from_slice(c.data());
        }
        v
    }

    pub fn from_vec(source: &Rep, target: &Rep, v: &[u32]) -> RepMap {
        let fp = source.field();
        let mut comps = Vec::with_capacity(source.dims().len());
        let mut off = 0;
        for w in 0..source.dims().len() {
            let (r, c) = (target.dim_at(w), source.dim_at(w));
            comps.push(Matrix::from_vec(fp, r, c, v[off..off + r * c].to_vec()));
            off += r * c;
        }
        RepMap::new_unchecked(source.clone(), target.clone(), comps)
    }

    /// Block-diagonal matrix on the total space (endomorphisms only, but shape-agnostic).
    pub fn total_matrix(&self) -> Matrix {
        let blocks: Vec<&Matrix> = self.comps.iter().collect();
        Matrix::block_diag(self.field(), &blocks)
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    /// Same map with source and target replaced by structurally equal modules.
    pub fn retarget(&self, source: &Rep, target: &Rep) -> RepMap {
        assert_eq!(source.dims(), self.source.dims());
        assert_eq!(target.dims(), self.target.dims());
        RepMap::new_unchecked(source.clone(), target.clone(), self.comps.clone())
    }
}

/// Sum of a list of maps with common source and target.
pub fn sum_maps(source: &Rep, target: &Rep, maps: &[RepMap]) -> RepMap {
    maps.iter().fold(source.zero_map_to(target), |acc, m| acc.add(m))
}

/// Linear combination `Σ c_i f_i`.
pub fn combine(source: &Rep, target: &Rep, maps: &[RepMap], coeffs: &[u32]) -> RepMap {
    let mut acc = source.zero_map_to(target);
    for (m, &c) in maps.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

/// Submodule spanned vertexwise by the columns of `bases` (assumed closed under arrows).
pub fn submodule(m: &Rep, bases: Vec<Matrix>) -> (Rep, RepMap) {
    let alg = m.algebra();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let image = m.arrow_map(i).mul(&bases[a.source]);
            bases[a.target]
                .solve_matrix(&image)
                .expect("shapes agree")
                .expect("subspace is closed under the arrow action")
        })
        .collect();
    let sub = Rep::new_unchecked(alg.clone(), dims, maps);
    let incl = RepMap::new_unchecked(sub.clone(), m.clone(), bases);
    (sub, incl)
}

/// Quotient by the submodule spanned vertexwise by `bases`.
pub fn quotient(m: &Rep, bases: &[Matrix]) -> (Rep, RepMap) {
    let alg = m.algebra();
    let proj: Vec<Matrix> = bases.iter().map(|b| b.cokernel_projection()).collect();
    let right_inv: Vec<Matrix> = proj
        .iter()
        .map(|q| q.right_inverse().expect("cokernel projection has full row rank"))
        .collect();
    let dims: Vec<usize> = proj.iter().map(|q| q.rows()).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| proj[a.target].mul(m.arrow_map(i)).mul(&right_inv[a.source]))
        .collect();
    let q = Rep::new_unchecked(alg.clone(), dims, maps);
    let pi = RepMap::new_unchecked(m.clone(), q.clone(), proj);
    (q, pi)
}

/// Kernel with its inclusion.
pub fn kernel_of(f: &RepMap) -> (Rep, RepMap) {
    let bases = f.comps().iter().map(|c| c.kernel_basis()).collect();
    submodule(f.source(), bases)
}

/// Cokernel with its projection.
pub fn cokernel_of(f: &RepMap) -> (Rep, RepMap) {
    let bases: Vec<Matrix> = f.comps().iter().map(|c| c.column_basis()).collect();
    quotient(f.target(), &bases)
}

/// Image `I` with the corestriction `M -> I` and the inclusion `I -> N`.
pub fn image_of(f: &RepMap) -> (Rep, RepMap, RepMap) {
    let bases: Vec<Matrix> = f.comps().iter().map(|c| c.column_basis()).collect();
    let (img, incl) = submodule(f.target(), bases);
    let cores = f
        .comps()
        .iter()
        .zip(incl.comps())
        .map(|(c, b)| b.solve_matrix(c).expect("shapes agree").expect("image contains the map"))
        .collect();
    let corestriction = RepMap::new_unchecked(f.source().clone(), img.clone(), cores);
    (img, corestriction, incl)
}

/// Direct sum with its injections and projections.
pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Rep]) -> Result<(Rep, Vec<RepMap>, Vec<RepMap>)> {
    if parts.iter().any(|p| !p.algebra().same_as(alg)) {
        return Err(Error::AlgebraMismatch);
    }
    let fp = alg.field();
    let n = alg.vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let maps = (0..alg.arrows().len())
        .map(|i| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.arrow_map(i)).collect();
            Matrix::block_diag(fp, &blocks)
        })
        .collect();
    let sum = Rep::new_unchecked(alg.clone(), dims.clone(), maps);
    let mut offs = vec![0usize; n];
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    for p in parts {
        let mut ic = Vec::new();
        let mut pc = Vec::new();
        for v in 0..n {
            let mut i = Matrix::zeros(fp, dims[v], p.dim_at(v));
            i.set_block(offs[v], 0, &Matrix::identity(fp, p.dim_at(v)));
            pc.push(i.transpose());
            ic.push(i);
            offs[v] += p.dim_at(v);
        }
        incls.push(RepMap::new_unchecked(p.clone(), sum.clone(), ic));
        projs.push(RepMap::new_unchecked(sum.clone(), p.clone(), pc));
    }
    Ok((sum, incls, projs))
}

/// Direct sum of maps `⊕ f_i : ⊕ A_i -> ⊕ B_i`.
pub fn direct_sum_maps(alg: &Arc<Algebra>, maps: &[RepMap]) -> Result<RepMap> {
    let sources: Vec<Rep> = maps.iter().map(|m| m.source().clone()).collect();
    let targets: Vec<Rep> = maps.iter().map(|m| m.target().clone()).collect();
    let (s, _, s_proj) = direct_sum(alg, &sources)?;
    let (t, t_incl, _) = direct_sum(alg, &targets)?;
    let parts: Vec<RepMap> = maps
        .iter()
        .zip(s_proj.iter().zip(&t_incl))
        .map(|(m, (p, i))| i.compose(&m.compose(p)))
        .collect();
    Ok(sum_maps(&s, &t, &parts))
}

/// The duality `D = Hom_k(-, k)`, landing over the opposite algebra.
pub fn dual(m: &Rep) -> Rep {
    dual_over(m, &m.algebra().opposite())
}

/// Dual module over the supplied handle for the opposite algebra.
pub fn dual_over(m: &Rep, op: &Arc<Algebra>) -> Rep {
    debug_assert!(op.same_as(&m.algebra().opposite()));
    let maps = m.maps().iter().map(|a| a.transpose()).collect();
    Rep::new_unchecked(op.clone(), m.dims().to_vec(), maps)
}

/// `D f : D N -> D M` for `f : M -> N`.
pub fn dual_map(f: &RepMap) -> RepMap {
    let op = f.source().algebra().opposite();
    dual_map_over(f, &dual_over(f.target(), &op), &dual_over(f.source(), &op))
}

/// Dual map with explicitly supplied dual modules (which must match entry for entry).
pub fn dual_map_over(f: &RepMap, dual_target: &Rep, dual_source: &Rep) -> RepMap {
    let comps = f.comps().iter().map(|c| c.transpose()).collect();
    RepMap::new_unchecked(dual_target.clone(), dual_source.clone(), comps)
}

/// Whether two maps are equal after rebasing (coordinates and module shapes only).
pub fn same_coords(f: &RepMap, g: &RepMap) -> bool {
    f.comps() == g.comps()
}
