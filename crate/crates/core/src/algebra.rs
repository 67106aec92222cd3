//! Bound quiver algebras `kQ/I` over a prime field.
//!
//! Vertices are 0-based internally and 1-based in every file format and
//! printed report. Paths are stored in traversal order (first arrow first);
//! the written form composes right to left, so `b.a` means "first `a`, then `b`".

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Fp, Span};

/// Paths of length at least this are never allowed to survive reduction.
pub const LENGTH_CAP: usize = 64;
const PATH_BUDGET: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::Invalid(format!("arrow {} has an endpoint out of range", a.name)));
            }
            if a.name.is_empty() || a.name.contains(|c: char| c.is_whitespace() || c == '.' || c == '*' || c == '+') {
                return Err(Error::Invalid(format!("bad arrow name {:?}", a.name)));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Invalid(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_out(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn arrows_in(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }
}

/// A path in traversal order. A trivial path has no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`; `None` if the endpoints do not meet.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    pub fn written(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.source + 1);
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A uniform linear combination of paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl Relation {
    pub fn written(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, arrows)| {
                let name = arrows.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join(".");
                format!("{}*{}", c, name)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A finite-dimensional bound quiver algebra with a reduced path basis.
pub struct Algebra {
    fp: Fp,
    quiver: Quiver,
    relations: Vec<Relation>,
    nilpotency: usize,
    basis: Vec<Path>,
    // [source][target] -> indices into `basis`
    by_pair: Vec<Vec<Vec<usize>>>,
    // normal form of every path of length < nilpotency
    normal: HashMap<(usize, Vec<usize>), Vec<(usize, u32)>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.fp.p())
            .field("vertices", &self.quiver.vertices)
            .field("arrows", &self.quiver.arrows)
            .field("relations", &self.relations)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.fp == other.fp && self.quiver == other.quiver && self.relations == other.relations)
    }
}
impl Eq for Algebra {}

fn check_path(q: &Quiver, arrows: &[usize]) -> Result<(usize, usize)> {
    let first = arrows.first().ok_or_else(|| Error::Invalid("empty path in relation".into()))?;
    let mut at = q.arrows[*first].target;
    for &a in &arrows[1..] {
        if q.arrows[a].source != at {
            return Err(Error::Invalid("relation path is not composable".into()));
        }
        at = q.arrows[a].target;
    }
    Ok((q.arrows[*first].source, at))
}

/// Enumerates every path up to length `max_len`, grouped by length.
fn paths_by_length(q: &Quiver, max_len: usize) -> Result<Vec<Vec<Path>>> {
    let mut out: Vec<Vec<Path>> = vec![(0..q.vertices).map(Path::trivial).collect()];
    let mut total = q.vertices;
    for _ in 0..max_len {
        let last = out.last().unwrap();
        let mut next = Vec::new();
        for p in last {
            for a in q.arrows_out(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path {
                    source: p.source,
                    target: q.arrows[a].target,
                    arrows,
                });
            }
        }
        total += next.len();
        if total > PATH_BUDGET {
            return Err(Error::NotFiniteDimensional(format!(
                "more than {PATH_BUDGET} paths before the relations became nilpotent"
            )));
        }
        let empty = next.is_empty();
        out.push(next);
        if empty {
            break;
        }
    }
    Ok(out)
}

/// Vectors `u·r·w` for every relation `r` and paths `u`, `w`, expressed over the
/// indexed paths. When `truncate_at` is set, terms of that length or longer are
/// dropped; otherwise products with any unindexed term are skipped.
fn ideal_generators(
    fp: Fp,
    relations: &[(usize, usize, Relation)],
    paths: &[Vec<Path>],
    index: &HashMap<(usize, Vec<usize>), usize>,
    truncate_at: Option<usize>,
) -> Vec<Vec<u32>> {
    let n = index.len();
    let max_len = paths.len() - 1;
    let mut gens = Vec::new();
    for (src, tgt, rel) in relations {
        let min_len = rel.terms.iter().map(|t| t.1.len()).min().unwrap_or(0);
        let max_term = rel.terms.iter().map(|t| t.1.len()).max().unwrap_or(0);
        let budget = truncate_at.map_or(max_len, |t| t.saturating_sub(1));
        for (lu, us) in paths.iter().enumerate() {
            for u in us.iter().filter(|u| u.target == *src) {
                for (lw, ws) in paths.iter().enumerate() {
                    if truncate_at.is_some() && lu + lw + min_len > budget {
                        continue;
                    }
                    if truncate_at.is_none() && lu + lw + max_term > max_len {
                        continue;
                    }
                    for w in ws.iter().filter(|w| w.source == *tgt) {
                        let mut v = vec![0u32; n];
                        let mut any = false;
                        for (c, arrows) in &rel.terms {
                            let mut full = u.arrows.clone();
                            full.extend_from_slice(arrows);
                            full.extend_from_slice(&w.arrows);
                            if let Some(t) = truncate_at {
                                if full.len() >= t {
                                    continue;
                                }
                            }
                            let idx = index[&(u.source, full)];
                            v[idx] = fp.add(v[idx], *c);
                            any = true;
                        }
                        if any {
                            gens.push(v);
                        }
                    }
                }
            }
        }
    }
    gens
}

fn index_paths(paths: &[Vec<Path>]) -> HashMap<(usize, Vec<usize>), usize> {
    let mut index = HashMap::new();
    for p in paths.iter().flatten() {
        let k = index.len();
        index.insert((p.source, p.arrows.clone()), k);
    }
    index
}

impl Algebra {
    pub fn new(fp: Fp, quiver: Quiver, relations: Vec<Relation>) -> Result<Arc<Algebra>> {
        let mut rels = Vec::new();
        let mut cleaned = Vec::new();
        for r in relations {
            let mut merged: Vec<(u32, Vec<usize>)> = Vec::new();
            for (c, path) in r.terms {
                if path.iter().any(|&a| a >= quiver.arrows.len()) {
                    return Err(Error::Invalid("relation mentions an unknown arrow".into()));
                }
                if path.len() < 2 {
                    return Err(Error::Invalid("relation paths must have length at least two".into()));
                }
                let c = c % fp.p();
                match merged.iter_mut().find(|t| t.1 == path) {
                    Some(t) => t.0 = fp.add(t.0, c),
                    None => merged.push((c, path)),
                }
            }
            merged.retain(|t| t.0 != 0);
            if merged.is_empty() {
                continue;
            }
            let (s, t) = check_path(&quiver, &merged[0].1)?;
            for (_, path) in &merged[1..] {
                if check_path(&quiver, path)? != (s, t) {
                    return Err(Error::Invalid("relation is not uniform: paths with different endpoints".into()));
                }
            }
            let rel = Relation { terms: merged };
            rels.push((s, t, rel.clone()));
            cleaned.push(rel);
        }

        let nilpotency = Self::find_nilpotency(fp, &quiver, &rels)?;
        let paths = paths_by_length(&quiver, nilpotency.saturating_sub(1))?;
        let paths: Vec<Vec<Path>> = paths.into_iter().take(nilpotency).collect();
        let index = index_paths(&paths);
        let gens = ideal_generators(fp, &rels, &paths, &index, Some(nilpotency));

        // columns ordered longest path first so that reduction rewrites long paths
        let mut order: Vec<(usize, Vec<usize>)> = index.keys().cloned().collect();
        order.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.cmp(b)));
        let col_of: HashMap<&(usize, Vec<usize>), usize> = order.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut span = Span::zero(fp, order.len());
        for g in &gens {
            let mut v = vec![0u32; order.len()];
            for (k, &i) in &index {
                v[col_of[k]] = g[i];
            }
            span.insert(&v);
        }
        let mut is_pivot = vec![false; order.len()];
        for &p in span.pivots() {
            is_pivot[p] = true;
        }

        let mut all: Vec<Path> = paths.iter().flatten().cloned().collect();
        all.sort_by(|a, b| (a.source, a.target, a.len(), &a.arrows).cmp(&(b.source, b.target, b.len(), &b.arrows)));
        let basis: Vec<Path> = all
            .iter()
            .filter(|p| !is_pivot[col_of[&(p.source, p.arrows.clone())]])
            .cloned()
            .collect();
        let basis_of_col: HashMap<usize, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (col_of[&(p.source, p.arrows.clone())], i))
            .collect();

        let mut normal = HashMap::new();
        for p in &all {
            let key = (p.source, p.arrows.clone());
            let col = col_of[&key];
            let nf = if let Some(&b) = basis_of_col.get(&col) {
                vec![(b, 1)]
            } else {
                let mut e = vec![0u32; order.len()];
                e[col] = 1;
                let red = span.reduce(&e);
                red.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (basis_of_col[&c], x))
                    .collect()
            };
            normal.insert(key, nf);
        }

        let n = quiver.vertices;
        let mut by_pair = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            by_pair[p.source][p.target].push(i);
        }

        Ok(Arc::new(Algebra {
            fp,
            quiver,
            relations: cleaned,
            nilpotency,
            basis,
            by_pair,
            normal,
            opposite: OnceLock::new(),
        }))
    }

    /// Smallest `N` such that every path of length `N` lies in the relation ideal.
    fn find_nilpotency(fp: Fp, q: &Quiver, rels: &[(usize, usize, Relation)]) -> Result<usize> {
        let homogeneous = rels
            .iter()
            .all(|(_, _, r)| r.terms.iter().all(|t| t.1.len() == r.terms[0].1.len()));
        let max_rel = rels.iter().flat_map(|(_, _, r)| r.terms.iter().map(|t| t.1.len())).max().unwrap_or(0);
        let min_rel = rels.iter().flat_map(|(_, _, r)| r.terms.iter().map(|t| t.1.len())).min().unwrap_or(usize::MAX);
        for len in 1..=LENGTH_CAP {
            let probe = paths_by_length(q, len)?;
            let Some(level) = probe.get(len) else {
                return Ok(len);
            };
            if level.is_empty() {
                return Ok(len);
            }
            if len < min_rel {
                continue;
            }
            let horizon = if homogeneous { len } else { len + 2 * max_rel };
            let paths = paths_by_length(q, horizon)?;
            let index = index_paths(&paths);
            let gens = ideal_generators(fp, rels, &paths, &index, None);
            let span = Span::from_vectors(fp, index.len(), gens.iter());
            let all_in = level.iter().all(|p| {
                let mut e = vec![0u32; index.len()];
                e[index[&(p.source, p.arrows.clone())]] = 1;
                span.contains(&e)
            });
            if all_in {
                return Ok(len);
            }
        }
        Err(Error::NotFiniteDimensional(format!(
            "paths of length {LENGTH_CAP} survive the relations"
        )))
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertices(&self) -> usize {
        self.quiver.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// All paths of this length or longer vanish.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis paths from `source` to `target`, as indices into [`Algebra::basis`].
    pub fn basis_between(&self, source: usize, target: usize) -> &[usize] {
        &self.by_pair[source][target]
    }

    pub fn is_hereditary_presentation(&self) -> bool {
        self.relations.is_empty() && self.quiver.is_acyclic()
    }

    /// Normal form of a path as a combination of basis paths.
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> Vec<(usize, u32)> {
        if arrows.len() >= self.nilpotency {
            return Vec::new();
        }
        self.normal
            .get(&(source, arrows.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Product of basis paths: `first` followed by `second`.
    pub fn mul_basis(&self, first: usize, second: usize) -> Vec<(usize, u32)> {
        let (a, b) = (&self.basis[first], &self.basis[second]);
        match a.then(b) {
            Some(p) => self.reduce_path(p.source, &p.arrows),
            None => Vec::new(),
        }
    }

    /// Dense element of the algebra from sparse basis coordinates.
    pub fn element(&self, terms: &[(usize, u32)]) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for &(i, c) in terms {
            v[i] = self.fp.add(v[i], c);
        }
        v
    }

    /// Product of dense elements: `first` followed by `second` (i.e. `second * first`
    /// in right-to-left notation).
    pub fn mul_elements(&self, first: &[u32], second: &[u32]) -> Vec<u32> {
        let fp = self.fp;
        let mut out = vec![0u32; self.dim()];
        for (i, &a) in first.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in second.iter().enumerate() {
                if b == 0 || self.basis[i].target != self.basis[j].source {
                    continue;
                }
                let ab = fp.mul(a, b);
                for (k, c) in self.mul_basis(i, j) {
                    out[k] = fp.mul_add(out[k], ab, c);
                }
            }
        }
        out
    }

    /// The opposite algebra: every arrow reversed, every relation path reversed.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let arrows = self
                    .quiver
                    .arrows
                    .iter()
                    .map(|a| Arrow {
                        name: a.name.clone(),
                        source: a.target,
                        target: a.source,
                    })
                    .collect();
                let quiver = Quiver {
                    vertices: self.quiver.vertices,
                    arrows,
                };
                let relations = self
                    .relations
                    .iter()
                    .map(|r| Relation {
                        terms: r
                            .terms
                            .iter()
                            .map(|(c, p)| (*c, p.iter().rev().copied().collect()))
                            .collect(),
                    })
                    .collect();
                Algebra::new(self.fp, quiver, relations).expect("opposite of an admissible algebra is admissible")
            })
            .clone()
    }

    /// Reinterprets a basis element of this algebra as an element of the opposite
    /// algebra (reversed path), reduced in the opposite basis.
    pub fn to_opposite(&self, elem: &[u32]) -> Vec<u32> {
        let op = self.opposite();
        let fp = self.fp;
        let mut out = vec![0u32; op.dim()];
        for (i, &c) in elem.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = &self.basis[i];
            let rev: Vec<usize> = p.arrows.iter().rev().copied().collect();
            for (k, d) in op.reduce_path(p.target, &rev) {
                out[k] = fp.mul_add(out[k], c, d);
            }
        }
        out
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn arrow(name: &str, s: usize, t: usize) -> Arrow {
        Arrow {
            name: name.into(),
            source: s,
            target: t,
        }
    }

    #[test]
    fn a2_has_dimension_three() {
        let q = Quiver::new(2, vec![arrow("a", 0, 1)]).unwrap();
        let alg = Algebra::new(fp(), q, vec![]).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.nilpotency(), 2);
        let written: Vec<String> = alg.basis().iter().map(|p| p.written(alg.quiver())).collect();
        assert_eq!(written, vec!["e1", "a", "e2"]);
    }

    #[test]
    fn kronecker_has_dimension_four() {
        let q = Quiver::new(2, vec![arrow("a", 0, 1), arrow("b", 0, 1)]).unwrap();
        assert_eq!(Algebra::new(fp(), q, vec![]).unwrap().dim(), 4);
    }

    #[test]
    fn loop_with_square_zero() {
        let q = Quiver::new(1, vec![arrow("x", 0, 0)]).unwrap();
        let alg = Algebra::new(fp(), q, vec![Relation { terms: vec![(1, vec![0, 0])] }]).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.mul_basis(1, 1).is_empty());
    }

    #[test]
    fn commutative_square_reduces() {
        // 1 -a-> 2 -b-> 4, 1 -c-> 3 -d-> 4 with b.a = d.c
        let q = Quiver::new(
            4,
            vec![arrow("a", 0, 1), arrow("b", 1, 3), arrow("c", 0, 2), arrow("d", 2, 3)],
        )
        .unwrap();
        let f = fp();
        let rel = Relation {
            terms: vec![(1, vec![0, 1]), (f.reduce(-1), vec![2, 3])],
        };
        let alg = Algebra::new(f, q, vec![rel]).unwrap();
        // 4 trivial + 4 arrows + one length-two class
        assert_eq!(alg.dim(), 9);
        let ba = alg.reduce_path(0, &[0, 1]);
        let dc = alg.reduce_path(0, &[2, 3]);
        assert_eq!(ba, dc);
    }

    #[test]
    fn non_admissible_input_is_rejected() {
        let f = fp();
        // x^2 - x^3 never kills x^2
        let q = Quiver::new(1, vec![arrow("x", 0, 0)]).unwrap();
        let rel = Relation {
            terms: vec![(1, vec![0, 0]), (f.reduce(-1), vec![0, 0, 0])],
        };
        assert!(matches!(Algebra::new(f, q, vec![rel]), Err(Error::NotFiniteDimensional(_))));
        // a single loop without relations
        let q = Quiver::new(1, vec![arrow("x", 0, 0)]).unwrap();
        assert!(Algebra::new(f, q, vec![]).is_err());
        // length-one relation
        let q = Quiver::new(2, vec![arrow("a", 0, 1)]).unwrap();
        assert!(Algebra::new(f, q, vec![Relation { terms: vec![(1, vec![0])] }]).is_err());
    }

    #[test]
    fn non_uniform_relation_is_rejected() {
        let q = Quiver::new(3, vec![arrow("a", 0, 1), arrow("b", 1, 2), arrow("c", 1, 1)]).unwrap();
        let rel = Relation {
            terms: vec![(1, vec![0, 1]), (1, vec![0, 2])],
        };
        assert!(Algebra::new(fp(), q, vec![rel]).is_err());
    }

    #[test]
    fn opposite_is_an_involution() {
        let q = Quiver::new(2, vec![arrow("a", 0, 1), arrow("b", 0, 1)]).unwrap();
        let alg = Algebra::new(fp(), q, vec![]).unwrap();
        let op = alg.opposite();
        assert_eq!(op.arrows()[0], arrow("a", 1, 0));
        assert_eq!(op.dim(), alg.dim());
        let opop = op.opposite();
        assert_eq!(*opop, *alg);
        assert_eq!(opop.quiver(), alg.quiver());
        assert_eq!(opop.relations(), alg.relations());
    }

    #[test]
    fn hereditary_dimension_counts_paths() {
        // A3 linear: 3 trivial + 2 arrows + 1 length-two path
        let q = Quiver::new(3, vec![arrow("a", 0, 1), arrow("b", 1, 2)]).unwrap();
        assert_eq!(Algebra::new(fp(), q, vec![]).unwrap().dim(), 6);
    }
}
