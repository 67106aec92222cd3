use std::fmt;

use super::field::Fp;
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_p`.
///
/// Shapes with zero rows or zero columns are valid and stand for maps to or
/// from the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    fp: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(fp: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            fp,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(fp, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(fp: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % fp.p());
            }
        }
        Matrix { fp, rows, cols, data }
    }

    /// Builds from signed integer rows, reducing modulo `p`.
    pub fn from_rows(fp: Fp, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(fp, rows.len(), cols, |r, c| fp.reduce(rows[r][c]))
    }

    /// Builds from raw entries that must already lie in `[0, p)`.
    pub fn from_vec(fp: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        debug_assert!(data.iter().all(|&x| x < fp.p()));
        Matrix { fp, rows, cols, data }
    }

    /// A single column.
    pub fn column(fp: Fp, v: &[u32]) -> Self {
        Matrix::from_vec(fp, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(fp: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(fp, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, &x) in v.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.fp
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.fp.p();
    }
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == (r == c) as u32))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.fp, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), other.shape());
        let fp = self.fp;
        let p = fp.p() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b as u64) % p;
                }
            }
        }
        Matrix {
            fp,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| self.fp.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let fp = self.fp;
        Matrix {
            fp,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| fp.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let fp = self.fp;
        Matrix {
            fp,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| fp.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let fp = self.fp;
        Matrix {
            fp,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| fp.mul(a, s)).collect(),
        }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, other: &Matrix, s: u32) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let fp = self.fp;
        Matrix {
            fp,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| fp.mul_add(a, b, s)).collect(),
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.fp, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            fp: self.fp,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(fp: Fp, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(fp, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.fp, rows, cols, |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.fp, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.fp, idx.len(), self.cols, |r, c| self.get(idx[r], c))
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let fp = self.fp;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = fp.inv(m.get(row, col));
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = fp.mul(m.data[idx], inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let nf = fp.neg(factor);
                for c in col..m.cols {
                    let src = m.data[row * m.cols + c];
                    if src != 0 {
                        let idx = r * m.cols + c;
                        m.data[idx] = fp.mul_add(m.data[idx], nf, src);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space, one per free column in increasing order.
    pub fn kernel_basis(&self) -> Matrix {
        let fp = self.fp;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(fp, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, fp.neg(r.get(i, f)));
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, right-hand side has {}",
                self.rows,
                b.len()
            )));
        }
        let aug = self.hstack(&Matrix::column(self.fp, b));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Some `X` with `self * X = b` (column by column), or `None`.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve_matrix: matrix has {} rows, right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.fp, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, r.get(i, self.cols + c));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.fp, self.rows)).ok()??;
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Canonical basis of the column space (columns of the result).
    pub fn column_basis(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
    }

    /// A surjection `Q` (as rows) whose kernel is exactly the column space of `self`.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Some right inverse `R` with `self * R = I`, assuming full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve_matrix(&Matrix::identity(self.fp, self.rows)).ok()?
    }

    /// Some left inverse `L` with `L * self = I`, assuming full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        Some(self.transpose().right_inverse()?.transpose())
    }

    /// Row-major flattening, used as the coordinate vector of the matrix.
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.fp, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.fp.add(acc, self.get(i, i)))
    }
}

/// Membership `v ∈ span(columns of basis)`, with coefficients reproducing `v`.
pub fn in_span(basis: &Matrix, v: &[u32]) -> Result<Option<Vec<u32>>> {
    if v.len() != basis.rows() {
        return Err(Error::DimensionMismatch(format!(
            "in_span: basis vectors have length {}, candidate has {}",
            basis.rows(),
            v.len()
        )));
    }
    basis.solve(v)
}

/// Basis (as columns) of `span(a) + span(b)`.
pub fn subspace_sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subspace_sum: ambient dimensions {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(a.hstack(b).column_basis())
}

/// A subspace of `F_p^n` held in reduced echelon form, for repeated membership tests.
#[derive(Clone, Debug)]
pub struct Span {
    fp: Fp,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn zero(fp: Fp, ambient: usize) -> Self {
        Span {
            fp,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(fp: Fp, ambient: usize, vs: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut s = Span::zero(fp, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn full(fp: Fp, ambient: usize) -> Self {
        let mut s = Span::zero(fp, ambient);
        for i in 0..ambient {
            let mut e = vec![0; ambient];
            e[i] = 1;
            s.insert(&e);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored echelon rows.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "span ambient mismatch");
        let fp = self.fp;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                let nc = fp.neg(c);
                for (x, &y) in w.iter_mut().zip(row) {
                    if y != 0 {
                        *x = fp.mul_add(*x, nc, y);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let fp = self.fp;
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = fp.inv(w[p]);
        for x in w.iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let nc = fp.neg(c);
                for (x, &y) in row.iter_mut().zip(&w) {
                    if y != 0 {
                        *x = fp.mul_add(*x, nc, y);
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sum(&self, other: &Span) -> Span {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.fp, self.ambient, &self.rows)
    }
}
