//! Univariate polynomials over `F_p` and their factorization.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the zero polynomial is the empty vector.

use rand::Rng;

use super::field::Fp;
use super::matrix::{Matrix, Span};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    fp: Fp,
    c: Vec<u32>,
}

impl Poly {
    pub fn new(fp: Fp, mut c: Vec<u32>) -> Self {
        for x in c.iter_mut() {
            *x %= fp.p();
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { fp, c }
    }

    pub fn zero(fp: Fp) -> Self {
        Poly { fp, c: Vec::new() }
    }

    pub fn one(fp: Fp) -> Self {
        Poly::new(fp, vec![1])
    }

    pub fn x(fp: Fp) -> Self {
        Poly::new(fp, vec![0, 1])
    }

    pub fn monomial(fp: Fp, coeff: u32, deg: usize) -> Self {
        let mut c = vec![0; deg + 1];
        c[deg] = coeff;
        Poly::new(fp, c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.fp.inv(self.lead()))
    }

    pub fn scale(&self, s: u32) -> Poly {
        Poly::new(self.fp, self.c.iter().map(|&a| self.fp.mul(a, s)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| self.fp.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(self.fp, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| self.fp.sub(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(self.fp, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.fp);
        }
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = self.fp.mul_add(c[i + j], a, b);
            }
        }
        Poly::new(self.fp, c)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let fp = self.fp;
        let dd = d.degree().expect("polynomial division by zero");
        let inv = fp.inv(d.lead());
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(fp), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = fp.mul(r[i + dd], inv);
            q[i] = coef;
            if coef == 0 {
                continue;
            }
            let nc = fp.neg(coef);
            for (j, &b) in d.c.iter().enumerate() {
                r[i + j] = fp.mul_add(r[i + j], nc, b);
            }
        }
        r.truncate(dd);
        (Poly::new(fp, q), Poly::new(fp, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*o`, `g` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let fp = self.fp;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(fp), Poly::zero(fp));
        let (mut t0, mut t1) = (Poly::zero(fp), Poly::one(fp));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fp.inv(r0.lead());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.fp).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let fp = self.fp;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| fp.mul(a, (i as u64 % fp.p() as u64) as u32))
            .collect();
        Poly::new(fp, c)
    }

    /// Evaluates at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let fp = self.fp;
        let mut acc = Matrix::zeros(fp, m.rows(), m.cols());
        for &a in self.c.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(fp, m.rows()).scale(a));
        }
        acc
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Poly {
        let p = self.fp.p() as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        // a^p = a in F_p, so coefficients are unchanged
        Poly::new(self.fp, c)
    }

    /// Squarefree factorization: `(factor, multiplicity)` pairs with pairwise coprime
    /// squarefree monic factors.
    pub fn squarefree_factorization(&self) -> Vec<(Poly, usize)> {
        let fp = self.fp;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        if d.is_zero() {
            for (g, m) in f.pth_root().squarefree_factorization() {
                out.push((g, m * fp.p() as usize));
            }
            return out;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            for (g, m) in c.pth_root().squarefree_factorization() {
                out.push((g, m * fp.p() as usize));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let fp = self.fp;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Poly::x(fp);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(fp.p() as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            let deg = f.degree().unwrap();
            out.push((f, deg));
        }
        out
    }

    /// Splits a product of distinct irreducibles, all of degree `d`.
    fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Poly> {
        let fp = self.fp;
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.clone()];
        }
        let p = fp.p() as u128;
        loop {
            let a = Poly::new(fp, (0..n).map(|_| rng.gen_range(0..fp.p())).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = if fp.p() == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                self.gcd(&acc)
            } else {
                let e = (p.pow(d as u32) - 1) / 2;
                let b = a.powmod(e, self).sub(&Poly::one(fp));
                self.gcd(&b)
            };
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.divrem(&g).0.monic();
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    pub fn factor<R: Rng>(&self, rng: &mut R) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (sf, m) in self.squarefree_factorization() {
            for (g, d) in sf.distinct_degree() {
                for irr in g.equal_degree(d, rng) {
                    out.push((irr.monic(), m));
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.c).cmp(&(b.0.degree(), &b.0.c)));
        out
    }
}

/// Minimal polynomial of a square matrix, from the first linear dependence among its powers.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    let fp = m.field();
    let n = m.rows();
    assert!(m.is_square());
    if n == 0 {
        return Poly::one(fp);
    }
    let mut powers: Vec<Vec<u32>> = vec![Matrix::identity(fp, n).to_vec()];
    let mut span = Span::zero(fp, n * n);
    span.insert(&powers[0]);
    let mut cur = Matrix::identity(fp, n);
    loop {
        cur = cur.mul(m);
        let v = cur.to_vec();
        if span.contains(&v) {
            let cols = Matrix::from_columns(fp, n * n, &powers);
            let coeffs = cols.solve(&v).expect("shapes agree").expect("vector lies in span");
            let mut c: Vec<u32> = coeffs.iter().map(|&a| fp.neg(a)).collect();
            c.push(1);
            return Poly::new(fp, c);
        }
        span.insert(&v);
        powers.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn poly(p: u32, c: &[i64]) -> Poly {
        let fp = f(p);
        Poly::new(fp, c.iter().map(|&x| fp.reduce(x)).collect())
    }

    fn product(fs: &[(Poly, usize)], fp: Fp) -> Poly {
        fs.iter().fold(Poly::one(fp), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn divrem_reconstructs() {
        let a = poly(7, &[1, 2, 3, 4, 5]);
        let b = poly(7, &[3, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn factor_small_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-1)^2 (x^2+1) over F_7; x^2+1 is irreducible mod 7
        let a = poly(7, &[-1, 1]);
        let b = poly(7, &[1, 0, 1]);
        let target = a.mul(&a).mul(&b);
        let fs = target.factor(&mut rng);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs, f(7)), target.monic());
        // x^4 - x over F_2 = x(x+1)(x^2+x+1)
        let t2 = poly(2, &[0, 1, 0, 0, 1]);
        let fs2 = t2.factor(&mut rng);
        assert_eq!(fs2.len(), 3);
        assert_eq!(product(&fs2, f(2)), t2);
        // inseparable power: x^3 + 1 = (x+1)^3 over F_3
        let t3 = poly(3, &[1, 0, 0, 1]);
        let fs3 = t3.factor(&mut rng);
        assert_eq!(fs3, vec![(poly(3, &[1, 1]), 3)]);
    }

    #[test]
    fn minimal_polynomial_examples() {
        let fp = f(32003);
        let m = Matrix::from_rows(fp, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(minimal_polynomial(&m), poly(32003, &[-2, 1]));
        let n = Matrix::from_rows(fp, &[vec![0, 1], vec![0, 0]]);
        assert_eq!(minimal_polynomial(&n), poly(32003, &[0, 0, 1]));
        let z = Matrix::zeros(fp, 0, 0);
        assert_eq!(minimal_polynomial(&z), Poly::one(fp));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(11, &[1, 0, 1, 3]);
        let b = poly(11, &[2, 5, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
