//! Exact rational scalars, dense matrices and order-3 tensors.
//!
//! Everything here is exact: `Rational` is an arbitrary-precision fraction
//! kept in lowest terms, and every solve is done without rounding.
//! Inversion uses fraction-free (Bareiss-style) Gauss–Jordan elimination on
//! an integer-scaled copy of the input, so intermediate entries stay minors
//! of the original matrix.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as a rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as `"p"` or `"p/q"`.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parse `"p"` or `"p/q"` (surrounding whitespace allowed, q ≠ 0).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
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
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row-major data; errors if the length is not `rows*cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Small integer matrices, mostly for tests and the catalog.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// In-place `self += s * other`; shapes must agree.
    pub fn add_scaled(&mut self, other: &Matrix, s: &Rational) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        mat_mul(self, other)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        mat_inverse(self)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in 0..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in 0..m.cols {
                    let v = &m[(row, c)] * &f;
                    if !v.is_zero() {
                        m[(r, c)] -= v;
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

    /// Basis of the right kernel `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = &b[(k, j)];
                if !y.is_zero() {
                    out[(i, j)] += x * y;
                }
            }
        }
    }
    Ok(out)
}

/// Exact inverse. Rows are first scaled to integers (`N = D·M`), then a
/// fraction-free Gauss–Jordan sweep on `[N | I]` leaves `det·I | adj`, every
/// division in the sweep being exact.
pub fn mat_inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("inverse of {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut row_scale = Vec::with_capacity(n);
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let l = (0..n).fold(BigInt::one(), |acc, c| acc.lcm(m[(r, c)].denom()));
        let mut row: Vec<BigInt> =
            (0..n).map(|c| m[(r, c)].numer() * (&l / m[(r, c)].denom())).collect();
        row.extend((0..n).map(|c| if c == r { BigInt::one() } else { BigInt::zero() }));
        a.push(row);
        row_scale.push(l);
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                let v = &pivot * &a[i][j] - &f * &a[k][j];
                let (quo, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact fraction-free step");
                a[i][j] = quo;
            }
        }
        prev = pivot;
    }
    // Left block is now diag(det); N⁻¹ = right / det, and M⁻¹ = N⁻¹·D.
    let mut inv = Matrix::zeros(n, n);
    for r in 0..n {
        let d = &a[r][r];
        for c in 0..n {
            inv[(r, c)] = Rational::new(&a[r][n + c] * &row_scale[c], d.clone());
        }
    }
    Ok(inv)
}

/// A permutation of the three tensor slots: `images[s]` is the slot that
/// input slot `s` is moved to (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm3(pub [usize; 3]);

impl Perm3 {
    pub const ID: Perm3 = Perm3([0, 1, 2]);
    /// x⊗y⊗z ↦ z⊗x⊗y
    pub const S123: Perm3 = Perm3([1, 2, 0]);
    /// x⊗y⊗z ↦ y⊗z⊗x
    pub const S132: Perm3 = Perm3([2, 0, 1]);

    pub fn is_valid(&self) -> bool {
        let mut seen = [false; 3];
        self.0.iter().all(|&s| s < 3 && !std::mem::replace(&mut seen[s], true))
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &Perm3) -> Perm3 {
        Perm3([self.0[first.0[0]], self.0[first.0[1]], self.0[first.0[2]]])
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0; 3];
        for (s, &t) in self.0.iter().enumerate() {
            inv[t] = s;
        }
        Perm3(inv)
    }
}

/// Coordinates of an element of U⊗V⊗W: entry (p,q,t) is the coefficient of
/// e_p⊗e_q⊗e_t.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dims: (usize, usize, usize),
    data: Vec<Rational>,
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3 {:?} {{", self.dims)?;
        let mut first = true;
        for (idx, v) in self.nonzero() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, " {:?}: {}", idx, v)?;
        }
        write!(f, " }}")
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = Rational;
    fn index(&self, (p, q, t): (usize, usize, usize)) -> &Rational {
        &self.data[self.offset(p, q, t)]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (p, q, t): (usize, usize, usize)) -> &mut Rational {
        let o = self.offset(p, q, t);
        &mut self.data[o]
    }
}

impl Tensor3 {
    pub fn zeros(d1: usize, d2: usize, d3: usize) -> Self {
        Tensor3 { dims: (d1, d2, d3), data: vec![Rational::zero(); d1 * d2 * d3] }
    }

    pub fn cube(d: usize) -> Self {
        Self::zeros(d, d, d)
    }

    pub fn from_vec(dims: (usize, usize, usize), data: Vec<Rational>) -> Result<Self> {
        if data.len() != dims.0 * dims.1 * dims.2 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {:?} tensor",
                data.len(),
                dims
            )));
        }
        Ok(Tensor3 { dims, data })
    }

    fn offset(&self, p: usize, q: usize, t: usize) -> usize {
        assert!(p < self.dims.0 && q < self.dims.1 && t < self.dims.2, "tensor index out of range");
        (p * self.dims.1 + q) * self.dims.2 + t
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    pub fn is_cubic(&self) -> bool {
        self.dims.0 == self.dims.1 && self.dims.1 == self.dims.2
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rational)> + '_ {
        let (_, d2, d3) = self.dims;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(o, v)| {
            ((o / (d2 * d3), (o / d3) % d2, o % d3), v)
        })
    }

    /// In-place `self += s * other`.
    pub fn add_scaled(&mut self, other: &Tensor3, s: &Rational) {
        assert_eq!(self.dims, other.dims);
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn add(&self, other: &Tensor3) -> Result<Tensor3> {
        self.check_dims(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor3) -> Result<Tensor3> {
        self.check_dims(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Tensor3 {
        Tensor3 { dims: self.dims, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn check_dims(&self, other: &Tensor3) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    pub fn permute(&self, perm: Perm3) -> Result<Tensor3> {
        permute_tensor3(self, perm)
    }
}

/// Move slot `s` of every basis tensor to slot `perm.0[s]`.
pub fn permute_tensor3(t: &Tensor3, perm: Perm3) -> Result<Tensor3> {
    if !t.is_cubic() {
        return Err(Error::DimensionMismatch(format!("permuting a non-cubic {:?} tensor", t.dims)));
    }
    if !perm.is_valid() {
        return Err(Error::DimensionMismatch(format!("{:?} is not a permutation", perm)));
    }
    let d = t.dims.0;
    let mut out = Tensor3::cube(d);
    for (idx, v) in t.nonzero() {
        let src = [idx.0, idx.1, idx.2];
        let mut dst = [0; 3];
        for s in 0..3 {
            dst[perm.0[s]] = src[s];
        }
        out[(dst[0], dst[1], dst[2])] = v.clone();
    }
    Ok(out)
}

/// Componentwise helpers for coefficient vectors.
pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle_mul(a: &Matrix, b: &Matrix) -> Matrix {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).map(|k| &a[(i, k)] * &b[(k, j)]).sum()
        })
    }

    #[test]
    fn identity_times_m() {
        let m = Matrix::from_fn(2, 2, |i, j| q(i as i64 + 1, j as i64 + 2));
        assert_eq!(mat_mul(&Matrix::identity(2), &m).unwrap(), m);
    }

    #[test]
    fn nilpotent_square() {
        let n = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert!(mat_mul(&n, &n).unwrap().is_zero());
    }

    #[test]
    fn mul_matches_triple_loop() {
        let a = Matrix::from_fn(2, 2, |i, j| q(3 * i as i64 - j as i64, 2 + j as i64));
        let b = Matrix::from_fn(2, 2, |i, j| q(i as i64 - 2 * j as i64 + 1, 3));
        assert_eq!(mat_mul(&a, &b).unwrap(), oracle_mul(&a, &b));
    }

    #[test]
    fn mul_dimension_mismatch() {
        assert!(mat_mul(&Matrix::zeros(2, 3), &Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mat_inverse(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        let rot = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(mat_inverse(&rot).unwrap(), Matrix::from_i64(&[&[0, -1], &[1, 0]]));
        let d = 3;
        let block = Matrix::from_fn(2 * d, 2 * d, |i, j| {
            if j == i + d {
                int(1)
            } else if i == j + d {
                int(-1)
            } else {
                int(0)
            }
        });
        let inv = mat_inverse(&block).unwrap();
        assert_eq!(inv, block.neg());
        assert_eq!(mat_mul(&inv, &block).unwrap(), Matrix::identity(2 * d));
    }

    #[test]
    fn singular_detected() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(mat_inverse(&m), Err(Error::Singular)));
        assert!(matches!(mat_inverse(&Matrix::zeros(3, 3)), Err(Error::Singular)));
    }

    #[test]
    fn rational_text_roundtrip() {
        assert_eq!(format_rational(&q(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(parse_rational(" -3/2 ").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn nullspace_and_rank() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(is_zero_vec(&m.apply(&v).unwrap()));
        }
    }

    #[test]
    fn permutation_examples() {
        let mut t = Tensor3::cube(3);
        t[(0, 1, 2)] = int(1);
        assert_eq!(permute_tensor3(&t, Perm3::ID).unwrap(), t);
        let s = permute_tensor3(&t, Perm3::S123).unwrap();
        let mut expect = Tensor3::cube(3);
        expect[(2, 0, 1)] = int(1);
        assert_eq!(s, expect);
        assert_eq!(permute_tensor3(&s, Perm3::S132).unwrap(), t);
        assert!(permute_tensor3(&Tensor3::zeros(1, 2, 3), Perm3::ID).is_err());
    }
}
