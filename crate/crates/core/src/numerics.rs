//! Dense complex matrices and a reproducible, splittable random source.
//!
//! The relay formulas only ever need products, conjugate transposes, traces
//! and inverses of small Gram matrices, so this module carries exactly that
//! and nothing more.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{RelayError, Result};

/// Pivots below this fraction of the largest diagonal magnitude are treated as zero.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = CMat::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(RelayError::InvalidInput(format!(
                "{} entries cannot form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMat { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(RelayError::InvalidInput("ragged rows".into()));
        }
        CMat::from_vec(n_rows, n_cols, rows.concat())
    }

    /// Real scalar as a 1x1 matrix.
    pub fn scalar(value: Complex64) -> Self {
        CMat {
            rows: 1,
            cols: 1,
            data: vec![value],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Multiplies column `c` by a real factor in place.
    pub fn scale_column(&mut self, c: usize, factor: f64) {
        for r in 0..self.rows {
            self[(r, c)] *= factor;
        }
    }

    pub fn scaled(&self, factor: f64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CMat) -> Result<CMat> {
        if self.shape() != other.shape() {
            return Err(RelayError::DimensionMismatch {
                op: "add",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Squared Frobenius norm.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Counter-based random source: a `(seed, stream)` pair names one
/// independent ChaCha keystream, so any worker can rebuild the exact
/// sequence for a trial without sharing generator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomSource {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        RandomSource { seed, stream }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// Two child sources on streams `2s` and `2s + 1`.
    ///
    /// Children of distinct parents never collide as long as parent streams
    /// stay below `2^63`.
    pub fn split_pair(&self) -> (RandomSource, RandomSource) {
        let base = self.stream << 1;
        (
            RandomSource::new(self.seed, base),
            RandomSource::new(self.seed, base | 1),
        )
    }
}

/// One CN(0, 1) sample: real and imaginary parts are independent N(0, 1/2).
#[inline]
pub fn cgauss<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Matrix with i.i.d. CN(0, 1) entries, filled row-major from `source`.
pub fn cgauss_matrix(rows: usize, cols: usize, source: &RandomSource) -> CMat {
    let mut rng = source.rng();
    let data = (0..rows * cols).map(|_| cgauss(&mut rng)).collect();
    CMat::from_vec(rows, cols, data).expect("cgauss_matrix needs rows, cols >= 1")
}

/// Conjugate transpose.
pub fn herm(a: &CMat) -> CMat {
    let mut out = CMat::zeros(a.cols, a.rows);
    for r in 0..a.rows {
        for c in 0..a.cols {
            out[(c, r)] = a[(r, c)].conj();
        }
    }
    out
}

pub fn matmul(a: &CMat, b: &CMat) -> Result<CMat> {
    if a.cols != b.rows {
        return Err(RelayError::DimensionMismatch {
            op: "matmul",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    let mut out = CMat::zeros(a.rows, b.cols);
    for r in 0..a.rows {
        let out_row = &mut out.data[r * b.cols..(r + 1) * b.cols];
        for (k, &a_rk) in a.row(r).iter().enumerate() {
            if a_rk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, &b_kc) in out_row.iter_mut().zip(b.row(k)) {
                *o += a_rk * b_kc;
            }
        }
    }
    Ok(out)
}

/// Gram matrix `A^H A`, accumulated in one pass over the rows of `A`.
pub fn gram(a: &CMat) -> CMat {
    let k = a.cols;
    let mut out = CMat::zeros(k, k);
    for r in 0..a.rows {
        let row = a.row(r);
        for i in 0..k {
            let ci = row[i].conj();
            for (j, &x) in row.iter().enumerate().skip(i) {
                out.data[i * k + j] += ci * x;
            }
        }
    }
    for i in 0..k {
        out.data[i * k + i].im = 0.0;
        for j in 0..i {
            out.data[i * k + j] = out.data[j * k + i].conj();
        }
    }
    out
}

pub fn trace(a: &CMat) -> Result<Complex64> {
    if !a.is_square() {
        return Err(RelayError::NotSquare {
            op: "trace",
            rows: a.rows,
            cols: a.cols,
        });
    }
    Ok((0..a.rows).map(|i| a[(i, i)]).sum())
}

/// Inverse of a Hermitian positive-definite matrix.
///
/// Gauss-Jordan elimination with partial pivoting; the result is
/// symmetrized as `(X + X^H) / 2`.
pub fn inv_hermitian(a: &CMat) -> Result<CMat> {
    if !a.is_square() {
        return Err(RelayError::NotSquare {
            op: "inv_hermitian",
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let scale = (0..n).map(|i| a[(i, i)].norm()).fold(0.0, f64::max);
    let threshold = SINGULAR_PIVOT_RATIO * scale;

    let mut work = a.clone();
    let mut inv = CMat::identity(n);

    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|r| (r, work[(r, col)].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_mag.is_nan() || pivot_mag <= threshold {
            return Err(RelayError::Singular {
                pivot: pivot_mag.max(0.0),
            });
        }
        if pivot_row != col {
            swap_rows(&mut work, pivot_row, col);
            swap_rows(&mut inv, pivot_row, col);
        }

        let p_inv = work[(col, col)].inv();
        for c in 0..n {
            work[(col, c)] *= p_inv;
            inv[(col, c)] *= p_inv;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[(r, col)];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..n {
                let w = work[(col, c)];
                let v = inv[(col, c)];
                work[(r, c)] -= factor * w;
                inv[(r, c)] -= factor * v;
            }
        }
    }

    let mut sym = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            sym[(i, j)] = (inv[(i, j)] + inv[(j, i)].conj()) * 0.5;
        }
    }
    Ok(sym)
}

fn swap_rows(m: &mut CMat, a: usize, b: usize) {
    let cols = m.cols;
    for c in 0..cols {
        m.data.swap(a * cols + c, b * cols + c);
    }
}

/// Inner product `x^H y`.
#[inline]
pub fn dot_h(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}
