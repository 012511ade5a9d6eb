//! Small dense complex linear algebra.
//!
//! Everything here works on [`ComplexMatrix`], a square row-major matrix of
//! [`Complex64`]. The matrices in scope are tiny (4×4 for the PPT test, at most
//! a few hundred rows for validity checks), so the routines favour clarity and
//! exact reproducibility over blocking or vectorisation.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Relative off-diagonal Frobenius norm at which the Jacobi sweep stops.
const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (max |a - a†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("expected a square matrix, got {rows} rows with a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has no entries")]
    Empty,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// Dense square complex matrix, indexed `[(row, col)]`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        ComplexMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from a closure over `(row, col)`.
    ///
    /// Panics if `dim == 0` or the closure produces a non-finite entry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let z = f(r, c);
                assert!(z.re.is_finite() && z.im.is_finite(), "non-finite entry at ({r}, {c})");
                data.push(z);
            }
        }
        ComplexMatrix { dim, data }
    }

    /// Row-major flat data of length `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::DimensionMismatch { expected: dim * dim, actual: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(LinalgError::NonFinite { row: k / dim, col: k % dim });
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::NotSquare { rows: dim, cols: row.len() });
            }
            data.extend(row);
        }
        Self::from_vec(dim, data)
    }

    /// Real matrix from nested rows; convenient for the real-valued states in tests.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect())
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |r, c| if r == c { Complex64::new(diag[r], 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.data[k * self.dim + k]).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, r: usize, c: usize, z: Complex64) {
        self.data[r * self.dim + c] = z;
    }

    pub(crate) fn add_at(&mut self, r: usize, c: usize, z: Complex64) {
        self.data[r * self.dim + c] += z;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.dim && c < self.dim, "index ({r}, {c}) out of bounds for dim {}", self.dim);
        &self.data[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`.
///
/// Entry `[(i·db + k), (j·db + l)]` is `a[i, j] · b[k, l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    let n = da * db;
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..da {
        for j in 0..da {
            let aij = a.data[i * da + j];
            for k in 0..db {
                for l in 0..db {
                    data[(i * db + k) * n + j * db + l] = aij * b.data[k * db + l];
                }
            }
        }
    }
    ComplexMatrix { dim: n, data }
}

/// Conjugate transpose.
pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim;
    let mut data = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            data.push(a.data[c * n + r].conj());
        }
    }
    ComplexMatrix { dim: n, data }
}

fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((a.data[r * n + c] - a.data[c * n + r].conj()).norm());
        }
    }
    worst
}

pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    hermitian_deviation(a) <= tol
}

/// Eigenvalues (ascending) and matching unit eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>, LinalgError> {
    hermitian_eigen(a, tol).map(|e| e.values)
}

/// Cyclic Jacobi diagonalisation with complex Givens rotations.
///
/// Each rotation first rephases column `q` so that the pivot `a[p, q]` is real,
/// then applies the classical real symmetric rotation. The diagonal updates use
/// the `a_pp - t·|a_pq|` form, so a 2×2 block with equal diagonal resolves
/// exactly. Sweeps stop once the off-diagonal Frobenius norm drops below
/// `1e-12·‖a‖` or after 100 sweeps.
pub fn hermitian_eigen(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen, LinalgError> {
    let deviation = hermitian_deviation(a);
    if deviation > tol {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let n = a.dim;
    // Symmetrise so the rotations see an exactly Hermitian input.
    let mut m = ComplexMatrix::from_fn(n, |r, c| {
        if r == c {
            Complex64::new(a[(r, r)].re, 0.0)
        } else {
            (a[(r, c)] + a[(c, r)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * m.frobenius_norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| m.data[k * n + k].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let values = order.iter().map(|&k| diag[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v.data[r * n + order[c]]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim;
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += m.data[r * n + c].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = m.dim;
    let apq = m.data[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }

    // Phase e = conj(a_pq)/|a_pq| applied to column q (and conj to row q).
    let phase = apq.conj() / mag;
    if phase != Complex64::new(1.0, 0.0) {
        for k in 0..n {
            m.data[k * n + q] *= phase;
            v.data[k * n + q] *= phase;
        }
        let pc = phase.conj();
        for k in 0..n {
            m.data[q * n + k] *= pc;
        }
    }

    let app = m.data[p * n + p].re;
    let aqq = m.data[q * n + q].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m.data[k * n + p];
        let akq = m.data[k * n + q];
        let new_kp = akp * c - akq * s;
        let new_kq = akp * s + akq * c;
        m.data[k * n + p] = new_kp;
        m.data[k * n + q] = new_kq;
        m.data[p * n + k] = new_kp.conj();
        m.data[q * n + k] = new_kq.conj();
    }
    m.data[p * n + p] = Complex64::new(app - t * mag, 0.0);
    m.data[q * n + q] = Complex64::new(aqq + t * mag, 0.0);
    m.data[p * n + q] = Complex64::new(0.0, 0.0);
    m.data[q * n + p] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = vkp * c - vkq * s;
        v.data[k * n + q] = vkp * s + vkq * c;
    }
}

/// Attempts a Cholesky factorisation of `a + shift·I`, treating `a` as Hermitian.
///
/// Success means every eigenvalue of `a` exceeds `-shift` (up to rounding).
pub fn cholesky_succeeds(a: &ComplexMatrix, shift: f64) -> bool {
    let n = a.dim;
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut d = a.data[j * n + j].re + shift;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if d.is_nan() || d <= 0.0 {
            return false;
        }
        let djj = d.sqrt();
        l[j * n + j] = Complex64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = a.data[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / djj;
        }
    }
    true
}
