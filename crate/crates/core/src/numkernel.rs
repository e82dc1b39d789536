//! Dense complex linear algebra on small tensor-product spaces.
//!
//! Everything here is row-major and deliberately naive: the largest objects
//! handled by the crate are `d^5 x d^5` with `d <= 8`. Composite indices
//! follow the big-endian convention `|i> (x) |j>  ->  i * d + j`, so the
//! leftmost tensor factor is the most significant digit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Build a complex scalar, rejecting NaN and infinities.
pub fn scalar(re: f64, im: f64) -> Result<C64> {
    if re.is_finite() && im.is_finite() {
        Ok(C64::new(re, im))
    } else {
        Err(Error::NonFinite("scalar"))
    }
}

fn all_finite(data: &[C64]) -> bool {
    data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Absolute comparison threshold used by every `approx_eq`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    /// Products of up to a dozen small matrices.
    pub const DEFAULT: Tolerance = Tolerance(1e-10);
    /// Longer chains such as the eight-projector flow diagram.
    pub const LONG_CHAIN: Tolerance = Tolerance(1e-9);

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }

    pub fn accepts(self, residual: f64) -> bool {
        residual <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension);
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                op: "Matrix::new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Real-valued rows, mostly for writing down fixed matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Matrix::new(r, c, data)
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "zero-sized matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |r, c| if r == c { entries[r] } else { ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: C64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (br, bc) = other.shape();
        Matrix::from_fn(self.rows * br, self.cols * bc, |r, c| {
            self.get(r / br, c / bc) * other.get(r % br, c % bc)
        })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, op: &'static str, f: impl Fn(C64, C64) -> C64) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn scale(&self, factor: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(C64::conj).collect(),
        }
    }

    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Dimension {
                op: "trace",
                left: self.shape(),
                right: self.shape(),
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::Dimension {
                op: "apply",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        let amps = (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(StateVector { amps })
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension {
                op: "pow",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Gauss-Jordan inversion with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension {
                op: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        let scale = self.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a.get(x, col).norm().total_cmp(&a.get(y, col).norm()))
                .expect("non-empty range");
            if a.get(pivot, col).norm() <= scale * 1e-13 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv();
            for c in 0..n {
                a.set(col, c, a.get(col, c) * p);
                inv.set(col, c, inv.get(col, c) * p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == ZERO {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, a.get(r, c) - f * a.get(col, c));
                    inv.set(r, c, inv.get(r, c) - f * inv.get(col, c));
                }
            }
        }
        Ok(inv)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_residual(&self, other: &Matrix) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension {
                op: "max_residual",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Matrix, tol: Tolerance) -> Result<bool> {
        Ok(tol.accepts(self.max_residual(other)?))
    }

    /// Residual of `m m^dagger` against the identity; `None` for non-square input.
    pub fn unitarity_residual(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let prod = self * &self.dagger();
        prod.max_residual(&Matrix::identity(self.rows)).ok()
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        self.unitarity_residual().is_some_and(|r| tol.accepts(r))
    }

    pub fn is_hermitian(&self, tol: Tolerance) -> bool {
        self.is_square() && self.max_residual(&self.dagger()).is_ok_and(|r| tol.accepts(r))
    }
}

/// Kronecker product of a list of factors, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
    factors.into_iter().fold(Matrix::identity(1), |acc, m| acc.kron(m))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.get(r, c);
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    /// Panics on shape mismatch; use [`Matrix::checked_mul`] for a fallible product.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Mul<&StateVector> for &Matrix {
    type Output = StateVector;

    fn mul(self, rhs: &StateVector) -> StateVector {
        self.apply(rhs).expect("matrix-vector shape mismatch")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(-ONE)
    }
}

/// A ket in a finite-dimensional space.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if !all_finite(&amps) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(StateVector { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        StateVector::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis ket `|index>` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        StateVector { amps }
    }

    /// Product basis ket `|i_1 i_2 ... i_k>` with every factor of dimension `d`.
    pub fn product_basis(d: usize, digits: &[usize]) -> Self {
        let index = digits.iter().fold(0, |acc, &i| {
            assert!(i < d, "digit {i} out of range for local dimension {d}");
            acc * d + i
        });
        StateVector::basis(d.pow(digits.len() as u32), index)
    }

    pub fn zeros(dim: usize) -> Self {
        StateVector { amps: vec![ZERO; dim] }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ContractViolation("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_same(other, "inner")?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        StateVector { amps }
    }

    pub fn scale(&self, factor: C64) -> StateVector {
        StateVector {
            amps: self.amps.iter().map(|&a| a * factor).collect(),
        }
    }

    pub fn checked_add(&self, other: &StateVector) -> Result<StateVector> {
        self.check_same(other, "add")?;
        Ok(StateVector {
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    /// `|self><other|`.
    pub fn outer(&self, other: &StateVector) -> Matrix {
        Matrix::from_fn(self.dim(), other.dim(), |r, c| self.amps[r] * other.amps[c].conj())
    }

    /// `|self><self|`.
    pub fn projector(&self) -> Matrix {
        self.outer(self)
    }

    /// The ket reshaped as a `rows x (dim / rows)` matrix, row-major.
    pub fn as_matrix(&self, rows: usize) -> Result<Matrix> {
        if rows == 0 || !self.dim().is_multiple_of(rows) {
            return Err(Error::Dimension {
                op: "as_matrix",
                left: (self.dim(), 1),
                right: (rows, 0),
            });
        }
        Matrix::new(rows, self.dim() / rows, self.amps.clone())
    }

    pub fn max_residual(&self, other: &StateVector) -> Result<f64> {
        self.check_same(other, "max_residual")?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &StateVector, tol: Tolerance) -> Result<bool> {
        Ok(tol.accepts(self.max_residual(other)?))
    }

    fn check_same(&self, other: &StateVector, op: &'static str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                op,
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector(")?;
        for (i, z) in self.amps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.4}{:+.4}i", z.re, z.im)?;
        }
        write!(f, ")")
    }
}

impl Add<&StateVector> for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        self.checked_add(rhs).expect("state sum dimension mismatch")
    }
}

impl Sub<&StateVector> for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: &StateVector) -> StateVector {
        self.checked_add(&rhs.scale(-ONE))
            .expect("state difference dimension mismatch")
    }
}
