//! Dense complex vectors and matrices for small single-qudit systems.
//!
//! Everything here is sized for `d <= 64` and stored row-major. The three
//! domain wrappers ([`StateVector`], [`Unitary`], [`DensityMatrix`]) check
//! their invariants once at construction and are immutable afterwards.

mod eigen;
mod serde_repr;

use std::fmt;
use std::ops::{Index, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigen::{hermitian_eigen, unitary_evolution, HermitianEigen};

pub type Complex = num_complex::Complex64;

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 64;

/// Default tolerance for unitarity, normalization and Hermiticity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Tolerance used when a caller hands in a state that must be normalized.
pub const NORMALIZATION_TOL: f64 = 1e-8;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    /// Builds a matrix from `f(row, col)` with zero-based indices.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self::from_data(dim, data)
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            check_same_dim(dim, row.len())?;
            data.extend(row);
        }
        Self::from_data(dim, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[Complex]) -> Result<Self> {
        Self::from_fn(values.len(), |r, c| {
            if r == c {
                values[r]
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    fn from_data(dim: usize, data: Vec<Complex>) -> Result<Self> {
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<Complex> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut data = vec![Complex::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        Matrix { dim: d, data }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        check_same_dim(self.dim, rhs.dim)?;
        let d = self.dim;
        let mut data = vec![Complex::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
        Ok(Matrix { dim: d, data })
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        check_same_dim(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scale(&self, s: Complex) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        check_same_dim(self.dim, rhs.dim)?;
        Ok(Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.try_add(&rhs.scale(Complex::new(-1.0, 0.0)))
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Matrix) -> Result<f64> {
        check_same_dim(self.dim, rhs.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.data[r * d + c] - self.data[c * d + r].conj()).norm());
            }
        }
        worst
    }

    /// `max |M M† - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self * &self.adjoint();
        let id = Matrix::identity(self.dim).expect("dimension already validated");
        prod.max_abs_diff(&id).expect("same dimension")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex;

    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.data[r * self.dim + c]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    /// Panics on dimension mismatch; use [`Matrix::try_mul`] for a checked product.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pure state of a single qudit. Basis indices are 1-based at the API.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "serde_repr::VectorRepr", into = "serde_repr::VectorRepr")]
pub struct StateVector {
    amps: Vec<Complex>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex>) -> Result<Self> {
        check_dim(amps.len())?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state vector"));
        }
        Ok(Self { amps })
    }

    /// Normalizes `amps` before wrapping them.
    pub fn normalized(amps: Vec<Complex>) -> Result<Self> {
        let raw = Self::new(amps)?;
        let n = raw.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(Self {
            amps: raw.amps.into_iter().map(|z| z / n).collect(),
        })
    }

    /// `|index⟩` with a 1-based index.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex::new(0.0, 0.0); dim];
        amps[index - 1] = Complex::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex] {
        &self.amps
    }

    /// Amplitude of the 1-based basis state `index`.
    pub fn amplitude(&self, index: usize) -> Result<Complex> {
        if index == 0 || index > self.dim() {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.dim(),
            });
        }
        Ok(self.amps[index - 1])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Born-rule probabilities, one per basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn scale(&self, c: Complex) -> StateVector {
        StateVector {
            amps: self.amps.iter().map(|z| z * c).collect(),
        }
    }

    /// True iff some unit phase `c` gives `‖self - c·other‖ ≤ tol`.
    ///
    /// The phase is read off the largest-magnitude component of `other`, so
    /// the ratio never divides by a near-zero amplitude.
    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        check_same_dim(self.dim(), other.dim())?;
        let anchor = other
            .amps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, _)| i)
            .expect("dim >= 1");
        let ratio = self.amps[anchor] / other.amps[anchor];
        let phase = if ratio.is_finite() && ratio.norm() > 0.0 {
            ratio / ratio.norm()
        } else {
            Complex::new(1.0, 0.0)
        };
        Ok(self.distance(&other.scale(phase))? <= tol)
    }
}

/// Unitary operator on a single qudit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "serde_repr::MatrixRepr", into = "serde_repr::MatrixRepr")]
pub struct Unitary(Matrix);

impl Unitary {
    pub fn new(m: Matrix) -> Result<Self> {
        Self::with_tolerance(m, DEFAULT_TOL)
    }

    pub fn with_tolerance(m: Matrix, tol: f64) -> Result<Self> {
        let err = m.unitarity_error();
        if err > tol {
            return Err(Error::NotUnitary(err));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix that is unitary by construction (products, adjoints,
    /// exponentials of Hermitian generators).
    pub(crate) fn from_trusted(m: Matrix) -> Self {
        debug_assert!(m.unitarity_error() < 1e-8);
        Self(m)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(Matrix::identity(dim)?))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Conjugate transpose. Exact: `u.adjoint().adjoint() == u`.
    pub fn adjoint(&self) -> Unitary {
        Unitary(self.0.adjoint())
    }

    /// `self · psi`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        StateVector::new(self.0.mul_vec(&psi.amps)?)
    }

    /// Operator product `self · rhs` (apply `rhs` first).
    pub fn then_after(&self, rhs: &Unitary) -> Result<Unitary> {
        Ok(Unitary(self.0.try_mul(&rhs.0)?))
    }

    /// Phase-insensitive gate fidelity `|Tr(self† · other)| / d`.
    pub fn gate_fidelity(&self, other: &Unitary) -> Result<f64> {
        check_same_dim(self.dim(), other.dim())?;
        let d = self.dim();
        let mut tr = Complex::new(0.0, 0.0);
        for r in 0..d {
            for c in 0..d {
                tr += self.0[(r, c)].conj() * other.0[(r, c)];
            }
        }
        Ok(tr.norm() / d as f64)
    }
}

/// Density matrix (or traceless deviation matrix) of a single qudit.
///
/// Construction only enforces Hermiticity; [`DensityMatrix::is_physical`]
/// additionally checks unit trace and positivity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "serde_repr::MatrixRepr", into = "serde_repr::MatrixRepr")]
pub struct DensityMatrix(Matrix);

impl DensityMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        Self::with_tolerance(m, DEFAULT_TOL)
    }

    pub fn with_tolerance(m: Matrix, tol: f64) -> Result<Self> {
        let err = m.hermiticity_error();
        if err > tol {
            return Err(Error::NotHermitian(err));
        }
        Ok(Self(m))
    }

    /// Rank-1 projector `|psi⟩⟨psi|`.
    pub fn outer(psi: &StateVector) -> Result<Self> {
        let n = psi.norm();
        if (n - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(n));
        }
        let a = psi.amps();
        Ok(Self(Matrix::from_fn(a.len(), |r, c| a[r] * a[c].conj())?))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Ok(Self(
            Matrix::identity(dim)?.scale(Complex::new(1.0 / dim as f64, 0.0)),
        ))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `⟨target|rho|target⟩`.
    pub fn fidelity(&self, target: &StateVector) -> Result<f64> {
        let rho_t = self.0.mul_vec(target.amps())?;
        Ok(target
            .amps()
            .iter()
            .zip(&rho_t)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex>()
            .re)
    }

    /// `U rho U†`.
    pub fn evolve(&self, u: &Unitary) -> Result<DensityMatrix> {
        let m = u.0.try_mul(&self.0)?.try_mul(&u.0.adjoint())?;
        Ok(Self(hermitize(m)))
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.0).values
    }

    /// Unit trace and no eigenvalue below `-tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        (self.trace() - 1.0).abs() <= tol && self.eigenvalues().iter().all(|&l| l >= -tol)
    }

    /// Real diagonal, 1-based index order.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }
}

/// Averages `m` with its adjoint to remove round-off asymmetry.
pub(crate) fn hermitize(m: Matrix) -> Matrix {
    let adj = m.adjoint();
    m.try_add(&adj)
        .expect("same dimension")
        .scale(Complex::new(0.5, 0.0))
}
