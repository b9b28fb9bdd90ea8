// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices and the few Hermitian primitives everything else
//! is built from.
//!
//! Matrices are small (the interesting cases are qubits and qutrits), so all
//! storage is a dense `nalgebra::DMatrix<Complex64>` behind the
//! [`ComplexMatrix`] newtype, which enforces squareness and finiteness.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Eigenvalues closer to zero than this many ulps of `max(1, ‖A‖_F)`, scaled
/// by the dimension, are below what the eigensolver can resolve and are
/// treated as exact zeros before taking square roots.
const RESOLUTION_ULPS: f64 = 16.0;

/// Numerical contract shared by all validators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative Frobenius tolerance for Hermiticity.
    pub herm_tol: f64,
    /// Absolute floor below which a negative eigenvalue is an error.
    pub psd_tol: f64,
    /// Absolute tolerance on `|Tr ρ - 1|`.
    pub trace_tol: f64,
    /// Absolute tolerance used when asserting equalities and bound validity.
    pub eq_tol: f64,
    /// Absolute tolerance on `‖Σ K†K - I‖_F`.
    pub complete_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm_tol: 1e-10,
            psd_tol: 1e-10,
            trace_tol: 1e-10,
            eq_tol: 1e-9,
            complete_tol: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("herm_tol", self.herm_tol),
            ("psd_tol", self.psd_tol),
            ("trace_tol", self.trace_tol),
            ("eq_tol", self.eq_tol),
            ("complete_tol", self.complete_tol),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }

    pub fn with_eq_tol(self, eq_tol: f64) -> Result<Self> {
        let tol = Tolerances { eq_tol, ..self };
        tol.validate()?;
        Ok(tol)
    }
}

/// A finite, square, complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.inner)
    }
}

impl ComplexMatrix {
    pub fn from_dmatrix(inner: DMatrix<C64>) -> Result<Self> {
        let (rows, cols) = inner.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        for col in 0..cols {
            for row in 0..rows {
                let z = inner[(row, col)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(ComplexMatrix { inner })
    }

    /// Build from row-major rows.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let d = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::NotSquare {
                rows: d,
                cols: bad.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    /// Build from a row-major slice of `d * d` entries.
    pub fn from_row_slice(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        ComplexMatrix {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        ComplexMatrix {
            inner: DMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    C64::new(diag[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        }
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        let d = u.len();
        Self::from_dmatrix(DMatrix::from_fn(d, d, |i, j| u[i] * v[j].conj()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.inner[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.inner
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix {
            inner: self.inner.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn scale(&self, factor: C64) -> Self {
        ComplexMatrix {
            inner: &self.inner * factor,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        ComplexMatrix {
            inner: (&self.inner + self.inner.adjoint()) * C64::new(0.5, 0.0),
        }
    }

    /// `‖A - A†‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        frobenius_norm(&(self - &self.adjoint()))
    }

    pub fn is_hermitian(&self, tol: &Tolerances) -> bool {
        self.check_hermitian(tol).is_ok()
    }

    pub(crate) fn check_hermitian(&self, tol: &Tolerances) -> Result<()> {
        let residual = self.hermiticity_residual();
        let limit = tol.herm_tol * frobenius_norm(self).max(1.0);
        if residual > limit {
            Err(Error::NotHermitian { residual, limit })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            Err(Error::DimMismatch {
                expected,
                found: self.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// Row-major entries.
    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }

    /// Sum of a nonempty list of equal-dimension matrices.
    pub fn sum<'a, I>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ComplexMatrix>,
    {
        let mut iter = items.into_iter();
        let first = iter.next().ok_or(Error::EmptyList)?;
        let mut acc = first.inner.clone();
        for m in iter {
            m.check_dim(first.dim())?;
            acc += &m.inner;
        }
        Ok(ComplexMatrix { inner: acc })
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix {
            inner: -&self.inner,
        }
    }
}

/// Wire form: `{"dim": d, "entries": [[[re, im], ...], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim(),
            entries: self
                .to_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.dim {
            return Err(D::Error::custom(format!(
                "expected {} rows, found {}",
                raw.dim,
                raw.entries.len()
            )));
        }
        let rows: Vec<Vec<C64>> = raw
            .entries
            .iter()
            .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_dmatrix();
        let d = v.nrows();
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = C64::new(f(lambda), 0.0);
            for i in 0..d {
                scaled[(i, j)] *= w;
            }
        }
        ComplexMatrix {
            inner: scaled * v.adjoint(),
        }
        .hermitian_part()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dimension >= 1")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

pub fn hermitian_eig(a: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEig> {
    a.check_hermitian(tol)?;
    let d = a.dim();
    let sym = a.hermitian_part().into_dmatrix();
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 1000 * d.max(4))
        .ok_or(Error::ConvergenceFailure)?;

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::ConvergenceFailure);
    }
    let vectors = DMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors: ComplexMatrix { inner: vectors },
    })
}

/// Principal square root of a PSD matrix together with the (clamped)
/// spectrum it was computed from.
#[derive(Debug, Clone)]
pub struct PsdSqrt {
    pub sqrt: ComplexMatrix,
    /// Ascending eigenvalues of the input after clamping.
    pub eigenvalues: Vec<f64>,
}

pub fn psd_sqrt_with_spectrum(a: &ComplexMatrix, tol: &Tolerances) -> Result<PsdSqrt> {
    let mut eig = hermitian_eig(a, tol)?;
    let min = eig.min_eigenvalue();
    if min < -tol.psd_tol {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    let floor = RESOLUTION_ULPS * a.dim() as f64 * f64::EPSILON * frobenius_norm(a).max(1.0);
    for lambda in eig.eigenvalues.iter_mut() {
        if *lambda <= floor {
            *lambda = 0.0;
        }
    }
    let sqrt = eig.reconstruct_with(f64::sqrt);
    Ok(PsdSqrt {
        sqrt,
        eigenvalues: eig.eigenvalues,
    })
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-psd_tol, 0)` are clamped to zero, as are positive
/// eigenvalues too small for the eigensolver to distinguish from zero.
pub fn matrix_sqrt_psd(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    psd_sqrt_with_spectrum(a, tol).map(|s| s.sqrt)
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    b.check_dim(a.dim())?;
    Ok(&(a * b) - &(b * a))
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    frobenius_norm_sqr(a).sqrt()
}

pub(crate) fn frobenius_norm_sqr(a: &ComplexMatrix) -> f64 {
    a.inner.iter().map(|z| z.norm_sqr()).sum()
}

/// Hilbert-Schmidt inner product `Tr(A† B)`.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    b.check_dim(a.dim())?;
    Ok(a.inner
        .iter()
        .zip(b.inner.iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}
