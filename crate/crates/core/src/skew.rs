// SPDX-License-Identifier: Apache-2.0

//! Validated states, observables and channels, and the Wigner-Yanase skew
//! information `I_ρ(K) = ½‖[√ρ, K]‖²_F` built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, frobenius_norm, frobenius_norm_sqr, psd_sqrt_with_spectrum, ComplexMatrix,
    Tolerances, C64,
};

/// Round-off below this magnitude in a squared norm is treated as zero.
pub const SKEW_CLAMP: f64 = 1e-12;

/// A density matrix: Hermitian, positive semidefinite, unit trace. The
/// principal square root is computed once here and reused by every skew
/// evaluation.
#[derive(Debug, Clone)]
pub struct DensityState {
    matrix: ComplexMatrix,
    sqrt: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityState {
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        tol.validate()?;
        let spectral = psd_sqrt_with_spectrum(&matrix, tol)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol.trace_tol {
            return Err(Error::TraceNotOne {
                trace,
                tol: tol.trace_tol,
            });
        }
        Ok(DensityState {
            matrix,
            sqrt: spectral.sqrt,
            eigenvalues: spectral.eigenvalues,
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector.
    pub fn pure(amplitudes: &[C64], tol: &Tolerances) -> Result<Self> {
        Self::new(ComplexMatrix::outer(amplitudes, amplitudes)?, tol)
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let p = 1.0 / dim as f64;
        DensityState {
            matrix: ComplexMatrix::identity(dim).scale_real(p),
            sqrt: ComplexMatrix::identity(dim).scale_real(p.sqrt()),
            eigenvalues: vec![p; dim],
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn sqrt(&self) -> &ComplexMatrix {
        &self.sqrt
    }

    /// Ascending, with sub-tolerance negatives clamped to zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

impl Serialize for DensityState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

/// A Hermitian operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        matrix.check_hermitian(tol)?;
        Ok(Observable { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// A channel given by an ordered list of Kraus operators `{K_i}` with
/// `Σ K_i† K_i = I`. Note that skew information of a channel depends on the
/// chosen Kraus representation, not only on the channel map; the list is
/// evaluated as given.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrausChannel {
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyList)?;
        let dim = first.dim();
        for k in &kraus {
            k.check_dim(dim)?;
        }
        let mut gram = ComplexMatrix::zeros(dim);
        for k in &kraus {
            gram = &gram + &(&k.adjoint() * k);
        }
        let residual = frobenius_norm(&(&gram - &ComplexMatrix::identity(dim)));
        if residual > tol.complete_tol {
            return Err(Error::IncompleteKraus {
                residual,
                tol: tol.complete_tol,
            });
        }
        Ok(KrausChannel { kraus })
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel {
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    /// Append zero operators up to `n` elements. The channel map and every
    /// skew value are unchanged.
    pub fn padded_to(&self, n: usize) -> Self {
        let mut kraus = self.kraus.clone();
        while kraus.len() < n {
            kraus.push(ComplexMatrix::zeros(self.dim()));
        }
        KrausChannel { kraus }
    }
}

#[inline]
pub(crate) fn clamp_skew(value: f64) -> f64 {
    if (-SKEW_CLAMP..0.0).contains(&value) {
        0.0
    } else {
        value
    }
}

/// Skew information of an arbitrary (not necessarily Hermitian) operator:
/// `½ Tr([√ρ, K]† [√ρ, K])`.
pub fn skew_operator(rho: &DensityState, k: &ComplexMatrix) -> Result<f64> {
    let c = commutator(rho.sqrt(), k)?;
    Ok(clamp_skew(0.5 * frobenius_norm_sqr(&c)))
}

/// `I_ρ(M) = -½ Tr([√ρ, M]²)`.
pub fn skew_observable(rho: &DensityState, m: &Observable) -> Result<f64> {
    skew_operator(rho, m.matrix())
}

/// `I_ρ(E) = Σ_i I_ρ(K_i)`.
pub fn skew_channel(rho: &DensityState, channel: &KrausChannel) -> Result<f64> {
    channel.kraus().iter().map(|k| skew_operator(rho, k)).sum()
}
