// SPDX-License-Identifier: Apache-2.0

//! Concrete states, observables and channels: Bloch qubits with Pauli
//! observables, the spin-1 pure-state family with angular momentum
//! operators, the qutrit family, and the phase damping, amplitude damping
//! and bit flip channels.
//!
//! Spin-1 matrices use the basis order `(|1⟩, |0⟩, |-1⟩)` for both states and
//! operators.

pub mod analytic;
pub mod names;
pub mod random;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerances, C64};
use crate::skew::{DensityState, KrausChannel, Observable};

pub use random::SeededGenerator;

const BLOCH_SLACK: f64 = 1e-12;
const ANGLE_SLACK: f64 = 1e-12;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Real 3-vector parameterizing a qubit state `½(I + r·σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    /// `|r|² = t`, direction `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn spherical(t: f64, theta: f64, phi: f64) -> Self {
        let r = t.sqrt();
        BlochVector {
            x: r * theta.sin() * phi.cos(),
            y: r * theta.sin() * phi.sin(),
            z: r * theta.cos(),
        }
    }

    /// `(√3/2 cosθ, √3/2 sinθ, 0)`.
    pub fn equatorial_family(theta: f64) -> Self {
        let r = 3f64.sqrt() / 2.0;
        BlochVector {
            x: r * theta.cos(),
            y: r * theta.sin(),
            z: 0.0,
        }
    }

    /// Squared length `t`.
    pub fn t(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }
}

pub fn bloch_qubit(r: BlochVector, tol: &Tolerances) -> Result<DensityState> {
    let t = r.t();
    if !t.is_finite() || t > 1.0 + BLOCH_SLACK {
        return Err(Error::OutsideBlochBall(t));
    }
    let m = ComplexMatrix::from_row_slice(
        2,
        &[
            c(0.5 * (1.0 + r.z), 0.0),
            c(0.5 * r.x, -0.5 * r.y),
            c(0.5 * r.x, 0.5 * r.y),
            c(0.5 * (1.0 - r.z), 0.0),
        ],
    )?;
    DensityState::new(m, tol)
}

fn hermitian(rows: &[C64], dim: usize) -> Observable {
    let m = ComplexMatrix::from_row_slice(dim, rows).expect("constant matrix");
    Observable::new(m, &Tolerances::default()).expect("constant Hermitian matrix")
}

pub fn sigma_x() -> Observable {
    hermitian(&[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)], 2)
}

pub fn sigma_y() -> Observable {
    hermitian(&[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)], 2)
}

pub fn sigma_z() -> Observable {
    hermitian(&[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)], 2)
}

/// `[σ_x, σ_y, σ_z]`.
pub fn pauli_observables() -> [Observable; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// `[L_x, L_y, L_z]` for spin 1 in the `(|1⟩, |0⟩, |-1⟩)` basis.
pub fn spin1_observables() -> [Observable; 3] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0., 0.);
    let lx = hermitian(&[z, c(h, 0.), z, c(h, 0.), z, c(h, 0.), z, c(h, 0.), z], 3);
    let ly = hermitian(
        &[z, c(0., -h), z, c(0., h), z, c(0., -h), z, c(0., h), z],
        3,
    );
    let lz = hermitian(&[c(1., 0.), z, z, z, z, z, z, z, c(-1., 0.)], 3);
    [lx, ly, lz]
}

fn check_angle(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !(value >= lo - ANGLE_SLACK && value <= hi + ANGLE_SLACK) {
        return Err(Error::OutsideParameterDomain(format!(
            "{name} = {value} not in [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// `|ψ⟩ = sinθ cosφ |1⟩ + sinθ sinφ |0⟩ + cosθ |-1⟩` as a density matrix.
pub fn spin1_pure_state(theta: f64, phi: f64, tol: &Tolerances) -> Result<DensityState> {
    check_angle("theta", theta, 0.0, PI)?;
    check_angle("phi", phi, 0.0, 2.0 * PI)?;
    let psi = [
        c(theta.sin() * phi.cos(), 0.0),
        c(theta.sin() * phi.sin(), 0.0),
        c(theta.cos(), 0.0),
    ];
    DensityState::pure(&psi, tol)
}

/// The one-parameter-scaled qutrit family
///
/// ```text
///       ⎛ 1                    -√3 a i cosα         -√3 a i sinα cosβ ⎞
/// ρ = ⅓ ⎜ √3 a i cosα          1                    -√3 a i sinα sinβ ⎟
///       ⎝ √3 a i sinα cosβ     √3 a i sinα sinβ     1                 ⎠
/// ```
///
/// with `|a| ≤ 1/√3`, `0 < α < π` (open) and `0 ≤ β ≤ 2π`. Positivity is
/// checked by the state validator rather than assumed.
pub fn qutrit_family(a: f64, alpha: f64, beta: f64, tol: &Tolerances) -> Result<DensityState> {
    let bound = 1.0 / 3f64.sqrt();
    if a.is_nan() || a.abs() > bound + ANGLE_SLACK {
        return Err(Error::OutsideParameterDomain(format!(
            "|a| = {} exceeds 1/sqrt(3)",
            a.abs()
        )));
    }
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::OutsideParameterDomain(format!(
            "alpha = {alpha} not in the open interval (0, pi)"
        )));
    }
    check_angle("beta", beta, 0.0, 2.0 * PI)?;

    let s = 3f64.sqrt() * a;
    let e01 = s * alpha.cos();
    let e02 = s * alpha.sin() * beta.cos();
    let e12 = s * alpha.sin() * beta.sin();
    let third = 1.0 / 3.0;
    let m = ComplexMatrix::from_row_slice(
        3,
        &[
            c(third, 0.),
            c(0., -e01 * third),
            c(0., -e02 * third),
            c(0., e01 * third),
            c(third, 0.),
            c(0., -e12 * third),
            c(0., e02 * third),
            c(0., e12 * third),
            c(third, 0.),
        ],
    )?;
    DensityState::new(m, tol)
}

fn check_probability(name: &str, q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::ParamOutOfRange(format!(
            "{name}: q = {q} not in [0, 1]"
        )));
    }
    Ok(())
}

fn kraus2(k1: [C64; 4], k2: [C64; 4], tol: &Tolerances) -> Result<KrausChannel> {
    KrausChannel::new(
        vec![
            ComplexMatrix::from_row_slice(2, &k1)?,
            ComplexMatrix::from_row_slice(2, &k2)?,
        ],
        tol,
    )
}

/// `K₁ = |0⟩⟨0| + √(1-q)|1⟩⟨1|`, `K₂ = √q |1⟩⟨1|`.
pub fn phase_damping(q: f64, tol: &Tolerances) -> Result<KrausChannel> {
    check_probability("phase damping", q)?;
    let z = c(0., 0.);
    kraus2(
        [c(1., 0.), z, z, c((1.0 - q).sqrt(), 0.)],
        [z, z, z, c(q.sqrt(), 0.)],
        tol,
    )
}

/// `E₁ = |0⟩⟨0| + √(1-q)|1⟩⟨1|`, `E₂ = √q |0⟩⟨1|`.
pub fn amplitude_damping(q: f64, tol: &Tolerances) -> Result<KrausChannel> {
    check_probability("amplitude damping", q)?;
    let z = c(0., 0.);
    kraus2(
        [c(1., 0.), z, z, c((1.0 - q).sqrt(), 0.)],
        [z, c(q.sqrt(), 0.), z, z],
        tol,
    )
}

/// `F₁ = √q I`, `F₂ = √(1-q) σ_x`.
pub fn bit_flip(q: f64, tol: &Tolerances) -> Result<KrausChannel> {
    check_probability("bit flip", q)?;
    let z = c(0., 0.);
    let a = c(q.sqrt(), 0.);
    let b = c((1.0 - q).sqrt(), 0.);
    kraus2([a, z, z, a], [z, b, b, z], tol)
}

/// The three channels compared for the equatorial Bloch family, in order
/// (phase damping, amplitude damping, bit flip).
pub fn damping_triple(q: f64, tol: &Tolerances) -> Result<Vec<KrausChannel>> {
    Ok(vec![
        phase_damping(q, tol)?,
        amplitude_damping(q, tol)?,
        bit_flip(q, tol)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, frobenius_inner, frobenius_norm, hermitian_eig};
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, eps: f64) -> bool {
        frobenius_norm(&(a - b)) < eps
    }

    #[test]
    fn bloch_examples() {
        let origin = bloch_qubit(BlochVector::new(0., 0., 0.), &tol()).unwrap();
        assert!(close(
            origin.matrix(),
            &ComplexMatrix::identity(2).scale_real(0.5),
            1e-15
        ));
        let pole = bloch_qubit(BlochVector::new(0., 0., 1.), &tol()).unwrap();
        assert!(close(
            pole.matrix(),
            &ComplexMatrix::from_real_diagonal(&[1., 0.]),
            1e-15
        ));

        let s = 3f64.sqrt() / 2.0;
        for theta in [0.0, 0.4, 1.9, PI] {
            let rho = bloch_qubit(BlochVector::equatorial_family(theta), &tol()).unwrap();
            assert_abs_diff_eq!(rho.eigenvalues()[0], (1.0 - s) / 2.0, epsilon = 1e-14);
            assert_abs_diff_eq!(rho.eigenvalues()[1], (1.0 + s) / 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn bloch_rejects_outside_ball() {
        assert!(matches!(
            bloch_qubit(BlochVector::new(1.0, 0.1, 0.0), &tol()),
            Err(Error::OutsideBlochBall(_))
        ));
    }

    #[test]
    fn pauli_algebra() {
        let [sx, sy, sz] = pauli_observables();
        let id = ComplexMatrix::identity(2);
        assert_eq!(&(sx.matrix() * sx.matrix()), &id);
        let xy = commutator(sx.matrix(), sy.matrix()).unwrap();
        assert_eq!(xy, sz.matrix().scale(c(0., 2.)));
        let ps = pauli_observables();
        for (i, a) in ps.iter().enumerate() {
            for (j, b) in ps.iter().enumerate() {
                let ip = frobenius_inner(a.matrix(), b.matrix()).unwrap();
                assert_eq!(ip, c(if i == j { 2.0 } else { 0.0 }, 0.0));
            }
        }
    }

    #[test]
    fn spin1_algebra() {
        let [lx, ly, lz] = spin1_observables();
        let xy = commutator(lx.matrix(), ly.matrix()).unwrap();
        assert!(close(&xy, &lz.matrix().scale(c(0., 1.)), 1e-15));
        assert_eq!(
            lz.matrix(),
            &ComplexMatrix::from_real_diagonal(&[1., 0., -1.])
        );
        let casimir = ComplexMatrix::sum(&[
            lx.matrix() * lx.matrix(),
            ly.matrix() * ly.matrix(),
            lz.matrix() * lz.matrix(),
        ])
        .unwrap();
        assert!(close(
            &casimir,
            &ComplexMatrix::identity(3).scale_real(2.0),
            1e-15
        ));
    }

    #[test]
    fn spin1_state_examples() {
        let down = spin1_pure_state(0.0, 0.0, &tol()).unwrap();
        assert!(close(
            down.matrix(),
            &ComplexMatrix::from_real_diagonal(&[0., 0., 1.]),
            1e-15
        ));
        let up = spin1_pure_state(PI / 2.0, 0.0, &tol()).unwrap();
        assert!(close(
            up.matrix(),
            &ComplexMatrix::from_real_diagonal(&[1., 0., 0.]),
            1e-15
        ));

        let q = PI / 4.0;
        let rho = spin1_pure_state(q, q, &tol()).unwrap();
        let amp = [0.5, 0.5, std::f64::consts::FRAC_1_SQRT_2];
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(rho.matrix().get(i, j).re, amp[i] * amp[j], epsilon = 1e-15);
            }
        }
        assert!(spin1_pure_state(-0.5, 0.0, &tol()).is_err());
    }

    #[test]
    fn qutrit_examples() {
        let mixed = qutrit_family(0.0, 1.0, 2.0, &tol()).unwrap();
        assert!(close(
            mixed.matrix(),
            &ComplexMatrix::identity(3).scale_real(1. / 3.),
            1e-15
        ));

        let a = 1.0 / 3f64.sqrt();
        let rho = qutrit_family(a, PI / 2.0, 0.0, &tol()).unwrap();
        // cosα = 0: only the (0,2) pair is populated, with magnitude √3·a/3 = 1/3.
        assert_abs_diff_eq!(rho.matrix().get(0, 1).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(0, 2).im, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(2, 0).im, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix().get(1, 2).norm(), 0.0, epsilon = 1e-15);
        // Spectrum (1 ± √3|a|)/3 and 1/3.
        assert_abs_diff_eq!(rho.eigenvalues()[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.eigenvalues()[1], 1. / 3., epsilon = 1e-14);
        assert_abs_diff_eq!(rho.eigenvalues()[2], 2. / 3., epsilon = 1e-14);
    }

    #[test]
    fn qutrit_rejects_boundaries() {
        assert!(qutrit_family(0.1, 0.0, 1.0, &tol()).is_err());
        assert!(qutrit_family(0.1, PI, 1.0, &tol()).is_err());
        assert!(qutrit_family(0.6, 1.0, 1.0, &tol()).is_err());
        assert!(qutrit_family(0.1, 1.0, 7.0, &tol()).is_err());
    }

    #[test]
    fn channels_are_complete() {
        let strict = Tolerances {
            complete_tol: 1e-12,
            ..tol()
        };
        for q in [0.0, 0.1, 0.37, 0.5, 1.0] {
            phase_damping(q, &strict).unwrap();
            amplitude_damping(q, &strict).unwrap();
            bit_flip(q, &strict).unwrap();
        }
        assert!(matches!(
            phase_damping(1.5, &tol()),
            Err(Error::ParamOutOfRange(_))
        ));
        assert!(bit_flip(-0.1, &tol()).is_err());
    }

    #[test]
    fn channel_examples() {
        let pd = phase_damping(0.0, &tol()).unwrap();
        assert_eq!(pd.kraus()[1], ComplexMatrix::zeros(2));
        let ad = amplitude_damping(1.0, &tol()).unwrap();
        let lowering =
            ComplexMatrix::from_row_slice(2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)])
                .unwrap();
        assert_eq!(ad.kraus()[1], lowering);
        let bf = bit_flip(0.1, &tol()).unwrap();
        assert!(close(
            &bf.kraus()[0],
            &ComplexMatrix::identity(2).scale_real(0.1f64.sqrt()),
            1e-16
        ));
        assert!(close(
            &bf.kraus()[1],
            &sigma_x().matrix().scale_real(0.9f64.sqrt()),
            1e-16
        ));
    }

    #[test]
    fn catalog_states_validate() {
        for theta in [0.1, 1.0, 2.5] {
            let rho = spin1_pure_state(theta, 2.0 * theta, &tol()).unwrap();
            let eig = hermitian_eig(rho.matrix(), &tol()).unwrap();
            assert!(eig.min_eigenvalue() > -1e-12);
        }
    }
}
