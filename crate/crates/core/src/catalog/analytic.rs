// SPDX-License-Identifier: Apache-2.0

//! Closed-form reference values for the qubit/Pauli and spin-1 families.
//!
//! These are used by tests and verification suites as an independent check
//! on the numerical pipeline; nothing in the pipeline calls them.

use crate::error::{Error, Result};

const SQRT_SLACK: f64 = 1e-12;

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0 + SQRT_SLACK).contains(&t) {
        return Err(Error::DomainError(format!("t = {t} not in [0, 1]")));
    }
    Ok(())
}

fn sqrt_nonneg(x: f64) -> Result<f64> {
    if x < -SQRT_SLACK {
        return Err(Error::DomainError(format!("square root of {x}")));
    }
    Ok(x.max(0.0).sqrt())
}

/// `1 - √(1-t)`, the common prefactor of the qubit/Pauli closed forms.
pub fn pauli_prefactor(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(1.0 - (1.0 - t.min(1.0)).sqrt())
}

/// `Σ_i I_ρ(σ_i) = 2(1 - √(1-t))`.
pub fn pauli_sum(t: f64) -> Result<f64> {
    Ok(2.0 * pauli_prefactor(t)?)
}

fn cartesian_t(x: f64, y: f64, z: f64) -> Result<f64> {
    let t = x * x + y * y + z * z;
    check_t(t)?;
    if t == 0.0 {
        return Err(Error::DomainError("Bloch vector is zero".into()));
    }
    Ok(t)
}

/// Sum of the three `√(1 + (z² ± 2xy)/t)` terms (cyclic), without the
/// `√(1-√(1-t))` prefactor.
fn root_sum(x: f64, y: f64, z: f64, sign: f64) -> Result<f64> {
    let t = cartesian_t(x, y, z)?;
    Ok(sqrt_nonneg(1.0 + (z * z + sign * 2.0 * x * y) / t)?
        + sqrt_nonneg(1.0 + (y * y + sign * 2.0 * x * z) / t)?
        + sqrt_nonneg(1.0 + (x * x + sign * 2.0 * y * z) / t)?)
}

/// `α = √(1-√(1-t)) · Σ √(1 + (z² + 2xy)/t)` (cyclic).
pub fn alpha(x: f64, y: f64, z: f64) -> Result<f64> {
    let t = cartesian_t(x, y, z)?;
    Ok(pauli_prefactor(t)?.sqrt() * root_sum(x, y, z, 1.0)?)
}

/// `β = √(1-√(1-t)) · Σ √(1 + (z² - 2xy)/t)` (cyclic).
pub fn beta(x: f64, y: f64, z: f64) -> Result<f64> {
    let t = cartesian_t(x, y, z)?;
    Ok(pauli_prefactor(t)?.sqrt() * root_sum(x, y, z, -1.0)?)
}

/// Difference-form bound for Pauli observables on `½(I + r·σ)`:
/// `⅔(1-√(1-t))(1 - (xy+xz+yz)/t) + α²/9`.
pub fn pauli_lb1(x: f64, y: f64, z: f64) -> Result<f64> {
    let t = cartesian_t(x, y, z)?;
    let s = (x * y + x * z + y * z) / t;
    let a = alpha(x, y, z)?;
    Ok(2.0 / 3.0 * pauli_prefactor(t)? * (1.0 - s) + a * a / 9.0)
}

/// Pairwise-sum bound for Pauli observables on `½(I + r·σ)`:
/// `(1-√(1-t))(4 - 2(xy+xz+yz)/t) - β²/4`.
pub fn pauli_lb0(x: f64, y: f64, z: f64) -> Result<f64> {
    let t = cartesian_t(x, y, z)?;
    let s = (x * y + x * z + y * z) / t;
    let b = beta(x, y, z)?;
    Ok(pauli_prefactor(t)? * (4.0 - 2.0 * s) - b * b / 4.0)
}

/// `γ` from Cartesian components; depends only on the direction of `r`.
pub fn gamma_cartesian(x: f64, y: f64, z: f64) -> Result<f64> {
    let t = cartesian_t(x, y, z)?;
    let s = (x * y + x * z + y * z) / t;
    let a = root_sum(x, y, z, 1.0)?;
    let b = root_sum(x, y, z, -1.0)?;
    Ok(-10.0 / 3.0 + 4.0 * s / 3.0 + a * a / 9.0 + b * b / 4.0)
}

/// `γ(θ, φ)` in spherical form, with `x ∝ sinθ cosφ`, `y ∝ sinθ sinφ`,
/// `z ∝ cosθ`. Its minimum over the sphere is `√3 - 4/3`.
pub fn gamma(theta: f64, phi: f64) -> Result<f64> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cross = st * st * cp * sp + st * ct * cp + st * ct * sp;
    let plus = sqrt_nonneg(1.0 + ct * ct + 2.0 * st * st * cp * sp)?
        + sqrt_nonneg(1.0 + st * st * sp * sp + 2.0 * st * ct * cp)?
        + sqrt_nonneg(1.0 + st * st * cp * cp + 2.0 * st * ct * sp)?;
    let minus = sqrt_nonneg(1.0 + ct * ct - 2.0 * st * st * cp * sp)?
        + sqrt_nonneg(1.0 + st * st * sp * sp - 2.0 * st * ct * cp)?
        + sqrt_nonneg(1.0 + st * st * cp * cp - 2.0 * st * ct * sp)?;
    Ok(-10.0 / 3.0 + 4.0 / 3.0 * cross + plus * plus / 9.0 + minus * minus / 4.0)
}

/// `√3 - 4/3`.
pub fn gamma_min() -> f64 {
    3f64.sqrt() - 4.0 / 3.0
}

/// Difference-form bound on the equatorial family `(√3/2 cosθ, √3/2 sinθ, 0)`.
pub fn example1_lb1(theta: f64) -> f64 {
    let (s2, c2) = (2.0 * theta).sin_cos();
    let roots = (2.0 + 2.0 * s2).max(0.0).sqrt() + (3.0 - c2).sqrt() + (3.0 + c2).sqrt();
    (2.0 - s2) / 6.0 + roots * roots / 36.0
}

/// Pairwise-sum bound on the equatorial family.
pub fn example1_lb0(theta: f64) -> f64 {
    let (s2, c2) = (2.0 * theta).sin_cos();
    let roots = (2.0 - 2.0 * s2).max(0.0).sqrt() + (3.0 - c2).sqrt() + (3.0 + c2).sqrt();
    2.0 - 0.5 * s2 - roots * roots / 16.0
}

/// Gram-eigenvalue bound on the equatorial family.
pub fn example1_lb0bar(theta: f64) -> f64 {
    (2.0 - (2.0 * theta).sin()) / 4.0
}

/// `Σ I_ρ(L_i)` for the spin-1 pure state family:
/// `2 - 2 sin²θ sin²φ (cosθ + sinθ cosφ)² - (cos²θ - sin²θ cos²φ)²`.
pub fn spin1_sum(theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let a = ct + st * cp;
    let b = ct * ct - st * st * cp * cp;
    2.0 - 2.0 * st * st * sp * sp * a * a - b * b
}
