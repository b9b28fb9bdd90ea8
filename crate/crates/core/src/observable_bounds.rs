// SPDX-License-Identifier: Apache-2.0

//! Lower bounds on `Σ_i I_ρ(M_i)` for a list of observables.
//!
//! * `lb0`: pairwise-sum bound, defined for `n > 2`.
//! * `lb0bar`: `I_ρ(Σ M_i) / λ_max(G)` with `G` the Gram matrix of the
//!   normalized commutators `X_i = i[√ρ, M_i]/‖[√ρ, M_i]‖`.
//! * `lb1`: `(1/n) I_ρ(Σ M_i) + 2/(n²(n-1)) (Σ_{i<j} √I_ρ(M_i - M_j))²`,
//!   which is exact for `n = 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{commutator, frobenius_norm, hermitian_eig, ComplexMatrix, Tolerances, C64};
use crate::skew::{skew_observable, skew_operator, DensityState, Observable};

fn check(rho: &DensityState, obs: &[Observable]) -> Result<()> {
    if obs.is_empty() {
        return Err(Error::EmptyList);
    }
    for m in obs {
        if m.dim() != rho.dim() {
            return Err(Error::DimMismatch {
                expected: rho.dim(),
                found: m.dim(),
            });
        }
    }
    Ok(())
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn total(obs: &[Observable]) -> Result<ComplexMatrix> {
    ComplexMatrix::sum(obs.iter().map(Observable::matrix))
}

pub fn sum_skew(rho: &DensityState, obs: &[Observable]) -> Result<f64> {
    check(rho, obs)?;
    obs.iter().map(|m| skew_observable(rho, m)).sum()
}

/// Pairwise-sum bound `lb0`. Requires at least three observables.
pub fn lb_pairwise(rho: &DensityState, obs: &[Observable]) -> Result<f64> {
    check(rho, obs)?;
    let n = obs.len();
    if n <= 2 {
        return Err(Error::RequiresAtLeastThree(n));
    }
    let mut sum = 0.0;
    let mut roots = 0.0;
    for (i, j) in pairs(n) {
        let v = skew_operator(rho, &(obs[i].matrix() + obs[j].matrix()))?;
        sum += v;
        roots += v.sqrt();
    }
    let nf = n as f64;
    Ok((sum - roots * roots / ((nf - 1.0) * (nf - 1.0))) / (nf - 2.0))
}

/// Gram-eigenvalue bound `lb0bar`.
///
/// An observable whose commutator with `√ρ` vanishes has no normalized
/// direction `X_i`. The bound holds for any unit choice of that direction,
/// and the largest `λ_max` over all such choices is `λ_max(G') + k`, where
/// `G'` is the Gram matrix of the remaining directions and `k` the number of
/// vanishing commutators. That worst case is used, which keeps the bound
/// continuous along families where a commutator passes through zero.
pub fn lb_gram(rho: &DensityState, obs: &[Observable], tol: &Tolerances) -> Result<f64> {
    check(rho, obs)?;
    let mut directions = Vec::with_capacity(obs.len());
    let mut vanishing = 0usize;
    for m in obs {
        let a = commutator(rho.sqrt(), m.matrix())?;
        let norm = frobenius_norm(&a);
        if norm > tol.psd_tol {
            directions.push(a.scale(C64::new(0.0, 1.0 / norm)));
        } else {
            vanishing += 1;
        }
    }
    if directions.is_empty() {
        return Ok(0.0);
    }
    let k = directions.len();
    let mut gram = Vec::with_capacity(k * k);
    for xi in &directions {
        for xj in &directions {
            gram.push(C64::new((xi * xj).trace().re, 0.0));
        }
    }
    let gram = ComplexMatrix::from_row_slice(k, &gram)?.hermitian_part();
    let lambda = hermitian_eig(&gram, tol)?.max_eigenvalue() + vanishing as f64;
    if lambda < tol.psd_tol {
        return Ok(0.0);
    }
    Ok(skew_operator(rho, &total(obs)?)? / lambda)
}

/// Difference-form bound `lb1`. Requires at least two observables.
pub fn lb_tight(rho: &DensityState, obs: &[Observable]) -> Result<f64> {
    check(rho, obs)?;
    let n = obs.len();
    if n < 2 {
        return Err(Error::RequiresAtLeastTwo(n));
    }
    let mut roots = 0.0;
    for (i, j) in pairs(n) {
        roots += skew_operator(rho, &(obs[i].matrix() - obs[j].matrix()))?.sqrt();
    }
    let nf = n as f64;
    Ok(skew_operator(rho, &total(obs)?)? / nf + 2.0 / (nf * nf * (nf - 1.0)) * roots * roots)
}

/// Both sides of `I(M₁) + I(M₂) = ½[I(M₁ + M₂) + I(M₁ - M₂)]`.
pub fn two_observable_identity(
    rho: &DensityState,
    m1: &Observable,
    m2: &Observable,
) -> Result<(f64, f64)> {
    check(rho, std::slice::from_ref(m1))?;
    check(rho, std::slice::from_ref(m2))?;
    let lhs = skew_observable(rho, m1)? + skew_observable(rho, m2)?;
    let rhs = 0.5
        * (skew_operator(rho, &(m1.matrix() + m2.matrix()))?
            + skew_operator(rho, &(m1.matrix() - m2.matrix()))?);
    Ok((lhs, rhs))
}

/// `½ max{I(M₁ + M₂), I(M₁ - M₂)}`, the older two-observable bound.
pub fn lb_pairwise_two(rho: &DensityState, m1: &Observable, m2: &Observable) -> Result<f64> {
    check(rho, &[m1.clone(), m2.clone()])?;
    let plus = skew_operator(rho, &(m1.matrix() + m2.matrix()))?;
    let minus = skew_operator(rho, &(m1.matrix() - m2.matrix()))?;
    Ok(0.5 * plus.max(minus))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableBounds {
    pub lb0: Option<f64>,
    pub lb0_two: Option<f64>,
    pub lb0bar: f64,
    pub lb1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableSlacks {
    pub lb0: Option<f64>,
    pub lb0_two: Option<f64>,
    pub lb0bar: f64,
    pub lb1: f64,
}

/// Serializes as
/// `{"n", "sum_skew", "bounds": {"lb0", "lb0_two", "lb0bar", "lb1"}, "slacks": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableBoundReport {
    pub n: usize,
    pub sum_skew: f64,
    pub bounds: ObservableBounds,
    pub slacks: ObservableSlacks,
}

impl ObservableBoundReport {
    /// Named bounds exceeding the sum by more than `eq_tol`, or below `-eq_tol`.
    pub fn violations(&self, tol: &Tolerances) -> Vec<(&'static str, f64)> {
        let b = &self.bounds;
        [
            ("lb0", b.lb0),
            ("lb0_two", b.lb0_two),
            ("lb0bar", Some(b.lb0bar)),
            ("lb1", Some(b.lb1)),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .filter(|&(_, v)| v > self.sum_skew + tol.eq_tol || v < -tol.eq_tol)
        .collect()
    }
}

pub fn report(
    rho: &DensityState,
    obs: &[Observable],
    tol: &Tolerances,
) -> Result<ObservableBoundReport> {
    check(rho, obs)?;
    let n = obs.len();
    if n < 2 {
        return Err(Error::RequiresAtLeastTwo(n));
    }
    let sum = sum_skew(rho, obs)?;
    let lb0 = if n > 2 {
        Some(lb_pairwise(rho, obs)?)
    } else {
        None
    };
    let lb0_two = if n == 2 {
        Some(lb_pairwise_two(rho, &obs[0], &obs[1])?)
    } else {
        None
    };
    let lb0bar = lb_gram(rho, obs, tol)?;
    let lb1 = lb_tight(rho, obs)?;
    Ok(ObservableBoundReport {
        n,
        sum_skew: sum,
        bounds: ObservableBounds {
            lb0,
            lb0_two,
            lb0bar,
            lb1,
        },
        slacks: ObservableSlacks {
            lb0: lb0.map(|v| sum - v),
            lb0_two: lb0_two.map(|v| sum - v),
            lb0bar: sum - lb0bar,
            lb1: sum - lb1,
        },
    })
}
