// SPDX-License-Identifier: Apache-2.0

//! Grid datasets behind the comparison plots. Every value comes from the
//! numerical pipeline (states → √ρ → commutators → bounds); the closed
//! forms in [`crate::catalog::analytic`] are only used to check them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::catalog::{self, BlochVector};
use crate::channel_bounds::{thm3_bound, thm4_bound, SearchMode};
use crate::error::{Error, Result};
use crate::linalg::Tolerances;
use crate::observable_bounds;
use crate::skew::{skew_channel, DensityState, Observable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// `γ(θ, φ)` over the sphere.
    Fig1,
    /// Bounds along the equatorial Bloch family.
    Fig2,
    /// Spin-1 pure states over `(θ, φ)`.
    Fig3,
    /// Spin-1 pure states at `φ = π/4`.
    Fig3Slice,
    /// Qutrit family at `|a| = 1/√3` over `(α, β)`.
    Fig4,
    /// Qutrit family at `β = π/2`.
    Fig4Slice,
    /// Channel bounds for the damping triple along the equatorial family.
    Fig5,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig3Slice,
        FigureId::Fig4,
        FigureId::Fig4Slice,
        FigureId::Fig5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig3Slice => "fig3-slice",
            FigureId::Fig4 => "fig4",
            FigureId::Fig4Slice => "fig4-slice",
            FigureId::Fig5 => "fig5",
        }
    }

    /// Points per axis when none is given. For `fig1` this is the θ count;
    /// φ gets twice as many.
    pub fn default_resolution(self) -> usize {
        match self {
            FigureId::Fig1 => 120,
            FigureId::Fig3 | FigureId::Fig4 => 90,
            FigureId::Fig2 | FigureId::Fig3Slice | FigureId::Fig4Slice | FigureId::Fig5 => 400,
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            FigureId::Fig1 => &["theta", "phi", "gamma"],
            FigureId::Fig2 => &["theta", "sum", "lb1", "lb0", "lb0bar"],
            FigureId::Fig3 | FigureId::Fig3Slice => {
                &["theta", "phi", "sum", "lb1", "lb0", "lb0bar"]
            }
            FigureId::Fig4 | FigureId::Fig4Slice => {
                &["alpha", "beta", "sum", "lb1", "lb0", "lb0bar"]
            }
            FigureId::Fig5 => &["theta", "sum", "thm3", "thm4"],
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown figure '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub id: FigureId,
    pub resolution: usize,
    /// Channel strength for `fig5`.
    pub q: f64,
}

impl FigureSpec {
    pub fn new(id: FigureId) -> Self {
        FigureSpec {
            id,
            resolution: id.default_resolution(),
            q: 0.1,
        }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::ParamOutOfRange(format!(
                "resolution {} must be at least 2",
                self.resolution
            )));
        }
        if !(0.0..=1.0).contains(&self.q) {
            return Err(Error::ParamOutOfRange(format!(
                "q = {} not in [0, 1]",
                self.q
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Header row, then one line per grid point, `\n` terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_sig(v, 12)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Format with `digits` significant digits, `%g` style: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros removed.
pub fn format_sig(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{value:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// `n` points `lo + k (hi - lo)/n`, upper endpoint excluded.
pub fn periodic_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / n as f64)
        .collect()
}

/// `n` interior points `lo + (k + 1)(hi - lo)/(n + 1)`, both endpoints excluded.
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * (k + 1) as f64 / (n + 1) as f64)
        .collect()
}

/// The `(θ, φ)` sphere grid used for `γ`: `θ_k = kπ/n`, `φ_j = 2πj/(2n)`,
/// equal steps in both angles.
pub fn gamma_grid(n: usize) -> Vec<(f64, f64)> {
    let thetas = periodic_grid(0.0, PI, n);
    let phis = periodic_grid(0.0, 2.0 * PI, 2 * n);
    thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect()
}

fn bound_row(rho: &DensityState, obs: &[Observable], tol: &Tolerances) -> Result<[f64; 4]> {
    let r = observable_bounds::report(rho, obs, tol)?;
    Ok([
        r.sum_skew,
        r.bounds.lb1,
        r.bounds.lb0.expect("three observables"),
        r.bounds.lb0bar,
    ])
}

fn rows_par<T, F>(points: Vec<T>, f: F) -> Result<Vec<Vec<f64>>>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Vec<f64>> + Send + Sync,
{
    points.par_iter().map(f).collect()
}

pub fn generate(spec: &FigureSpec, tol: &Tolerances) -> Result<Dataset> {
    spec.validate()?;
    let n = spec.resolution;
    let paulis = catalog::pauli_observables();
    let spins = catalog::spin1_observables();
    let rows = match spec.id {
        FigureId::Fig1 => rows_par(gamma_grid(n), |&(theta, phi)| {
            let t = 1.0;
            let rho = catalog::bloch_qubit(BlochVector::spherical(t, theta, phi), tol)?;
            let lb1 = observable_bounds::lb_tight(&rho, &paulis)?;
            let lb0 = observable_bounds::lb_pairwise(&rho, &paulis)?;
            let prefactor = 1.0 - (1.0 - t).sqrt();
            Ok(vec![theta, phi, (lb1 - lb0) / prefactor])
        })?,
        FigureId::Fig2 => rows_par(linspace(0.0, PI, n), |&theta| {
            let rho = catalog::bloch_qubit(BlochVector::equatorial_family(theta), tol)?;
            let [s, lb1, lb0, lb0bar] = bound_row(&rho, &paulis, tol)?;
            Ok(vec![theta, s, lb1, lb0, lb0bar])
        })?,
        FigureId::Fig3 | FigureId::Fig3Slice => {
            let points: Vec<(f64, f64)> = if spec.id == FigureId::Fig3 {
                let phis = linspace(0.0, 2.0 * PI, n);
                linspace(0.0, PI, n)
                    .into_iter()
                    .flat_map(|t| phis.iter().map(move |&p| (t, p)))
                    .collect()
            } else {
                linspace(0.0, PI, n)
                    .into_iter()
                    .map(|t| (t, PI / 4.0))
                    .collect()
            };
            rows_par(points, |&(theta, phi)| {
                let rho = catalog::spin1_pure_state(theta, phi, tol)?;
                let [s, lb1, lb0, lb0bar] = bound_row(&rho, &spins, tol)?;
                Ok(vec![theta, phi, s, lb1, lb0, lb0bar])
            })?
        }
        FigureId::Fig4 | FigureId::Fig4Slice => {
            let a = 1.0 / 3f64.sqrt();
            let points: Vec<(f64, f64)> = if spec.id == FigureId::Fig4 {
                let betas = linspace(0.0, 2.0 * PI, n);
                interior_grid(0.0, PI, n)
                    .into_iter()
                    .flat_map(|al| betas.iter().map(move |&b| (al, b)))
                    .collect()
            } else {
                interior_grid(0.0, PI, n)
                    .into_iter()
                    .map(|al| (al, PI / 2.0))
                    .collect()
            };
            rows_par(points, |&(alpha, beta)| {
                let rho = catalog::qutrit_family(a, alpha, beta, tol)?;
                let [s, lb1, lb0, lb0bar] = bound_row(&rho, &spins, tol)?;
                Ok(vec![alpha, beta, s, lb1, lb0, lb0bar])
            })?
        }
        FigureId::Fig5 => {
            let channels = catalog::damping_triple(spec.q, tol)?;
            rows_par(linspace(0.0, PI, n), |&theta| {
                let rho = catalog::bloch_qubit(BlochVector::equatorial_family(theta), tol)?;
                let sum = channels
                    .iter()
                    .map(|c| skew_channel(&rho, c))
                    .sum::<Result<f64>>()?;
                let t3 = thm3_bound(&rho, &channels, SearchMode::Exhaustive)?.bound;
                let t4 = thm4_bound(&rho, &channels, SearchMode::Exhaustive)?.bound;
                Ok(vec![theta, sum, t3, t4])
            })?
        }
    };
    Ok(Dataset {
        columns: spec.id.columns().to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::analytic;
    use approx::assert_abs_diff_eq;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(0.5, 12), "0.5");
        assert_eq!(format_sig(-2.25, 12), "-2.25");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_sig(123456.789, 12), "123456.789");
        assert_eq!(format_sig(1.5e-7, 12), "1.5e-7");
        assert_eq!(format_sig(3.0e13, 12), "3e13");
        assert_eq!(format_sig(PI, 12), "3.14159265359");
        assert_eq!(format_sig(0.9999999999999, 12), "1");
        assert_eq!(format_sig(1e-5, 12), "0.00001");
    }

    #[test]
    fn grids() {
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
        assert_eq!(periodic_grid(0.0, 1.0, 4), vec![0.0, 0.25, 0.5, 0.75]);
        assert_eq!(interior_grid(0.0, 4.0, 3), vec![1.0, 2.0, 3.0]);
        let g = gamma_grid(4);
        assert_eq!(g.len(), 32);
        assert_eq!(g[1].1, PI / 4.0);
    }

    #[test]
    fn figure_names_round_trip() {
        for id in FigureId::ALL {
            assert_eq!(id.name().parse::<FigureId>().unwrap(), id);
        }
        assert!("fig9".parse::<FigureId>().is_err());
    }

    #[test]
    fn fig2_first_row() {
        let d = generate(
            &FigureSpec::new(FigureId::Fig2).with_resolution(5),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(d.rows.len(), 5);
        let r = &d.rows[0];
        assert_eq!(r[0], 0.0);
        assert_abs_diff_eq!(r[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r[2], analytic::example1_lb1(0.0), epsilon = 1e-12);
        assert_abs_diff_eq!(r[3], analytic::example1_lb0(0.0), epsilon = 1e-12);
        assert_abs_diff_eq!(r[4], 0.5, epsilon = 1e-12);
        let csv = d.to_csv();
        assert!(
            csv.starts_with("theta,sum,lb1,lb0,lb0bar\n0,1,0.980936347194,0.542893218813,0.5\n"),
            "{csv}"
        );
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = FigureSpec::new(FigureId::Fig5).with_resolution(7);
        let a = generate(&spec, &Tolerances::default()).unwrap().to_csv();
        let b = generate(&spec, &Tolerances::default()).unwrap().to_csv();
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 8);
        assert!(a.ends_with('\n') && !a.contains('\r'));
    }

    #[test]
    fn small_grids_for_every_figure() {
        for id in FigureId::ALL {
            let d = generate(
                &FigureSpec::new(id).with_resolution(3),
                &Tolerances::default(),
            )
            .unwrap();
            assert_eq!(d.columns, id.columns());
            assert!(!d.rows.is_empty());
            assert!(d.rows.iter().all(|r| r.len() == d.columns.len()));
        }
    }

    #[test]
    fn rejects_tiny_resolution() {
        let spec = FigureSpec::new(FigureId::Fig2).with_resolution(1);
        assert!(generate(&spec, &Tolerances::default()).is_err());
    }
}
