// SPDX-License-Identifier: Apache-2.0

//! Seeded property suites with a machine-readable summary.
//!
//! Each random trial draws from its own generator, seeded from the suite
//! seed, the property and the trial index, so a single failing instance can
//! be regenerated in isolation. The first violation is also serialized in
//! the JSON form accepted by the state and target parsers.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, analytic, random, BlochVector, SeededGenerator};
use crate::channel_bounds::{
    fu_two_channel, thm3_bound, thm4_bound, two_channel_identity, Permutation, SearchMode,
};
use crate::error::{Error, Result};
use crate::figures::{gamma_grid, linspace, periodic_grid};
use crate::linalg::{Tolerances, C64};
use crate::observable_bounds::{self, lb_gram, lb_pairwise, lb_tight, sum_skew};
use crate::skew::{skew_channel, DensityState, KrausChannel, Observable};

pub const VECTOR_TOL: f64 = 1e-10;
pub const IDENTITY_TOL: f64 = 1e-10;
pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const GAMMA_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Equalities,
    Validity,
    Corollary,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Equalities => "equalities",
            Suite::Validity => "validity",
            Suite::Corollary => "corollary",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::Lemmas,
            Suite::Equalities,
            Suite::Validity,
            Suite::Corollary,
            Suite::All,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub tol: Tolerances,
}

impl VerifyConfig {
    pub fn new(suite: Suite, trials: usize, seed: u64) -> Self {
        VerifyConfig {
            suite,
            trials,
            seed,
            dims: vec![2, 3],
            tol: Tolerances::default(),
        }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    pub worst_residual: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub property: String,
    pub trial: usize,
    pub trial_seed: Option<u64>,
    pub residual: f64,
    pub limit: f64,
    pub instance: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub rng: &'static str,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
    pub first_violation: Option<Violation>,
}

impl VerifySummary {
    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

/// Seed for one trial of one property.
pub fn trial_seed(seed: u64, property: &str, trial: usize) -> u64 {
    mix(mix(seed ^ name_hash(property)) ^ trial as u64)
}

struct Recorder {
    properties: Vec<PropertyResult>,
    first_violation: Option<Violation>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            properties: Vec::new(),
            first_violation: None,
        }
    }

    fn slot(&mut self, name: &str, limit: f64) -> usize {
        if let Some(k) = self.properties.iter().position(|p| p.name == name) {
            return k;
        }
        self.properties.push(PropertyResult {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            worst_residual: 0.0,
            limit,
        });
        self.properties.len() - 1
    }

    /// Record `residual` against `limit`; `instance` is only built on failure.
    fn record(
        &mut self,
        name: &str,
        trial: usize,
        trial_seed: Option<u64>,
        residual: f64,
        limit: f64,
        instance: impl FnOnce() -> Value,
    ) {
        let k = self.slot(name, limit);
        let p = &mut self.properties[k];
        p.checked += 1;
        if residual > p.worst_residual || residual.is_nan() {
            p.worst_residual = residual;
        }
        if residual.is_nan() || residual > limit {
            p.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(Violation {
                    property: name.to_string(),
                    trial,
                    trial_seed,
                    residual,
                    limit,
                    instance: instance(),
                });
            }
        }
    }
}

fn vector_norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn combine(a: &[C64], b: &[C64], sign: f64) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y * sign).collect()
}

/// Both sides of the three vector-norm identities for one tuple:
/// `(sum-form lhs, rhs)`, `(difference-form lhs, rhs)` and
/// `(n(n-1)/2 Σ‖aᵢ-aⱼ‖², (Σ‖aᵢ-aⱼ‖)²)`.
pub fn vector_norm_relations(vectors: &[Vec<C64>]) -> [(f64, f64); 3] {
    let n = vectors.len();
    let len = vectors[0].len();
    let mut total = vec![C64::new(0.0, 0.0); len];
    for v in vectors {
        total = combine(&total, v, 1.0);
    }
    let norms: f64 = vectors.iter().map(|v| vector_norm_sqr(v)).sum();
    let total_sqr = vector_norm_sqr(&total);
    let (mut plus, mut minus, mut minus_roots) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            plus += vector_norm_sqr(&combine(&vectors[i], &vectors[j], 1.0));
            let d = vector_norm_sqr(&combine(&vectors[i], &vectors[j], -1.0));
            minus += d;
            minus_roots += d.sqrt();
        }
    }
    let nf = n as f64;
    [
        (plus, total_sqr + (nf - 2.0) * norms),
        (minus, nf * norms - total_sqr),
        (nf * (nf - 1.0) / 2.0 * minus, minus_roots * minus_roots),
    ]
}

fn relative(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

fn vectors_json(vectors: &[Vec<C64>]) -> Value {
    json!({
        "vectors": vectors
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    })
}

fn observables_instance(rho: &DensityState, obs: &[Observable]) -> Value {
    json!({ "rho": rho, "observables": obs })
}

fn channels_instance(rho: &DensityState, channels: &[KrausChannel]) -> Value {
    json!({ "rho": rho, "channels": channels })
}

fn lemmas(cfg: &VerifyConfig, rec: &mut Recorder) {
    const NAME: &str = "vector_norm";
    for trial in 0..cfg.trials {
        let s = trial_seed(cfg.seed, NAME, trial);
        let mut gen = SeededGenerator::new(s);
        let n = gen.index(3, 5);
        let len = gen.index(1, 16);
        let vectors: Vec<Vec<C64>> = (0..n).map(|_| gen.complex_vector(len)).collect();
        let [sum_form, diff_form, root_form] = vector_norm_relations(&vectors);
        rec.record(
            "vector_sum_form",
            trial,
            Some(s),
            relative(sum_form.0, sum_form.1),
            VECTOR_TOL,
            || vectors_json(&vectors),
        );
        rec.record(
            "vector_difference_form",
            trial,
            Some(s),
            relative(diff_form.0, diff_form.1),
            VECTOR_TOL,
            || vectors_json(&vectors),
        );
        rec.record(
            "vector_root_inequality",
            trial,
            Some(s),
            (root_form.1 - root_form.0).max(0.0),
            VECTOR_TOL,
            || vectors_json(&vectors),
        );
    }
}

fn random_state_for(
    trial: usize,
    dim: usize,
    gen: &mut SeededGenerator,
    tol: &Tolerances,
) -> Result<DensityState> {
    // Every fourth trial is pure to exercise rank-deficient square roots.
    if trial % 4 == 3 {
        random::random_pure_state(dim, gen, tol)
    } else {
        random::random_state(dim, gen, tol)
    }
}

fn equalities(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    let tol = &cfg.tol;
    for &d in &cfg.dims {
        let name = format!("observable_pair_d{d}");
        for trial in 0..cfg.trials {
            let s = trial_seed(cfg.seed, &name, trial);
            let mut gen = SeededGenerator::new(s);
            let rho = random_state_for(trial, d, &mut gen, tol)?;
            let m1 = random::random_observable(d, &mut gen, tol)?;
            let m2 = random::random_observable(d, &mut gen, tol)?;
            let pair = [m1.clone(), m2.clone()];
            let inst = || observables_instance(&rho, &pair);
            let (lhs, rhs) = observable_bounds::two_observable_identity(&rho, &m1, &m2)?;
            rec.record(
                "two_observable_identity",
                trial,
                Some(s),
                (lhs - rhs).abs(),
                tol.eq_tol,
                inst,
            );
            let lb1 = lb_tight(&rho, &pair)?;
            rec.record(
                "tight_bound_saturation",
                trial,
                Some(s),
                (lb1 - lhs).abs(),
                tol.eq_tol,
                inst,
            );
        }

        let name = format!("channel_pair_d{d}");
        for trial in 0..cfg.trials {
            let s = trial_seed(cfg.seed, &name, trial);
            let mut gen = SeededGenerator::new(s);
            let rho = random_state_for(trial, d, &mut gen, tol)?;
            let n1 = gen.index(1, 3);
            let n2 = gen.index(1, 3);
            let pair = vec![
                random::random_channel(d, n1, &mut gen, tol)?,
                random::random_channel(d, n2, &mut gen, tol)?,
            ];
            let inst = || channels_instance(&rho, &pair);
            let n = n1.max(n2);
            let mut worst: f64 = 0.0;
            for p1 in Permutation::all(n) {
                for p2 in Permutation::all(n) {
                    let (lhs, rhs) = two_channel_identity(&rho, &pair[0], &pair[1], &p1, &p2)?;
                    worst = worst.max((lhs - rhs).abs());
                }
            }
            rec.record(
                "two_channel_identity",
                trial,
                Some(s),
                worst,
                IDENTITY_TOL,
                inst,
            );
            let sum = skew_channel(&rho, &pair[0])? + skew_channel(&rho, &pair[1])?;
            let t4 = thm4_bound(&rho, &pair, SearchMode::Exhaustive)?.bound;
            rec.record(
                "two_channel_saturation",
                trial,
                Some(s),
                (t4 - sum).abs(),
                tol.eq_tol,
                inst,
            );
        }
    }
    Ok(())
}

fn validity(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    let tol = &cfg.tol;
    for &d in &cfg.dims {
        let name = format!("observable_triple_d{d}");
        for trial in 0..cfg.trials {
            let s = trial_seed(cfg.seed, &name, trial);
            let mut gen = SeededGenerator::new(s);
            let rho = random_state_for(trial, d, &mut gen, tol)?;
            let obs = (0..3)
                .map(|_| random::random_observable(d, &mut gen, tol))
                .collect::<Result<Vec<_>>>()?;
            let sum = sum_skew(&rho, &obs)?;
            let inst = || observables_instance(&rho, &obs);
            rec.record(
                "pairwise_bound_valid",
                trial,
                Some(s),
                lb_pairwise(&rho, &obs)? - sum,
                tol.eq_tol,
                inst,
            );
            rec.record(
                "gram_bound_valid",
                trial,
                Some(s),
                lb_gram(&rho, &obs, tol)? - sum,
                tol.eq_tol,
                inst,
            );
            rec.record(
                "tight_bound_valid",
                trial,
                Some(s),
                lb_tight(&rho, &obs)? - sum,
                tol.eq_tol,
                inst,
            );
        }
    }

    // Channel configurations are qubit-only: N ∈ {2, 3}, up to 3 Kraus operators each.
    for n_channels in [2usize, 3] {
        let name = format!("channel_tuple_{n_channels}");
        for trial in 0..cfg.trials {
            let s = trial_seed(cfg.seed, &name, trial);
            let mut gen = SeededGenerator::new(s);
            let rho = random_state_for(trial, 2, &mut gen, tol)?;
            let channels = (0..n_channels)
                .map(|_| {
                    let n = gen.index(1, 3);
                    random::random_channel(2, n, &mut gen, tol)
                })
                .collect::<Result<Vec<_>>>()?;
            let sum = channels
                .iter()
                .map(|c| skew_channel(&rho, c))
                .sum::<Result<f64>>()?;
            let inst = || channels_instance(&rho, &channels);
            let t4 = thm4_bound(&rho, &channels, SearchMode::Exhaustive)?.bound;
            rec.record(
                "thm4_bound_valid",
                trial,
                Some(s),
                t4 - sum,
                tol.eq_tol,
                inst,
            );
            if n_channels == 2 {
                let two =
                    fu_two_channel(&rho, &channels[0], &channels[1], SearchMode::Exhaustive)?.bound;
                rec.record(
                    "two_channel_bound_valid",
                    trial,
                    Some(s),
                    two - sum,
                    tol.eq_tol,
                    inst,
                );
                rec.record(
                    "two_channel_below_thm4",
                    trial,
                    Some(s),
                    two - t4,
                    tol.eq_tol,
                    inst,
                );
            } else {
                let t3 = thm3_bound(&rho, &channels, SearchMode::Exhaustive)?.bound;
                rec.record(
                    "thm3_bound_valid",
                    trial,
                    Some(s),
                    t3 - sum,
                    tol.eq_tol,
                    inst,
                );
            }
        }
    }
    Ok(())
}

/// Deterministic grid points `(t, θ, φ)` covering the Bloch ball.
pub fn bloch_ball_grid(n: usize) -> Vec<(f64, f64, f64)> {
    let ts = linspace(0.0, 1.0, n);
    let thetas = linspace(0.0, PI, n);
    let mut out = Vec::with_capacity(n * n);
    for (i, &t) in ts.iter().enumerate() {
        for (j, &theta) in thetas.iter().enumerate() {
            let phi = 2.0 * PI * ((7 * i + 13 * j) % n) as f64 / n as f64;
            out.push((t, theta, phi));
        }
    }
    out
}

fn corollary(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    let tol = &cfg.tol;
    let paulis = catalog::pauli_observables();
    let spins = catalog::spin1_observables();

    for (k, (t, theta, phi)) in bloch_ball_grid(50).into_iter().enumerate() {
        let rho = catalog::bloch_qubit(BlochVector::spherical(t, theta, phi), tol)?;
        let sum = sum_skew(&rho, &paulis)?;
        let expected = analytic::pauli_sum(t)?;
        rec.record(
            "pauli_sum_closed_form",
            k,
            None,
            (sum - expected).abs(),
            CLOSED_FORM_TOL,
            || json!({ "t": t, "theta": theta, "phi": phi }),
        );
    }

    let thetas = periodic_grid(0.0, PI, 60);
    let phis = periodic_grid(0.0, 2.0 * PI, 30);
    let mut k = 0;
    for t in [0.25, 0.5, 0.75, 1.0] {
        let prefactor = analytic::pauli_prefactor(t)?;
        for &theta in &thetas {
            for &phi in &phis {
                let rho = catalog::bloch_qubit(BlochVector::spherical(t, theta, phi), tol)?;
                let diff = lb_tight(&rho, &paulis)? - lb_pairwise(&rho, &paulis)?;
                let expected = prefactor * analytic::gamma(theta, phi)?;
                rec.record(
                    "dominance_gap_closed_form",
                    k,
                    None,
                    (diff - expected).abs(),
                    GAMMA_TOL,
                    || json!({ "t": t, "theta": theta, "phi": phi }),
                );
                k += 1;
            }
        }
    }

    let mut min_gamma = f64::INFINITY;
    for (theta, phi) in gamma_grid(120) {
        min_gamma = min_gamma.min(analytic::gamma(theta, phi)?);
    }
    rec.record(
        "gamma_lower_bound",
        0,
        None,
        (analytic::gamma_min() - min_gamma).max(0.0),
        1e-6,
        || json!({ "min_gamma": min_gamma }),
    );

    let grid = linspace(0.0, PI, 30);
    let phis = linspace(0.0, 2.0 * PI, 30);
    let mut k = 0;
    for &theta in &grid {
        for &phi in &phis {
            let rho = catalog::spin1_pure_state(theta, phi, tol)?;
            let sum = sum_skew(&rho, &spins)?;
            let expected = analytic::spin1_sum(theta, phi);
            rec.record(
                "spin1_sum_closed_form",
                k,
                None,
                (sum - expected).abs(),
                CLOSED_FORM_TOL,
                || json!({ "theta": theta, "phi": phi }),
            );
            k += 1;
        }
    }
    Ok(())
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifySummary> {
    if cfg.trials == 0 {
        return Err(Error::ParamOutOfRange("trials must be at least 1".into()));
    }
    if let Some(&d) = cfg.dims.iter().find(|&&d| d < 2) {
        return Err(Error::ParamOutOfRange(format!(
            "dimension {d} must be at least 2"
        )));
    }
    cfg.tol.validate()?;
    let mut rec = Recorder::new();
    if cfg.suite.includes(Suite::Lemmas) {
        lemmas(cfg, &mut rec);
    }
    if cfg.suite.includes(Suite::Equalities) {
        equalities(cfg, &mut rec)?;
    }
    if cfg.suite.includes(Suite::Validity) {
        validity(cfg, &mut rec)?;
    }
    if cfg.suite.includes(Suite::Corollary) {
        corollary(cfg, &mut rec)?;
    }
    let passed = rec.properties.iter().all(|p| p.violations == 0);
    Ok(VerifySummary {
        suite: cfg.suite,
        seed: cfg.seed,
        trials: cfg.trials,
        dims: cfg.dims.clone(),
        rng: random::ALGORITHM,
        passed,
        properties: rec.properties,
        first_violation: rec.first_violation,
    })
}
