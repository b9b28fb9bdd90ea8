// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use skewinfo::catalog::{self, analytic, random, BlochVector, SeededGenerator};
use skewinfo::channel_bounds::{thm4_bound, two_channel_identity, Permutation, SearchMode};
use skewinfo::figures::{generate, linspace, periodic_grid, FigureId, FigureSpec};
use skewinfo::observable_bounds::{self, lb_pairwise, lb_tight, sum_skew};
use skewinfo::verify::{self, bloch_ball_grid, Suite, VerifyConfig};
use skewinfo::{skew_channel, Result, Tolerances};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn pauli_sum_closed_form() -> Result<Outcome> {
    let tol = Tolerances::default();
    let paulis = catalog::pauli_observables();
    let mut worst: f64 = 0.0;
    let grid = bloch_ball_grid(50);
    for &(t, theta, phi) in &grid {
        let rho = catalog::bloch_qubit(BlochVector::spherical(t, theta, phi), &tol)?;
        let expected = 2.0 * (1.0 - (1.0 - t).sqrt());
        worst = worst.max((sum_skew(&rho, &paulis)? - expected).abs());
    }
    outcome(
        worst <= 1e-9,
        format!(
            "{} points, max |err| = {worst:.3e} (limit 1e-9)",
            grid.len()
        ),
    )
}

fn equatorial_spot_values() -> Result<Outcome> {
    let tol = Tolerances::default();
    let paulis = catalog::pauli_observables();
    let rho = catalog::bloch_qubit(BlochVector::equatorial_family(0.0), &tol)?;
    let r = observable_bounds::report(&rho, &paulis, &tol)?;
    let root2 = 2f64.sqrt();
    let errs = [
        (r.sum_skew - 1.0).abs(),
        (r.bounds.lb1 - (6.0 + 2.0 * root2) / 9.0).abs(),
        (r.bounds.lb0.unwrap_or(f64::NAN) - (5.0 - 2.0 * root2) / 4.0).abs(),
        (r.bounds.lb0bar - 0.5).abs(),
    ];
    let spot = errs.iter().fold(0.0f64, |a, &b| a.max(b));
    let mut margin = f64::INFINITY;
    for theta in linspace(0.0, PI, 400) {
        let rho = catalog::bloch_qubit(BlochVector::equatorial_family(theta), &tol)?;
        let r = observable_bounds::report(&rho, &paulis, &tol)?;
        let lb0 = r.bounds.lb0.unwrap_or(f64::NAN);
        margin = margin
            .min(r.bounds.lb1 - lb0)
            .min(r.bounds.lb1 - r.bounds.lb0bar);
    }
    outcome(
        spot <= 1e-9 && margin > 1e-6,
        format!(
            "spot max |err| = {spot:.3e} (limit 1e-9), min ordering margin = {margin:.6} (> 1e-6)"
        ),
    )
}

fn gamma_minimum_and_gap() -> Result<Outcome> {
    let tol = Tolerances::default();
    let target = 3f64.sqrt() - 4.0 / 3.0;
    let fig1 = generate(&FigureSpec::new(FigureId::Fig1), &tol)?;
    let gammas = fig1.column("gamma").expect("gamma column");
    let min = gammas.iter().cloned().fold(f64::INFINITY, f64::min);

    let paulis = catalog::pauli_observables();
    let mut worst: f64 = 0.0;
    for t in [0.25f64, 0.5, 0.75, 1.0] {
        let prefactor = 1.0 - (1.0 - t).sqrt();
        for theta in periodic_grid(0.0, PI, 60) {
            for phi in periodic_grid(0.0, 2.0 * PI, 30) {
                let rho = catalog::bloch_qubit(BlochVector::spherical(t, theta, phi), &tol)?;
                let gap = lb_tight(&rho, &paulis)? - lb_pairwise(&rho, &paulis)?;
                worst = worst.max((gap - prefactor * analytic::gamma(theta, phi)?).abs());
            }
        }
    }
    outcome(
        min >= target - 1e-6 && (min - target).abs() <= 1e-3 && worst <= 1e-8,
        format!(
            "grid min gamma = {min:.9} vs {target:.9}, gap max |err| = {worst:.3e} (limit 1e-8)"
        ),
    )
}

fn two_observable_saturation() -> Result<Outcome> {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for d in [2usize, 3] {
        let mut gen = SeededGenerator::new(1000 + d as u64);
        for _ in 0..200 {
            let rho = random::random_state(d, &mut gen, &tol)?;
            let pair = [
                random::random_observable(d, &mut gen, &tol)?,
                random::random_observable(d, &mut gen, &tol)?,
            ];
            worst = worst.max((lb_tight(&rho, &pair)? - sum_skew(&rho, &pair)?).abs());
            count += 1;
        }
    }
    outcome(
        worst < 1e-9,
        format!("{count} instances, max |lb1 - sum| = {worst:.3e} (limit 1e-9)"),
    )
}

fn vector_identities() -> Result<Outcome> {
    let summary = verify::run(&VerifyConfig::new(Suite::Lemmas, 500, 7))?;
    let detail = summary
        .properties
        .iter()
        .map(|p| format!("{} worst {:.2e}", p.name, p.worst_residual))
        .collect::<Vec<_>>()
        .join(", ");
    let checked = summary.properties.iter().all(|p| p.checked == 500);
    outcome(summary.passed && checked, format!("500 tuples: {detail}"))
}

fn spin1_closed_form() -> Result<Outcome> {
    let tol = Tolerances::default();
    let spins = catalog::spin1_observables();
    let mut worst: f64 = 0.0;
    for theta in linspace(0.0, PI, 30) {
        for phi in linspace(0.0, 2.0 * PI, 30) {
            let rho = catalog::spin1_pure_state(theta, phi, &tol)?;
            let (st, ct) = theta.sin_cos();
            let (sp, cp) = phi.sin_cos();
            let expected = 2.0
                - 2.0 * st * st * sp * sp * (ct + st * cp).powi(2)
                - (ct * ct - st * st * cp * cp).powi(2);
            worst = worst.max((sum_skew(&rho, &spins)? - expected).abs());
        }
    }
    let at_pole = sum_skew(&catalog::spin1_pure_state(0.0, 0.0, &tol)?, &spins)?;
    outcome(
        worst <= 1e-9 && (at_pole - 1.0).abs() <= 1e-12,
        format!("900 points, max |err| = {worst:.3e} (limit 1e-9), theta=0 value = {at_pole}"),
    )
}

fn two_channel_equality() -> Result<Outcome> {
    let tol = Tolerances::default();
    let perms = Permutation::all(2);
    let mut gen = SeededGenerator::new(2024);
    let (mut identity_worst, mut bound_worst): (f64, f64) = (0.0, 0.0);
    for q in [0.0, 0.1, 0.5, 1.0] {
        let pair = vec![
            catalog::phase_damping(q, &tol)?,
            catalog::amplitude_damping(q, &tol)?,
        ];
        for _ in 0..50 {
            let rho = random::random_state(2, &mut gen, &tol)?;
            for p1 in &perms {
                for p2 in &perms {
                    let (l, r) = two_channel_identity(&rho, &pair[0], &pair[1], p1, p2)?;
                    identity_worst = identity_worst.max((l - r).abs());
                }
            }
            let sum = skew_channel(&rho, &pair[0])? + skew_channel(&rho, &pair[1])?;
            let t4 = thm4_bound(&rho, &pair, SearchMode::Exhaustive)?.bound;
            bound_worst = bound_worst.max((t4 - sum).abs());
        }
    }
    outcome(
        identity_worst <= 1e-10 && bound_worst <= 1e-9,
        format!(
            "200 states, identity max |err| = {identity_worst:.3e} (limit 1e-10), thm4 max |err| = {bound_worst:.3e} (limit 1e-9)"
        ),
    )
}

fn bound_validity() -> Result<Outcome> {
    let cfg = VerifyConfig::new(Suite::Validity, 500, 7).with_dims(vec![2, 3]);
    let summary = verify::run(&cfg)?;
    let violations: usize = summary.properties.iter().map(|p| p.violations).sum();
    let checked: usize = summary.properties.iter().map(|p| p.checked).sum();
    let worst = summary
        .properties
        .iter()
        .map(|p| p.worst_residual)
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(
        summary.passed,
        format!("{checked} checks, {violations} violations, max excess = {worst:.3e} (limit 1e-9)"),
    )
}

fn channel_crossover() -> Result<Outcome> {
    let tol = Tolerances::default();
    let fig5 = generate(&FigureSpec::new(FigureId::Fig5).with_resolution(200), &tol)?;
    let t3 = fig5.column("thm3").expect("thm3 column");
    let t4 = fig5.column("thm4").expect("thm4 column");
    let a = t3
        .iter()
        .zip(&t4)
        .filter(|(x, y)| **x > **y + 1e-12)
        .count();
    let b = t3
        .iter()
        .zip(&t4)
        .filter(|(x, y)| **y > **x + 1e-12)
        .count();
    outcome(
        a > 0 && b > 0,
        format!("thm3 > thm4 at {a} points, thm4 > thm3 at {b} points of 200"),
    )
}

fn surface_dominance() -> Result<Outcome> {
    let tol = Tolerances::default();
    let mut worst = f64::INFINITY;
    let mut points = 0;
    for id in [FigureId::Fig3, FigureId::Fig4] {
        let data = generate(&FigureSpec::new(id).with_resolution(90), &tol)?;
        let lb1 = data.column("lb1").expect("lb1 column");
        let lb0 = data.column("lb0").expect("lb0 column");
        points += lb1.len();
        worst = lb1
            .iter()
            .zip(&lb0)
            .map(|(a, b)| a - b)
            .fold(worst, f64::min);
    }
    outcome(
        worst >= -1e-9,
        format!("{points} points, min lb1 - lb0 = {worst:.6} (>= -1e-9)"),
    )
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        (
            "Pauli skew sum closed form on Bloch grid",
            pauli_sum_closed_form,
        ),
        (
            "equatorial family spot values and ordering",
            equatorial_spot_values,
        ),
        ("gamma minimum and dominance gap", gamma_minimum_and_gap),
        ("two-observable saturation", two_observable_saturation),
        ("vector norm identities", vector_identities),
        ("spin-1 skew sum closed form", spin1_closed_form),
        ("two-channel equality", two_channel_equality),
        ("bound validity", bound_validity),
        ("channel bound crossover", channel_crossover),
        ("spin-1 and qutrit dominance", surface_dominance),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (passed, detail) = match check() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {name}: {detail}",
            k + 1,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
