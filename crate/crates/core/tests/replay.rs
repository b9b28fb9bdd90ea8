// SPDX-License-Identifier: Apache-2.0

use skewinfo::catalog::names::{channels_from_json, observables_from_json, state_from_json};
use skewinfo::observable_bounds::{lb_gram, lb_pairwise, lb_tight, sum_skew};
use skewinfo::verify::{run, Suite, VerifyConfig};
use skewinfo::Tolerances;

#[test]
fn equality_suite_passes_at_default_tolerance() {
    let cfg = VerifyConfig::new(Suite::Equalities, 200, 7).with_dims(vec![2]);
    let summary = run(&cfg).unwrap();
    assert!(summary.passed);
    for p in &summary.properties {
        assert!(p.worst_residual < 1e-9, "{}: {}", p.name, p.worst_residual);
    }
}

#[test]
fn serialized_violation_reproduces_residual_exactly() {
    let tol = Tolerances {
        eq_tol: 1e-300,
        ..Tolerances::default()
    };
    let cfg = VerifyConfig::new(Suite::Validity, 50, 7)
        .with_dims(vec![2])
        .with_tolerances(tol);
    let summary = run(&cfg).unwrap();
    assert!(!summary.passed);
    let v = summary.first_violation.expect("violation recorded");
    let text = serde_json::to_string(&v.instance).unwrap();
    let rho = state_from_json(&text, &tol).unwrap();
    assert_eq!(serde_json::to_value(&rho).unwrap(), v.instance["rho"]);
    if v.instance.get("observables").is_some() {
        let obs = observables_from_json(&text, &tol).unwrap();
        let sum = sum_skew(&rho, &obs).unwrap();
        let replayed = match v.property.as_str() {
            "pairwise_bound_valid" => lb_pairwise(&rho, &obs).unwrap(),
            "gram_bound_valid" => lb_gram(&rho, &obs, &tol).unwrap(),
            "tight_bound_valid" => lb_tight(&rho, &obs).unwrap(),
            other => panic!("unexpected property {other}"),
        } - sum;
        assert_eq!(replayed, v.residual);
    } else {
        let channels = channels_from_json(&text, &tol).unwrap();
        assert!(channels.len() >= 2);
    }
}
