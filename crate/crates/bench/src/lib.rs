// SPDX-License-Identifier: Apache-2.0

//! Fixed inputs shared by the benchmarks.

use skewinfo::catalog::{self, random, BlochVector, SeededGenerator};
use skewinfo::{DensityState, KrausChannel, Observable, Tolerances};

pub const SEED: u64 = 2024;

pub fn equatorial_state(theta: f64) -> DensityState {
    catalog::bloch_qubit(
        BlochVector::equatorial_family(theta),
        &Tolerances::default(),
    )
    .expect("valid Bloch vector")
}

pub fn random_instance(dim: usize, n_obs: usize) -> (DensityState, Vec<Observable>) {
    let tol = Tolerances::default();
    let mut gen = SeededGenerator::new(SEED);
    let rho = random::random_state(dim, &mut gen, &tol).expect("random state");
    let obs = (0..n_obs)
        .map(|_| random::random_observable(dim, &mut gen, &tol).expect("random observable"))
        .collect();
    (rho, obs)
}

pub fn random_channels(n_channels: usize, n_kraus: usize) -> (DensityState, Vec<KrausChannel>) {
    let tol = Tolerances::default();
    let mut gen = SeededGenerator::new(SEED);
    let rho = random::random_state(2, &mut gen, &tol).expect("random state");
    let channels = (0..n_channels)
        .map(|_| random::random_channel(2, n_kraus, &mut gen, &tol).expect("random channel"))
        .collect();
    (rho, channels)
}
