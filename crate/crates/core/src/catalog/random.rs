// SPDX-License-Identifier: Apache-2.0

//! Seeded random instances for property tests and verification suites.
//!
//! Streams come from ChaCha20 seeded via `seed_from_u64`, with normal
//! deviates from `rand_distr`'s ziggurat sampler. Both are platform
//! independent, so a failing `(seed, trial)` pair replays anywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{hermitian_eig, ComplexMatrix, Tolerances, C64};
use crate::skew::{DensityState, KrausChannel, Observable};

pub const ALGORITHM: &str = "chacha20-seed_from_u64/ziggurat-normal";

#[derive(Debug, Clone)]
pub struct SeededGenerator {
    seed: u64,
    rng: ChaCha20Rng,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        SeededGenerator {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        ALGORITHM
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex normal, `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> C64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        C64::new(h * self.normal(), h * self.normal())
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.random_range(lo..=hi_inclusive)
    }

    pub fn complex_vector(&mut self, len: usize) -> Vec<C64> {
        (0..len).map(|_| self.complex_normal()).collect()
    }

    /// Matrix with i.i.d. standard complex normal entries.
    pub fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        let entries = self.complex_vector(dim * dim);
        ComplexMatrix::from_row_slice(dim, &entries).expect("finite samples")
    }
}

/// `ρ = GG†/Tr(GG†)` with `G` Ginibre.
pub fn random_state(
    dim: usize,
    gen: &mut SeededGenerator,
    tol: &Tolerances,
) -> Result<DensityState> {
    let g = gen.ginibre(dim);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityState::new(w.scale_real(1.0 / tr).hermitian_part(), tol)
}

pub fn random_pure_state(
    dim: usize,
    gen: &mut SeededGenerator,
    tol: &Tolerances,
) -> Result<DensityState> {
    let mut psi = gen.complex_vector(dim);
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in psi.iter_mut() {
        *z /= norm;
    }
    DensityState::pure(&psi, tol)
}

/// `(G + G†)/2` with `G` Ginibre.
pub fn random_observable(
    dim: usize,
    gen: &mut SeededGenerator,
    tol: &Tolerances,
) -> Result<Observable> {
    Observable::new(gen.ginibre(dim).hermitian_part(), tol)
}

/// Random channel with `n_kraus` operators: the blocks of an isometry
/// `V = G (G†G)^{-1/2}` for a `(n_kraus·d) × d` Ginibre `G`.
pub fn random_channel(
    dim: usize,
    n_kraus: usize,
    gen: &mut SeededGenerator,
    tol: &Tolerances,
) -> Result<KrausChannel> {
    let blocks: Vec<ComplexMatrix> = (0..n_kraus).map(|_| gen.ginibre(dim)).collect();
    let mut gram = ComplexMatrix::zeros(dim);
    for g in &blocks {
        gram = &gram + &(&g.adjoint() * g);
    }
    let eig = hermitian_eig(&gram.hermitian_part(), tol)?;
    let inv_sqrt = eig.reconstruct_with(|x| 1.0 / x.sqrt());
    let kraus = blocks.iter().map(|g| g * &inv_sqrt).collect();
    KrausChannel::new(kraus, tol)
}
