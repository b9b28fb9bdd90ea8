// SPDX-License-Identifier: Apache-2.0

//! Uncertainty bounds for several channels, maximized over relabelings of
//! each channel's Kraus operators.
//!
//! For channels `E_1..E_N`, each with `n` Kraus operators `K^t_i`, and a tuple
//! of permutations `(π_1..π_N)`:
//!
//! * `thm3` (`N > 2`):
//!   `1/(N-2) { Σ_{t<s} Σ_i I(K^t_{π_t(i)} + K^s_{π_s(i)})
//!            - 1/(N-1)² Σ_i (Σ_{t<s} √I(K^t_{π_t(i)} + K^s_{π_s(i)}))² }`
//! * `thm4` (`N ≥ 2`):
//!   `1/N Σ_i I(Σ_t K^t_{π_t(i)})
//!    + 2/(N²(N-1)) Σ_i (Σ_{t<s} √I(K^t_{π_t(i)} - K^s_{π_s(i)}))²`,
//!   which equals `I(E_1) + I(E_2)` for every permutation pair when `N = 2`.
//! * `fu_two` (`N = 2`): `max_{π, ±} ½ Σ_i I(K^1_i ± K^2_{π(i)})`.
//!
//! Both objectives are invariant under relabeling `i` by a common
//! permutation, so the search fixes `π_1` to the identity and enumerates
//! `(n!)^{N-1}` tuples in lexicographic order. Ties keep the first
//! (lexicographically smallest) tuple.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerances};
use crate::skew::{skew_channel, skew_operator, DensityState, KrausChannel};

/// Largest number of permutation tuples an exhaustive search will visit.
pub const PERM_CAP: u64 = 1_000_000;

/// A bijection on `{0, .., n-1}`; `apply(i)` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(Error::BadPermutation(mapping));
            }
            seen[m] = true;
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &m) in self.0.iter().enumerate() {
            inv[m] = i;
        }
        Permutation(inv)
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..n).permutations(n).map(Permutation).collect()
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Enumerate every tuple, failing if there are more than [`PERM_CAP`].
    Exhaustive,
    /// Evaluate only the all-identity tuple. The result is still a valid
    /// bound, just not the maximum.
    IdentityOnly,
}

/// Pad every channel with zero operators up to the largest Kraus count.
pub fn normalize_kraus_counts(channels: &[KrausChannel]) -> Result<Vec<KrausChannel>> {
    let first = channels.first().ok_or(Error::EmptyList)?;
    let dim = first.dim();
    for ch in channels {
        if ch.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                found: ch.dim(),
            });
        }
    }
    let n = channels.iter().map(KrausChannel::len).max().unwrap_or(0);
    Ok(channels.iter().map(|ch| ch.padded_to(n)).collect())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_state_dim(rho: &DensityState, channels: &[KrausChannel]) -> Result<()> {
    for ch in channels {
        if ch.dim() != rho.dim() {
            return Err(Error::DimMismatch {
                expected: rho.dim(),
                found: ch.dim(),
            });
        }
    }
    Ok(())
}

/// Memoized skew values for sums and differences of Kraus operators.
struct Evaluator<'a> {
    rho: &'a DensityState,
    channels: &'a [KrausChannel],
    n: usize,
    // [t][s][a][b] flattened, t < s, for K^t_a + K^s_b and K^t_a - K^s_b
    plus: Vec<f64>,
    minus: Vec<f64>,
    totals: HashMap<Vec<usize>, f64>,
}

impl<'a> Evaluator<'a> {
    fn new(rho: &'a DensityState, channels: &'a [KrausChannel], with_minus: bool) -> Result<Self> {
        let big_n = channels.len();
        let n = channels[0].len();
        let size = big_n * big_n * n * n;
        let mut plus = vec![0.0; size];
        let mut minus = vec![0.0; if with_minus { size } else { 0 }];
        for t in 0..big_n {
            for s in t + 1..big_n {
                for a in 0..n {
                    for b in 0..n {
                        let (kt, ks) = (&channels[t].kraus()[a], &channels[s].kraus()[b]);
                        let idx = ((t * big_n + s) * n + a) * n + b;
                        plus[idx] = skew_operator(rho, &(kt + ks))?;
                        if with_minus {
                            minus[idx] = skew_operator(rho, &(kt - ks))?;
                        }
                    }
                }
            }
        }
        Ok(Evaluator {
            rho,
            channels,
            n,
            plus,
            minus,
            totals: HashMap::new(),
        })
    }

    #[inline]
    fn idx(&self, t: usize, s: usize, a: usize, b: usize) -> usize {
        let big_n = self.channels.len();
        ((t * big_n + s) * self.n + a) * self.n + b
    }

    fn total(&mut self, indices: Vec<usize>) -> Result<f64> {
        if let Some(&v) = self.totals.get(&indices) {
            return Ok(v);
        }
        let sum = ComplexMatrix::sum(
            indices
                .iter()
                .enumerate()
                .map(|(t, &a)| &self.channels[t].kraus()[a]),
        )?;
        let v = skew_operator(self.rho, &sum)?;
        self.totals.insert(indices, v);
        Ok(v)
    }

    fn thm3(&self, pis: &[&Permutation]) -> f64 {
        let big_n = pis.len();
        let mut sum = 0.0;
        let mut squares = 0.0;
        for i in 0..self.n {
            let mut roots = 0.0;
            for t in 0..big_n {
                for s in t + 1..big_n {
                    let v = self.plus[self.idx(t, s, pis[t].apply(i), pis[s].apply(i))];
                    sum += v;
                    roots += v.sqrt();
                }
            }
            squares += roots * roots;
        }
        let nf = big_n as f64;
        (sum - squares / ((nf - 1.0) * (nf - 1.0))) / (nf - 2.0)
    }

    fn thm4(&mut self, pis: &[&Permutation]) -> Result<f64> {
        let big_n = pis.len();
        let mut totals = 0.0;
        let mut squares = 0.0;
        for i in 0..self.n {
            totals += self.total(pis.iter().map(|p| p.apply(i)).collect())?;
            let mut roots = 0.0;
            for t in 0..big_n {
                for s in t + 1..big_n {
                    roots += self.minus[self.idx(t, s, pis[t].apply(i), pis[s].apply(i))].sqrt();
                }
            }
            squares += roots * roots;
        }
        let nf = big_n as f64;
        Ok(totals / nf + 2.0 / (nf * nf * (nf - 1.0)) * squares)
    }
}

/// Search result over permutation tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleBound {
    pub bound: f64,
    pub pis: Vec<Permutation>,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuBound {
    pub bound: f64,
    pub pi: Permutation,
    /// `+1` or `-1`.
    pub sign: i8,
    pub exhaustive: bool,
}

fn check_cap(candidates: f64) -> Result<()> {
    if candidates > PERM_CAP as f64 {
        return Err(Error::SearchSpaceTooLarge {
            candidates,
            cap: PERM_CAP,
        });
    }
    Ok(())
}

/// Visit `(id, π_2, .., π_N)` in lexicographic order, keeping the first
/// strict maximum.
fn search<F>(big_n: usize, n: usize, mode: SearchMode, mut objective: F) -> Result<TupleBound>
where
    F: FnMut(&[&Permutation]) -> Result<f64>,
{
    let identity = Permutation::identity(n);
    if mode == SearchMode::IdentityOnly {
        let pis: Vec<&Permutation> = vec![&identity; big_n];
        let bound = objective(&pis)?;
        return Ok(TupleBound {
            bound,
            pis: vec![identity.clone(); big_n],
            exhaustive: false,
        });
    }
    check_cap(factorial(n).powi(big_n as i32 - 1))?;
    let perms = Permutation::all(n);
    let mut digits = vec![0usize; big_n - 1];
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let mut pis: Vec<&Permutation> = Vec::with_capacity(big_n);
        pis.push(&identity);
        pis.extend(digits.iter().map(|&d| &perms[d]));
        let value = objective(&pis)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, digits.clone()));
        }
        // odometer, last digit fastest
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                let (bound, digits) = best.expect("at least one candidate");
                let mut pis = vec![identity.clone()];
                pis.extend(digits.iter().map(|&d| perms[d].clone()));
                return Ok(TupleBound {
                    bound,
                    pis,
                    exhaustive: true,
                });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < perms.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn prepare(rho: &DensityState, channels: &[KrausChannel]) -> Result<Vec<KrausChannel>> {
    let channels = normalize_kraus_counts(channels)?;
    check_state_dim(rho, &channels)?;
    Ok(channels)
}

/// Pairwise-sum channel bound, `N > 2`.
pub fn thm3_bound(
    rho: &DensityState,
    channels: &[KrausChannel],
    mode: SearchMode,
) -> Result<TupleBound> {
    if channels.len() <= 2 {
        return Err(Error::RequiresAtLeastThree(channels.len()));
    }
    let channels = prepare(rho, channels)?;
    let eval = Evaluator::new(rho, &channels, false)?;
    search(channels.len(), channels[0].len(), mode, |pis| {
        Ok(eval.thm3(pis))
    })
}

/// Difference-form channel bound, `N ≥ 2`.
pub fn thm4_bound(
    rho: &DensityState,
    channels: &[KrausChannel],
    mode: SearchMode,
) -> Result<TupleBound> {
    if channels.len() < 2 {
        return Err(Error::RequiresAtLeastTwo(channels.len()));
    }
    let channels = prepare(rho, channels)?;
    let mut eval = Evaluator::new(rho, &channels, true)?;
    search(channels.len(), channels[0].len(), mode, |pis| {
        eval.thm4(pis)
    })
}

fn check_tuple(channels: &[KrausChannel], pis: &[Permutation]) -> Result<()> {
    if pis.len() != channels.len() {
        return Err(Error::DimMismatch {
            expected: channels.len(),
            found: pis.len(),
        });
    }
    let n = channels[0].len();
    if let Some(bad) = pis.iter().find(|p| p.len() != n) {
        return Err(Error::BadPermutation(bad.as_slice().to_vec()));
    }
    Ok(())
}

/// The `thm3` objective at one permutation tuple.
pub fn thm3_objective(
    rho: &DensityState,
    channels: &[KrausChannel],
    pis: &[Permutation],
) -> Result<f64> {
    if channels.len() <= 2 {
        return Err(Error::RequiresAtLeastThree(channels.len()));
    }
    let channels = prepare(rho, channels)?;
    check_tuple(&channels, pis)?;
    let eval = Evaluator::new(rho, &channels, false)?;
    Ok(eval.thm3(&pis.iter().collect::<Vec<_>>()))
}

/// The `thm4` objective at one permutation tuple.
pub fn thm4_objective(
    rho: &DensityState,
    channels: &[KrausChannel],
    pis: &[Permutation],
) -> Result<f64> {
    if channels.len() < 2 {
        return Err(Error::RequiresAtLeastTwo(channels.len()));
    }
    let channels = prepare(rho, channels)?;
    check_tuple(&channels, pis)?;
    let mut eval = Evaluator::new(rho, &channels, true)?;
    eval.thm4(&pis.iter().collect::<Vec<_>>())
}

/// Two-channel bound with a single global sign.
pub fn fu_two_channel(
    rho: &DensityState,
    e1: &KrausChannel,
    e2: &KrausChannel,
    mode: SearchMode,
) -> Result<FuBound> {
    let channels = prepare(rho, &[e1.clone(), e2.clone()])?;
    let (k1, k2) = (channels[0].kraus(), channels[1].kraus());
    let n = k1.len();
    let perms = match mode {
        SearchMode::Exhaustive => {
            check_cap(2.0 * factorial(n))?;
            Permutation::all(n)
        }
        SearchMode::IdentityOnly => vec![Permutation::identity(n)],
    };
    // table[a][b] = (I(K¹_a + K²_b), I(K¹_a - K²_b))
    let mut table = vec![(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (
                skew_operator(rho, &(&k1[a] + &k2[b]))?,
                skew_operator(rho, &(&k1[a] - &k2[b]))?,
            );
        }
    }
    let mut best: Option<FuBound> = None;
    for pi in perms {
        for sign in [1i8, -1] {
            let value = 0.5
                * (0..n)
                    .map(|i| {
                        let (p, m) = table[i * n + pi.apply(i)];
                        if sign > 0 {
                            p
                        } else {
                            m
                        }
                    })
                    .sum::<f64>();
            if best.as_ref().is_none_or(|b| value > b.bound) {
                best = Some(FuBound {
                    bound: value,
                    pi: pi.clone(),
                    sign,
                    exhaustive: mode == SearchMode::Exhaustive,
                });
            }
        }
    }
    Ok(best.expect("at least one permutation"))
}

/// Both sides of
/// `I(E_1) + I(E_2) = ½ [Σ_i I(K¹_{π₁(i)} + K²_{π₂(i)}) + Σ_i I(K¹_{π₁(i)} - K²_{π₂(i)})]`.
pub fn two_channel_identity(
    rho: &DensityState,
    e1: &KrausChannel,
    e2: &KrausChannel,
    pi1: &Permutation,
    pi2: &Permutation,
) -> Result<(f64, f64)> {
    let channels = prepare(rho, &[e1.clone(), e2.clone()])?;
    check_tuple(&channels, &[pi1.clone(), pi2.clone()])?;
    let (k1, k2) = (channels[0].kraus(), channels[1].kraus());
    let lhs = skew_channel(rho, &channels[0])? + skew_channel(rho, &channels[1])?;
    let mut rhs = 0.0;
    for i in 0..k1.len() {
        let (a, b) = (&k1[pi1.apply(i)], &k2[pi2.apply(i)]);
        rhs += skew_operator(rho, &(a + b))? + skew_operator(rho, &(a - b))?;
    }
    Ok((lhs, 0.5 * rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelBounds {
    pub fu_two: Option<f64>,
    pub thm3: Option<f64>,
    pub thm4: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuArgmax {
    pub pi: Permutation,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelArgmax {
    pub thm3: Option<Vec<Permutation>>,
    pub thm4: Vec<Permutation>,
    pub fu_two: Option<FuArgmax>,
}

/// Serializes as `{"N", "n_kraus", "sum_skew", "bounds", "argmax", "search_exhaustive"}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelBoundReport {
    #[serde(rename = "N")]
    pub n_channels: usize,
    pub n_kraus: usize,
    pub sum_skew: f64,
    pub bounds: ChannelBounds,
    pub argmax: ChannelArgmax,
    pub search_exhaustive: bool,
}

impl ChannelBoundReport {
    pub fn violations(&self, tol: &Tolerances) -> Vec<(&'static str, f64)> {
        let b = &self.bounds;
        [
            ("fu_two", b.fu_two),
            ("thm3", b.thm3),
            ("thm4", Some(b.thm4)),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .filter(|&(_, v)| v > self.sum_skew + tol.eq_tol || v < -tol.eq_tol)
        .collect()
    }
}

pub fn channel_report(
    rho: &DensityState,
    channels: &[KrausChannel],
    mode: SearchMode,
) -> Result<ChannelBoundReport> {
    if channels.len() < 2 {
        return Err(Error::RequiresAtLeastTwo(channels.len()));
    }
    let channels = prepare(rho, channels)?;
    let sum_skew = channels
        .iter()
        .map(|ch| skew_channel(rho, ch))
        .sum::<Result<f64>>()?;
    let thm4 = thm4_bound(rho, &channels, mode)?;
    let thm3 = if channels.len() > 2 {
        Some(thm3_bound(rho, &channels, mode)?)
    } else {
        None
    };
    let fu = if channels.len() == 2 {
        Some(fu_two_channel(rho, &channels[0], &channels[1], mode)?)
    } else {
        None
    };
    Ok(ChannelBoundReport {
        n_channels: channels.len(),
        n_kraus: channels[0].len(),
        sum_skew,
        bounds: ChannelBounds {
            fu_two: fu.as_ref().map(|f| f.bound),
            thm3: thm3.as_ref().map(|b| b.bound),
            thm4: thm4.bound,
        },
        argmax: ChannelArgmax {
            thm3: thm3.map(|b| b.pis),
            thm4: thm4.pis,
            fu_two: fu.map(|f| FuArgmax {
                pi: f.pi,
                sign: f.sign,
            }),
        },
        search_exhaustive: mode == SearchMode::Exhaustive,
    })
}
