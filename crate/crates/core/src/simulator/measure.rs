//! Fourier-basis measurement: exact outcome probabilities and seeded sampling.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fourier::transform_all_axes;
use super::StateVector;
use crate::error::{param, Result};
use crate::vector::Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeSource {
    Analytic,
    Sampled { seed: u64, trials: u64 },
}

/// Probability of each outcome `t ∈ F_q^n`, indexed canonically.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    space: Space,
    probs: Vec<f64>,
    source: OutcomeSource,
}

impl OutcomeDistribution {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn source(&self) -> OutcomeSource {
        self.source
    }

    pub fn probability(&self, t: u64) -> f64 {
        self.probs[t as usize]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Outcomes sorted by decreasing probability; ties keep canonical order.
    pub fn top(&self, count: usize) -> Vec<(u64, f64)> {
        let mut ranked: Vec<(u64, f64)> = self
            .probs
            .iter()
            .enumerate()
            .map(|(t, &p)| (t as u64, p))
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked.truncate(count);
        ranked
    }
}

/// `p(t) = |⟨σ_t|state⟩|²` for every `t`, via the inverse transform on each
/// coordinate.
pub fn outcome_distribution(state: &StateVector) -> OutcomeDistribution {
    let space = state.space();
    let amps = transform_all_axes(space.field(), space.dim(), state.amplitudes(), true);
    OutcomeDistribution {
        space: space.clone(),
        probs: amps.iter().map(|a| a.norm_sqr()).collect(),
        source: OutcomeSource::Analytic,
    }
}

/// Empirical outcome counts from a seeded generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCounts {
    pub seed: u64,
    pub trials: u64,
    /// Encoded outcome to count; outcomes never drawn are absent.
    pub counts: BTreeMap<u64, u64>,
}

impl SampleCounts {
    pub fn count(&self, t: u64) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn frequency(&self, t: u64) -> f64 {
        self.count(t) as f64 / self.trials as f64
    }

    pub fn to_distribution(&self, space: &Space) -> OutcomeDistribution {
        let mut probs = alloc::vec![0.0; space.size() as usize];
        for (&t, &c) in &self.counts {
            probs[t as usize] = c as f64 / self.trials as f64;
        }
        OutcomeDistribution {
            space: space.clone(),
            probs,
            source: OutcomeSource::Sampled {
                seed: self.seed,
                trials: self.trials,
            },
        }
    }
}

/// Inverse-CDF sampling over canonical outcome order with ChaCha8.
pub fn sample_outcomes(dist: &OutcomeDistribution, trials: u64, seed: u64) -> Result<SampleCounts> {
    if trials == 0 {
        return Err(param("trials must be at least 1"));
    }
    let mut cumulative = Vec::with_capacity(dist.probs.len());
    let mut acc = 0.0;
    for &p in &dist.probs {
        acc += p;
        cumulative.push(acc);
    }
    let last_positive = dist
        .probs
        .iter()
        .rposition(|&p| p > 0.0)
        .ok_or_else(|| param("distribution has no mass"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..trials {
        let u: f64 = rng.random::<f64>() * acc;
        let t = cumulative
            .partition_point(|&c| c <= u)
            .min(last_positive);
        *counts.entry(t as u64).or_insert(0) += 1;
    }
    Ok(SampleCounts {
        seed,
        trials,
        counts,
    })
}
