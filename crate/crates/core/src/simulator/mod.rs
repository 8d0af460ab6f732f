//! State-vector simulation of the `k`-query interpolation algorithm.
//!
//! The query register `V^k × F_q^k` is never materialised. The algorithm is
//! simulated on the transversal support `T_k`, where computing `Z` in place
//! is a relabelling onto `R_k`; the result is the state
//! `|σ_{R_k}⟩ = |R_k|^{-1/2} Σ_{z ∈ R_k} e(s·z)|z⟩` on `F_q^n`.

pub mod fourier;
mod measure;
mod rank;

pub use measure::{outcome_distribution, sample_outcomes, OutcomeDistribution, OutcomeSource, SampleCounts};
pub use rank::{gram_rank, numerical_rank, state_family_rank, RANK_TOLERANCE};

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::{param, Error, Result};
use crate::field::Fq;
use crate::vector::{FqVec, Space};
use crate::zmap::{eval_z, ImageSet, Transversal};

/// Default cap on `q^n` for dense states.
pub const DEFAULT_STATE_CAP: u64 = 1 << 22;

/// The hidden vector `s ∈ F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretVector(FqVec);

impl SecretVector {
    pub fn new(space: &Space, s: FqVec) -> Result<Self> {
        space.check(&s)?;
        Ok(SecretVector(s))
    }

    pub fn vector(&self) -> &FqVec {
        &self.0
    }
}

/// Black box for `O_s(v) = s·v`. The simulator only learns `s` through it.
pub struct Oracle<'a> {
    space: &'a Space,
    secret: &'a SecretVector,
}

impl<'a> Oracle<'a> {
    pub fn new(space: &'a Space, secret: &'a SecretVector) -> Self {
        Oracle { space, secret }
    }

    pub fn query(&self, v: &FqVec) -> Fq {
        self.space.dot(&self.secret.0, v)
    }
}

/// Dense amplitudes over `F_q^n` in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: Space,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(space: &Space, cap: u64) -> Result<Self> {
        space.require_size_at_most(cap, "state vector length q^n")?;
        Ok(StateVector {
            space: space.clone(),
            amps: vec![Complex64::new(0.0, 0.0); space.size() as usize],
        })
    }

    pub fn from_amplitudes(space: &Space, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() as u64 != space.size() {
            return Err(param("amplitude count differs from q^n"));
        }
        Ok(StateVector {
            space: space.clone(),
            amps,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, z: &FqVec) -> Complex64 {
        self.amps[self.space.encode(z.entries()) as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest per-amplitude distance.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Checks the phase-query identity for every domain vector and every target
/// basis state, within `1e-12` per amplitude.
pub fn phase_query_check(domain: &Domain, secret: &SecretVector) -> bool {
    phase_query_max_error(domain, secret) <= 1e-12
}

pub fn phase_query_max_error(domain: &Domain, secret: &SecretVector) -> f64 {
    let oracle = Oracle::new(domain.space(), secret);
    domain
        .vectors()
        .iter()
        .map(|v| fourier::phase_query_error(domain.field(), oracle.query(v)))
        .fold(0.0, f64::max)
}

/// `|σ_{R_k}⟩`: amplitude `e(s·z)/√|R_k|` on each `z ∈ R_k`.
pub fn build_sigma_rk(image: &ImageSet, secret: &SecretVector, cap: u64) -> Result<StateVector> {
    if image.is_empty() {
        return Err(param("image set is empty"));
    }
    let space = image.space();
    let field = space.field();
    let mut state = StateVector::zeros(space, cap)?;
    let scale = 1.0 / libm::sqrt(image.len() as f64);
    for (&z, point) in image.encoded().iter().zip(image.iter()) {
        state.amps[z as usize] = field.character(space.dot(secret.vector(), &point)) * scale;
    }
    Ok(state)
}

/// `|σ⟩ = q^{-n/2} Σ_z e(s·z)|z⟩`, the exact Fourier state of `s`.
pub fn build_sigma_full(space: &Space, secret: &SecretVector, cap: u64) -> Result<StateVector> {
    let mut state = StateVector::zeros(space, cap)?;
    let field = space.field();
    let scale = 1.0 / libm::sqrt(space.size() as f64);
    for (i, z) in space.iter().enumerate() {
        state.amps[i] = field.character(space.dot(secret.vector(), &z)) * scale;
    }
    Ok(state)
}

/// Runs the three steps: uniform superposition over `T_k`, `k` parallel
/// phase queries, then `Z` computed in place.
pub fn run_algorithm(
    domain: &Domain,
    k: usize,
    transversal: &Transversal,
    secret: &SecretVector,
    cap: u64,
) -> Result<StateVector> {
    let space = domain.space();
    if transversal.space() != space {
        return Err(param("transversal belongs to a different space"));
    }
    if transversal.is_empty() {
        return Err(param("transversal is empty"));
    }
    let field = space.field();
    let oracle = Oracle::new(space, secret);
    let mut state = StateVector::zeros(space, cap)?;
    let mut occupied = vec![false; state.amps.len()];
    let scale = 1.0 / libm::sqrt(transversal.len() as f64);

    for input in transversal.inputs() {
        if input.k() != k {
            return Err(param("transversal entry has the wrong number of queries"));
        }
        // k phase queries: e(Σ y_i·O_s(v_i))
        let phase_arg = input
            .vectors
            .iter()
            .zip(&input.y)
            .fold(Fq::ZERO, |acc, (v, &y)| field.add(acc, field.mul(y, oracle.query(v))));
        let amplitude = field.character(phase_arg) * scale;

        let z = space.encode(eval_z(space, input)?.entries()) as usize;
        if occupied[z] {
            return Err(Error::Contract(
                "Z is not injective on the transversal".into(),
            ));
        }
        occupied[z] = true;
        state.amps[z] = amplitude;
    }
    Ok(state)
}

/// `|⟨σ_s|state⟩|²`.
pub fn success_probability(state: &StateVector, secret: &SecretVector) -> Result<f64> {
    let sigma = build_sigma_full(state.space(), secret, u64::MAX)?;
    Ok(sigma.inner(state).norm_sqr())
}
