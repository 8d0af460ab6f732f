//! Counting bounds on `|R_k|`: the good-pre-image lower bound, the exact
//! second-moment identity, and the Chebyshev bound on empty fibres.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ratio, PreimageCensus};
use crate::count::{falling_factorial, factorial, pow_big};
use crate::domain::{Domain, DomainStats};
use crate::error::{Error, Result};

/// `(|V^{k,good}|, |Y^good|) = (k!·C(|V|, k), (q−1)^k)`.
pub fn good_set_sizes(domain_len: usize, q: u32, k: usize) -> (BigUint, BigUint) {
    (
        falling_factorial(domain_len as u64, k as u64),
        pow_big(q as u64 - 1, k as u64),
    )
}

/// `(1/k!)·|V^{k,good}|·|Y^good|`, a lower bound on `|R_k|`.
///
/// Only sound when any `2k` distinct domain vectors are independent, so the
/// call requires verified independence and `2k ≤ n`.
pub fn rk_lower_bound(domain: &Domain, stats: &DomainStats, k: usize) -> Result<BigRational> {
    if stats.size != domain.len() {
        return Err(Error::Contract(
            "statistics do not belong to this domain".into(),
        ));
    }
    if !stats.independence_verified() {
        return Err(Error::Contract(
            "rk_lower_bound needs verified n-wise independence of the domain".into(),
        ));
    }
    if 2 * k > domain.dim() {
        return Err(Error::Contract(alloc::format!(
            "rk_lower_bound needs 2k <= n, got k = {k}, n = {}",
            domain.dim()
        )));
    }
    let (v_good, y_good) = good_set_sizes(domain.len(), domain.field().q(), k);
    Ok(ratio(v_good * y_good, factorial(k as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondMomentCheck {
    /// `Σ_z |Z^{-1}(z)|²` from the census.
    pub lhs: BigUint,
    /// `(|V|q)^{2k}/q^n + (q^{2k}/q^n)·Σ_{t≠0} (#{v : t·v = 0})^{2k}`.
    pub rhs: BigRational,
    pub equal: bool,
}

/// Character-sum side of the second-moment identity, evaluated by sweeping
/// every `t ∈ F_q^n`. Refuses when `q^n > cap`.
pub fn second_moment_rhs(domain: &Domain, k: usize, cap: u64) -> Result<BigRational> {
    let space = domain.space();
    space.require_size_at_most(cap, "second-moment sweep over F_q^n")?;
    let q = domain.field().q() as u64;
    let two_k = 2 * k as u64;
    let mut sum = BigUint::zero();
    for t in 1..space.size() {
        let t = space.decode(t);
        let orthogonal = domain
            .vectors()
            .iter()
            .filter(|v| space.dot(&t, v).is_zero())
            .count() as u64;
        // 0^0 = 1 keeps the k = 0 case exact
        sum += pow_big(orthogonal, two_k);
    }
    let head = pow_big(domain.len() as u64 * q, two_k);
    let tail = pow_big(q, two_k) * sum;
    Ok(ratio(head + tail, BigUint::from(space.size())))
}

pub fn second_moment_identity_check(census: &PreimageCensus, cap: u64) -> Result<SecondMomentCheck> {
    let lhs = census.second_moment();
    let rhs = second_moment_rhs(census.domain(), census.k(), cap)?;
    let equal = BigRational::from_integer(lhs.clone().into()) == rhs;
    Ok(SecondMomentCheck { lhs, rhs, equal })
}

/// `q^n·(|V_0|/|V|)^{2k}`; values above 1 are vacuous.
pub fn chebyshev_zero_bound(domain: &Domain, k: usize) -> BigRational {
    let two_k = 2 * k as u64;
    ratio(
        BigUint::from(domain.space().size()) * pow_big(domain.zero_touching() as u64, two_k),
        pow_big(domain.len() as u64, two_k),
    )
}
