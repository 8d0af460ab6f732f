//! Query-count formulas and regime classification.
//!
//! Every ceiling of a log ratio is evaluated as the least integer satisfying
//! the equivalent power inequality, in exact integer arithmetic. The
//! Vandermonde family sits exactly on those boundaries, where floating-point
//! logs would round either way.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::count::pow_big;
use crate::domain::{monomial_exponents, DomainStats};
use crate::error::{param, Error, Result};

/// Iteration ceiling for the least-k searches.
const MAX_K: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `⌈n log q / log(|V|q)⌉`
    LowRegime,
    /// `⌈log(|V|q^n) / (2 log(|V|/|V_0|))⌉`, used when `q > |V|`.
    HighRegimeQLarge,
    /// `⌈(n+1) log q / (2 log(|V|/|V_0|))⌉`, used when `q < |V|`.
    HighRegimeVLarge,
    /// `q = |V|`: both high-regime formulas, which coincide.
    HighRegimeTie,
    Explicit,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::LowRegime => "low-regime",
            Rule::HighRegimeQLarge => "high-regime-q-large",
            Rule::HighRegimeVLarge => "high-regime-V-large",
            Rule::HighRegimeTie => "high-regime-tie",
            Rule::Explicit => "explicit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryPlan {
    pub k: u64,
    pub rule: Rule,
    pub note: String,
}

/// Least `k ≥ 0` with `lhs(k) ≥ rhs(k)`.
fn least_k(mut holds: impl FnMut(u64) -> bool) -> Result<u64> {
    (0..=MAX_K)
        .find(|&k| holds(k))
        .ok_or_else(|| Error::Contract(format!("no k up to {MAX_K} satisfies the bound")))
}

/// `k = ⌈n log q / log(|V| q)⌉`, i.e. the least `k` with `(|V|q)^k ≥ q^n`.
pub fn k_low(n: u64, q: u64, domain_len: u64) -> Result<QueryPlan> {
    if n == 0 || q < 2 || domain_len == 0 {
        return Err(param("k_low needs n >= 1, q >= 2, |V| >= 1"));
    }
    let target = pow_big(q, n);
    let base = domain_len * q;
    let k = least_k(|k| pow_big(base, k) >= target)?;
    Ok(QueryPlan {
        k,
        rule: Rule::LowRegime,
        note: "success probability (1/k!)(1 - O(1/min(q,|V|)))".into(),
    })
}

/// High-success query count, split on `q` versus `|V|`.
///
/// `q > |V|`: least `k` with `|V|^{2k} ≥ |V| q^n |V_0|^{2k}`.
/// `q < |V|`: least `k` with `|V|^{2k} ≥ q^{n+1} |V_0|^{2k}`.
/// `q = |V|`: both are evaluated and must agree.
pub fn k_high(n: u64, q: u64, domain_len: u64, zero_touching: u64) -> Result<QueryPlan> {
    if n == 0 || q < 2 || domain_len == 0 {
        return Err(param("k_high needs n >= 1, q >= 2, |V| >= 1"));
    }
    if zero_touching > domain_len {
        return Err(param("|V_0| cannot exceed |V|"));
    }
    if zero_touching == domain_len {
        return Err(Error::Undefined(
            "k_high needs |V| > |V_0|: log(|V|/|V_0|) = 0".into(),
        ));
    }
    let rule = match q.cmp(&domain_len) {
        core::cmp::Ordering::Greater => Rule::HighRegimeQLarge,
        core::cmp::Ordering::Less => Rule::HighRegimeVLarge,
        core::cmp::Ordering::Equal => Rule::HighRegimeTie,
    };
    if zero_touching == 0 {
        return Ok(QueryPlan {
            k: 1,
            rule,
            note: "degenerate: |V_0| = 0 zeroes the closed-form Chebyshev bound, which can undercount (compare the exact ratio)".into(),
        });
    }
    let by_q_large = || {
        let target = BigUint::from(domain_len) * pow_big(q, n);
        least_k(|k| pow_big(domain_len, 2 * k) >= &target * pow_big(zero_touching, 2 * k))
    };
    let by_v_large = || {
        let target = pow_big(q, n + 1);
        least_k(|k| pow_big(domain_len, 2 * k) >= &target * pow_big(zero_touching, 2 * k))
    };
    let k = match rule {
        Rule::HighRegimeQLarge => by_q_large()?,
        Rule::HighRegimeVLarge => by_v_large()?,
        _ => {
            let (a, b) = (by_q_large()?, by_v_large()?);
            if a != b {
                return Err(Error::Contract(format!(
                    "high-regime formulas disagree at q = |V|: {a} vs {b}"
                )));
            }
            a
        }
    };
    Ok(QueryPlan {
        k,
        rule,
        note: "success probability 1 - O(1/min(q,|V|))".into(),
    })
}

/// `(⌈(n+1)/(2 m^m)⌉, ⌈(n+1) q^m / 2⌉)`.
pub fn multivariate_k_bounds(n: u64, q: u64, m: u32) -> Result<(BigUint, BigUint)> {
    if m == 0 {
        return Err(param("m must be at least 1"));
    }
    let n1 = BigUint::from(n + 1);
    let two = BigUint::from(2u32);
    let lower_den = &two * pow_big(m as u64, m as u64);
    let lower = ceil_div(&n1, &lower_den);
    let upper = ceil_div(&(&n1 * pow_big(q, m as u64)), &two);
    Ok((lower, upper))
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    (a + b - 1u32) / b
}

/// The multivariate query count `d·n/(m+d)` quoted for comparison.
pub fn multivariate_reference_k(n: u64, m: u32, d: u32) -> BigRational {
    BigRational::new(
        (BigUint::from(d) * n).into(),
        BigUint::from(m + d).into(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateReduction {
    /// `e_i = d^{i-1} + … + 1` for the substitution `x_i ↦ x_1^{e_i}`.
    pub exponents: Vec<u64>,
    /// `D = d^m + … + d`.
    pub degree: u64,
    /// Each monomial exponent tuple (in domain order) and its image exponent.
    pub monomial_map: Vec<(Vec<u32>, u64)>,
}

impl UnivariateReduction {
    /// Query count for the reduced univariate degree, by the parity rules:
    /// odd `D` gives the low-regime `(D+1)/2`, even `D` the high-regime `D/2 + 1`.
    pub fn univariate_k(&self) -> QueryPlan {
        let d = self.degree;
        if d % 2 == 1 {
            QueryPlan {
                k: d.div_ceil(2),
                rule: Rule::LowRegime,
                note: "odd reduced degree: k = D/2 + 1/2".into(),
            }
        } else {
            QueryPlan {
                k: d / 2 + 1,
                rule: Rule::HighRegimeTie,
                note: "even reduced degree: k = D/2 + 1 (D/2 + 1/2 is not an integer)".into(),
            }
        }
    }
}

/// Kronecker-style substitution reducing `m` variables of degree `≤ d` to one.
pub fn univariate_reduction(m: u32, d: u32) -> Result<UnivariateReduction> {
    if m == 0 || d == 0 {
        return Err(param("univariate reduction needs m >= 1 and d >= 1"));
    }
    let d64 = d as u64;
    let mut exponents = Vec::with_capacity(m as usize);
    let mut e = 1u64;
    for _ in 0..m {
        exponents.push(e);
        e = e
            .checked_mul(d64)
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| param("reduction exponents overflow"))?;
    }
    let degree = d64 * exponents[m as usize - 1];
    let monomial_map: Vec<(Vec<u32>, u64)> = monomial_exponents(m, d)
        .into_iter()
        .map(|a| {
            let image = a.iter().zip(&exponents).map(|(&ai, &ei)| ai as u64 * ei).sum();
            (a, image)
        })
        .collect();
    let mut images: Vec<u64> = monomial_map.iter().map(|(_, e)| *e).collect();
    images.sort_unstable();
    if images.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Contract(
            "substitution maps two monomials to the same exponent".into(),
        ));
    }
    if images.last() != Some(&degree) {
        return Err(Error::Contract("largest image exponent differs from D".into()));
    }
    Ok(UnivariateReduction {
        exponents,
        degree,
        monomial_map,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `k ≥ k_high` and `|V_0| < |V|`.
    High,
    /// `k ≥ k_low` with verified independence and `2k ≤ n`.
    Low,
    /// Neither hypothesis set is met at this `k`.
    Below,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::High => "high-regime",
            Regime::Low => "low-regime",
            Regime::Below => "below-formulas",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub k: u64,
    pub k_low: QueryPlan,
    /// `None` when `|V| = |V_0|`.
    pub k_high: Option<QueryPlan>,
    /// Verified independence and `2k ≤ n`.
    pub low_hypothesis: bool,
    /// `|V_0| < |V|`.
    pub high_hypothesis: bool,
    pub regime: Regime,
    /// `k` equals the formula value of the selected regime.
    pub exact_match: bool,
}

impl Classification {
    pub fn summary(&self) -> String {
        let fit = match (self.regime, self.exact_match) {
            (Regime::Below, _) => "",
            (_, true) => " exact match",
            (_, false) => " exceeds formula",
        };
        format!("{}{}", self.regime.as_str(), fit)
    }
}

/// Places a provided `k` against both query-count formulas.
pub fn classify_instance(q: u64, n: u64, stats: &DomainStats, k: u64) -> Result<Classification> {
    if k == 0 {
        return Err(param("k must be at least 1"));
    }
    let size = stats.size as u64;
    let zero = stats.zero_touching as u64;
    let k_low = k_low(n, q, size)?;
    let k_high = match k_high(n, q, size, zero) {
        Ok(plan) => Some(plan),
        Err(Error::Undefined(_)) => None,
        Err(e) => return Err(e),
    };
    let low_hypothesis = stats.independence_verified() && 2 * k <= n;
    let high_hypothesis = zero < size;
    let (regime, exact_match) = match &k_high {
        Some(h) if k >= h.k => (Regime::High, k == h.k),
        _ if low_hypothesis && k >= k_low.k => (Regime::Low, k == k_low.k),
        _ => (Regime::Below, false),
    };
    Ok(Classification {
        k,
        k_low,
        k_high,
        low_hypothesis,
        high_hypothesis,
        regime,
        exact_match,
    })
}
