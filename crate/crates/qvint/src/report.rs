//! Serializable report pieces shared by the subcommands.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use qvint_core::complexity::{Classification, QueryPlan};
use qvint_core::{Domain, DomainStats, Independence};
use serde::Serialize;

use crate::config::format_vector;

/// An exact rational with its nearest double, for readers that only want
/// the number.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exact {
    pub exact: String,
    pub value: f64,
}

impl From<&BigRational> for Exact {
    fn from(r: &BigRational) -> Self {
        Exact {
            exact: r.to_string(),
            value: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl From<BigRational> for Exact {
    fn from(r: BigRational) -> Self {
        Exact::from(&r)
    }
}

pub fn big(n: &BigUint) -> String {
    n.to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldReport {
    pub q: u32,
    pub p: u32,
    pub r: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainReport {
    pub field: FieldReport,
    pub n: usize,
    pub size: usize,
    pub zero_touching: usize,
    /// `verified`, `refuted`, `unchecked`, or `skipped: <reason>`.
    pub independence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl DomainReport {
    pub fn new(domain: &Domain, stats: &DomainStats, skipped: Option<&str>) -> Self {
        let field = domain.field();
        let (independence, witness) = match (&stats.independence, skipped) {
            (_, Some(reason)) => (format!("skipped: {reason}"), None),
            (Independence::Verified, _) => ("verified".to_string(), None),
            (Independence::Refuted { witness }, _) => (
                "refuted".to_string(),
                Some(witness.iter().map(|v| format_vector(field, v)).collect()),
            ),
            (Independence::Unchecked, _) => ("unchecked".to_string(), None),
        };
        DomainReport {
            field: FieldReport {
                q: field.q(),
                p: field.p(),
                r: field.r(),
                modulus: field.params().modulus().to_vec(),
            },
            n: domain.dim(),
            size: stats.size,
            zero_touching: stats.zero_touching,
            independence,
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanReport {
    pub k: u64,
    pub rule: &'static str,
    pub note: String,
}

impl From<&QueryPlan> for PlanReport {
    fn from(p: &QueryPlan) -> Self {
        PlanReport {
            k: p.k,
            rule: p.rule.as_str(),
            note: p.note.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub k: u64,
    pub regime: &'static str,
    pub summary: String,
    pub low_hypothesis: bool,
    pub high_hypothesis: bool,
    pub exact_match: bool,
}

impl From<&Classification> for ClassificationReport {
    fn from(c: &Classification) -> Self {
        ClassificationReport {
            k: c.k,
            regime: c.regime.as_str(),
            summary: c.summary(),
            low_hypothesis: c.low_hypothesis,
            high_hypothesis: c.high_hypothesis,
            exact_match: c.exact_match,
        }
    }
}

/// Either a value or the reason it was not computed.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Maybe<T> {
    Value(T),
    Skipped { skipped: String },
}

impl<T> Maybe<T> {
    pub fn skipped(reason: impl ToString) -> Self {
        Maybe::Skipped {
            skipped: reason.to_string(),
        }
    }
}

/// Opt-in wall-clock timings in seconds; left out by default so reports
/// stay byte-identical across runs.
pub type Timings = Option<std::collections::BTreeMap<&'static str, f64>>;

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
