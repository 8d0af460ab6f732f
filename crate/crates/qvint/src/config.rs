//! Experiment configuration: field, domain, query count and secret specs,
//! parsed from command-line strings.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qvint_core::complexity::{k_high, k_low};
use qvint_core::domain::DEFAULT_DOMAIN_CAP;
use qvint_core::zmap::DEFAULT_TUPLE_CAP;
use qvint_core::{Domain, DomainStats, Field, FieldParams, FqVec};
use serde::Serialize;

use crate::domain_file;
use crate::error::{usage, CliError, Result};

/// `p`, `p^r`, or a prime power `q`, with an optional modulus override.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub r: u32,
    /// Coefficients, constant term first, leading 1 included.
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn parse(text: &str, modulus: Option<&str>) -> Result<Self> {
        let text = text.trim();
        let (p, r) = match text.split_once('^') {
            Some((p, r)) => (parse_num(p, "field characteristic")?, parse_num(r, "field degree")?),
            None => {
                let q: u32 = parse_num(text, "field size")?;
                prime_power(q).ok_or_else(|| usage(format!("field size {q} is not a prime power")))?
            }
        };
        let modulus = modulus.map(parse_coefficients).transpose()?;
        Ok(FieldSpec { p, r, modulus })
    }

    pub fn build(&self) -> Result<Field> {
        let params = FieldParams::new(self.p, self.r, self.modulus.as_deref())?;
        Ok(Field::new(params)?)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.r)
        }
    }
}

fn parse_num<T: FromStr>(text: &str, what: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| usage(format!("invalid {what}: {text:?}")))
}

pub fn parse_coefficients(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|c| parse_num(c, "modulus coefficient"))
        .collect()
}

/// `(p, r)` with `p^r = q`, if `q` is a prime power.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut r = 0;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    Vandermonde { d: u32 },
    Monomial { m: u32, d: u32 },
    File { path: PathBuf },
}

impl DomainSpec {
    /// Exactly one of the three sources must be given.
    pub fn from_flags(
        vandermonde: Option<u32>,
        monomial: Option<&str>,
        file: Option<PathBuf>,
    ) -> Result<Self> {
        let given = vandermonde.is_some() as u8 + monomial.is_some() as u8 + file.is_some() as u8;
        if given != 1 {
            return Err(usage(
                "give exactly one of --vandermonde, --monomial, --domain-file",
            ));
        }
        if let Some(d) = vandermonde {
            return Ok(DomainSpec::Vandermonde { d });
        }
        if let Some(text) = monomial {
            let (m, d) = text
                .split_once(',')
                .ok_or_else(|| usage("--monomial expects m,d"))?;
            return Ok(DomainSpec::Monomial {
                m: parse_num(m, "monomial variable count")?,
                d: parse_num(d, "monomial degree")?,
            });
        }
        Ok(DomainSpec::File {
            path: file.expect("one source is present"),
        })
    }

    /// Builds the domain. A file carries its own field; when `field` is also
    /// given the two must agree.
    pub fn build(&self, field: Option<&FieldSpec>) -> Result<Domain> {
        match self {
            DomainSpec::File { path } => {
                let domain = domain_file::read(path)?;
                if let Some(spec) = field {
                    let expected = spec.build()?;
                    if expected != *domain.field() {
                        return Err(usage(format!(
                            "--field {spec} disagrees with the field in {}",
                            path.display()
                        )));
                    }
                }
                Ok(domain)
            }
            DomainSpec::Vandermonde { d } => {
                let field = field.ok_or_else(|| usage("--field is required"))?.build()?;
                Ok(Domain::vandermonde(&field, *d)?)
            }
            DomainSpec::Monomial { m, d } => {
                let field = field.ok_or_else(|| usage("--field is required"))?.build()?;
                Ok(Domain::monomial_with_cap(&field, *m, *d, DEFAULT_DOMAIN_CAP)?)
            }
        }
    }
}

/// An explicit query count or one chosen by a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KSpec {
    Fixed(u64),
    Low,
    High,
}

impl FromStr for KSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "low" => Ok(KSpec::Low),
            "high" => Ok(KSpec::High),
            other => Ok(KSpec::Fixed(parse_num(other, "k")?)),
        }
    }
}

impl KSpec {
    pub fn resolve(self, domain: &Domain, stats: &DomainStats) -> Result<u64> {
        let n = domain.dim() as u64;
        let q = domain.field().q() as u64;
        Ok(match self {
            KSpec::Fixed(k) => k,
            KSpec::Low => k_low(n, q, stats.size as u64)?.k,
            KSpec::High => k_high(n, q, stats.size as u64, stats.zero_touching as u64)?.k,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecretSpec {
    Explicit(String),
    /// Every `s ∈ F_q^n`.
    Sweep,
    /// One secret drawn from the seeded generator.
    Random,
}

impl FromStr for SecretSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sweep" | "all" => Ok(SecretSpec::Sweep),
            "random" => Ok(SecretSpec::Random),
            other => Ok(SecretSpec::Explicit(other.to_string())),
        }
    }
}

/// Parses a comma-separated vector. Tokens containing `:` are coefficient
/// lists (constant first); other tokens are canonical element indices, which
/// for prime fields are the residues.
pub fn parse_vector(field: &Field, text: &str) -> Result<FqVec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(usage("empty vector"));
    }
    text.split(',')
        .map(|tok| parse_element(field, tok.trim()))
        .collect::<Result<Vec<_>>>()
        .map(FqVec)
}

fn parse_element(field: &Field, tok: &str) -> Result<qvint_core::Fq> {
    if tok.contains(':') {
        let coeffs = tok
            .split(':')
            .map(|c| parse_num(c, "coefficient"))
            .collect::<Result<Vec<u32>>>()?;
        Ok(field.from_coeffs(&coeffs)?)
    } else {
        Ok(field.element(parse_num(tok, "field element")?)?)
    }
}

pub fn format_vector(field: &Field, v: &FqVec) -> String {
    v.entries()
        .iter()
        .map(|&e| field.format_element(e))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(usage(format!("unknown format {other:?}; use json or csv"))),
        }
    }
}

/// Everything needed to re-run an experiment; echoed into each report.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub field: Option<FieldSpec>,
    pub domain: DomainSpec,
    pub k: Option<KSpec>,
    pub secret: Option<SecretSpec>,
    pub trials: u64,
    pub seed: u64,
    pub max_tuples: u64,
    pub max_states: u64,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(field: Option<FieldSpec>, domain: DomainSpec) -> Self {
        ExperimentConfig {
            field,
            domain,
            k: None,
            secret: None,
            trials: 0,
            seed: 0,
            max_tuples: DEFAULT_TUPLE_CAP,
            max_states: qvint_core::simulator::DEFAULT_STATE_CAP,
            format: Format::Json,
        }
    }

    pub fn build_domain(&self) -> Result<Domain> {
        self.domain.build(self.field.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!(FieldSpec::parse("5", None).unwrap(), FieldSpec { p: 5, r: 1, modulus: None });
        assert_eq!(FieldSpec::parse("2^3", None).unwrap(), FieldSpec { p: 2, r: 3, modulus: None });
        assert_eq!(FieldSpec::parse("9", None).unwrap(), FieldSpec { p: 3, r: 2, modulus: None });
        let spec = FieldSpec::parse("4", Some("1,1,1")).unwrap();
        assert_eq!(spec.modulus, Some(vec![1, 1, 1]));
        assert!(spec.build().is_ok());
        assert!(FieldSpec::parse("6", None).is_err());
        assert!(FieldSpec::parse("x", None).is_err());
        assert!(FieldSpec::parse("4", Some("1,0,1")).unwrap().build().is_err());
    }

    #[test]
    fn domain_specs() {
        assert_eq!(
            DomainSpec::from_flags(Some(3), None, None).unwrap(),
            DomainSpec::Vandermonde { d: 3 }
        );
        assert_eq!(
            DomainSpec::from_flags(None, Some("2,3"), None).unwrap(),
            DomainSpec::Monomial { m: 2, d: 3 }
        );
        assert!(DomainSpec::from_flags(None, None, None).is_err());
        assert!(DomainSpec::from_flags(Some(1), Some("2,2"), None).is_err());
        assert!(DomainSpec::from_flags(None, Some("2"), None).is_err());
    }

    #[test]
    fn vectors_and_k() {
        let f4 = Field::with_degree(2, 2).unwrap();
        let v = parse_vector(&f4, "1, 0:1 ,3").unwrap();
        assert_eq!(v, FqVec::from_indices(&[1, 2, 3]));
        assert_eq!(format_vector(&f4, &v), "1:0,0:1,1:1");
        assert!(parse_vector(&f4, "4").is_err());
        assert!(parse_vector(&f4, "").is_err());
        assert_eq!("low".parse::<KSpec>().unwrap(), KSpec::Low);
        assert_eq!("3".parse::<KSpec>().unwrap(), KSpec::Fixed(3));
        assert!("x".parse::<KSpec>().is_err());
        assert_eq!("sweep".parse::<SecretSpec>().unwrap(), SecretSpec::Sweep);
    }
}
