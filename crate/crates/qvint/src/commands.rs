//! The `analyze`, `enumerate` and `simulate` experiments. Each returns a
//! serializable report; every number in it comes from `qvint_core`.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use qvint_core::complexity::{
    classify_instance, k_high, k_low, multivariate_k_bounds, multivariate_reference_k,
    univariate_reduction,
};
use qvint_core::domain::{validate_independence, DEFAULT_SUBSET_CAP};
use qvint_core::simulator::{
    gram_rank, outcome_distribution, phase_query_check, run_algorithm, sample_outcomes,
    success_probability, SecretVector,
};
use qvint_core::zmap::{
    build_transversal, chebyshev_zero_bound, image_set, rk_lower_bound,
    second_moment_identity_check, PreimageCensus,
};
use qvint_core::{Domain, DomainStats, Error as CoreError, FqVec, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{format_vector, parse_vector, DomainSpec, ExperimentConfig, KSpec, SecretSpec};
use crate::error::{usage, Result};
use crate::parallel::par_census;
use crate::report::{
    big, ClassificationReport, DomainReport, Exact, Maybe, PlanReport, Timings,
};

/// Secrets in a sweep are capped at this many.
pub const SWEEP_CAP: u64 = 1 << 12;

/// Gram-rank matrices are computed up to this many entries.
pub const GRAM_CAP: u64 = 1 << 20;

struct Clock {
    enabled: bool,
    marks: BTreeMap<&'static str, f64>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            marks: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, label: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.marks.insert(label, start.elapsed().as_secs_f64());
        }
        out
    }

    fn finish(self) -> Timings {
        self.enabled.then_some(self.marks)
    }
}

/// Independence check, downgraded to "skipped" when the subset count is
/// over the cap.
fn domain_stats(domain: &Domain) -> Result<(DomainStats, Option<String>)> {
    match validate_independence(domain, DEFAULT_SUBSET_CAP) {
        Ok(stats) => Ok((stats, None)),
        Err(e @ CoreError::Resource { .. }) => Ok((domain.stats(), Some(e.to_string()))),
        Err(e) => Err(e.into()),
    }
}

fn rational(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn k_of(config: &ExperimentConfig, domain: &Domain, stats: &DomainStats, default: KSpec) -> Result<usize> {
    let k = config.k.unwrap_or(default).resolve(domain, stats)?;
    usize::try_from(k).map_err(|_| usage("k too large"))
}

#[derive(Serialize)]
pub struct MultivariateReport {
    pub lower: String,
    pub upper: String,
    pub reference: Exact,
    pub reference_within_bounds: bool,
    pub reduction_exponents: Vec<u64>,
    pub reduced_degree: u64,
    pub reduced_plan: PlanReport,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub command: &'static str,
    pub config: ExperimentConfig,
    pub domain: DomainReport,
    pub k_low: PlanReport,
    pub k_high: Maybe<PlanReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multivariate: Option<MultivariateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rk_lower_bound: Option<Maybe<Exact>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chebyshev_zero_bound: Option<Exact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Timings,
}

pub fn analyze(config: &ExperimentConfig, timings: bool) -> Result<AnalyzeReport> {
    let mut clock = Clock::new(timings);
    let domain = clock.time("build_domain", || config.build_domain())?;
    let (stats, skipped) = clock.time("independence", || domain_stats(&domain))?;
    let n = domain.dim() as u64;
    let q = domain.field().q() as u64;
    let low = k_low(n, q, stats.size as u64)?;
    let high = match k_high(n, q, stats.size as u64, stats.zero_touching as u64) {
        Ok(plan) => Maybe::Value(PlanReport::from(&plan)),
        Err(e @ CoreError::Undefined(_)) => Maybe::skipped(e),
        Err(e) => return Err(e.into()),
    };

    let multivariate = match &config.domain {
        DomainSpec::Monomial { m, d } => {
            let (lower, upper) = multivariate_k_bounds(n, q, *m)?;
            let reference = multivariate_reference_k(n, *m, *d);
            let inside = BigRational::from_integer(lower.clone().into()) <= reference
                && reference <= BigRational::from_integer(upper.clone().into());
            let reduction = univariate_reduction(*m, *d)?;
            Some(MultivariateReport {
                lower: big(&lower),
                upper: big(&upper),
                reference: Exact::from(&reference),
                reference_within_bounds: inside,
                reduction_exponents: reduction.exponents.clone(),
                reduced_degree: reduction.degree,
                reduced_plan: PlanReport::from(&reduction.univariate_k()),
            })
        }
        _ => None,
    };

    let (classification, rk_bound, cheb) = match config.k {
        Some(spec) => {
            let k = spec.resolve(&domain, &stats)?;
            let class = classify_instance(q, n, &stats, k)?;
            let k = k as usize;
            let bound = match rk_lower_bound(&domain, &stats, k) {
                Ok(b) => Maybe::Value(Exact::from(&b)),
                Err(e @ CoreError::Contract(_)) => Maybe::skipped(e),
                Err(e) => return Err(e.into()),
            };
            (
                Some(ClassificationReport::from(&class)),
                Some(bound),
                Some(Exact::from(chebyshev_zero_bound(&domain, k))),
            )
        }
        None => (None, None, None),
    };

    Ok(AnalyzeReport {
        command: "analyze",
        config: config.clone(),
        domain: DomainReport::new(&domain, &stats, skipped.as_deref()),
        k_low: PlanReport::from(&low),
        k_high: high,
        multivariate,
        classification,
        rk_lower_bound: rk_bound,
        chebyshev_zero_bound: cheb,
        timings: clock.finish(),
    })
}

#[derive(Serialize)]
pub struct ChebyshevReport {
    /// `q^n (|V_0|/|V|)^{2k}`
    pub closed_form_bound: Exact,
    pub closed_form_holds: bool,
    /// `σ²/μ²`, the bound before the `|V_0|` estimate.
    pub exact_ratio: Exact,
    pub exact_ratio_holds: bool,
}

#[derive(Serialize)]
pub struct LowerBoundReport {
    pub bound: Exact,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct IdentityReport {
    pub lhs: String,
    pub rhs: Exact,
    pub equal: bool,
}

#[derive(Serialize)]
pub struct EnumerateReport {
    pub command: &'static str,
    pub config: ExperimentConfig,
    pub domain: DomainReport,
    pub k: usize,
    pub tuples: u64,
    pub space_size: u64,
    pub image_size: u64,
    /// `|R_k| / q^n`
    pub success_probability: Exact,
    pub good_total: u64,
    pub mean: Exact,
    pub second_moment: String,
    pub variance: Exact,
    pub zero_fraction: Exact,
    pub chebyshev: ChebyshevReport,
    pub rk_lower_bound: Maybe<LowerBoundReport>,
    pub second_moment_identity: Maybe<IdentityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Timings,
}

pub struct Enumeration {
    pub report: EnumerateReport,
    pub census: PreimageCensus,
}

pub fn enumerate(config: &ExperimentConfig, timings: bool) -> Result<Enumeration> {
    let mut clock = Clock::new(timings);
    let domain = clock.time("build_domain", || config.build_domain())?;
    let (stats, skipped) = clock.time("independence", || domain_stats(&domain))?;
    let k = k_of(config, &domain, &stats, KSpec::Low)?;
    let census = clock.time("census", || par_census(&domain, k, config.max_tuples))?;

    let zero = census.zero_fraction();
    let closed = chebyshev_zero_bound(&domain, k);
    let ratio = census.chebyshev_ratio();
    let rk_bound = match rk_lower_bound(&domain, &stats, k) {
        Ok(b) => Maybe::Value(LowerBoundReport {
            holds: BigRational::from_integer(BigInt::from(census.image_size())) >= b,
            bound: Exact::from(&b),
        }),
        Err(e @ CoreError::Contract(_)) => Maybe::skipped(e),
        Err(e) => return Err(e.into()),
    };
    let identity = match clock.time("second_moment", || {
        second_moment_identity_check(&census, config.max_states)
    }) {
        Ok(c) => Maybe::Value(IdentityReport {
            lhs: big(&c.lhs),
            rhs: Exact::from(&c.rhs),
            equal: c.equal,
        }),
        Err(e @ CoreError::Resource { .. }) => Maybe::skipped(e),
        Err(e) => return Err(e.into()),
    };

    let space_size = domain.space().size();
    let report = EnumerateReport {
        command: "enumerate",
        config: config.clone(),
        domain: DomainReport::new(&domain, &stats, skipped.as_deref()),
        k,
        tuples: census.total(),
        space_size,
        image_size: census.image_size(),
        success_probability: Exact::from(census.image_fraction()),
        good_total: census.good_total(),
        mean: Exact::from(census.mean()),
        second_moment: big(&census.second_moment()),
        variance: Exact::from(census.variance()),
        zero_fraction: Exact::from(&zero),
        chebyshev: ChebyshevReport {
            closed_form_holds: zero <= closed,
            closed_form_bound: Exact::from(&closed),
            exact_ratio_holds: zero <= ratio,
            exact_ratio: Exact::from(&ratio),
        },
        rk_lower_bound: rk_bound,
        second_moment_identity: identity,
        timings: clock.finish(),
    };
    Ok(Enumeration { report, census })
}

/// `z` as a string of base-`q` digits (`0-9a-z`) when `q ≤ 36`, otherwise
/// canonical indices joined by `.`.
pub fn digit_string(space: &Space, z: &FqVec) -> String {
    let q = space.field().q();
    if q <= 36 {
        z.entries()
            .iter()
            .map(|e| char::from_digit(e.0, 36).expect("digit below 36"))
            .collect()
    } else {
        z.indices()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Census table with columns `z,count,good_count`, in canonical `z` order.
pub fn write_census_csv<W: Write>(census: &PreimageCensus, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["z", "count", "good_count"])?;
    let space = census.space();
    for (&z, entry) in census.entries() {
        w.write_record([
            digit_string(space, &space.decode(z)),
            entry.count.to_string(),
            entry.good.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
pub struct OutcomeReport {
    pub t: String,
    pub probability: f64,
}

#[derive(Serialize)]
pub struct SampledReport {
    pub trials: u64,
    pub seed: u64,
    pub count: u64,
    pub frequency: f64,
}

#[derive(Serialize)]
pub struct SecretReport {
    pub secret: String,
    /// `|⟨σ_s|ψ⟩|²` from the simulated final state.
    pub analytic_probability: f64,
    pub phase_query_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled: Option<SampledReport>,
    pub top_outcomes: Vec<OutcomeReport>,
}

#[derive(Serialize)]
pub struct SimulateReport {
    pub command: &'static str,
    pub config: ExperimentConfig,
    pub domain: DomainReport,
    pub k: usize,
    pub image_size: u64,
    pub space_size: u64,
    /// `|R_k| / q^n` from the census.
    pub expected_probability: Exact,
    /// Every analytic probability is within `1e-9` of the expected value.
    pub secret_independent: bool,
    pub gram_rank: Maybe<usize>,
    pub secrets: Vec<SecretReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Timings,
}

fn secrets_for(config: &ExperimentConfig, space: &Space) -> Result<Vec<FqVec>> {
    match config.secret.clone().unwrap_or(SecretSpec::Random) {
        SecretSpec::Explicit(text) => Ok(vec![parse_vector(space.field(), &text)?]),
        SecretSpec::Sweep => {
            space.require_size_at_most(SWEEP_CAP, "secret sweep over F_q^n")?;
            Ok(space.iter().collect())
        }
        SecretSpec::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            Ok(vec![space.decode(rng.random_range(0..space.size()))])
        }
    }
}

pub fn simulate(config: &ExperimentConfig, timings: bool) -> Result<SimulateReport> {
    let mut clock = Clock::new(timings);
    let domain = clock.time("build_domain", || config.build_domain())?;
    let (stats, skipped) = clock.time("independence", || domain_stats(&domain))?;
    let space = domain.space();
    space.require_size_at_most(config.max_states, "state vector length q^n")?;
    let k = k_of(config, &domain, &stats, KSpec::Low)?;
    let secrets = secrets_for(config, space)?;

    let census = clock.time("census", || par_census(&domain, k, config.max_tuples))?;
    let image = image_set(&census);
    let transversal = build_transversal(&census)?;
    let expected = rational(image.len() as u64, space.size());
    let expected_f = image.len() as f64 / space.size() as f64;

    let mut reports = Vec::with_capacity(secrets.len());
    let mut independent = true;
    clock.time("simulate", || -> Result<()> {
        for s in secrets {
            let secret = SecretVector::new(space, s)?;
            let state = run_algorithm(&domain, k, &transversal, &secret, config.max_states)?;
            let p = success_probability(&state, &secret)?;
            independent &= (p - expected_f).abs() <= 1e-9;
            let dist = outcome_distribution(&state);
            let target = space.encode(secret.vector().entries());
            let sampled = if config.trials > 0 {
                let counts = sample_outcomes(&dist, config.trials, config.seed)?;
                Some(SampledReport {
                    trials: config.trials,
                    seed: config.seed,
                    count: counts.count(target),
                    frequency: counts.frequency(target),
                })
            } else {
                None
            };
            reports.push(SecretReport {
                secret: format_vector(space.field(), secret.vector()),
                analytic_probability: p,
                phase_query_ok: phase_query_check(&domain, &secret),
                sampled,
                top_outcomes: dist
                    .top(5)
                    .into_iter()
                    .map(|(t, probability)| OutcomeReport {
                        t: format_vector(space.field(), &space.decode(t)),
                        probability,
                    })
                    .collect(),
            });
        }
        Ok(())
    })?;

    let rank = match clock.time("gram_rank", || gram_rank(&image, GRAM_CAP)) {
        Ok(r) => Maybe::Value(r),
        Err(e @ CoreError::Resource { .. }) => Maybe::skipped(e),
        Err(e) => return Err(e.into()),
    };

    Ok(SimulateReport {
        command: "simulate",
        config: config.clone(),
        domain: DomainReport::new(&domain, &stats, skipped.as_deref()),
        k,
        image_size: image.len() as u64,
        space_size: space.size(),
        expected_probability: Exact::from(&expected),
        secret_independent: independent,
        gram_rank: rank,
        secrets: reports,
        timings: clock.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::FieldSpec;

    fn config(field: &str, domain: DomainSpec) -> ExperimentConfig {
        ExperimentConfig::new(Some(FieldSpec::parse(field, None).unwrap()), domain)
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&config("5", DomainSpec::Vandermonde { d: 3 }), false).unwrap();
        assert_eq!(r.k_low.k, 2);
        assert!(matches!(r.k_high, Maybe::Value(PlanReport { k: 3, .. })));
        assert_eq!(r.domain.zero_touching, 1);
        assert_eq!(r.domain.independence, "verified");

        let r = analyze(&config("3", DomainSpec::Monomial { m: 2, d: 2 }), false).unwrap();
        assert_eq!((r.domain.n, r.domain.size, r.domain.zero_touching), (6, 9, 5));
        let mv = r.multivariate.unwrap();
        assert_eq!((mv.lower.as_str(), mv.upper.as_str()), ("1", "32"));
        assert!(mv.reference_within_bounds);

        let mut c = config("5", DomainSpec::Vandermonde { d: 3 });
        c.k = Some(KSpec::Fixed(2));
        let r = analyze(&c, false).unwrap();
        assert_eq!(r.classification.unwrap().summary, "low-regime exact match");
        c.k = Some(KSpec::Fixed(0));
        assert_eq!(analyze(&c, false).err().unwrap().exit_code(), 2);
    }

    #[test]
    fn enumerate_examples() {
        let mut c = config("3", DomainSpec::Vandermonde { d: 1 });
        c.k = Some(KSpec::Fixed(1));
        let e = enumerate(&c, false).unwrap();
        assert_eq!(e.report.image_size, 7);
        assert_eq!(e.report.success_probability.exact, "7/9");
        assert!(matches!(e.report.second_moment_identity, Maybe::Value(IdentityReport { equal: true, .. })));

        c.k = Some(KSpec::Fixed(0));
        assert_eq!(enumerate(&c, false).unwrap().report.image_size, 1);

        let mut c = config("5", DomainSpec::Vandermonde { d: 3 });
        c.k = Some(KSpec::Fixed(2));
        let e = enumerate(&c, false).unwrap();
        assert!(e.report.image_size >= 160);
        assert!(matches!(e.report.rk_lower_bound, Maybe::Value(LowerBoundReport { holds: true, .. })));

        c.max_tuples = 100;
        assert_eq!(enumerate(&c, false).err().unwrap().exit_code(), 3);
    }

    #[test]
    fn census_csv() {
        let mut c = config("3", DomainSpec::Vandermonde { d: 1 });
        c.k = Some(KSpec::Fixed(1));
        let e = enumerate(&c, false).unwrap();
        let mut buf = Vec::new();
        write_census_csv(&e.census, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "z,count,good_count");
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[1], "00,3,0");
    }

    #[test]
    fn simulate_sweep() {
        let mut c = config("3", DomainSpec::Vandermonde { d: 1 });
        c.k = Some(KSpec::Fixed(1));
        c.secret = Some(SecretSpec::Sweep);
        let r = simulate(&c, false).unwrap();
        assert_eq!(r.secrets.len(), 9);
        assert!(r.secret_independent);
        assert!(r.secrets.iter().all(|s| (s.analytic_probability - 7.0 / 9.0).abs() < 1e-9));
        assert!(r.secrets.iter().all(|s| s.sampled.is_none()));
        assert!(matches!(r.gram_rank, Maybe::Value(7)));
    }

    #[test]
    fn simulate_is_reproducible() {
        let mut c = config("3", DomainSpec::Vandermonde { d: 1 });
        c.k = Some(KSpec::Fixed(1));
        c.trials = 2000;
        c.seed = 11;
        let a = crate::report::to_json(&simulate(&c, false).unwrap()).unwrap();
        let b = crate::report::to_json(&simulate(&c, false).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn digit_strings() {
        let f = qvint_core::Field::prime(37).unwrap();
        let space = Space::new(&f, 2).unwrap();
        assert_eq!(digit_string(&space, &FqVec::from_indices(&[36, 2])), "36.2");
        let f = qvint_core::Field::prime(13).unwrap();
        let space = Space::new(&f, 2).unwrap();
        assert_eq!(digit_string(&space, &FqVec::from_indices(&[12, 2])), "c2");
    }
}
