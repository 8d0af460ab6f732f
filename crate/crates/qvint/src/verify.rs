//! The property suite behind `qvint verify`: field and character laws,
//! query-count formulas, census identities and simulator checks over a fixed
//! instance grid.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use qvint_core::complexity::{
    k_high, k_low, multivariate_k_bounds, multivariate_reference_k, univariate_reduction,
};
use qvint_core::count::{binomial, factorial, falling_factorial};
use qvint_core::domain::{validate_independence, DEFAULT_SUBSET_CAP};
use qvint_core::field::character_orthogonality_check;
use qvint_core::simulator::{
    build_sigma_rk, gram_rank, phase_query_check, run_algorithm, success_probability,
    SecretVector, DEFAULT_STATE_CAP,
};
use qvint_core::zmap::{
    build_transversal, chebyshev_zero_bound, image_set, rk_lower_bound,
    second_moment_identity_check, PreimageCensus,
};
use qvint_core::{Domain, Field, FieldParams};
use serde::Serialize;

use crate::parallel::par_census;

/// Tuple budget per grid instance.
const GRID_TUPLES: u64 = 1_000_000;
const QUICK_TUPLES: u64 = 20_000;
/// Instances with `q^n` above this skip the all-secrets simulator checks.
const SIM_SPACE: u64 = 1024;

#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub domain: Domain,
    pub k: usize,
}

fn vandermonde_label(q: u32, d: u32) -> String {
    format!("vandermonde q={q} d={d}")
}

/// Vandermonde domains for `q ∈ {3,4,5,7,8,9}`, `1 ≤ d ≤ min(q−1, 4)`, and
/// monomial domains `(m,d,q) ∈ {(2,2,3), (2,3,3), (3,2,2)}`, each with every
/// `k ≥ 0` whose tuple count fits the budget (at most `k = 3`).
pub fn default_grid() -> Vec<Instance> {
    grid(&[3, 4, 5, 7, 8, 9], &[(2, 2, 3), (2, 3, 3), (3, 2, 2)], 3, GRID_TUPLES)
}

/// A small subset of the default grid.
pub fn quick_grid() -> Vec<Instance> {
    grid(&[3, 4, 5], &[(2, 2, 3)], 2, QUICK_TUPLES)
}

fn grid(qs: &[u32], monomials: &[(u32, u32, u32)], max_k: usize, budget: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut push = |label: String, domain: Domain| {
        let per_query = domain.len() as u64 * domain.field().q() as u64;
        for k in 0..=max_k {
            if per_query.checked_pow(k as u32).is_none_or(|t| t > budget) {
                break;
            }
            out.push(Instance {
                label: format!("{label} k={k}"),
                domain: domain.clone(),
                k,
            });
        }
    };
    for &q in qs {
        let field = field_of_size(q);
        for d in 1..=(q - 1).min(4) {
            push(vandermonde_label(q, d), Domain::vandermonde(&field, d).unwrap());
        }
    }
    for &(m, d, q) in monomials {
        let field = field_of_size(q);
        push(
            format!("monomial m={m} d={d} q={q}"),
            Domain::monomial(&field, m, d).unwrap(),
        );
    }
    out
}

/// The field with `q` elements and its default modulus.
pub fn field_of_size(q: u32) -> Field {
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
    let r = (1..).find(|&r| p.pow(r) >= q).expect("q is finite");
    Field::with_degree(p, r).expect("prime power")
}

pub const FIELD_SIZES: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub instance: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<28} {}", self.name, self.instance)?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, instance: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        instance: instance.into(),
        passed,
        detail: detail.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds a field whose modulus `x^2 + 1` is reducible over `F_2`.
    CorruptModulus,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub quick: bool,
    pub fault: Option<Fault>,
}

pub fn run(options: VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let sizes: &[u32] = if options.quick { &FIELD_SIZES[..4] } else { &FIELD_SIZES };

    let mut moduli: Vec<(String, FieldParams)> = sizes
        .iter()
        .map(|&q| (format!("q={q}"), field_of_size(q).params().clone()))
        .collect();
    if options.fault == Some(Fault::CorruptModulus) {
        moduli.push((
            "q=4 modulus=1,0,1 (injected)".into(),
            FieldParams::new_unchecked(2, 2, vec![1, 0, 1]),
        ));
    }
    for (label, params) in moduli {
        let ok = params.is_irreducible() && Field::new(params.clone()).is_ok();
        out.push(check("modulus-irreducible", label, ok, format!("{:?}", params.modulus())));
    }

    for &q in sizes {
        out.extend(field_checks(&field_of_size(q)));
    }
    for q in [3, 4, 5] {
        let field = field_of_size(q);
        let dom = Domain::vandermonde(&field, 1).unwrap();
        let ok = dom
            .space()
            .iter()
            .all(|s| phase_query_check(&dom, &SecretVector::new(dom.space(), s).unwrap()));
        out.push(check("phase-query", format!("q={q}"), ok, "all secrets, all basis states"));
    }

    out.push(univariate_sweep());
    out.extend(multivariate_checks());
    out.push(reduction_sweep());

    let grid = if options.quick { quick_grid() } else { default_grid() };
    let mut censuses: BTreeMap<String, PreimageCensus> = BTreeMap::new();
    for inst in &grid {
        match par_census(&inst.domain, inst.k, u64::MAX) {
            Ok(c) => {
                out.extend(instance_checks(inst, &c, &censuses));
                censuses.insert(inst.label.clone(), c);
            }
            Err(e) => out.push(check("census", &inst.label, false, e.to_string())),
        }
    }
    out
}

pub fn field_checks(f: &Field) -> Vec<CheckResult> {
    let label = format!("q={}", f.q());
    let mut axioms = true;
    let mut trace_linear = true;
    let mut multiplicative = true;
    for a in f.elements() {
        axioms &= f.add(a, f.neg(a)).is_zero() && f.mul(a, f.one()) == a;
        if !a.is_zero() {
            axioms &= f.inv(a).map(|i| f.mul(a, i) == f.one()).unwrap_or(false);
        }
        for b in f.elements() {
            axioms &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
            trace_linear &= f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % f.p();
            multiplicative &= (f.character(f.add(a, b)) - f.character(a) * f.character(b)).norm() < 1e-12;
            for c in f.elements() {
                axioms &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
            }
        }
        for c in 0..f.p() {
            trace_linear &= f.trace(f.mul(f.from_int(c as i64), a)) == c * f.trace(a) % f.p();
        }
    }
    vec![
        check("field-axioms", &label, axioms, "exhaustive"),
        check("trace-linearity", &label, trace_linear, "exhaustive"),
        check("character-multiplicativity", &label, multiplicative, "tol 1e-12"),
        check("character-orthogonality", &label, character_orthogonality_check(f), "tol 1e-9"),
    ]
}

fn univariate_sweep() -> CheckResult {
    let mut bad = Vec::new();
    for q in [5u64, 7, 11, 13] {
        for d in 1..q {
            let n = d + 1;
            let ok = if d % 2 == 1 {
                k_low(n, q, q).map(|p| p.k == d.div_ceil(2)).unwrap_or(false)
            } else {
                k_high(n, q, q, 1).map(|p| p.k == d / 2 + 1).unwrap_or(false)
            };
            if !ok {
                bad.push(format!("q={q},d={d}"));
            }
        }
    }
    check(
        "univariate-k",
        "q in {5,7,11,13}, d < q",
        bad.is_empty(),
        if bad.is_empty() { String::new() } else { bad.join(" ") },
    )
}

pub const MULTIVARIATE_CASES: [(u32, u32, u32); 3] = [(2, 2, 3), (2, 3, 3), (3, 2, 2)];

fn multivariate_checks() -> Vec<CheckResult> {
    MULTIVARIATE_CASES
        .iter()
        .map(|&(m, d, q)| {
            let dom = Domain::monomial(&field_of_size(q), m, d).unwrap();
            let n = dom.dim() as u64;
            let qm = (q as u64).pow(m);
            let shape = BigUint::from(n) == binomial((m + d) as u64, d as u64)
                && dom.len() as u64 == qm
                && dom.zero_touching() as u64 == qm - (q as u64 - 1).pow(m);
            let (lo, hi) = multivariate_k_bounds(n, q as u64, m).unwrap();
            let r = multivariate_reference_k(n, m, d);
            let inside = BigRational::from_integer(lo.clone().into()) <= r
                && r <= BigRational::from_integer(hi.clone().into());
            let reduction = univariate_reduction(m, d).is_ok();
            check(
                "multivariate",
                format!("m={m} d={d} q={q}"),
                shape && inside && reduction,
                format!("n={n} |V|={} |V0|={} bounds=({lo},{hi}) ref={r}", dom.len(), dom.zero_touching()),
            )
        })
        .collect()
}

fn reduction_sweep() -> CheckResult {
    let ok = (1..=4).all(|m| (1..=4).all(|d| univariate_reduction(m, d).is_ok()));
    check("reduction-injective", "m,d <= 4", ok, "")
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn instance_checks(
    inst: &Instance,
    census: &PreimageCensus,
    earlier: &BTreeMap<String, PreimageCensus>,
) -> Vec<CheckResult> {
    let dom = &inst.domain;
    let k = inst.k;
    let q = dom.field().q() as u64;
    let label = inst.label.as_str();
    let mut out = Vec::new();

    let good_expected = falling_factorial(dom.len() as u64, k as u64) * BigUint::from(q - 1).pow(k as u32);
    let totals = BigUint::from(census.total()) == census.expected_total()
        && BigUint::from(census.good_total()) == good_expected;
    out.push(check("census-totals", label, totals, format!("|R_k|={}", census.image_size())));

    let stats = validate_independence(dom, DEFAULT_SUBSET_CAP).unwrap_or_else(|_| dom.stats());
    if stats.independence_verified() && 2 * k <= dom.dim() {
        let kf: u64 = (1..=k as u64).product();
        let dichotomy = dom.space().iter().all(|z| {
            let g = census.good_count(&z);
            g == 0 || g == kf
        });
        out.push(check("good-dichotomy", label, dichotomy, format!("k!={kf}")));
        let bound = rk_lower_bound(dom, &stats, k);
        let ok = match &bound {
            Ok(b) => {
                *b == BigRational::new(good_expected.clone().into(), factorial(k as u64).into())
                    && BigRational::from_integer(census.image_size().into()) >= *b
            }
            Err(_) => false,
        };
        let detail = bound.map(|b| format!("bound={b}")).unwrap_or_else(|e| e.to_string());
        out.push(check("rk-lower-bound", label, ok, detail));
    }

    if k > 0 {
        let prev_label = label.replace(&format!("k={k}"), &format!("k={}", k - 1));
        if let Some(prev) = earlier.get(&prev_label) {
            let contained = prev.entries().keys().all(|z| census.entries().contains_key(z));
            out.push(check("monotone-image", label, contained, "R_{k-1} in R_k"));
        }
    }

    let mean_ok = census.mean() * BigRational::from_integer(dom.space().size().into())
        == BigRational::from_integer(census.expected_total().into());
    out.push(check("exact-mean", label, mean_ok, ""));

    match second_moment_identity_check(census, u64::MAX) {
        Ok(c) => out.push(check("second-moment-identity", label, c.equal, format!("lhs={}", c.lhs))),
        Err(e) => out.push(check("second-moment-identity", label, false, e.to_string())),
    }

    let zero = census.zero_fraction();
    let closed = chebyshev_zero_bound(dom, k);
    out.push(check(
        "chebyshev-closed-form",
        label,
        zero <= closed,
        format!("Pr[empty]={zero} bound={closed}"),
    ));
    out.push(check(
        "chebyshev-exact-ratio",
        label,
        zero <= census.chebyshev_ratio(),
        format!("sigma^2/mu^2={}", census.chebyshev_ratio()),
    ));

    let size = dom.space().size();
    if size <= SIM_SPACE {
        let image = image_set(census);
        let expected = image.len() as f64 / size as f64;
        let transversal = build_transversal(census);
        let mut ok = transversal.is_ok();
        if let Ok(t) = &transversal {
            for s in dom.space().iter() {
                let s = SecretVector::new(dom.space(), s).unwrap();
                let run = run_algorithm(dom, k, t, &s, DEFAULT_STATE_CAP);
                let sigma = build_sigma_rk(&image, &s, DEFAULT_STATE_CAP);
                ok &= match (run, sigma) {
                    (Ok(run), Ok(sigma)) => {
                        run.max_abs_diff(&sigma) < 1e-12
                            && success_probability(&run, &s)
                                .map(|p| (p - expected).abs() < 1e-9)
                                .unwrap_or(false)
                    }
                    _ => false,
                };
            }
        }
        out.push(check(
            "success-probability",
            label,
            ok,
            format!("|R_k|/q^n={}", ratio(image.len() as u64, size)),
        ));
        if size * image.len() as u64 <= crate::commands::GRAM_CAP {
            let rank = gram_rank(&image, crate::commands::GRAM_CAP);
            out.push(check(
                "gram-rank",
                label,
                rank.as_ref().is_ok_and(|&r| r == image.len()),
                format!("rank={:?} |R_k|={}", rank.ok(), image.len()),
            ));
        }
    }

    out
}
