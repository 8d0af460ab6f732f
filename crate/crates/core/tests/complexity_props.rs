use num_bigint::BigUint;
use num_rational::BigRational;
use qvint_core::complexity::{
    k_high, k_low, multivariate_k_bounds, multivariate_reference_k, univariate_reduction, Rule,
};
use qvint_core::count::binomial;

/// Float ceiling of a log ratio in the given base; `None` when the ratio is
/// within `1e-9` of an integer and the float result is not trustworthy.
fn float_ceil(num: f64, den: f64) -> Option<u64> {
    let x = num / den;
    if (x - x.round()).abs() < 1e-9 {
        None
    } else {
        Some(x.ceil() as u64)
    }
}

fn ln(x: f64) -> f64 {
    x.ln()
}

fn lg(x: f64) -> f64 {
    x.log2()
}

#[test]
fn univariate_consistency_sweep() {
    for q in [5u64, 7, 11, 13] {
        for d in (1..q).filter(|d| d % 2 == 1 && *d <= 7) {
            assert_eq!(k_low(d + 1, q, q).unwrap().k, d.div_ceil(2), "q={q} d={d}");
        }
        for d in (2..q).filter(|d| d % 2 == 0 && *d <= 6) {
            let plan = k_high(d + 1, q, q, 1).unwrap();
            assert_eq!(plan.rule, Rule::HighRegimeTie);
            assert_eq!(plan.k, d / 2 + 1, "q={q} d={d}");
        }
    }
}

#[test]
fn exact_ceilings_agree_with_logs_in_any_base() {
    let mut boundary_hits = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
        for n in 1..=10u64 {
            for v in [1u64, 2, 3, q, q + 1, 2 * q, q * q] {
                let exact = k_low(n, q, v).unwrap().k;
                let (qf, vf) = (q as f64, v as f64);
                let a = float_ceil(n as f64 * ln(qf), ln(vf * qf));
                let b = float_ceil(n as f64 * lg(qf), lg(vf * qf));
                assert_eq!(a, b);
                match a {
                    Some(k) => assert_eq!(k, exact),
                    None => boundary_hits += 1,
                }
                for v0 in 1..v.min(5) {
                    let exact = k_high(n, q, v, v0).unwrap().k;
                    let expected = |log: fn(f64) -> f64| {
                        let den = 2.0 * log(vf / v0 as f64);
                        if q > v {
                            float_ceil(log(vf) + n as f64 * log(qf), den)
                        } else {
                            float_ceil((n + 1) as f64 * log(qf), den)
                        }
                    };
                    let (a, b) = (expected(ln), expected(lg));
                    assert_eq!(a, b);
                    if let Some(k) = a {
                        assert_eq!(k, exact, "q={q} n={n} |V|={v} |V_0|={v0}");
                    }
                }
            }
        }
    }
    // Vandermonde instances sit exactly on the boundary
    assert!(boundary_hits > 0);
}

#[test]
fn tie_formulas_agree_at_q_equals_v() {
    for q in 2..=16u64 {
        for n in 1..=8 {
            for v0 in 1..q {
                assert!(k_high(n, q, q, v0).is_ok());
            }
        }
    }
}

#[test]
fn multivariate_bounds_contain_reference() {
    let mut violations = Vec::new();
    for m in 1..=4u32 {
        for d in 1..=4u32 {
            let n: u64 = binomial((m + d) as u64, d as u64).try_into().unwrap();
            for q in 2..=5u64 {
                let (lo, hi) = multivariate_k_bounds(n, q, m).unwrap();
                assert!(lo <= hi);
                let r = multivariate_reference_k(n, m, d);
                let inside = BigRational::from_integer(BigUint::into(lo.clone()))
                    <= r
                    && r <= BigRational::from_integer(hi.into());
                if !inside {
                    violations.push((m, d, q));
                }
            }
        }
    }
    // d·n/(m+d) = 1 falls under ⌈3/2⌉ = 2 for one variable of degree one
    assert_eq!(violations, vec![(1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 1, 5)]);
}

#[test]
fn reduction_is_injective_for_small_m_d() {
    for m in 1..=4u32 {
        for d in 1..=4u32 {
            let red = univariate_reduction(m, d).unwrap();
            let expected: u64 = (1..=m).map(|i| (d as u64).pow(i)).sum();
            assert_eq!(red.degree, expected);
            let mut images: Vec<u64> = red.monomial_map.iter().map(|(_, e)| *e).collect();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len(), red.monomial_map.len());
            assert_eq!(*images.last().unwrap(), red.degree);
        }
    }
}
