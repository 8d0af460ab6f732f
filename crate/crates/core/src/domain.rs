//! Input domains `V ⊆ F_q^n`: explicit sets, the Vandermonde family
//! `{(1, x, …, x^d)}` and the monomial family of all monomials of degree at
//! most `d` in `m` variables.
//!
//! A [`Domain`] is a value: its vectors are deduplicated and sorted into
//! canonical order, so two domains with the same vector set compare equal no
//! matter how they were built.

use alloc::vec::Vec;

use crate::count::binomial_u128;
use crate::error::{param, resource, Result};
use crate::field::{Field, Fq};
use crate::vector::{FqVec, Space};

/// Default cap on the number of vectors a family constructor may produce.
pub const DEFAULT_DOMAIN_CAP: u64 = 1 << 20;

/// Default cap on the number of subsets the independence check may visit.
pub const DEFAULT_SUBSET_CAP: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    /// Every `min(n, |V|)` distinct vectors are linearly independent.
    Verified,
    /// The first dependent subset in canonical order.
    Refuted { witness: Vec<FqVec> },
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainStats {
    /// `|V|`
    pub size: usize,
    /// `|V_0|`, the vectors with at least one zero entry.
    pub zero_touching: usize,
    pub independence: Independence,
}

impl DomainStats {
    pub fn independence_verified(&self) -> bool {
        self.independence == Independence::Verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    space: Space,
    vectors: Vec<FqVec>,
    zero_touching: usize,
}

impl Domain {
    /// Deduplicates and sorts `vectors`; all must lie in `F_q^n` for one `n`.
    pub fn explicit(field: &Field, vectors: Vec<FqVec>) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| param("domain must contain at least one vector"))?;
        let space = Space::new(field, first.len())?;
        for v in &vectors {
            space.check(v)?;
        }
        let mut vectors = vectors;
        vectors.sort();
        vectors.dedup();
        let zero_touching = count_zero_touching(&vectors);
        Ok(Domain {
            space,
            vectors,
            zero_touching,
        })
    }

    /// `{(1, x, …, x^d) : x ∈ F_q}`, `n = d + 1`.
    pub fn vandermonde(field: &Field, d: u32) -> Result<Self> {
        if field.q() as u64 > DEFAULT_DOMAIN_CAP {
            return Err(resource(
                "Vandermonde domain size",
                field.q() as u128,
                DEFAULT_DOMAIN_CAP as u128,
            ));
        }
        let vectors = field
            .elements()
            .map(|x| FqVec((0..=d).map(|e| field.pow(x, e as u64)).collect()))
            .collect();
        Domain::explicit(field, vectors)
    }

    /// One vector per `(x_1, …, x_m) ∈ F_q^m` listing every monomial of degree
    /// at most `d`, in the order of [`monomial_exponents`].
    pub fn monomial(field: &Field, m: u32, d: u32) -> Result<Self> {
        Domain::monomial_with_cap(field, m, d, DEFAULT_DOMAIN_CAP)
    }

    pub fn monomial_with_cap(field: &Field, m: u32, d: u32, cap: u64) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(param("monomial domain needs m >= 1 and d >= 1"));
        }
        let points = (field.q() as u64)
            .checked_pow(m)
            .filter(|&s| s <= cap)
            .ok_or_else(|| {
                resource(
                    "monomial domain size q^m",
                    (field.q() as u128).saturating_pow(m),
                    cap as u128,
                )
            })?;
        let exponents = monomial_exponents(m, d);
        let points_space = Space::new(field, m as usize)?;
        let vectors = (0..points)
            .map(|i| {
                let x = points_space.decode(i);
                FqVec(
                    exponents
                        .iter()
                        .map(|a| {
                            a.iter().zip(&x.0).fold(Fq::ONE, |acc, (&e, &xi)| {
                                field.mul(acc, field.pow(xi, e as u64))
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        Domain::explicit(field, vectors)
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// `n`
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `|V|`
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[FqVec] {
        &self.vectors
    }

    /// `|V_0|`, cached from construction.
    pub fn zero_touching(&self) -> usize {
        self.zero_touching
    }

    /// Statistics without the (expensive) independence check.
    pub fn stats(&self) -> DomainStats {
        DomainStats {
            size: self.len(),
            zero_touching: self.zero_touching,
            independence: Independence::Unchecked,
        }
    }
}

fn count_zero_touching(vectors: &[FqVec]) -> usize {
    vectors.iter().filter(|v| v.has_zero_entry()).count()
}

/// `|V_0|` by direct scan.
pub fn compute_v0(domain: &Domain) -> usize {
    count_zero_touching(domain.vectors())
}

/// Exponent tuples of all monomials of degree at most `d` in `m` variables:
/// graded by total degree, then lexicographically descending within a degree
/// (so `x_1` precedes `x_2`). The constant monomial comes first.
pub fn monomial_exponents(m: u32, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=d {
        let mut level = Vec::new();
        let mut current = alloc::vec![0u32; m as usize];
        compositions(total, 0, &mut current, &mut level);
        level.sort_by(|a, b| b.cmp(a));
        out.extend(level);
    }
    out
}

fn compositions(remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        compositions(remaining - e, pos + 1, current, out);
    }
}

/// Rank over `F_q` of the given rows, by Gaussian elimination.
pub fn rank(field: &Field, rows: &[&[Fq]]) -> usize {
    let mut m: Vec<Vec<Fq>> = rows.iter().map(|r| r.to_vec()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, pv));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Exhaustively checks that every `min(n, |V|)` distinct vectors of the domain
/// are linearly independent. Never samples: if the number of subsets exceeds
/// `subset_cap` the call fails and the caller must shrink `n` or `|V|`.
pub fn validate_independence(domain: &Domain, subset_cap: u128) -> Result<DomainStats> {
    let size = domain.len();
    let s = domain.dim().min(size);
    let subsets = binomial_u128(size as u64, s as u64).unwrap_or(u128::MAX);
    if subsets > subset_cap {
        return Err(resource(
            "independence check subsets C(|V|, n); lower n or |V|",
            subsets,
            subset_cap,
        ));
    }
    let field = domain.field();
    let vectors = domain.vectors();
    let mut idx: Vec<usize> = (0..s).collect();
    let independence = loop {
        let rows: Vec<&[Fq]> = idx.iter().map(|&i| vectors[i].entries()).collect();
        if rank(field, &rows) < s {
            break Independence::Refuted {
                witness: idx.iter().map(|&i| vectors[i].clone()).collect(),
            };
        }
        if !next_combination(&mut idx, size) {
            break Independence::Verified;
        }
    };
    Ok(DomainStats {
        size,
        zero_touching: domain.zero_touching(),
        independence,
    })
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}
