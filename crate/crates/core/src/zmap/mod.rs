//! The aggregation map `Z(V, y) = Σ y_i v_i` from `V^k × F_q^k` to `F_q^n`,
//! its exact pre-image census, image set `R_k` and a canonical transversal.
//!
//! Enumeration walks the tuple space in a fixed mixed-radix order
//! `(v_1, …, v_k, y_1, …, y_k)` (vector indices into the domain, then field
//! elements; leftmost most significant). Any partition of that index range
//! into chunks yields the same census after merging, which is what the
//! parallel driver in the `qvint` crate relies on.

mod bounds;

pub use bounds::{
    chebyshev_zero_bound, good_set_sizes, rk_lower_bound, second_moment_identity_check,
    second_moment_rhs, SecondMomentCheck,
};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::count::pow_big;
use crate::domain::Domain;
use crate::error::{param, resource, Error, Result};
use crate::field::Fq;
use crate::vector::{FqVec, Space};

/// Default cap on `(|V|·q)^k`.
pub const DEFAULT_TUPLE_CAP: u64 = 100_000_000;

/// Census accumulation switches from a dense table to a map above this `q^n`.
const DENSE_LIMIT: u64 = 1 << 16;

/// A point `(V, y)` of `V^k × F_q^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZInput {
    pub vectors: Vec<FqVec>,
    pub y: Vec<Fq>,
}

impl ZInput {
    pub fn k(&self) -> usize {
        self.y.len()
    }
}

/// `Σ y_i v_i`; the empty input maps to the zero vector.
pub fn eval_z(space: &Space, input: &ZInput) -> Result<FqVec> {
    if input.vectors.len() != input.y.len() {
        return Err(param("Z input needs as many scalars as vectors"));
    }
    let q = space.field().q();
    if input.y.iter().any(|y| y.0 >= q) {
        return Err(param("scalar outside the field"));
    }
    let mut acc = vec![Fq::ZERO; space.dim()];
    for (v, &y) in input.vectors.iter().zip(&input.y) {
        space.check(v)?;
        space.axpy(&mut acc, y, v.entries());
    }
    Ok(FqVec(acc))
}

/// Mixed-radix coordinates on `V^k × F_q^k`.
#[derive(Clone, Debug)]
pub struct TupleSpace {
    k: usize,
    domain_len: u64,
    q: u64,
    total: u64,
}

impl TupleSpace {
    /// Fails with a resource error when `(|V|·q)^k` exceeds `cap`.
    pub fn new(domain: &Domain, k: usize, cap: u64) -> Result<Self> {
        let domain_len = domain.len() as u64;
        let q = domain.field().q() as u64;
        let total = (domain_len as u128 * q as u128)
            .checked_pow(k as u32)
            .unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(resource("Z enumeration tuples (|V|q)^k", total, cap as u128));
        }
        Ok(TupleSpace {
            k,
            domain_len,
            q,
            total: total as u64,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn radix(&self, pos: usize) -> u64 {
        if pos < self.k {
            self.domain_len
        } else {
            self.q
        }
    }

    /// Digits `(v_1..v_k, y_1..y_k)` of a tuple index.
    pub fn digits(&self, mut index: u64) -> Vec<u64> {
        let mut digits = vec![0u64; 2 * self.k];
        for pos in (0..2 * self.k).rev() {
            let r = self.radix(pos);
            digits[pos] = index % r;
            index /= r;
        }
        digits
    }

    pub fn decode(&self, domain: &Domain, index: u64) -> ZInput {
        let digits = self.digits(index);
        ZInput {
            vectors: digits[..self.k]
                .iter()
                .map(|&i| domain.vectors()[i as usize].clone())
                .collect(),
            y: digits[self.k..].iter().map(|&y| Fq(y as u32)).collect(),
        }
    }

    fn increment(&self, digits: &mut [u64]) {
        for pos in (0..digits.len()).rev() {
            digits[pos] += 1;
            if digits[pos] < self.radix(pos) {
                return;
            }
            digits[pos] = 0;
        }
    }
}

/// Per-image tallies: all pre-images, good pre-images, and the smallest
/// pre-image tuple index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub count: u64,
    pub good: u64,
    pub first: u64,
}

impl CensusEntry {
    fn absorb(&mut self, other: &CensusEntry) {
        self.count += other.count;
        self.good += other.good;
        self.first = self.first.min(other.first);
    }
}

/// The census of one chunk of the tuple space. Merging is commutative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialCensus {
    entries: BTreeMap<u64, CensusEntry>,
}

impl PartialCensus {
    pub fn merge(mut self, other: PartialCensus) -> PartialCensus {
        let (mut big, small) = if self.entries.len() >= other.entries.len() {
            (core::mem::take(&mut self.entries), other.entries)
        } else {
            (other.entries, core::mem::take(&mut self.entries))
        };
        for (z, e) in small {
            big.entry(z)
                .and_modify(|cur| cur.absorb(&e))
                .or_insert(e);
        }
        PartialCensus { entries: big }
    }
}

/// Exhaustively tallies `Z` over the tuple indices in `range`.
pub fn census_chunk(domain: &Domain, tuples: &TupleSpace, range: Range<u64>) -> PartialCensus {
    let space = domain.space();
    let field = space.field();
    let n = space.dim();
    let k = tuples.k;
    let q = field.q() as usize;
    let range = range.start.min(tuples.total)..range.end.min(tuples.total);
    if range.is_empty() {
        return PartialCensus::default();
    }

    // scaled[(v * q + y) * n ..][..n] = y·v
    let mut scaled = vec![Fq::ZERO; domain.len() * q * n];
    for (vi, v) in domain.vectors().iter().enumerate() {
        for y in field.elements() {
            let base = (vi * q + y.0 as usize) * n;
            for (slot, &x) in scaled[base..base + n].iter_mut().zip(v.entries()) {
                *slot = field.mul(y, x);
            }
        }
    }

    let dense = space.size() <= DENSE_LIMIT;
    let mut table: Vec<CensusEntry> = if dense {
        vec![
            CensusEntry {
                count: 0,
                good: 0,
                first: u64::MAX
            };
            space.size() as usize
        ]
    } else {
        Vec::new()
    };
    let mut sparse: BTreeMap<u64, CensusEntry> = BTreeMap::new();

    let mut digits = tuples.digits(range.start);
    let mut z = vec![Fq::ZERO; n];
    for index in range {
        z.iter_mut().for_each(|a| *a = Fq::ZERO);
        for i in 0..k {
            let base = (digits[i] as usize * q + digits[k + i] as usize) * n;
            for (a, &b) in z.iter_mut().zip(&scaled[base..base + n]) {
                *a = field.add(*a, b);
            }
        }
        let good = is_good(&digits, k);
        let key = space.encode(&z);
        let hit = CensusEntry {
            count: 1,
            good: good as u64,
            first: index,
        };
        if dense {
            table[key as usize].absorb(&hit);
        } else {
            sparse
                .entry(key)
                .and_modify(|e| e.absorb(&hit))
                .or_insert(hit);
        }
        tuples.increment(&mut digits);
    }

    if dense {
        sparse = table
            .into_iter()
            .enumerate()
            .filter(|(_, e)| e.count > 0)
            .map(|(z, e)| (z as u64, e))
            .collect();
    }
    PartialCensus { entries: sparse }
}

/// Distinct inner vectors and all scalars nonzero.
fn is_good(digits: &[u64], k: usize) -> bool {
    let (vs, ys) = digits.split_at(k);
    if ys.iter().any(|&y| y == 0) {
        return false;
    }
    (0..k).all(|i| (i + 1..k).all(|j| vs[i] != vs[j]))
}

/// Exact pre-image census of `Z` on `V^k × F_q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageCensus {
    domain: Domain,
    k: usize,
    entries: BTreeMap<u64, CensusEntry>,
}

impl PreimageCensus {
    /// Wraps a fully merged census, checking that the totals cover the whole
    /// tuple space.
    pub fn from_partial(domain: &Domain, k: usize, partial: PartialCensus) -> Result<Self> {
        let census = PreimageCensus {
            domain: domain.clone(),
            k,
            entries: partial.entries,
        };
        if BigUint::from(census.total()) != census.expected_total() {
            return Err(Error::Contract(alloc::format!(
                "census covers {} tuples, expected {}",
                census.total(),
                census.expected_total()
            )));
        }
        Ok(census)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn space(&self) -> &Space {
        self.domain.space()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &BTreeMap<u64, CensusEntry> {
        &self.entries
    }

    pub fn count(&self, z: &FqVec) -> u64 {
        self.entry(z).map_or(0, |e| e.count)
    }

    pub fn good_count(&self, z: &FqVec) -> u64 {
        self.entry(z).map_or(0, |e| e.good)
    }

    fn entry(&self, z: &FqVec) -> Option<&CensusEntry> {
        if !self.space().contains(z) {
            return None;
        }
        self.entries.get(&self.space().encode(z.entries()))
    }

    /// `|R_k|`
    pub fn image_size(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|e| e.count).sum()
    }

    pub fn good_total(&self) -> u64 {
        self.entries.values().map(|e| e.good).sum()
    }

    /// `(|V|·q)^k`
    pub fn expected_total(&self) -> BigUint {
        pow_big(
            self.domain.len() as u64 * self.domain.field().q() as u64,
            self.k as u64,
        )
    }

    fn q_n(&self) -> BigUint {
        BigUint::from(self.space().size())
    }

    /// `μ = (|V|q)^k / q^n`
    pub fn mean(&self) -> BigRational {
        ratio(self.expected_total(), self.q_n())
    }

    /// `Σ_z |Z^{-1}(z)|²`
    pub fn second_moment(&self) -> BigUint {
        self.entries
            .values()
            .map(|e| BigUint::from(e.count) * e.count)
            .sum()
    }

    /// `σ² = Σ_z |Z^{-1}(z)|² / q^n − μ²`
    pub fn variance(&self) -> BigRational {
        let mu = self.mean();
        ratio(self.second_moment(), self.q_n()) - &mu * &mu
    }

    /// `Pr_z[|Z^{-1}(z)| = 0]` under uniform `z`.
    pub fn zero_fraction(&self) -> BigRational {
        let q_n = self.q_n();
        ratio(&q_n - BigUint::from(self.image_size()), q_n)
    }

    /// `|R_k| / q^n`
    pub fn image_fraction(&self) -> BigRational {
        ratio(BigUint::from(self.image_size()), self.q_n())
    }

    /// The exact Chebyshev ratio `σ²/μ²`.
    pub fn chebyshev_ratio(&self) -> BigRational {
        let mu = self.mean();
        self.variance() / (&mu * &mu)
    }
}

pub(crate) fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Single-threaded enumeration of the whole tuple space.
pub fn enumerate_census(domain: &Domain, k: usize, cap: u64) -> Result<PreimageCensus> {
    let tuples = TupleSpace::new(domain, k, cap)?;
    let partial = census_chunk(domain, &tuples, 0..tuples.total());
    PreimageCensus::from_partial(domain, k, partial)
}

/// The image `R_k` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSet {
    space: Space,
    elements: Vec<u64>,
}

impl ImageSet {
    /// Builds an image set from encoded points; sorted and deduplicated.
    pub fn from_encoded(space: &Space, mut elements: Vec<u64>) -> Result<Self> {
        if elements.iter().any(|&z| z >= space.size()) {
            return Err(param("encoded point outside F_q^n"));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(ImageSet {
            space: space.clone(),
            elements,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Encoded points (canonical indices into `F_q^n`).
    pub fn encoded(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, z: &FqVec) -> bool {
        self.space.contains(z)
            && self
                .elements
                .binary_search(&self.space.encode(z.entries()))
                .is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = FqVec> + '_ {
        self.elements.iter().map(|&z| self.space.decode(z))
    }
}

pub fn image_set(census: &PreimageCensus) -> ImageSet {
    ImageSet {
        space: census.space().clone(),
        elements: census.entries.keys().copied().collect(),
    }
}

/// One chosen pre-image per image point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    space: Space,
    pairs: BTreeMap<u64, ZInput>,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn get(&self, z: &FqVec) -> Option<&ZInput> {
        self.pairs.get(&self.space.encode(z.entries()))
    }

    /// `(encoded z, pre-image)` pairs in canonical order of `z`.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, &ZInput)> {
        self.pairs.iter().map(|(&z, input)| (z, input))
    }

    /// The pre-images alone, i.e. the support `T_k` of the initial state.
    pub fn inputs(&self) -> impl Iterator<Item = &ZInput> {
        self.pairs.values()
    }
}

/// For each `z ∈ R_k`, its lexicographically smallest pre-image.
pub fn build_transversal(census: &PreimageCensus) -> Result<Transversal> {
    let domain = census.domain();
    let tuples = TupleSpace::new(domain, census.k, u64::MAX)?;
    let pairs = census
        .entries
        .iter()
        .map(|(&z, e)| (z, tuples.decode(domain, e.first)))
        .collect();
    Ok(Transversal {
        space: census.space().clone(),
        pairs,
    })
}

/// `|Z^{-1}(z) ∩ (V^{k,good} × (F_q^×)^k)|`
pub fn good_preimage_count(census: &PreimageCensus, z: &FqVec) -> u64 {
    census.good_count(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn vandermonde(q: u32, d: u32) -> Domain {
        Domain::vandermonde(&Field::prime(q).unwrap(), d).unwrap()
    }

    #[test]
    fn eval_z_examples() {
        let f5 = Field::prime(5).unwrap();
        let s = Space::new(&f5, 2).unwrap();
        let input = ZInput {
            vectors: vec![FqVec::from_indices(&[1, 3])],
            y: vec![Fq(2)],
        };
        assert_eq!(eval_z(&s, &input).unwrap(), FqVec::from_indices(&[2, 1]));

        let zero_y = ZInput {
            vectors: vec![FqVec::from_indices(&[1, 3]), FqVec::from_indices(&[4, 4])],
            y: vec![Fq(0), Fq(0)],
        };
        assert_eq!(eval_z(&s, &zero_y).unwrap(), FqVec::zero(2));
        assert_eq!(eval_z(&s, &ZInput::default()).unwrap(), FqVec::zero(2));

        let f3 = Field::prime(3).unwrap();
        let s3 = Space::new(&f3, 2).unwrap();
        let input = ZInput {
            vectors: vec![FqVec::from_indices(&[1, 0]), FqVec::from_indices(&[1, 2])],
            y: vec![Fq(1), Fq(1)],
        };
        assert_eq!(eval_z(&s3, &input).unwrap(), FqVec::from_indices(&[2, 2]));

        let bad = ZInput {
            vectors: vec![FqVec::from_indices(&[1, 0, 0])],
            y: vec![Fq(1)],
        };
        assert!(eval_z(&s3, &bad).is_err());
        let bad = ZInput {
            vectors: vec![FqVec::from_indices(&[1, 0])],
            y: vec![],
        };
        assert!(eval_z(&s3, &bad).is_err());
    }

    #[test]
    fn census_q3_d1_k1() {
        let d = vandermonde(3, 1);
        let c = enumerate_census(&d, 1, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(c.image_size(), 7);
        assert_eq!(c.total(), 9);
        assert_eq!(image_set(&c).len(), 7);
        assert_eq!(build_transversal(&c).unwrap().len(), 7);
        assert_eq!(good_preimage_count(&c, &FqVec::from_indices(&[1, 2])), 1);
        assert_eq!(good_preimage_count(&c, &FqVec::zero(2)), 0);
    }

    #[test]
    fn census_k0() {
        let d = vandermonde(3, 1);
        let c = enumerate_census(&d, 0, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(c.image_size(), 1);
        assert_eq!(c.count(&FqVec::zero(2)), 1);
        let img = image_set(&c);
        assert_eq!(img.iter().collect::<Vec<_>>(), vec![FqVec::zero(2)]);
        let t = build_transversal(&c).unwrap();
        assert_eq!(t.get(&FqVec::zero(2)), Some(&ZInput::default()));
    }

    #[test]
    fn saturation_q5_d1_k2() {
        let c = enumerate_census(&vandermonde(5, 1), 2, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(c.image_size(), 25);
    }

    #[test]
    fn cap_is_enforced() {
        let d = vandermonde(5, 3);
        match enumerate_census(&d, 3, 1000) {
            Err(Error::Resource { requested, .. }) => assert_eq!(requested, 15625),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn transversal_points_map_back() {
        let d = vandermonde(5, 2);
        let c = enumerate_census(&d, 2, DEFAULT_TUPLE_CAP).unwrap();
        let t = build_transversal(&c).unwrap();
        assert_eq!(t.len() as u64, c.image_size());
        for (z, input) in t.pairs() {
            assert_eq!(eval_z(d.space(), input).unwrap(), d.space().decode(z));
        }
        assert_eq!(t, build_transversal(&c).unwrap());
    }

    #[test]
    fn chunked_merge_matches_whole() {
        let d = vandermonde(5, 2);
        let tuples = TupleSpace::new(&d, 2, DEFAULT_TUPLE_CAP).unwrap();
        let whole = census_chunk(&d, &tuples, 0..tuples.total());
        for chunk in [1u64, 7, 100, 333] {
            let mut acc = PartialCensus::default();
            let mut start = 0;
            let mut parts = Vec::new();
            while start < tuples.total() {
                let end = (start + chunk).min(tuples.total());
                parts.push(census_chunk(&d, &tuples, start..end));
                start = end;
            }
            // merge in reverse to exercise commutativity
            for p in parts.into_iter().rev() {
                acc = acc.merge(p);
            }
            assert_eq!(acc, whole);
        }
    }

    #[test]
    fn sparse_path_matches_dense() {
        // q^n = 13^7 > DENSE_LIMIT forces the map-based accumulator
        let f = Field::prime(13).unwrap();
        let d = Domain::vandermonde(&f, 6).unwrap();
        assert!(d.space().size() > DENSE_LIMIT);
        let c = enumerate_census(&d, 1, DEFAULT_TUPLE_CAP).unwrap();
        // y = 0 collapses to one point, every other (v, y) is distinct
        assert_eq!(c.image_size(), 1 + 13 * 12);
    }
}
