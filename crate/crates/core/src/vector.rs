//! Vectors over `F_q` and the ambient space `F_q^n` with its canonical
//! indexing (first coordinate most significant, base `q`).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, resource, Result};
use crate::field::{Field, Fq};

/// A vector of field elements. Ordering is lexicographic on canonical indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqVec(pub Vec<Fq>);

impl FqVec {
    pub fn zero(n: usize) -> Self {
        FqVec(vec![Fq::ZERO; n])
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        FqVec(indices.iter().map(|&i| Fq(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Fq] {
        &self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|a| a.0).collect()
    }

    pub fn has_zero_entry(&self) -> bool {
        self.0.iter().any(|a| a.is_zero())
    }
}

/// `Σ a_i b_i` over `F_q`.
pub fn dot(field: &Field, a: &FqVec, b: &FqVec) -> Result<Fq> {
    if a.len() != b.len() {
        return Err(param(alloc::format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dot_unchecked(field, &a.0, &b.0))
}

#[inline]
pub(crate) fn dot_unchecked(field: &Field, a: &[Fq], b: &[Fq]) -> Fq {
    a.iter()
        .zip(b)
        .fold(Fq::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// The space `F_q^n`, with `q^n` required to fit in a `u64` index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: Field,
    n: usize,
    size: u64,
}

impl Space {
    pub fn new(field: &Field, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(param("dimension must be at least 1"));
        }
        let q = field.q() as u64;
        let size = u32::try_from(n)
            .ok()
            .and_then(|n| q.checked_pow(n))
            .ok_or_else(|| resource("q^n index space", u128::MAX, u64::MAX as u128))?;
        Ok(Space {
            field: field.clone(),
            n,
            size,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `q^n`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn require_size_at_most(&self, cap: u64, what: &str) -> Result<()> {
        if self.size > cap {
            Err(resource(what, self.size as u128, cap as u128))
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, v: &FqVec) -> bool {
        v.len() == self.n && v.0.iter().all(|a| a.0 < self.field.q())
    }

    pub fn check(&self, v: &FqVec) -> Result<()> {
        if v.len() != self.n {
            return Err(param(alloc::format!(
                "expected dimension {}, got {}",
                self.n,
                v.len()
            )));
        }
        if !self.contains(v) {
            return Err(param("vector entry outside the field"));
        }
        Ok(())
    }

    #[inline]
    pub fn encode(&self, v: &[Fq]) -> u64 {
        let q = self.field.q() as u64;
        v.iter().fold(0u64, |acc, a| acc * q + a.0 as u64)
    }

    pub fn decode(&self, mut index: u64) -> FqVec {
        let q = self.field.q() as u64;
        let mut out = vec![Fq::ZERO; self.n];
        for slot in out.iter_mut().rev() {
            *slot = Fq((index % q) as u32);
            index /= q;
        }
        FqVec(out)
    }

    /// All vectors in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = FqVec> + '_ {
        (0..self.size).map(move |i| self.decode(i))
    }

    pub fn dot(&self, a: &FqVec, b: &FqVec) -> Fq {
        dot_unchecked(&self.field, &a.0, &b.0)
    }

    /// `acc += y·v` in place.
    #[inline]
    pub fn axpy(&self, acc: &mut [Fq], y: Fq, v: &[Fq]) {
        if y.is_zero() {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.field.add(*a, self.field.mul(y, x));
        }
    }
}
