//! Numerical rank of families of final states.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::StateVector;
use crate::error::{param, Result};
use crate::zmap::ImageSet;

/// Singular values at or below `RANK_TOLERANCE · σ_max` count as zero.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Numerical rank of a dense complex matrix.
pub fn numerical_rank(m: &DMatrix<Complex64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * max).count()
}

/// Rank of the `q^n × |R_k|` matrix `[e(s·z)]`, rows over all secrets `s`
/// and columns over `z ∈ R_k`. Each row is `√|R_k|·|σ_{R_k}(s)⟩` restricted
/// to its support, so this is the dimension spanned by the algorithm's final
/// states. Refuses when `q^n · |R_k| > cap`.
pub fn gram_rank(image: &ImageSet, cap: u64) -> Result<usize> {
    if image.is_empty() {
        return Err(param("image set is empty"));
    }
    let space = image.space();
    let field = space.field();
    let cells = (space.size() as u128) * image.len() as u128;
    if cells > cap as u128 {
        return Err(crate::error::resource("Gram matrix entries", cells, cap as u128));
    }
    let columns: Vec<_> = image.iter().collect();
    let rows = space.size() as usize;
    let m = DMatrix::from_fn(rows, columns.len(), |s, z| {
        let s = space.decode(s as u64);
        field.character(space.dot(&s, &columns[z]))
    });
    Ok(numerical_rank(&m))
}

/// Rank of an arbitrary family of states, one state per row.
pub fn state_family_rank(states: &[StateVector]) -> Result<usize> {
    let Some(first) = states.first() else {
        return Ok(0);
    };
    let len = first.amplitudes().len();
    if states.iter().any(|s| s.space() != first.space()) {
        return Err(param("states live on different spaces"));
    }
    let m = DMatrix::from_fn(states.len(), len, |i, j| states[i].amplitudes()[j]);
    Ok(numerical_rank(&m))
}
