//! Parallel pre-image census over disjoint index ranges of the tuple space.

use qvint_core::zmap::{census_chunk, PartialCensus, PreimageCensus, TupleSpace};
use qvint_core::Domain;
use rayon::prelude::*;

use crate::error::Result;

/// Tuples per work item; small spaces still get split so the merge path is
/// always exercised.
const CHUNK: u64 = 1 << 14;

/// Same result as the sequential census for any thread count.
pub fn par_census(domain: &Domain, k: usize, cap: u64) -> Result<PreimageCensus> {
    let tuples = TupleSpace::new(domain, k, cap)?;
    let total = tuples.total();
    let chunks = total.div_ceil(CHUNK);
    let partial = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            census_chunk(domain, &tuples, start..(start + CHUNK).min(total))
        })
        .reduce(PartialCensus::default, PartialCensus::merge);
    Ok(PreimageCensus::from_partial(domain, k, partial)?)
}
