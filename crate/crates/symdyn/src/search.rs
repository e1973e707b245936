//! Parallel free-group search harness.

use rayon::prelude::*;
use symdyn_core::freegroup::{assemble, search_one, SearchParams, SearchReport};
use symdyn_core::Result;

/// Runs the search on `jobs` workers. The report depends only on `params`:
/// each SFT is seeded from its index and results are assembled in index order.
pub fn search_parallel(params: &SearchParams, jobs: usize) -> Result<SearchReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let verdicts = pool.install(|| {
        (0..params.count)
            .into_par_iter()
            .map(|i| search_one(params, i))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(assemble(verdicts))
}
