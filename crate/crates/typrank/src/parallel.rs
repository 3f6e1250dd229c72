//! Rayon versions of the samplers. Sample `k` always uses its own stream of
//! the master seed and results are merged in index order, so output does not
//! depend on the thread count.

use rayon::prelude::*;
use typrank_core::oracle::{
    aggregate_census, aggregate_samples, bicolorings, census_sample, solve_sample, InertiaCensus, OracleConfig,
    TypicalRankEstimate,
};
use typrank_core::{Error, Result, SemisimpleGraph};

fn check(n_samples: usize, cfg: &OracleConfig) -> Result<()> {
    cfg.validate()?;
    if n_samples == 0 {
        return Err(Error::Config("need at least one sample".into()));
    }
    Ok(())
}

pub fn typical_rank_sample(g: &SemisimpleGraph, n_samples: usize, cfg: &OracleConfig) -> Result<TypicalRankEstimate> {
    check(n_samples, cfg)?;
    let outcomes =
        (0..n_samples as u64).into_par_iter().map(|k| solve_sample(g, k, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(aggregate_samples(&outcomes, cfg))
}

pub fn inertia_census(g: &SemisimpleGraph, n_samples: usize, cfg: &OracleConfig) -> Result<InertiaCensus> {
    check(n_samples, cfg)?;
    bicolorings(g)?;
    let outcomes =
        (0..n_samples as u64).into_par_iter().map(|k| census_sample(g, k, cfg)).collect::<Result<Vec<_>>>()?;
    aggregate_census(g, &outcomes, cfg)
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build().expect("thread pool").install(f),
        None => f(),
    }
}
