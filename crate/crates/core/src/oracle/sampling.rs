//! Monte Carlo estimates over Gaussian partial matrices. Sample `k` draws
//! from its own ChaCha stream of the master seed, so any subset of samples
//! can be computed in any order and merged.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{min_rank_complete_with, specified_bounds, OracleConfig};
use crate::completion::{certify_full_rank_sampled, PartialSymmetricMatrix};
use crate::error::{Error, Result};
use crate::graph::{Bipartiteness, SemisimpleGraph, VertexSet};
use crate::linalg::Inertia;

/// Redraws allowed for one sample before giving up.
pub const MAX_DEGENERATE_DRAWS: usize = 100;

/// Generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard normal values on the edges of `g`, redrawn while some fully
/// specified block sits near the rank threshold. Returns the number of redraws.
pub fn draw_partial<R: Rng + ?Sized>(
    g: &SemisimpleGraph,
    cfg: &OracleConfig,
    rng: &mut R,
) -> Result<(PartialSymmetricMatrix, usize)> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for redraws in 0..=MAX_DEGENERATE_DRAWS {
        let entries: Vec<(usize, usize, f64)> =
            edges.iter().map(|&(i, j)| (i, j, rng.sample(StandardNormal))).collect();
        let m = PartialSymmetricMatrix::new(g.clone(), &entries)?;
        if !specified_bounds(&m, cfg.tolerance())?.near_threshold {
            return Ok((m, redraws));
        }
    }
    Err(Error::NonGeneric("every draw was degenerate".into()))
}

/// Minimum completion rank found for one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOutcome {
    pub index: u64,
    pub rank: usize,
    pub redraws: usize,
}

pub fn solve_sample(g: &SemisimpleGraph, index: u64, cfg: &OracleConfig) -> Result<SampleOutcome> {
    let mut rng = sample_rng(cfg.seed, index);
    let (m, redraws) = draw_partial(g, cfg, &mut rng)?;
    let sol = min_rank_complete_with(&m, cfg, &mut rng)?;
    Ok(SampleOutcome { index, rank: sol.rank, redraws })
}

/// Sampled distribution of minimum completion ranks.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TypicalRankEstimate {
    pub samples: usize,
    pub counts: BTreeMap<usize, usize>,
    /// Frequencies over all samples; they sum to 1.
    pub histogram: BTreeMap<usize, f64>,
    /// Ranks whose frequency reaches `threshold`.
    pub declared: Vec<usize>,
    pub threshold: f64,
    pub seed: u64,
    pub degenerate_redraws: usize,
}

/// Merges outcomes in any order.
pub fn aggregate_samples(outcomes: &[SampleOutcome], cfg: &OracleConfig) -> TypicalRankEstimate {
    let mut counts = BTreeMap::new();
    let mut degenerate_redraws = 0;
    for o in outcomes {
        *counts.entry(o.rank).or_insert(0usize) += 1;
        degenerate_redraws += o.redraws;
    }
    let total = outcomes.len().max(1) as f64;
    let histogram: BTreeMap<usize, f64> = counts.iter().map(|(&r, &c)| (r, c as f64 / total)).collect();
    let declared = histogram.iter().filter(|(_, &f)| f >= cfg.threshold).map(|(&r, _)| r).collect();
    TypicalRankEstimate {
        samples: outcomes.len(),
        counts,
        histogram,
        declared,
        threshold: cfg.threshold,
        seed: cfg.seed,
        degenerate_redraws,
    }
}

/// Serial sampler; samples `0..n_samples`.
pub fn typical_rank_sample(g: &SemisimpleGraph, n_samples: usize, cfg: &OracleConfig) -> Result<TypicalRankEstimate> {
    cfg.validate()?;
    if n_samples == 0 {
        return Err(Error::Config("need at least one sample".into()));
    }
    let outcomes = (0..n_samples as u64).map(|k| solve_sample(g, k, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(aggregate_samples(&outcomes, cfg))
}

/// A proper 2-colouring of the complement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Bicoloring {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Every proper 2-colouring `(left, right)` of the complement of `g`, both
/// orientations of each component included.
pub fn bicolorings(g: &SemisimpleGraph) -> Result<Vec<Bicoloring>> {
    let gc = g.complement();
    if !matches!(gc.bipartiteness(), Bipartiteness::Bipartite { .. }) {
        return Err(Error::NotFullRankTypical);
    }
    let mut parts = Vec::new();
    for comp in gc.components() {
        match gc.induced(comp).bipartiteness() {
            Bipartiteness::Bipartite { left, .. } => {
                let labels = comp.to_vec();
                let l = VertexSet::from_labels(left.iter().map(|v| labels[v - 1]));
                parts.push((l, comp.difference(l)));
            }
            Bipartiteness::OddCycle(_) => return Err(Error::Internal("component not bipartite".into())),
        }
    }
    if parts.len() > 20 {
        return Err(Error::SearchLimit { n: parts.len(), limit: 20 });
    }
    let mut out = Vec::with_capacity(1 << parts.len());
    for mask in 0u32..1 << parts.len() {
        let mut left = VertexSet::empty();
        let mut right = VertexSet::empty();
        for (k, &(a, b)) in parts.iter().enumerate() {
            let (x, y) = if mask >> k & 1 == 0 { (a, b) } else { (b, a) };
            left = left.union(x);
            right = right.union(y);
        }
        out.push(Bicoloring { left, right });
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusOutcome {
    Certified(Inertia),
    Deficient,
    NonGeneric,
}

pub fn census_sample(g: &SemisimpleGraph, index: u64, cfg: &OracleConfig) -> Result<CensusOutcome> {
    let mut rng = sample_rng(cfg.seed, index);
    let (m, _) = draw_partial(g, cfg, &mut rng)?;
    match certify_full_rank_sampled(&m, None, cfg.tolerance(), &mut rng) {
        Ok(c) => Ok(match c.fixed_inertia {
            Some(i) => CensusOutcome::Certified(i),
            None => CensusOutcome::Deficient,
        }),
        Err(Error::NonGeneric(_)) => Ok(CensusOutcome::NonGeneric),
        Err(e) => Err(e),
    }
}

/// Inertias of sampled partial matrices whose completions are all nonsingular,
/// next to the sizes of the complement's proper 2-colourings.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InertiaCensus {
    pub samples: usize,
    pub certified: usize,
    pub deficient: usize,
    pub non_generic: usize,
    #[cfg_attr(feature = "serde", serde(serialize_with = "inertia_keyed"))]
    pub counts: BTreeMap<Inertia, usize>,
    /// Frequencies over the certified samples.
    #[cfg_attr(feature = "serde", serde(serialize_with = "inertia_keyed"))]
    pub histogram: BTreeMap<Inertia, f64>,
    pub bicolorings: Vec<Bicoloring>,
    /// Distinct `(|left|, |right|)` over all bicolorings.
    pub bicoloring_sizes: Vec<(usize, usize)>,
    pub seed: u64,
}

/// Map keys written as `"(p,n,k)"`.
#[cfg(feature = "serde")]
fn inertia_keyed<S: serde::Serializer, V: serde::Serialize>(
    map: &BTreeMap<Inertia, V>,
    s: S,
) -> core::result::Result<S::Ok, S::Error> {
    s.collect_map(map.iter().map(|(k, v)| (alloc::format!("{k}"), v)))
}

pub fn aggregate_census(g: &SemisimpleGraph, outcomes: &[CensusOutcome], cfg: &OracleConfig) -> Result<InertiaCensus> {
    let cols = bicolorings(g)?;
    let sizes: BTreeSet<(usize, usize)> = cols.iter().map(|b| (b.left.len(), b.right.len())).collect();
    let mut counts = BTreeMap::new();
    let (mut certified, mut deficient, mut non_generic) = (0, 0, 0);
    for o in outcomes {
        match o {
            CensusOutcome::Certified(i) => {
                certified += 1;
                *counts.entry(*i).or_insert(0usize) += 1;
            }
            CensusOutcome::Deficient => deficient += 1,
            CensusOutcome::NonGeneric => non_generic += 1,
        }
    }
    let histogram = counts.iter().map(|(&i, &c)| (i, c as f64 / certified.max(1) as f64)).collect();
    Ok(InertiaCensus {
        samples: outcomes.len(),
        certified,
        deficient,
        non_generic,
        counts,
        histogram,
        bicolorings: cols,
        bicoloring_sizes: sizes.into_iter().collect(),
        seed: cfg.seed,
    })
}

/// Serial census over samples `0..n_samples`.
pub fn inertia_census(g: &SemisimpleGraph, n_samples: usize, cfg: &OracleConfig) -> Result<InertiaCensus> {
    cfg.validate()?;
    if n_samples == 0 {
        return Err(Error::Config("need at least one sample".into()));
    }
    bicolorings(g)?;
    let outcomes = (0..n_samples as u64).map(|k| census_sample(g, k, cfg)).collect::<Result<Vec<_>>>()?;
    aggregate_census(g, &outcomes, cfg)
}
