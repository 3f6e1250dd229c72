//! Numeric ground truth for completion ranks.
//!
//! A completion of rank at most `r` is sought as `F S Fᵀ` with `F` of size
//! `n × r` and `S = diag(±1)` a fixed signature, fitted to the specified
//! entries by Levenberg–Marquardt from random starts. Every real symmetric
//! matrix of rank at most `r` has this form for some signature, so scanning
//! all admissible signatures covers indefinite completions too.

mod lm;
mod sampling;

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::completion::PartialSymmetricMatrix;
use crate::error::{Error, Result};
use crate::graph::{SemisimpleGraph, VertexSet};
use crate::linalg::{inertia, inertia_report, principal_submatrix, SymmetricMatrix, Tolerance};

pub use sampling::{
    aggregate_census, aggregate_samples, bicolorings, census_sample, draw_partial, inertia_census, sample_rng,
    solve_sample, typical_rank_sample, Bicoloring, CensusOutcome, InertiaCensus, SampleOutcome, TypicalRankEstimate,
    MAX_DEGENERATE_DRAWS,
};

/// Largest matrix size the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OracleConfig {
    /// Random starts per signature and rank.
    pub restarts: usize,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// A fit succeeds when the sum of squared residuals, in units where the
    /// largest specified magnitude is 1, is at most `opt_tol · (1 + Σ M_ij²)`.
    pub opt_tol: f64,
    pub rank_tol: f64,
    pub seed: u64,
    /// Optional window of ranks to scan.
    pub min_rank: Option<usize>,
    pub max_rank: Option<usize>,
    /// Minimum frequency for a sampled rank to be declared typical.
    pub threshold: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            restarts: 20,
            max_iter: 2000,
            opt_tol: crate::linalg::DEFAULT_OPT_TOL,
            rank_tol: crate::linalg::DEFAULT_RANK_TOL,
            seed: 42,
            min_rank: None,
            max_rank: None,
            threshold: 0.02,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        Tolerance::new(self.rank_tol, self.opt_tol)?;
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::Config("threshold must lie in (0, 1]".into()));
        }
        if let (Some(lo), Some(hi)) = (self.min_rank, self.max_rank) {
            if lo > hi {
                return Err(Error::Config("min_rank exceeds max_rank".into()));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance { rank_tol: self.rank_tol, opt_tol: self.opt_tol }
    }
}

/// Inertia lower bounds read off the fully specified principal submatrices:
/// by interlacing every completion has at least `positives` positive and
/// `negatives` negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpecifiedBounds {
    pub positives: usize,
    pub negatives: usize,
    /// Some fully specified block has an eigenvalue near the rank threshold.
    pub near_threshold: bool,
}

impl SpecifiedBounds {
    pub fn rank(&self) -> usize {
        self.positives + self.negatives
    }
}

/// Maximal sets of looped, pairwise adjacent vertices.
pub fn maximal_specified_sets(g: &SemisimpleGraph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let loops = g.loops().bits();
    bron_kerbosch(g, 0, loops, 0, &mut out);
    out
}

fn bron_kerbosch(g: &SemisimpleGraph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
    if p == 0 {
        if x == 0 && r != 0 {
            out.push(VertexSet::from_bits(r));
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize + 1;
    let mut cand = p & !g.neighbor_bits(pivot);
    while cand != 0 {
        let v = cand.trailing_zeros() as usize + 1;
        let bit = 1u64 << (v - 1);
        let nb = g.neighbor_bits(v);
        bron_kerbosch(g, r | bit, p & nb, x & nb, out);
        p &= !bit;
        x |= bit;
        cand &= !bit;
    }
}

pub fn specified_bounds(m: &PartialSymmetricMatrix, tol: Tolerance) -> Result<SpecifiedBounds> {
    let zero = m.zero_fill();
    let mut b = SpecifiedBounds { positives: 0, negatives: 0, near_threshold: false };
    for s in maximal_specified_sets(m.pattern()) {
        let r = inertia_report(&principal_submatrix(&zero, s)?, tol)?;
        b.positives = b.positives.max(r.inertia.positives);
        b.negatives = b.negatives.max(r.inertia.negatives);
        b.near_threshold |= r.near_threshold;
    }
    Ok(b)
}

/// A completion found by the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    /// Numeric rank of `witness`.
    pub rank: usize,
    pub witness: SymmetricMatrix,
    /// Sum of squared deviations from the specified entries.
    pub residual: f64,
    /// Signature `(p, q)` of the fit that produced the witness.
    pub signature: (usize, usize),
    /// Lower bound from the specified blocks.
    pub lower_bound: usize,
    /// Local fits run in total.
    pub fits: usize,
}

struct Prepared {
    problem: lm::Problem,
    scale: f64,
    sigma_sq: f64,
    ratio: f64,
    bounds: SpecifiedBounds,
}

fn prepare(m: &PartialSymmetricMatrix, cfg: &OracleConfig) -> Result<Prepared> {
    cfg.validate()?;
    let n = m.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: ORACLE_MAX_VERTICES });
    }
    let tol = cfg.tolerance();
    let scale = m.max_abs();
    let s = if scale > 0.0 { scale } else { 1.0 };
    let entries: Vec<(usize, usize, f64)> = m.entries().map(|(i, j, v)| (i - 1, j - 1, v / s)).collect();
    let sum_sq: f64 = entries.iter().map(|e| e.2 * e.2).sum();
    let mean_sq = if entries.is_empty() { 0.0 } else { sum_sq / entries.len() as f64 };
    let i0 = inertia(&m.zero_fill(), tol)?;
    let ratio = if i0.rank() == 0 { 0.5 } else { i0.positives as f64 / i0.rank() as f64 };
    Ok(Prepared {
        problem: lm::Problem {
            n,
            entries,
            threshold: cfg.opt_tol * (1.0 + sum_sq),
            polish_floor: 1e-26 * (1.0 + sum_sq),
            max_iter: cfg.max_iter,
        },
        scale: s,
        sigma_sq: mean_sq,
        ratio,
        bounds: specified_bounds(m, tol)?,
    })
}

fn witness_from(p: &Prepared, f: &[f64], signs: &[f64], r: usize) -> SymmetricMatrix {
    let n = p.problem.n;
    SymmetricMatrix::from_upper(n, |i, j| {
        let mut v = 0.0;
        for k in 0..r {
            v += signs[k] * f[i * r + k] * f[j * r + k];
        }
        v * p.scale
    })
}

fn residual_of(m: &PartialSymmetricMatrix, w: &SymmetricMatrix) -> f64 {
    m.entries().map(|(i, j, v)| (w.get(i - 1, j - 1) - v) * (w.get(i - 1, j - 1) - v)).sum()
}

/// Searches for a completion of rank at most `r < n` with every admissible
/// signature, interleaving signatures across restarts.
fn fit_rank<R: Rng + ?Sized>(
    m: &PartialSymmetricMatrix,
    p: &Prepared,
    r: usize,
    cfg: &OracleConfig,
    rng: &mut R,
    fits: &mut usize,
) -> Result<Option<OracleSolution>> {
    let tol = cfg.tolerance();
    let lb = p.bounds.rank();
    if r < lb {
        return Ok(None);
    }
    if r == 0 {
        return Ok((m.max_abs() == 0.0).then(|| OracleSolution {
            rank: 0,
            witness: SymmetricMatrix::zeros(m.n()),
            residual: 0.0,
            signature: (0, 0),
            lower_bound: lb,
            fits: *fits,
        }));
    }
    let mut sigs: Vec<usize> = (0..=r).filter(|&q| q >= p.bounds.positives && r - q >= p.bounds.negatives).collect();
    sigs.sort_by(|&a, &b| {
        let da = libm::fabs(a as f64 / r as f64 - p.ratio);
        let db = libm::fabs(b as f64 / r as f64 - p.ratio);
        da.total_cmp(&db).then(a.cmp(&b))
    });
    let sigma = libm::pow(p.sigma_sq / r as f64, 0.25).max(1e-3);
    let mut ws = lm::Workspace::new(&p.problem, r);
    for _ in 0..cfg.restarts {
        for &pos in &sigs {
            let signs: Vec<f64> = (0..r).map(|k| if k < pos { 1.0 } else { -1.0 }).collect();
            *fits += 1;
            let fit = lm::fit(&p.problem, &signs, sigma, &mut ws, rng);
            if !fit.success {
                continue;
            }
            let witness = witness_from(p, &fit.f, &signs, r);
            let wi = inertia(&witness, tol)?;
            if wi.rank() > r {
                return Err(Error::Internal(alloc::format!("rank-{r} factor produced inertia {wi}")));
            }
            return Ok(Some(OracleSolution {
                rank: wi.rank(),
                residual: residual_of(m, &witness),
                witness,
                signature: (wi.positives, wi.negatives),
                lower_bound: lb,
                fits: *fits,
            }));
        }
    }
    Ok(None)
}

fn full_rank_solution(m: &PartialSymmetricMatrix, lb: usize, fits: usize, tol: Tolerance) -> Result<OracleSolution> {
    let witness = m.zero_fill();
    let i = inertia(&witness, tol)?;
    Ok(OracleSolution {
        rank: i.rank(),
        witness,
        residual: 0.0,
        signature: (i.positives, i.negatives),
        lower_bound: lb,
        fits,
    })
}

/// Smallest rank `r` for which a completion of rank `r` is found, scanning
/// upwards from the specified-block lower bound. Reaching `r = n` returns the
/// zero-filled completion.
pub fn min_rank_complete(m: &PartialSymmetricMatrix, cfg: &OracleConfig) -> Result<OracleSolution> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    min_rank_complete_with(m, cfg, &mut rng)
}

/// [`min_rank_complete`] drawing starts from `rng`.
pub fn min_rank_complete_with<R: Rng + ?Sized>(
    m: &PartialSymmetricMatrix,
    cfg: &OracleConfig,
    rng: &mut R,
) -> Result<OracleSolution> {
    let p = prepare(m, cfg)?;
    let n = m.n();
    let lb = p.bounds.rank();
    let lo = lb.max(cfg.min_rank.unwrap_or(0));
    let hi = n.min(cfg.max_rank.unwrap_or(n));
    let mut fits = 0;
    for r in lo..=hi {
        if r == n {
            return full_rank_solution(m, lb, fits, cfg.tolerance());
        }
        if let Some(sol) = fit_rank(m, &p, r, cfg, rng, &mut fits)? {
            return Ok(sol);
        }
    }
    Err(Error::RankNotReached { max: hi })
}

/// A completion of rank at most `r`, if the oracle finds one.
pub fn completable_to_rank(m: &PartialSymmetricMatrix, r: usize, cfg: &OracleConfig) -> Result<Option<OracleSolution>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    completable_to_rank_with(m, r, cfg, &mut rng)
}

/// [`completable_to_rank`] drawing starts from `rng`.
pub fn completable_to_rank_with<R: Rng + ?Sized>(
    m: &PartialSymmetricMatrix,
    r: usize,
    cfg: &OracleConfig,
    rng: &mut R,
) -> Result<Option<OracleSolution>> {
    let p = prepare(m, cfg)?;
    let mut fits = 0;
    if r >= m.n() {
        return full_rank_solution(m, p.bounds.rank(), 0, cfg.tolerance()).map(Some);
    }
    fit_rank(m, &p, r, cfg, rng, &mut fits)
}
