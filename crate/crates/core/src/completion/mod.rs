//! Partial symmetric matrices and the constructive completion procedures:
//! eigenvalue sign disagreement, minimum-rank completions of clique unions,
//! the one-missing-entry solver and the minor-poset full-rank certificate.

mod cliques;
mod one_missing;
mod poset;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{SemisimpleGraph, VertexSet};
use crate::linalg::{Inertia, SymmetricMatrix};

pub use cliques::{
    clique_pair_complete, clique_pair_min_rank, complete_clique_union, multi_clique_complete, CliqueUnionCompletion,
    MultiCliqueCompletion, PairCompletion,
};
pub use one_missing::{one_missing_entry_solve, OneMissingEntry};
pub use poset::{
    build_minor_poset, certify_full_rank, certify_full_rank_sampled, disjoint_union_min_rank, esd_partial,
    CompletionCertificate, Cover, CoverSigns, EsdPartial, MinorPoset, Verdict, MAX_RESAMPLES,
};

/// A symmetric matrix with entries specified exactly on the edges of a
/// semisimple graph (loops are diagonal entries).
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSymmetricMatrix {
    pattern: SemisimpleGraph,
    values: BTreeMap<(usize, usize), f64>,
}

impl PartialSymmetricMatrix {
    /// Values for the edges of `pattern`, given as 1-based `(i, j, v)`. Every
    /// edge needs exactly one value; `(i, j)` and `(j, i)` name the same entry.
    pub fn new(pattern: SemisimpleGraph, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let n = pattern.n();
        let mut values = BTreeMap::new();
        for &(i, j, v) in entries {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            let key = (i.min(j), i.max(j));
            if !pattern.has_edge(key.0, key.1) {
                return Err(Error::UnexpectedValue(key.0, key.1));
            }
            if !v.is_finite() {
                return Err(Error::NonFinite(key.0, key.1));
            }
            if values.insert(key, v).is_some() {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        if let Some((i, j)) = pattern.edges().find(|e| !values.contains_key(e)) {
            return Err(Error::MissingValue(i, j));
        }
        Ok(PartialSymmetricMatrix { pattern, values })
    }

    /// Infers the pattern from the entries.
    pub fn from_entries(n: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = SemisimpleGraph::new(n)?;
        for &(i, j, _) in entries {
            g.insert_edge(i, j)?;
        }
        PartialSymmetricMatrix::new(g, entries)
    }

    /// Restriction of a full matrix to `pattern`.
    pub fn from_symmetric(pattern: SemisimpleGraph, m: &SymmetricMatrix) -> Result<Self> {
        if m.n() != pattern.n() {
            return Err(Error::Dimension("matrix size differs from pattern size".into()));
        }
        let entries: Vec<_> = pattern.edges().map(|(i, j)| (i, j, m.get(i - 1, j - 1))).collect();
        PartialSymmetricMatrix::new(pattern, &entries)
    }

    pub fn n(&self) -> usize {
        self.pattern.n()
    }

    pub fn pattern(&self) -> &SemisimpleGraph {
        &self.pattern
    }

    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        self.values.get(&(i.min(j), i.max(j))).copied()
    }

    /// Specified entries `(i, j, v)`, `i <= j`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.values.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Unknown positions in lexicographic order; this is the indexing of the
    /// vector `x` in [`PartialSymmetricMatrix::completion`].
    pub fn unknowns(&self) -> Vec<(usize, usize)> {
        self.pattern.non_edges()
    }

    /// `M(0)`.
    pub fn zero_fill(&self) -> SymmetricMatrix {
        let mut m = SymmetricMatrix::zeros(self.n());
        for (i, j, v) in self.entries() {
            m.set(i - 1, j - 1, v);
        }
        m
    }

    /// `M(x)` with `x` indexed as [`PartialSymmetricMatrix::unknowns`].
    pub fn completion(&self, x: &[f64]) -> Result<SymmetricMatrix> {
        let unknowns = self.unknowns();
        if x.len() != unknowns.len() {
            return Err(Error::Dimension(alloc::format!(
                "{} completion values for {} unknowns",
                x.len(),
                unknowns.len()
            )));
        }
        let mut m = self.zero_fill();
        for (&(i, j), &v) in unknowns.iter().zip(x) {
            if !v.is_finite() {
                return Err(Error::NonFinite(i, j));
            }
            m.set(i - 1, j - 1, v);
        }
        Ok(m)
    }

    /// The partial matrix on the labels of `set`, relabelled `1..=|set|`.
    pub fn restrict(&self, set: VertexSet) -> PartialSymmetricMatrix {
        let labels = set.to_vec();
        let pattern = self.pattern.induced(set);
        let mut values = BTreeMap::new();
        for (a, &i) in labels.iter().enumerate() {
            for (b, &j) in labels.iter().enumerate().skip(a) {
                if let Some(v) = self.value(i, j) {
                    values.insert((a + 1, b + 1), v);
                }
            }
        }
        PartialSymmetricMatrix { pattern, values }
    }

    /// Largest magnitude among the specified values.
    pub fn max_abs(&self) -> f64 {
        self.values.values().fold(0.0f64, |m, v| m.max(libm::fabs(*v)))
    }
}

/// Eigenvalue sign disagreement of two nonsingular inertias: `0` when
/// `(p_A − p_B)(n_A − n_B) >= 0`, else `min(|p_A − p_B|, |n_A − n_B|)`.
pub fn esd(ia: Inertia, ib: Inertia) -> Result<usize> {
    if ia.kernel > 0 || ib.kernel > 0 {
        return Err(Error::Singular("esd needs nonsingular inertias".into()));
    }
    let dp = ia.positives as i64 - ib.positives as i64;
    let dn = ia.negatives as i64 - ib.negatives as i64;
    Ok(if dp * dn >= 0 { 0 } else { dp.unsigned_abs().min(dn.unsigned_abs()) as usize })
}
