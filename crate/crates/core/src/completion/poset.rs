use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{esd, PartialSymmetricMatrix};
use crate::error::{Error, Result};
use crate::graph::{SemisimpleGraph, VertexSet};
use crate::linalg::{inertia_report, principal_submatrix, Inertia, Tolerance};

/// How many times [`certify_full_rank_sampled`] redraws a degenerate `x0`.
pub const MAX_RESAMPLES: usize = 5;

/// `S` covers `S ∖ {i}` and `S ∖ {j}` for the non-edge `{i, j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Cover {
    pub non_edge: (usize, usize),
    /// Index of `S ∖ {i}` in [`MinorPoset::elements`].
    pub left: usize,
    /// Index of `S ∖ {j}`.
    pub right: usize,
}

/// The family of index sets obtained from `V` by repeatedly splitting an
/// unexpanded set containing a non-edge `{i, j}` into `S ∖ {i}` and
/// `S ∖ {j}`, non-edges taken in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MinorPoset {
    pub n: usize,
    pub ordering: Vec<(usize, usize)>,
    /// Elements in creation order; element `0` is `V`.
    pub elements: Vec<VertexSet>,
    /// `covers[k]` is `None` exactly for minimal elements.
    pub covers: Vec<Option<Cover>>,
}

impl MinorPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn minimal_elements(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.elements.iter().zip(&self.covers).filter(|(_, c)| c.is_none()).map(|(e, _)| *e)
    }

    /// `(S, S ∖ {i}, S ∖ {j}, {i, j})` for every non-minimal `S`.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (VertexSet, VertexSet, VertexSet, (usize, usize))> + '_ {
        self.elements
            .iter()
            .zip(&self.covers)
            .filter_map(move |(e, c)| c.map(|c| (*e, self.elements[c.left], self.elements[c.right], c.non_edge)))
    }

    /// Elements grouped by size, largest first, each group sorted.
    pub fn levels(&self) -> Vec<Vec<VertexSet>> {
        let mut by_size: BTreeMap<usize, Vec<VertexSet>> = BTreeMap::new();
        for &e in &self.elements {
            by_size.entry(e.len()).or_default().push(e);
        }
        by_size
            .into_iter()
            .rev()
            .map(|(_, mut v)| {
                v.sort_by_key(|s| s.to_vec());
                v
            })
            .collect()
    }
}

fn check_ordering(g: &SemisimpleGraph, ordering: Option<&[(usize, usize)]>) -> Result<Vec<(usize, usize)>> {
    let non_edges = g.non_edges();
    let Some(ord) = ordering else {
        return Ok(non_edges);
    };
    let normalized: Vec<(usize, usize)> = ord.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    let mut sorted = normalized.clone();
    sorted.sort_unstable();
    if sorted != non_edges {
        return Err(Error::Config("ordering must list every non-edge exactly once".into()));
    }
    Ok(normalized)
}

/// Builds the minor poset of a full-rank-typical pattern. The default
/// ordering is the lexicographic order of the non-edges.
pub fn build_minor_poset(g: &SemisimpleGraph, ordering: Option<&[(usize, usize)]>) -> Result<MinorPoset> {
    if !g.complement().is_bipartite() {
        return Err(Error::NotFullRankTypical);
    }
    let ordering = check_ordering(g, ordering)?;
    let mut elements = alloc::vec![VertexSet::full(g.n())];
    let mut covers: Vec<Option<Cover>> = alloc::vec![None];
    let mut index: BTreeMap<VertexSet, usize> = BTreeMap::new();
    index.insert(elements[0], 0);

    for &(i, j) in &ordering {
        let pair = VertexSet::from_labels([i, j]);
        let leaves: Vec<usize> =
            (0..elements.len()).filter(|&k| covers[k].is_none() && pair.is_subset(elements[k])).collect();
        for k in leaves {
            let s = elements[k];
            let mut child = |s: VertexSet| -> usize {
                *index.entry(s).or_insert_with(|| {
                    elements.push(s);
                    covers.push(None);
                    elements.len() - 1
                })
            };
            let left = child(s.without(i));
            let right = child(s.without(j));
            covers[k] = Some(Cover { non_edge: (i, j), left, right });
        }
    }
    Ok(MinorPoset { n: g.n(), ordering, elements, covers })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Verdict {
    AllCompletionsFullRank,
    CompletableBelowFullRank,
}

/// Determinant signs of the two principal minors covered by one element.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CoverSigns {
    pub element: VertexSet,
    pub non_edge: (usize, usize),
    pub left: VertexSet,
    pub right: VertexSet,
    pub left_sign: i8,
    pub right_sign: i8,
}

impl CoverSigns {
    pub fn alternates(&self) -> bool {
        self.left_sign != 0 && self.left_sign == -self.right_sign
    }
}

/// Outcome of the minor-poset test on one completion `M(x0)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CompletionCertificate {
    pub verdict: Verdict,
    pub ordering: Vec<(usize, usize)>,
    pub x0: Vec<f64>,
    pub covers: Vec<CoverSigns>,
    /// Inertia shared by all completions, on a full-rank verdict.
    pub fixed_inertia: Option<Inertia>,
    /// First element whose covered minors fail to alternate, on a deficient verdict.
    pub disagreement: Option<VertexSet>,
    /// Some tested eigenvalue lies within a factor 10 of the rank threshold.
    pub near_threshold: bool,
    /// Number of redrawn `x0` (sampled variant only).
    pub resamples: usize,
}

impl CompletionCertificate {
    pub fn is_full_rank(&self) -> bool {
        self.verdict == Verdict::AllCompletionsFullRank
    }
}

/// Minor-poset test: every completion of `m` is nonsingular exactly when, for
/// every cover, the two covered principal minors of the generic completion
/// `M(x0)` have nonzero opposite determinant signs. On that verdict all
/// completions share the inertia of `M(x0)`.
pub fn certify_full_rank(
    m: &PartialSymmetricMatrix,
    x0: &[f64],
    ordering: Option<&[(usize, usize)]>,
    tol: Tolerance,
) -> Result<CompletionCertificate> {
    let poset = build_minor_poset(m.pattern(), ordering)?;
    let full = m.completion(x0)?;
    let mut near_threshold = false;
    let mut sign_cache: BTreeMap<VertexSet, i8> = BTreeMap::new();
    let mut sign_of = |s: VertexSet| -> Result<i8> {
        if let Some(&v) = sign_cache.get(&s) {
            return Ok(v);
        }
        let r = inertia_report(&principal_submatrix(&full, s)?, tol)?;
        near_threshold |= r.near_threshold;
        let i = r.inertia;
        let sign = if i.kernel > 0 {
            0
        } else if i.negatives % 2 == 0 {
            1
        } else {
            -1
        };
        if sign == 0 {
            let what = if m.pattern().is_fully_specified(s) { "specified minor" } else { "minor of M(x0)" };
            return Err(Error::NonGeneric(alloc::format!("{what} on {s} is singular")));
        }
        sign_cache.insert(s, sign);
        Ok(sign)
    };

    let mut covers = Vec::new();
    for (element, left, right, non_edge) in poset.cover_pairs() {
        covers.push(CoverSigns {
            element,
            non_edge,
            left,
            right,
            left_sign: sign_of(left)?,
            right_sign: sign_of(right)?,
        });
    }
    let disagreement = covers.iter().find(|c| !c.alternates()).map(|c| c.element);
    let (verdict, fixed_inertia) = if disagreement.is_none() {
        let r = inertia_report(&full, tol)?;
        near_threshold |= r.near_threshold;
        (Verdict::AllCompletionsFullRank, Some(r.inertia))
    } else {
        (Verdict::CompletableBelowFullRank, None)
    };
    Ok(CompletionCertificate {
        verdict,
        ordering: poset.ordering,
        x0: x0.to_vec(),
        covers,
        fixed_inertia,
        disagreement,
        near_threshold,
        resamples: 0,
    })
}

/// [`certify_full_rank`] with `x0` drawn i.i.d. standard normal, redrawn up to
/// [`MAX_RESAMPLES`] times while a tested minor is singular or close to the
/// rank threshold.
pub fn certify_full_rank_sampled<R: Rng + ?Sized>(
    m: &PartialSymmetricMatrix,
    ordering: Option<&[(usize, usize)]>,
    tol: Tolerance,
    rng: &mut R,
) -> Result<CompletionCertificate> {
    let k = m.unknowns().len();
    let mut last_err = None;
    for attempt in 0..=MAX_RESAMPLES {
        let x0: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
        match certify_full_rank(m, &x0, ordering, tol) {
            Ok(mut c) if !c.near_threshold || attempt == MAX_RESAMPLES => {
                c.resamples = attempt;
                return Ok(c);
            }
            Ok(_) => {}
            Err(e @ Error::NonGeneric(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NonGeneric("degenerate after resampling".into())))
}

/// Sign disagreement of two partial matrices whose completions are all
/// nonsingular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EsdPartial {
    pub esd: usize,
    pub inertia_1: Inertia,
    pub inertia_2: Inertia,
    /// `max(n, m) + esd`: minimum completion rank of the disjoint union.
    pub union_min_rank: usize,
}

/// esd of the fixed inertias of two certified partial matrices.
pub fn esd_partial(c1: &CompletionCertificate, c2: &CompletionCertificate) -> Result<EsdPartial> {
    let (Some(i1), Some(i2)) = (c1.fixed_inertia, c2.fixed_inertia) else {
        return Err(Error::NotCertified);
    };
    let e = esd(i1, i2)?;
    Ok(EsdPartial { esd: e, inertia_1: i1, inertia_2: i2, union_min_rank: disjoint_union_min_rank(i1, i2, e) })
}

/// `max(n, m) + esd` for the disjoint union of two certified partial matrices.
pub fn disjoint_union_min_rank(i1: Inertia, i2: Inertia, esd: usize) -> usize {
    i1.n().max(i2.n()) + esd
}
