//! Typical ranks of semisimple graphs: exact sets for the characterized
//! families, rigorous bounds on the maximum typical rank otherwise.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{
    classify_family, max_bipartite_induced_size, max_independent_set_size, Bipartiteness, FamilyTag, SemisimpleGraph,
    BIPARTITE_SEARCH_LIMIT, INDEPENDENT_SET_SEARCH_LIMIT,
};

/// Full-rank typicality together with the complement's bipartition or an
/// odd closed walk in the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullRankTypicality {
    pub full_rank_typical: bool,
    pub witness: Bipartiteness,
}

/// `n` is a typical rank exactly when the complement is bipartite.
pub fn is_full_rank_typical(g: &SemisimpleGraph) -> FullRankTypicality {
    let witness = g.complement().bipartiteness();
    FullRankTypicality { full_rank_typical: matches!(witness, Bipartiteness::Bipartite { .. }), witness }
}

/// A bound on the maximum typical rank and the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankBound {
    pub value: usize,
    pub source: String,
}

/// One rule that contributed to a report.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Provenance {
    pub tag: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TypicalRankReport {
    pub n: usize,
    pub families: Vec<FamilyTag>,
    pub full_rank_typical: bool,
    /// Generic completion rank, the smallest typical rank.
    pub gcr: Option<usize>,
    /// All typical ranks, ascending and contiguous, when known exactly.
    pub typical_set: Option<Vec<usize>>,
    /// Bounds on the maximum typical rank.
    pub lower_bound: Option<RankBound>,
    pub upper_bound: Option<RankBound>,
    pub provenance: Vec<Provenance>,
    pub notes: Vec<String>,
}

impl TypicalRankReport {
    pub fn is_exact(&self) -> bool {
        self.typical_set.is_some()
    }

    pub fn max_typical_rank(&self) -> Option<usize> {
        self.typical_set.as_ref().and_then(|s| s.last().copied())
    }
}

fn prov(tag: &str, note: impl Into<String>) -> Provenance {
    Provenance { tag: tag.to_string(), note: note.into() }
}

/// An exact answer `[gcr, max]` from one rule.
struct Exact {
    gcr: usize,
    max: usize,
    provenance: Provenance,
}

fn looped_forest_exact(g: &SemisimpleGraph, families: &[FamilyTag]) -> Exact {
    let n = g.n();
    let proper = g.proper_edges().count();
    let star = families.contains(&FamilyTag::LoopedStarTreePlusIsolated);
    let (gcr, max, note) = if proper == 0 {
        if n == 1 {
            (1, 1, "single looped vertex")
        } else {
            (1, 2, "isolated looped vertices")
        }
    } else if n == 2 {
        (2, 2, "one looped edge")
    } else if star {
        (2, 3, "looped star tree plus isolated looped vertices")
    } else {
        (2, 4, "looped forest that is not a star tree plus isolated vertices")
    };
    Exact { gcr, max, provenance: prov("looped-forest", note) }
}

fn family_exact(g: &SemisimpleGraph, families: &[FamilyTag]) -> Vec<Exact> {
    let mut out = Vec::new();
    for tag in families {
        match tag {
            FamilyTag::DisjointLoopedCliques { sizes } if sizes.len() == 1 => out.push(Exact {
                gcr: sizes[0],
                max: sizes[0],
                provenance: prov("fully-specified", "every entry is specified"),
            }),
            FamilyTag::DisjointLoopedCliques { sizes } if sizes.len() == 2 => out.push(Exact {
                gcr: sizes[0],
                max: sizes[0] + sizes[1],
                provenance: prov("two-cliques-esd", "typical ranks max(n,m)..n+m for two looped cliques"),
            }),
            FamilyTag::DisjointLoopedCliques { sizes } => out.push(Exact {
                gcr: sizes[0],
                max: sizes[0] + sizes[1],
                provenance: prov(
                    "clique-union-two-largest",
                    "maximum n1+n2 for k looped cliques; the largest specified block forces gcr >= n1, and \
                     same-sign blocks complete to rank n1, so gcr = n1; intermediate ranks by contiguity",
                ),
            }),
            FamilyTag::GcrOne { odd_cycles } => out.push(Exact {
                gcr: 1,
                max: if *odd_cycles >= 2 { 2 } else { 1 },
                provenance: prov(
                    "gcr-one-odd-cycles",
                    alloc::format!("no even cycles, at most one odd cycle per component; {odd_cycles} odd cycles"),
                ),
            }),
            FamilyTag::LoopedForest => out.push(looped_forest_exact(g, families)),
            FamilyTag::LoopedStarTreePlusIsolated | FamilyTag::Unrecognized => {}
        }
    }
    out
}

/// Exact typical ranks for the characterized families, bounds otherwise.
///
/// Every applicable rule is evaluated; disagreeing exact answers are an
/// [`Error::Internal`]. Exhaustive searches that exceed their vertex limit
/// leave the corresponding bound unknown and add a note.
pub fn typical_ranks(g: &SemisimpleGraph) -> Result<TypicalRankReport> {
    let n = g.n();
    let families = classify_family(g);
    let frt = is_full_rank_typical(g).full_rank_typical;
    let mut provenance = Vec::new();
    let mut notes = Vec::new();
    let mut exact: Vec<Exact> = Vec::new();

    if g.edge_count() == 0 {
        exact.push(Exact { gcr: 0, max: 0, provenance: prov("no-specified-entries", "the zero completion") });
    }
    exact.extend(family_exact(g, &families));
    if exact.is_empty() && n >= 2 {
        if let Some(v) = g.looped_suspension_vertices().iter().next() {
            let inner = typical_ranks(&g.induced(crate::graph::VertexSet::full(n).without(v)))?;
            if let Some(set) = &inner.typical_set {
                exact.push(Exact {
                    gcr: set[0] + 1,
                    max: set[set.len() - 1] + 1,
                    provenance: prov(
                        "looped-suspension-shift",
                        alloc::format!("vertex {v} is a looped suspension; typical ranks of the rest shifted by one"),
                    ),
                });
            }
        }
    }

    if let Some(first) = exact.first() {
        if let Some(bad) = exact.iter().find(|e| (e.gcr, e.max) != (first.gcr, first.max)) {
            return Err(Error::Internal(alloc::format!(
                "rules {} and {} disagree: [{}, {}] vs [{}, {}]",
                first.provenance.tag,
                bad.provenance.tag,
                first.gcr,
                first.max,
                bad.gcr,
                bad.max
            )));
        }
    }
    let gcr = exact.first().map(|e| e.gcr);

    // Bounds on the maximum typical rank.
    let mut lower: Option<RankBound> = None;
    let mut upper = Some(RankBound { value: n, source: "size".into() });
    let raise = |b: &mut Option<RankBound>, value: usize, source: &str| {
        if b.as_ref().is_none_or(|cur| value > cur.value) {
            *b = Some(RankBound { value, source: source.into() });
        }
    };
    let lower_cap = |b: &mut Option<RankBound>, value: usize, source: &str| {
        if b.as_ref().is_none_or(|cur| value < cur.value) {
            *b = Some(RankBound { value, source: source.into() });
        }
    };
    if frt {
        raise(&mut lower, n, "complement-bipartite-full-rank");
        provenance.push(prov("complement-bipartite-full-rank", "complement is bipartite, so n is typical"));
    }
    match max_bipartite_induced_size(&g.complement(), BIPARTITE_SEARCH_LIMIT) {
        Ok(b) => raise(&mut lower, b, "bipartite-induced-lower-bound"),
        Err(e) => notes.push(alloc::format!("bipartite induced subgraph search skipped: {e}")),
    }
    if g.is_looped() {
        match max_independent_set_size(g, INDEPENDENT_SET_SEARCH_LIMIT) {
            Ok(r) => lower_cap(&mut upper, 2 + n - r.min(n), "independent-set-upper-bound"),
            Err(e) => notes.push(alloc::format!("independent set search skipped: {e}")),
        }
    }
    if let Some(c) = gcr {
        lower_cap(&mut upper, 2 * c, "twice-gcr-upper-bound");
    }

    let typical_set = match exact.first() {
        Some(e) => {
            let (lo, hi) = (lower.as_ref().map_or(0, |b| b.value), upper.as_ref().map_or(n, |b| b.value));
            if e.max < lo || e.max > hi {
                return Err(Error::Internal(alloc::format!(
                    "exact maximum {} from {} violates the bounds [{lo}, {hi}]",
                    e.max,
                    e.provenance.tag
                )));
            }
            let tag = e.provenance.tag.clone();
            lower = Some(RankBound { value: e.max, source: tag.clone() });
            upper = Some(RankBound { value: e.max, source: tag });
            Some((e.gcr..=e.max).collect())
        }
        None => None,
    };
    provenance.extend(exact.into_iter().map(|e| e.provenance));
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l.value > u.value {
            return Err(Error::Internal(alloc::format!("lower bound {} exceeds upper bound {}", l.value, u.value)));
        }
    }

    Ok(TypicalRankReport {
        n,
        families,
        full_rank_typical: frt,
        gcr,
        typical_set,
        lower_bound: lower,
        upper_bound: upper,
        provenance,
        notes,
    })
}

/// Typical ranks after adding a looped suspension vertex: every rank grows by one.
pub fn suspension_shift(report: &TypicalRankReport) -> Result<TypicalRankReport> {
    let Some(set) = &report.typical_set else {
        return Err(Error::InexactReport);
    };
    let bump = |b: &Option<RankBound>| {
        b.as_ref().map(|b| RankBound { value: b.value + 1, source: "looped-suspension-shift".into() })
    };
    let mut provenance = report.provenance.clone();
    provenance.push(prov("looped-suspension-shift", "looped suspension vertex added"));
    Ok(TypicalRankReport {
        n: report.n + 1,
        families: Vec::new(),
        full_rank_typical: report.full_rank_typical,
        gcr: report.gcr.map(|g| g + 1),
        typical_set: Some(set.iter().map(|r| r + 1).collect()),
        lower_bound: bump(&report.lower_bound),
        upper_bound: bump(&report.upper_bound),
        provenance,
        notes: report.notes.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn looped(n: usize, edges: &[(usize, usize)]) -> SemisimpleGraph {
        let mut g = SemisimpleGraph::from_edges(n, edges).unwrap();
        for v in 1..=n {
            g.insert_edge(v, v).unwrap();
        }
        g
    }

    fn set(g: &SemisimpleGraph) -> Option<Vec<usize>> {
        typical_ranks(g).unwrap().typical_set
    }

    #[test]
    fn full_rank_typical_examples() {
        let c4 = looped(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert!(is_full_rank_typical(&c4).full_rank_typical);
        let tri_missing = SemisimpleGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap().complement();
        let r = is_full_rank_typical(&tri_missing);
        assert!(!r.full_rank_typical);
        assert!(matches!(r.witness, Bipartiteness::OddCycle(ref c) if c.len() == 3));
        assert!(is_full_rank_typical(&SemisimpleGraph::complete_looped(5).unwrap()).full_rank_typical);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(set(&SemisimpleGraph::looped_cliques(&[2, 2]).unwrap()), Some(vec![2, 3, 4]));
        assert_eq!(set(&looped(3, &[(1, 2), (1, 3)])), Some(vec![2, 3]));
        let two_triangles = SemisimpleGraph::from_edges(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(set(&two_triangles), Some(vec![1, 2]));
        assert_eq!(set(&looped(4, &[(1, 2), (3, 4)])), Some(vec![2, 3, 4]));
        assert_eq!(set(&SemisimpleGraph::looped_cliques(&[3, 2, 2]).unwrap()), Some(vec![3, 4, 5]));
        assert_eq!(set(&SemisimpleGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()), Some(vec![1]));
        assert_eq!(set(&SemisimpleGraph::from_edges(2, &[(1, 1), (2, 2)]).unwrap()), Some(vec![1, 2]));
        assert_eq!(set(&SemisimpleGraph::new(3).unwrap()), Some(vec![0]));
        assert_eq!(set(&SemisimpleGraph::complete_looped(3).unwrap()), Some(vec![3]));
    }

    #[test]
    fn suspension_peeling() {
        // Looped triangle with a pendant looped vertex hanging off vertex 1,
        // plus vertex 5 joined to everything.
        let base = looped(4, &[(1, 2), (2, 3), (1, 3), (1, 4)]);
        let g = base.with_looped_suspension().unwrap();
        let r = typical_ranks(&g).unwrap();
        assert_eq!(r.typical_set, typical_ranks(&base).unwrap().typical_set.map(|s| s.iter().map(|v| v + 1).collect()));
    }

    #[test]
    fn bounds_for_looped_cycles() {
        let c5 = looped(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]);
        let r = typical_ranks(&c5).unwrap();
        assert!(r.typical_set.is_none());
        assert_eq!((r.lower_bound.unwrap().value, r.upper_bound.unwrap().value), (4, 5));
        let c4 = looped(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let r = typical_ranks(&c4).unwrap();
        assert_eq!((r.lower_bound.unwrap().value, r.upper_bound.unwrap().value), (4, 4));
    }

    #[test]
    fn shift_examples() {
        let iso = typical_ranks(&SemisimpleGraph::from_edges(2, &[(1, 1), (2, 2)]).unwrap()).unwrap();
        assert_eq!(suspension_shift(&iso).unwrap().typical_set, Some(vec![2, 3]));
        let one = typical_ranks(&SemisimpleGraph::from_edges(1, &[(1, 1)]).unwrap()).unwrap();
        assert_eq!(suspension_shift(&one).unwrap().typical_set, Some(vec![2]));
        let k22 = typical_ranks(&SemisimpleGraph::looped_cliques(&[2, 2]).unwrap()).unwrap();
        assert_eq!(suspension_shift(&k22).unwrap().typical_set, Some(vec![3, 4, 5]));
        let c5 = typical_ranks(&looped(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])).unwrap();
        assert_eq!(suspension_shift(&c5), Err(Error::InexactReport));
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = SemisimpleGraph> {
        let slots: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
        (0u64..1 << slots.len()).map(move |mask| {
            let e: Vec<_> = slots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| *e).collect();
            SemisimpleGraph::from_edges(n, &e).unwrap()
        })
    }

    #[test]
    fn full_rank_typical_is_monotone() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                if !is_full_rank_typical(&g).full_rank_typical {
                    continue;
                }
                for (i, j) in g.non_edges() {
                    assert!(is_full_rank_typical(&g.with_edge(i, j).unwrap()).full_rank_typical);
                }
            }
        }
    }

    #[test]
    fn exact_sets_are_contiguous_and_bounded() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                let r = typical_ranks(&g).unwrap();
                if let Some(s) = &r.typical_set {
                    assert!(s.windows(2).all(|w| w[1] == w[0] + 1));
                    assert!(s[s.len() - 1] <= 2 * s[0] || s == &vec![0], "{g:?}");
                }
            }
        }
    }

    #[test]
    fn bounds_are_ordered_on_random_looped_graphs() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..500 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = 1 + (state >> 59) as usize % 10;
            let mut edges = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            let r = typical_ranks(&looped(n, &edges)).unwrap();
            let (l, u) = (r.lower_bound.unwrap().value, r.upper_bound.unwrap().value);
            assert!(l <= u, "{edges:?}");
        }
    }
}
