use alloc::vec::Vec;

use super::cycles::{cycle_profile, CycleKind};
use super::SemisimpleGraph;

/// Graph families with a known typical-rank characterization.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "family"))]
pub enum FamilyTag {
    /// Every component is a looped clique; sizes in decreasing order.
    DisjointLoopedCliques {
        sizes: Vec<usize>,
    },
    /// Every vertex looped and the non-loop edges form a forest.
    LoopedForest,
    /// Looped forest whose only component with a non-loop edge is a star.
    LoopedStarTreePlusIsolated,
    /// No even cycles and at most one odd cycle per component (loops are
    /// odd cycles), with at least one edge.
    GcrOne {
        odd_cycles: usize,
    },
    Unrecognized,
}

/// All applicable family tags, most specific first. `Unrecognized` is returned
/// alone when nothing else applies.
pub fn classify_family(g: &SemisimpleGraph) -> Vec<FamilyTag> {
    let mut tags = Vec::new();
    let components = g.components();

    if g.n() > 0 && g.is_looped() && components.iter().all(|&c| g.is_fully_specified(c)) {
        let mut sizes: Vec<usize> = components.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        tags.push(FamilyTag::DisjointLoopedCliques { sizes });
    }

    if g.n() > 0 && g.is_looped() {
        let proper = g.proper_edges().count();
        // A forest has exactly n - (#components) edges.
        if proper + components.len() == g.n() {
            let nontrivial: Vec<_> = components.iter().filter(|c| c.len() > 1).collect();
            if nontrivial.len() == 1 {
                let comp = *nontrivial[0];
                let inner = comp.iter().filter(|&v| g.degree(v) > 1).count();
                if inner <= 1 {
                    tags.push(FamilyTag::LoopedStarTreePlusIsolated);
                }
            }
            tags.push(FamilyTag::LoopedForest);
        }
    }

    if g.edge_count() > 0 {
        let profile = cycle_profile(g);
        let ok = profile.components.iter().all(|c| matches!(c.kind, CycleKind::Acyclic | CycleKind::UniqueOddCycle));
        if ok {
            tags.push(FamilyTag::GcrOne { odd_cycles: profile.unique_odd_cycles() });
        }
    }

    if tags.is_empty() {
        tags.push(FamilyTag::Unrecognized);
    }
    tags
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn clique_union_sizes() {
        let g = SemisimpleGraph::looped_cliques(&[2, 3]).unwrap();
        assert_eq!(classify_family(&g)[0], FamilyTag::DisjointLoopedCliques { sizes: vec![3, 2] });
    }

    #[test]
    fn looped_star_is_forest_and_star() {
        let g = SemisimpleGraph::from_edges(3, &[(1, 1), (2, 2), (3, 3), (1, 2), (1, 3)]).unwrap();
        let tags = classify_family(&g);
        assert!(tags.contains(&FamilyTag::LoopedForest));
        assert!(tags.contains(&FamilyTag::LoopedStarTreePlusIsolated));
    }

    #[test]
    fn triangle_is_gcr_one() {
        let g = SemisimpleGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(classify_family(&g), vec![FamilyTag::GcrOne { odd_cycles: 1 }]);
    }

    #[test]
    fn looped_path_of_four_is_forest_not_star() {
        let g = SemisimpleGraph::from_edges(4, &[(1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(classify_family(&g), vec![FamilyTag::LoopedForest]);
    }

    #[test]
    fn unrecognized_and_edgeless() {
        let c4 = SemisimpleGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(classify_family(&c4), vec![FamilyTag::Unrecognized]);
        assert_eq!(classify_family(&SemisimpleGraph::new(3).unwrap()), vec![FamilyTag::Unrecognized]);
    }
}
