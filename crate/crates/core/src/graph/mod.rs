//! Semisimple graphs: undirected, loops allowed, no multi-edges.
//!
//! Vertices are labelled `1..=n` in every public API. Internally a graph is a
//! row of 64-bit adjacency masks, which caps graphs at [`MAX_VERTICES`]
//! vertices; every algorithm here is exponential or dense anyway.

mod cycles;
mod family;
mod search;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use cycles::{cycle_profile, ComponentCycles, CycleKind, CycleProfile};
pub use family::{classify_family, FamilyTag};
pub use search::{
    max_bipartite_induced_size, max_independent_set_size, BIPARTITE_SEARCH_LIMIT, INDEPENDENT_SET_SEARCH_LIMIT,
};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex labels in `1..=64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        let mut s = VertexSet::empty();
        for v in labels {
            s.insert(v);
        }
        s
    }

    pub(crate) const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex label {v} out of range");
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        if (1..=MAX_VERTICES).contains(&v) {
            self.0 &= !(1u64 << (v - 1));
        }
    }

    #[must_use]
    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    #[must_use]
    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Smallest label in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = labels.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
            return Err(serde::de::Error::custom(alloc::format!("vertex label {bad} out of range")));
        }
        Ok(VertexSet::from_labels(labels))
    }
}

/// Undirected graph on `1..=n` with optional loops and no multi-edges.
///
/// The edge `{i, i}` is a loop and marks a specified diagonal entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SemisimpleGraph {
    n: usize,
    /// `adj[v]` holds the neighbours of vertex `v + 1`, including itself when looped.
    adj: Vec<u64>,
}

impl SemisimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(SemisimpleGraph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based edge pairs; `(i, i)` is a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SemisimpleGraph::new(n)?;
        for &(i, j) in edges {
            g.insert_edge(i, j)?;
        }
        Ok(g)
    }

    /// `K_n°`: every pair adjacent and every vertex looped.
    pub fn complete_looped(n: usize) -> Result<Self> {
        let mut g = SemisimpleGraph::new(n)?;
        let all = VertexSet::full(n).bits();
        for row in &mut g.adj {
            *row = all;
        }
        Ok(g)
    }

    /// Disjoint union of looped cliques of the given sizes, labelled consecutively.
    pub fn looped_cliques(sizes: &[usize]) -> Result<Self> {
        let n = sizes.iter().sum();
        let mut g = SemisimpleGraph::new(n)?;
        let mut start = 1;
        for &s in sizes {
            for i in start..start + s {
                for j in i..start + s {
                    g.insert_edge(i, j)?;
                }
            }
            start += s;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `{i, j}`; fails on out-of-range labels or an existing edge.
    pub fn insert_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if self.has_edge(i, j) {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            return Err(Error::DuplicateEdge(a, b));
        }
        self.adj[i - 1] |= 1u64 << (j - 1);
        self.adj[j - 1] |= 1u64 << (i - 1);
        Ok(())
    }

    /// Copy of the graph with `{i, j}` added (no-op when already present).
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        let mut g = self.clone();
        if !g.has_edge(i, j) {
            g.insert_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj[i - 1] & (1u64 << (j - 1)) != 0
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Looped vertices.
    pub fn loops(&self) -> VertexSet {
        VertexSet::from_labels((1..=self.n).filter(|&v| self.has_loop(v)))
    }

    /// `true` when every vertex carries a loop.
    pub fn is_looped(&self) -> bool {
        self.loops().len() == self.n
    }

    /// Neighbours of `v` other than `v` itself.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v - 1]).without(v)
    }

    pub(crate) fn neighbor_bits(&self, v: usize) -> u64 {
        self.adj[v - 1] & !(1u64 << (v - 1))
    }

    /// Number of non-loop neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Edges `(i, j)` with `i <= j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |i| {
            let upper = self.adj[i - 1] >> (i - 1);
            VertexSet::from_bits(upper).iter().map(move |k| (i, i + k - 1))
        })
    }

    /// Non-loop edges in lexicographic order.
    pub fn proper_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges().filter(|(i, j)| i != j)
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Pairs `{i, j}` (loops included) missing from the graph, lexicographic.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i..=self.n {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The graph with the edges of `self` removed from `K_n°`.
    pub fn complement(&self) -> Self {
        let all = VertexSet::full(self.n).bits();
        SemisimpleGraph { n: self.n, adj: self.adj.iter().map(|row| all & !row).collect() }
    }

    /// `true` when every pair of distinct vertices of `set` is adjacent and
    /// every vertex of `set` is looped, i.e. `set` indexes a fully specified
    /// principal submatrix.
    pub fn is_fully_specified(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.bits() & !self.adj[v - 1] == 0)
    }

    /// `true` when no edge (loops excluded) joins two vertices of `set`.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.neighbor_bits(v) & set.bits() == 0)
    }

    /// Subgraph induced on `set`, relabelled `1..=|set|` in increasing order.
    pub fn induced(&self, set: VertexSet) -> Self {
        let labels = set.to_vec();
        let mut g = SemisimpleGraph { n: labels.len(), adj: vec![0; labels.len()] };
        for (a, &i) in labels.iter().enumerate() {
            for (b, &j) in labels.iter().enumerate() {
                if self.has_edge(i, j) {
                    g.adj[a] |= 1u64 << b;
                }
            }
        }
        g
    }

    /// Vertex-disjoint union; `other`'s labels are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SemisimpleGraph) -> Result<Self> {
        let mut g = SemisimpleGraph::new(self.n + other.n)?;
        for (i, j) in self.edges() {
            g.insert_edge(i, j)?;
        }
        for (i, j) in other.edges() {
            g.insert_edge(i + self.n, j + self.n)?;
        }
        Ok(g)
    }

    /// Adds a vertex `n + 1` that is looped and adjacent to every other vertex.
    pub fn with_looped_suspension(&self) -> Result<Self> {
        let mut g = SemisimpleGraph::new(self.n + 1)?;
        for (i, j) in self.edges() {
            g.insert_edge(i, j)?;
        }
        let s = self.n + 1;
        for v in 1..=s {
            g.insert_edge(v, s)?;
        }
        Ok(g)
    }

    /// Looped vertices adjacent to every other vertex.
    pub fn looped_suspension_vertices(&self) -> VertexSet {
        let all = VertexSet::full(self.n).bits();
        VertexSet::from_labels((1..=self.n).filter(|&v| self.adj[v - 1] == all))
    }

    /// Connected components (loops ignored), each as a vertex set, ordered by
    /// smallest label.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 1..=self.n {
            if seen & (1u64 << (v - 1)) != 0 {
                continue;
            }
            let mut comp = 1u64 << (v - 1);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for u in VertexSet::from_bits(frontier).iter() {
                    next |= self.adj[u - 1];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(VertexSet::from_bits(comp));
        }
        out
    }

    /// Decides bipartiteness, returning a proper 2-colouring or an odd closed
    /// walk. A loop is an odd cycle of length one, so looped graphs are never
    /// bipartite.
    pub fn bipartiteness(&self) -> Bipartiteness {
        if let Some(v) = self.loops().first() {
            return Bipartiteness::OddCycle(vec![v]);
        }
        let n = self.n;
        let mut color = vec![u8::MAX; n + 1];
        let mut parent = vec![0usize; n + 1];
        let mut depth = vec![0usize; n + 1];
        let mut queue = Vec::with_capacity(n);
        for root in 1..=n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            parent[root] = 0;
            depth[root] = 0;
            queue.clear();
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for w in self.neighbors(u).iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push(w);
                    } else if color[w] == color[u] {
                        return Bipartiteness::OddCycle(tree_cycle(u, w, &parent, &depth));
                    }
                }
            }
        }
        let left = VertexSet::from_labels((1..=n).filter(|&v| color[v] == 0));
        let right = VertexSet::full(n).difference(left);
        Bipartiteness::Bipartite { left, right }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartiteness(), Bipartiteness::Bipartite { .. })
    }
}

/// Closes the BFS-tree paths from `u` and `w` (joined by an edge) into a cycle.
fn tree_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Result of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Proper 2-colouring; `left` holds the colour of the smallest vertex of
    /// each component.
    Bipartite { left: VertexSet, right: VertexSet },
    /// Vertices `v_0, ..., v_{k-1}` of an odd closed walk: consecutive
    /// vertices and `v_{k-1}, v_0` are adjacent. `[v]` is a loop.
    OddCycle(Vec<usize>),
}

impl fmt::Debug for SemisimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemisimpleGraph(n={}, edges=[", self.n)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}{j}")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn looped_c4() -> SemisimpleGraph {
        SemisimpleGraph::from_edges(4, &[(1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn complement_of_full_graph_is_empty() {
        let k2 = SemisimpleGraph::complete_looped(2).unwrap();
        assert_eq!(k2.complement().edge_count(), 0);
        assert_eq!(SemisimpleGraph::new(2).unwrap().complement(), k2);
    }

    #[test]
    fn complement_of_looped_four_cycle() {
        let c = looped_c4().complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn bipartition_of_two_disjoint_edges() {
        let g = SemisimpleGraph::from_edges(4, &[(1, 3), (2, 4)]).unwrap();
        match g.bipartiteness() {
            Bipartiteness::Bipartite { left, right } => {
                assert_eq!(left, VertexSet::from_labels([1, 2]));
                assert_eq!(right, VertexSet::from_labels([3, 4]));
            }
            other => panic!("expected bipartite, got {other:?}"),
        }
    }

    #[test]
    fn loop_blocks_bipartiteness() {
        let g = SemisimpleGraph::from_edges(3, &[(1, 2), (3, 3)]).unwrap();
        assert_eq!(g.bipartiteness(), Bipartiteness::OddCycle(vec![3]));
    }

    #[test]
    fn triangle_witness_is_odd_cycle() {
        let g = SemisimpleGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let Bipartiteness::OddCycle(walk) = g.bipartiteness() else {
            panic!("triangle is not bipartite");
        };
        assert_eq!(walk.len() % 2, 1);
        for k in 0..walk.len() {
            assert!(g.has_edge(walk[k], walk[(k + 1) % walk.len()]));
        }
    }

    #[test]
    fn odd_cycle_witness_on_pentagon_with_tail() {
        let g = SemisimpleGraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (5, 6)]).unwrap();
        let Bipartiteness::OddCycle(walk) = g.bipartiteness() else {
            panic!("pentagon is not bipartite");
        };
        assert_eq!(walk.len(), 5);
        for k in 0..walk.len() {
            assert!(g.has_edge(walk[k], walk[(k + 1) % walk.len()]));
        }
    }

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert_eq!(SemisimpleGraph::from_edges(3, &[(1, 2), (2, 1)]), Err(Error::DuplicateEdge(1, 2)));
        assert!(matches!(SemisimpleGraph::from_edges(3, &[(1, 4)]), Err(Error::VertexOutOfRange { vertex: 4, n: 3 })));
        assert!(SemisimpleGraph::new(65).is_err());
    }

    #[test]
    fn suspension_and_components() {
        let g = SemisimpleGraph::from_edges(2, &[(1, 1), (2, 2)]).unwrap();
        let s = g.with_looped_suspension().unwrap();
        assert_eq!(s.looped_suspension_vertices(), VertexSet::from_labels([3]));
        assert_eq!(g.components().len(), 2);
        assert_eq!(s.components().len(), 1);
    }

    #[test]
    fn induced_relabels() {
        let g = looped_c4();
        let h = g.induced(VertexSet::from_labels([1, 2, 4]));
        assert_eq!(h.n(), 3);
        assert!(h.has_edge(1, 2) && h.has_edge(1, 3) && !h.has_edge(2, 3));
        assert!(h.is_looped());
    }

    #[test]
    fn fully_specified_sets() {
        let g = looped_c4();
        assert!(g.is_fully_specified(VertexSet::from_labels([1, 2])));
        assert!(!g.is_fully_specified(VertexSet::from_labels([1, 3])));
        assert!(g.is_fully_specified(VertexSet::empty()));
    }

    fn brute_force_bipartite(g: &SemisimpleGraph) -> bool {
        let n = g.n();
        (0u32..1 << n).any(|mask| {
            g.edges().all(|(i, j)| {
                let ci = mask >> (i - 1) & 1;
                let cj = mask >> (j - 1) & 1;
                ci != cj
            })
        })
    }

    #[test]
    fn bipartite_matches_exhaustive_colouring_up_to_five_vertices() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
            for mask in 0u64..1 << pairs.len() {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let g = SemisimpleGraph::from_edges(n, &edges).unwrap();
                assert_eq!(g.is_bipartite(), brute_force_bipartite(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn complement_is_involution_exhaustive_small() {
        for n in 0..=4usize {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
            for mask in 0u64..1 << pairs.len() {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let g = SemisimpleGraph::from_edges(n, &edges).unwrap();
                assert_eq!(g.complement().complement(), g);
            }
        }
    }
}
