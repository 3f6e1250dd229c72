//! Exact exponential searches over vertex subsets.

use super::{SemisimpleGraph, VertexSet};
use crate::error::{Error, Result};

/// Default vertex limit for [`max_independent_set_size`].
pub const INDEPENDENT_SET_SEARCH_LIMIT: usize = 24;
/// Default vertex limit for [`max_bipartite_induced_size`].
pub const BIPARTITE_SEARCH_LIMIT: usize = 16;

/// Size of a largest set of vertices with no edge between two distinct
/// members. Loops do not matter: a looped vertex may be chosen.
pub fn max_independent_set_size(g: &SemisimpleGraph, limit: usize) -> Result<usize> {
    if g.n() > limit {
        return Err(Error::SearchLimit { n: g.n(), limit });
    }
    let mut best = 0;
    mis_branch(g, VertexSet::full(g.n()).bits(), 0, &mut best);
    Ok(best)
}

fn mis_branch(g: &SemisimpleGraph, candidates: u64, size: usize, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    // Branch on the candidate with the most candidate neighbours; vertices
    // with none are taken greedily.
    let mut pick = 0;
    let mut pick_deg = 0;
    let mut free = 0u64;
    for v in VertexSet::from_bits(candidates).iter() {
        let d = (g.neighbor_bits(v) & candidates).count_ones();
        if d == 0 {
            free |= 1u64 << (v - 1);
        } else if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    if free != 0 {
        mis_branch(g, candidates & !free, size + free.count_ones() as usize, best);
        return;
    }
    let bit = 1u64 << (pick - 1);
    mis_branch(g, candidates & !bit & !g.neighbor_bits(pick), size + 1, best);
    mis_branch(g, candidates & !bit, size, best);
}

/// Largest `|S|` such that the subgraph induced on `S` is bipartite. Looped
/// vertices can never belong to `S`.
pub fn max_bipartite_induced_size(g: &SemisimpleGraph, limit: usize) -> Result<usize> {
    if g.n() > limit {
        return Err(Error::SearchLimit { n: g.n(), limit });
    }
    let order: alloc::vec::Vec<usize> = VertexSet::full(g.n()).difference(g.loops()).iter().collect();
    let mut best = 0;
    bip_branch(g, &order, 0, 0, 0, &mut best);
    Ok(best)
}

fn bip_branch(g: &SemisimpleGraph, order: &[usize], idx: usize, left: u64, right: u64, best: &mut usize) {
    let size = (left | right).count_ones() as usize;
    if idx == order.len() {
        *best = (*best).max(size);
        return;
    }
    if size + (order.len() - idx) <= *best {
        return;
    }
    let v = order[idx];
    let bit = 1u64 << (v - 1);
    let nb = g.neighbor_bits(v);
    if nb & left == 0 {
        bip_branch(g, order, idx + 1, left | bit, right, best);
    }
    // The first vertex can go to either side by symmetry.
    if nb & right == 0 && (left | right) != 0 {
        bip_branch(g, order, idx + 1, left, right | bit, best);
    }
    bip_branch(g, order, idx + 1, left, right, best);
}
