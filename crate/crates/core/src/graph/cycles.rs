use alloc::vec;
use alloc::vec::Vec;

use super::{SemisimpleGraph, VertexSet};

/// Cycle structure of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CycleKind {
    Acyclic,
    UniqueOddCycle,
    UniqueEvenCycle,
    MultipleCycles,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCycles {
    pub vertices: VertexSet,
    pub vertex_count: usize,
    /// Edges inside the component, loops included.
    pub edge_count: usize,
    pub kind: CycleKind,
    /// The unique cycle in traversal order when `kind` is one of the unique
    /// variants; a loop is reported as `[v]`.
    pub cycle: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleProfile {
    pub components: Vec<ComponentCycles>,
}

impl CycleProfile {
    /// Total number of odd cycles over components with a unique cycle.
    pub fn unique_odd_cycles(&self) -> usize {
        self.components.iter().filter(|c| c.kind == CycleKind::UniqueOddCycle).count()
    }

    pub fn has_even_cycle_component(&self) -> bool {
        self.components.iter().any(|c| c.kind == CycleKind::UniqueEvenCycle)
    }

    pub fn has_multi_cycle_component(&self) -> bool {
        self.components.iter().any(|c| c.kind == CycleKind::MultipleCycles)
    }
}

/// Classifies every connected component by its cycle structure and locates
/// the unique cycle when there is exactly one.
pub fn cycle_profile(g: &SemisimpleGraph) -> CycleProfile {
    let components = g
        .components()
        .into_iter()
        .map(|comp| {
            let vertex_count = comp.len();
            let loops = g.loops().intersection(comp);
            let proper: usize = comp.iter().map(|v| g.neighbors(v).len()).sum::<usize>() / 2;
            let edge_count = proper + loops.len();
            let (kind, cycle) = if edge_count < vertex_count {
                (CycleKind::Acyclic, None)
            } else if edge_count > vertex_count {
                (CycleKind::MultipleCycles, None)
            } else if let Some(v) = loops.first() {
                (CycleKind::UniqueOddCycle, Some(vec![v]))
            } else {
                let cycle = two_core_cycle(g, comp);
                let kind = if cycle.len() % 2 == 1 { CycleKind::UniqueOddCycle } else { CycleKind::UniqueEvenCycle };
                (kind, Some(cycle))
            };
            ComponentCycles { vertices: comp, vertex_count, edge_count, kind, cycle }
        })
        .collect();
    CycleProfile { components }
}

/// Strips degree-one vertices until only the cycle of a unicyclic, loop-free
/// component remains, then walks it.
fn two_core_cycle(g: &SemisimpleGraph, comp: VertexSet) -> Vec<usize> {
    let mut alive = comp;
    loop {
        let leaves: Vec<usize> = alive.iter().filter(|&v| g.neighbors(v).intersection(alive).len() <= 1).collect();
        if leaves.is_empty() {
            break;
        }
        for v in leaves {
            alive.remove(v);
        }
    }
    let start = alive.first().expect("unicyclic component has a 2-core");
    let mut cycle = vec![start];
    let mut prev = 0usize;
    let mut cur = start;
    loop {
        let next =
            g.neighbors(cur).intersection(alive).iter().find(|&w| w != prev).expect("2-core vertices have degree two");
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}
