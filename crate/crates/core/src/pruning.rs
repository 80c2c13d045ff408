//! Removal of vertices that cannot belong to any locally densest subgraph.

use crate::bounds::{Bounds, Rational};
use crate::clique::{core_numbers_within, InstanceSet};
use crate::graph::{Graph, VertexSet};
use crate::proposal::CandidateGroup;

#[derive(Debug, Clone, PartialEq)]
pub struct PruneOutcome {
    /// Candidates restricted to the survivors; empty ones are dropped.
    pub candidates: Vec<CandidateGroup>,
    pub survivors: VertexSet,
    /// Removed vertices, in removal order.
    pub removed: Vec<usize>,
}

/// Removes `v` whenever a neighbour `u` has `lower[u] > upper[v]`, then
/// repeatedly removes every `u` whose instance-core number among the
/// survivors is below `lower[u]`, until nothing changes.
pub fn prune(
    g: &Graph,
    cs: &InstanceSet,
    candidates: &[CandidateGroup],
    bounds: &Bounds,
) -> PruneOutcome {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if alive[b] && bounds.upper[b] < bounds.lower[a] {
                alive[b] = false;
                removed.push(b);
            }
        }
    }

    loop {
        let cores = core_numbers_within(cs, &alive);
        let before = removed.len();
        for u in 0..n {
            if alive[u] && Rational::from_integer(cores[u] as i128) < bounds.lower[u] {
                alive[u] = false;
                removed.push(u);
            }
        }
        if removed.len() == before {
            break;
        }
    }

    let survivors: VertexSet = (0..n).filter(|&v| alive[v]).collect();
    let candidates = candidates
        .iter()
        .filter_map(|c| {
            let vertices = c.vertices.intersection(&survivors);
            (!vertices.is_empty()).then(|| CandidateGroup {
                vertices,
                ..c.clone()
            })
        })
        .collect();
    PruneOutcome {
        candidates,
        survivors,
        removed,
    }
}
