//! Deciding whether a candidate is a locally densest subgraph.
//!
//! A candidate `s` of density `rho` qualifies exactly when it is a connected
//! component of the largest vertex set maximising
//! `instances inside - (rho - 1/|V|^2) * size`.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::bounds::{Bounds, Rational};
use crate::clique::InstanceSet;
use crate::error::{Error, Result};
use crate::flow::{build_network, density, min_cut, BoundaryCliqueSet, BoundaryInstance};
use crate::graph::{Graph, VertexSet};

/// Work done by one verification call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyStats {
    /// Vertices of the graph the flow network was built on.
    pub expansion: usize,
    pub boundary: usize,
    pub flow_calls: usize,
    pub flow_nodes: usize,
}

fn check_candidate(g: &Graph, s: &VertexSet) -> Result<()> {
    match s.as_slice().last() {
        None => return Err(Error::EmptyCandidate),
        Some(&id) if id >= g.n() => return Err(Error::VertexOutOfRange { id, n: g.n() }),
        _ => {}
    }
    if !g.is_connected_within(s) {
        return Err(Error::DisconnectedCandidate);
    }
    Ok(())
}

fn shifted(rho: Rational, n: usize) -> Rational {
    rho - Rational::new(1, (n * n) as i128)
}

/// Whether `s` is contained in `kept` with no kept neighbour outside `s`.
fn is_component(g: &Graph, s: &VertexSet, in_s: &[bool], kept: &[bool]) -> bool {
    s.iter()
        .all(|u| kept[u] && g.neighbors(u).iter().all(|&w| in_s[w] || !kept[w]))
}

pub fn verify_basic(g: &Graph, cs: &InstanceSet, s: &VertexSet) -> Result<bool> {
    verify_basic_with_stats(g, cs, s).map(|(ok, _)| ok)
}

/// Runs one flow on the whole graph.
pub fn verify_basic_with_stats(
    g: &Graph,
    cs: &InstanceSet,
    s: &VertexSet,
) -> Result<(bool, VerifyStats)> {
    check_candidate(g, s)?;
    let rho = density(cs, s);
    if rho.is_zero() {
        return Ok((false, VerifyStats::default()));
    }
    let net = build_network(cs, shifted(rho, g.n()), &BoundaryCliqueSet::default())?;
    let kept = min_cut(&net).source_side.mask(g.n());
    let stats = VerifyStats {
        expansion: g.n(),
        boundary: 0,
        flow_calls: 1,
        flow_nodes: net.node_count(),
    };
    Ok((is_component(g, s, &s.mask(g.n()), &kept), stats))
}

pub fn verify_fast(
    g: &Graph,
    cs: &InstanceSet,
    s: &VertexSet,
    bounds: &Bounds,
    emitted: &[bool],
) -> Result<bool> {
    verify_fast_with_stats(g, cs, s, bounds, emitted).map(|(ok, _)| ok)
}

/// Verification on a neighbourhood of `s`. `bounds` must bracket every compact number of `g`; `emitted` marks
/// members of subgraphs already reported.
///
/// Vertices outside `s` with `lower >= rho` are known to be kept, those with
/// `upper < rho` known to be dropped. The remaining ones reachable from `s`
/// through instances whose members are all possibly kept form `T`; instances
/// reaching from `T` into known-kept vertices become boundary instances.
pub fn verify_fast_with_stats(
    g: &Graph,
    cs: &InstanceSet,
    s: &VertexSet,
    bounds: &Bounds,
    emitted: &[bool],
) -> Result<(bool, VerifyStats)> {
    check_candidate(g, s)?;
    let n = g.n();
    let rho = density(cs, s);
    let mut stats = VerifyStats::default();
    if rho.is_zero() {
        return Ok((false, stats));
    }
    let in_s = s.mask(n);
    let possible = |v: usize| bounds.upper[v] >= rho;
    let known = |v: usize| !in_s[v] && bounds.lower[v] >= rho;

    let mut in_t = in_s.clone();
    let mut queue: VecDeque<usize> = s.iter().collect();
    for u in s.iter() {
        for &w in g.neighbors(u) {
            if in_s[w] {
                continue;
            }
            if known(w) {
                return Ok((false, stats));
            }
            if possible(w) && !in_t[w] {
                in_t[w] = true;
                queue.push_back(w);
            }
        }
    }
    let mut seen_instance = vec![false; cs.len()];
    let mut live: Vec<usize> = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &i in cs.incident(v) {
            if seen_instance[i] {
                continue;
            }
            seen_instance[i] = true;
            let tuple = cs.instance(i);
            if !tuple.iter().all(|&w| possible(w as usize)) {
                continue;
            }
            live.push(i);
            for &w in tuple {
                let w = w as usize;
                if !in_t[w] && !known(w) {
                    in_t[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let t: VertexSet = (0..n).filter(|&v| in_t[v]).collect();
    stats.expansion = t.len();
    let mut local = vec![usize::MAX; n];
    for (i, v) in t.iter().enumerate() {
        local[v] = i;
    }
    live.sort_unstable();
    let arity = cs.arity();
    let mut interior: Vec<u32> = Vec::new();
    let mut boundary = BoundaryCliqueSet::default();
    let mut touches_emitted = false;
    for &i in &live {
        let tuple = cs.instance(i);
        let members: Vec<usize> = tuple
            .iter()
            .filter(|&&w| in_t[w as usize])
            .map(|&w| local[w as usize])
            .collect();
        touches_emitted |= tuple
            .iter()
            .any(|&w| !in_t[w as usize] && emitted[w as usize]);
        if members.len() == arity {
            interior.extend(members.iter().map(|&w| w as u32));
        } else {
            boundary.entries.push(BoundaryInstance { id: i, members });
        }
    }
    stats.boundary = boundary.len();
    if t.len() == s.len() && boundary.is_empty() && !touches_emitted {
        // Equal instance degrees inside `s` make it densest within itself.
        let mut degree = vec![0u64; t.len()];
        interior.iter().for_each(|&w| degree[w as usize] += 1);
        if degree.iter().all(|&d| d == degree[0]) {
            return Ok((true, stats));
        }
    }

    let local_cs = InstanceSet::from_flat(t.len(), arity, interior);
    let net = build_network(&local_cs, shifted(rho, n), &boundary)?;
    stats.flow_calls = 1;
    stats.flow_nodes = net.node_count();
    let kept_local = min_cut(&net).source_side;
    let mut kept = vec![false; n];
    for v in kept_local.iter() {
        kept[t.as_slice()[v]] = true;
    }
    Ok((is_component(g, s, &in_s, &kept), stats))
}
