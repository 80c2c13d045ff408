//! Candidate proposal: tentative decomposition of the weight state into
//! density blocks, and stable-group detection with bound tightening.

use crate::bounds::{safe_ceil, safe_floor, Bounds, Rational};
use crate::clique::InstanceSet;
use crate::convex::WeightState;
use crate::graph::VertexSet;

/// Consecutive vertex blocks in descending `r` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub groups: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateGroup {
    pub vertices: VertexSet,
    pub r_min: f64,
    pub r_max: f64,
    pub density: Option<Rational>,
}

impl CandidateGroup {
    fn new(vertices: VertexSet, r: &[f64]) -> CandidateGroup {
        let (r_min, r_max) = range_of(&vertices, r);
        CandidateGroup {
            vertices,
            r_min,
            r_max,
            density: None,
        }
    }
}

fn range_of(s: &VertexSet, r: &[f64]) -> (f64, f64) {
    s.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(r[v]), hi.max(r[v]))
        })
}

/// Vertices by descending `r`, ties by ascending id.
fn descending_order(r: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..r.len()).collect();
    order.sort_by(|&a, &b| r[b].total_cmp(&r[a]).then(a.cmp(&b)));
    order
}

/// Cut positions of the sorted order: the vertices of the upper concave hull
/// of `(q, instances inside the first q vertices)`. Starting from a cut `p`,
/// the next cut is the longest `q` maximising the density of block `p..q`.
fn density_cuts(prefix: &[i128]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(prefix.len());
    for q in 0..prefix.len() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b - a) as i128 * (prefix[q] - prefix[a])
                - (prefix[b] - prefix[a]) * (q - a) as i128;
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    hull.into_iter().skip(1).collect()
}

/// Sorts vertices by `r`, cuts the order into density-maximal blocks, and
/// moves the weight of every instance that spans several blocks onto its
/// members in the last (lowest-`r`) block it touches. Returns the blocks and
/// the updated state with `r` recomputed.
pub fn tentative_decomposition(cs: &InstanceSet, ws: &WeightState) -> (Partition, WeightState) {
    let n = cs.n();
    let order = descending_order(&ws.r);
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }

    // An instance enters the prefix with its last member in sort order.
    let mut prefix = vec![0i128; n + 1];
    for tuple in cs.iter() {
        let last = tuple.iter().map(|&v| position[v as usize]).max().unwrap();
        prefix[last + 1] += 1;
    }
    for q in 0..n {
        prefix[q + 1] += prefix[q];
    }

    let mut groups = Vec::new();
    let mut group_of = vec![0usize; n];
    let mut start = 0;
    for cut in density_cuts(&prefix) {
        for &v in &order[start..cut] {
            group_of[v] = groups.len();
        }
        groups.push(VertexSet::new(order[start..cut].to_vec()));
        start = cut;
    }

    let arity = cs.arity();
    let mut next = ws.clone();
    for (i, tuple) in cs.iter().enumerate() {
        let last = tuple.iter().map(|&v| group_of[v as usize]).max().unwrap();
        if tuple.iter().all(|&v| group_of[v as usize] == last) {
            continue;
        }
        let mut moved = 0.0;
        let mut inside = 0usize;
        for (j, &v) in tuple.iter().enumerate() {
            if group_of[v as usize] != last {
                moved += next.alpha[i * arity + j];
                next.alpha[i * arity + j] = 0.0;
            } else {
                inside += 1;
            }
        }
        let share = moved / inside as f64;
        for (j, &v) in tuple.iter().enumerate() {
            if group_of[v as usize] == last {
                next.alpha[i * arity + j] += share;
            }
        }
    }
    next.recompute_r(cs);
    (Partition { groups }, next)
}

/// Checks the stable-group conditions against a fixed weight state.
struct StabilityCheck<'a> {
    cs: &'a InstanceSet,
    ws: &'a WeightState,
    sorted_r: Vec<f64>,
}

impl<'a> StabilityCheck<'a> {
    fn new(cs: &'a InstanceSet, ws: &'a WeightState) -> Self {
        let mut sorted_r = ws.r.clone();
        sorted_r.sort_by(f64::total_cmp);
        StabilityCheck { cs, ws, sorted_r }
    }

    fn is_stable(&self, s: &VertexSet, inside: &[bool]) -> bool {
        if s.is_empty() {
            return false;
        }
        let (r_min, r_max) = range_of(s, &self.ws.r);
        // (1) no outside vertex has r within [r_min, r_max].
        let lo = self.sorted_r.partition_point(|&x| x < r_min);
        let hi = self.sorted_r.partition_point(|&x| x <= r_max);
        if hi - lo != s.len() {
            return false;
        }
        // (2) no weight flows to a higher outside vertex, (3) none from a
        // member towards a lower outside vertex.
        let arity = self.cs.arity();
        for u in s.iter() {
            for &i in self.cs.incident(u) {
                let tuple = self.cs.instance(i);
                let mut member_weight = 0.0;
                let mut has_lower = false;
                for (j, &v) in tuple.iter().enumerate() {
                    let v = v as usize;
                    let weight = self.ws.alpha[i * arity + j];
                    if v == u {
                        member_weight = weight;
                    } else if !inside[v] {
                        if self.ws.r[v] > r_max && weight != 0.0 {
                            return false;
                        }
                        if self.ws.r[v] < r_min {
                            has_lower = true;
                        }
                    }
                }
                if has_lower && member_weight != 0.0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether `candidate` is a stable group with respect to `ws`.
pub fn is_stable_group(candidate: &VertexSet, ws: &WeightState, cs: &InstanceSet) -> bool {
    let inside = candidate.mask(cs.n());
    StabilityCheck::new(cs, ws).is_stable(candidate, &inside)
}

/// Greedily merges consecutive blocks until each accumulated union is a
/// stable group, then tightens every member's bounds to the group's `r`
/// range. A trailing union that never became stable is merged backwards into
/// the groups already found (the whole vertex set is always stable).
pub fn derive_stable_groups(
    p: &Partition,
    ws: &WeightState,
    cs: &InstanceSet,
    bounds: &Bounds,
) -> (Vec<CandidateGroup>, Bounds) {
    let check = StabilityCheck::new(cs, ws);
    let mut inside = vec![false; cs.n()];
    let mut found: Vec<VertexSet> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    for group in &p.groups {
        pending.extend(group.iter());
        for v in group.iter() {
            inside[v] = true;
        }
        let candidate = VertexSet::new(pending.clone());
        if check.is_stable(&candidate, &inside) {
            for v in candidate.iter() {
                inside[v] = false;
            }
            found.push(candidate);
            pending.clear();
        }
    }
    if !pending.is_empty() {
        let mut merged = VertexSet::new(pending);
        loop {
            match found.pop() {
                None => {
                    found.push(merged);
                    break;
                }
                Some(previous) => {
                    merged = merged.union(&previous);
                    let mask = merged.mask(cs.n());
                    if check.is_stable(&merged, &mask) {
                        found.push(merged);
                        break;
                    }
                }
            }
        }
    }

    let mut tightened = bounds.clone();
    let groups: Vec<CandidateGroup> = found
        .into_iter()
        .map(|s| CandidateGroup::new(s, &ws.r))
        .collect();
    for group in &groups {
        let upper = safe_ceil(group.r_max);
        let lower = safe_floor(group.r_min);
        for u in group.vertices.iter() {
            tightened.tighten_upper(u, upper);
            tightened.tighten_lower(u, lower);
        }
    }
    (groups, tightened)
}
