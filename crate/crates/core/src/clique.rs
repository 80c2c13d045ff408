//! Clique enumeration, instance-degree cores and the initial bounds.
//!
//! Every algorithm downstream works on an [`InstanceSet`]: a list of
//! fixed-size vertex tuples ("instances") with a per-vertex incidence index.
//! For cliques an instance is an h-clique; the pattern engine produces the
//! same structure for 4-vertex patterns.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSet {
    n: usize,
    arity: usize,
    members: Vec<u32>,
    incidence_offsets: Vec<usize>,
    incidence: Vec<usize>,
}

/// h-cliques of a graph, sorted lexicographically; clique id = rank.
pub type CliqueSet = InstanceSet;

impl InstanceSet {
    /// Builds the set from a flat list of `arity`-tuples over `0..n`. Tuples
    /// must be internally ascending; the list order is kept as instance ids.
    pub fn from_flat(n: usize, arity: usize, members: Vec<u32>) -> InstanceSet {
        assert!(arity > 0 && members.len().is_multiple_of(arity));
        let mut counts = vec![0usize; n + 1];
        for &v in &members {
            counts[v as usize + 1] += 1;
        }
        for v in 0..n {
            counts[v + 1] += counts[v];
        }
        let incidence_offsets = counts;
        let mut fill = incidence_offsets[..n].to_vec();
        let mut incidence = vec![0usize; members.len()];
        for (i, tuple) in members.chunks_exact(arity).enumerate() {
            for &v in tuple {
                incidence[fill[v as usize]] = i;
                fill[v as usize] += 1;
            }
        }
        InstanceSet {
            n,
            arity,
            members,
            incidence_offsets,
            incidence,
        }
    }

    pub fn empty(n: usize, arity: usize) -> InstanceSet {
        InstanceSet::from_flat(n, arity, Vec::new())
    }

    /// Number of vertices of the host graph.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertices per instance (h for cliques).
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn instance(&self, i: usize) -> &[u32] {
        &self.members[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.members.chunks_exact(self.arity)
    }

    /// Ids of the instances containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[self.incidence_offsets[v]..self.incidence_offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> u64 {
        (self.incidence_offsets[v + 1] - self.incidence_offsets[v]) as u64
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Number of instances whose members all satisfy `inside`.
    pub fn count_within(&self, inside: &[bool]) -> u64 {
        self.iter()
            .filter(|t| t.iter().all(|&v| inside[v as usize]))
            .count() as u64
    }

    /// Number of instances fully inside `s`, touching only instances incident
    /// to `s`.
    pub fn count_in_set(&self, s: &VertexSet) -> u64 {
        let mask = s.mask(self.n);
        let mut count = 0;
        for v in s.iter() {
            for &i in self.incident(v) {
                let tuple = self.instance(i);
                // Count each instance once, at its smallest member.
                if tuple[0] as usize == v && tuple.iter().all(|&w| mask[w as usize]) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Instances fully inside `s`, renumbered to local ids `0..|s|` (the
    /// order of `s`). Relative instance order is preserved.
    pub fn restrict(&self, s: &VertexSet) -> InstanceSet {
        let mut local = vec![u32::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut ids = Vec::new();
        for v in s.iter() {
            for &i in self.incident(v) {
                let tuple = self.instance(i);
                if tuple[0] as usize == v && tuple.iter().all(|&w| local[w as usize] != u32::MAX) {
                    ids.push(i);
                }
            }
        }
        ids.sort_unstable();
        let mut members = Vec::with_capacity(ids.len() * self.arity);
        for i in ids {
            members.extend(self.instance(i).iter().map(|&w| local[w as usize]));
        }
        InstanceSet::from_flat(s.len(), self.arity, members)
    }

    /// One instance per line, space-separated internal ids.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for tuple in self.iter() {
            let line: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Lists every h-clique of `g` exactly once, via recursive neighborhood
/// intersection on the degeneracy-oriented DAG.
pub fn enumerate_cliques(g: &Graph, h: usize) -> Result<CliqueSet> {
    if h < 2 {
        return Err(Error::InvalidCliqueSize(h));
    }
    let n = g.n();
    let order = g.degeneracy_order();
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let out: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| rank[w] > rank[v])
                .collect()
        })
        .collect();

    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut current = Vec::with_capacity(h);
    for v in 0..n {
        current.push(v as u32);
        extend_clique(&out, &out[v], h - 1, &mut current, &mut found);
        current.pop();
    }
    found.sort_unstable();
    let members = found.into_iter().flatten().collect();
    Ok(InstanceSet::from_flat(n, h, members))
}

fn extend_clique(
    out: &[Vec<usize>],
    candidates: &[usize],
    remaining: usize,
    current: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    if remaining == 1 {
        for &w in candidates {
            let mut clique = current.clone();
            clique.push(w as u32);
            clique.sort_unstable();
            found.push(clique);
        }
        return;
    }
    for &w in candidates {
        let next = intersect_sorted(candidates, &out[w]);
        if next.len() + 1 < remaining {
            continue;
        }
        current.push(w as u32);
        extend_clique(out, &next, remaining - 1, current, found);
        current.pop();
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Instance-degree core numbers of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core: Vec<u64>,
}

/// Peels vertices by minimum instance degree (ties by smallest id). When a
/// vertex goes, every instance through it dies and its other members lose
/// one degree.
pub fn clique_core_numbers(cs: &InstanceSet) -> CoreDecomposition {
    let alive = vec![true; cs.n()];
    CoreDecomposition {
        core: core_numbers_within(cs, &alive),
    }
}

/// Core numbers restricted to the vertices flagged in `alive`; instances with
/// a dead member do not count. Dead vertices get core 0.
pub fn core_numbers_within(cs: &InstanceSet, alive: &[bool]) -> Vec<u64> {
    let n = cs.n();
    let mut instance_alive: Vec<bool> = cs
        .iter()
        .map(|t| t.iter().all(|&v| alive[v as usize]))
        .collect();
    let mut degree = vec![0u64; n];
    for (i, tuple) in cs.iter().enumerate() {
        if instance_alive[i] {
            for &v in tuple {
                degree[v as usize] += 1;
            }
        }
    }
    let mut queue: BTreeSet<(u64, usize)> = (0..n)
        .filter(|&v| alive[v])
        .map(|v| (degree[v], v))
        .collect();
    let mut removed: Vec<bool> = alive.iter().map(|a| !a).collect();
    let mut core = vec![0u64; n];
    let mut level = 0u64;
    while let Some((d, v)) = queue.pop_first() {
        level = level.max(d);
        core[v] = level;
        removed[v] = true;
        for &i in cs.incident(v) {
            if !instance_alive[i] {
                continue;
            }
            instance_alive[i] = false;
            for &w in cs.instance(i) {
                let w = w as usize;
                if !removed[w] {
                    queue.remove(&(degree[w], w));
                    degree[w] -= 1;
                    queue.insert((degree[w], w));
                }
            }
        }
    }
    core
}

/// Upper bound = core number, lower bound = core number / h.
pub fn initialize_bounds(cd: &CoreDecomposition, h: usize) -> Bounds {
    Bounds::from_cores(&cd.core, h)
}
