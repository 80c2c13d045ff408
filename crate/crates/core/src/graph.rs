//! Undirected simple graphs in compressed adjacency form.
//!
//! Internal vertex ids are dense `0..n`. External ids read from an edge list
//! are kept in `labels` and only used at I/O boundaries.

use std::collections::{BTreeSet, VecDeque};
use std::io::BufRead;

use crate::error::{Error, Result};

/// Sorted, duplicate-free list of internal vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// Wraps a list that is already sorted and duplicate-free.
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        VertexSet(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut all = self.0.clone();
        all.extend_from_slice(&other.0);
        VertexSet::new(all)
    }

    /// Maps every member through `map` (e.g. local to parent ids).
    pub fn map(&self, map: &[usize]) -> VertexSet {
        VertexSet::new(self.0.iter().map(|&v| map[v]).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Counts of input lines that were dropped while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph on `0..n` from an edge list. Self-loops and repeated
    /// edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Ok(Self::from_edges_with_stats(n, edges)?.0)
    }

    pub fn from_edges_with_stats(
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<(Graph, IngestStats)> {
        let mut stats = IngestStats::default();
        let mut pairs = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        stats.duplicate_edges = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; offsets[n]];
        // Pairs are sorted, so each list receives its entries in ascending order
        // for the `u` side; the `v` side needs a final sort.
        for &(u, v) in &pairs {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok((
            Graph {
                offsets,
                neighbors,
                labels: None,
            },
            stats,
        ))
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Iterates every edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// External id of `v`, falling back to the internal id.
    pub fn label(&self, v: usize) -> u64 {
        match &self.labels {
            Some(labels) => labels[v],
            None => v as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_sorted((0..self.n()).collect())
    }

    fn check_ids(&self, s: &VertexSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&id) if id >= self.n() => Err(Error::VertexOutOfRange { id, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// The subgraph induced by `s`, with local ids `0..|s|` in the order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Subgraph> {
        self.check_ids(s)?;
        let mut local = vec![usize::MAX; self.n()];
        for (i, v) in s.iter().enumerate() {
            local[v] = i;
        }
        let mut offsets = Vec::with_capacity(s.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for v in s.iter() {
            // Neighbor lists stay sorted because `local` is monotone on `s`.
            neighbors.extend(
                self.neighbors(v)
                    .iter()
                    .filter(|&&w| local[w] != usize::MAX)
                    .map(|&w| local[w]),
            );
            offsets.push(neighbors.len());
        }
        let labels = Some(s.iter().map(|v| self.label(v)).collect());
        Ok(Subgraph {
            graph: Graph {
                offsets,
                neighbors,
                labels,
            },
            to_parent: s.as_slice().to_vec(),
        })
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            components.push(VertexSet::new(members));
        }
        components
    }

    /// Components of the subgraph induced by `s`, in parent ids, ordered by
    /// smallest member.
    pub fn components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mask = s.mask(self.n());
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in s.iter() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in self.neighbors(v) {
                    if mask[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            components.push(VertexSet::new(members));
        }
        components
    }

    pub fn is_connected_within(&self, s: &VertexSet) -> bool {
        !s.is_empty() && self.components_within(s).len() == 1
    }

    /// Minimum-degree peeling order. Each round removes every vertex whose
    /// current degree equals the round's minimum, in ascending id order.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while let Some(&(min_degree, _)) = queue.first() {
            let batch: Vec<usize> = queue
                .iter()
                .take_while(|&&(d, _)| d == min_degree)
                .map(|&(_, v)| v)
                .collect();
            for &v in &batch {
                queue.remove(&(degree[v], v));
                removed[v] = true;
            }
            for &v in &batch {
                order.push(v);
                for &w in self.neighbors(v) {
                    if !removed[w] {
                        queue.remove(&(degree[w], w));
                        degree[w] -= 1;
                        queue.insert((degree[w], w));
                    }
                }
            }
        }
        order
    }
}

/// An induced subgraph together with the parent id of every local vertex.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl Subgraph {
    pub fn parent_set(&self, local: &VertexSet) -> VertexSet {
        local.map(&self.to_parent)
    }
}

/// Reads a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments; tokens after the first two on a line are ignored.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    Ok(parse_edge_list_with_stats(reader)?.0)
}

pub fn parse_edge_list_with_stats<R: BufRead>(reader: R) -> Result<(Graph, IngestStats)> {
    let mut raw = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let token = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex ids".to_string(),
            })?;
            token.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex id '{token}'"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        raw.push((u, v));
    }

    let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |x: u64| labels.binary_search(&x).expect("label was collected");
    let edges: Vec<(usize, usize)> = raw.iter().map(|&(u, v)| (index(u), index(v))).collect();
    let (graph, stats) = Graph::from_edges_with_stats(labels.len(), &edges)?;
    Ok((graph.with_labels(labels), stats))
}
