//! Four-vertex pattern instances, counted as non-induced subgraphs modulo
//! automorphism.

use std::fmt;
use std::str::FromStr;

use crate::bounds::Rational;
use crate::clique::{enumerate_cliques, InstanceSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternId {
    ThreeStar,
    FourPath,
    TailedTriangle,
    FourLoop,
    Diamond,
    FourClique,
}

impl PatternId {
    pub const ALL: [PatternId; 6] = [
        PatternId::ThreeStar,
        PatternId::FourPath,
        PatternId::TailedTriangle,
        PatternId::FourLoop,
        PatternId::Diamond,
        PatternId::FourClique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::ThreeStar => "3star",
            PatternId::FourPath => "4path",
            PatternId::TailedTriangle => "tailed-triangle",
            PatternId::FourLoop => "4loop",
            PatternId::Diamond => "diamond",
            PatternId::FourClique => "4clique",
        }
    }

    pub fn edge_count(self) -> u32 {
        match self {
            PatternId::ThreeStar | PatternId::FourPath => 3,
            PatternId::TailedTriangle | PatternId::FourLoop => 4,
            PatternId::Diamond => 5,
            PatternId::FourClique => 6,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternId {
    type Err = Error;

    fn from_str(s: &str) -> Result<PatternId> {
        PatternId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnsupportedPattern(s.to_string()))
    }
}

/// Pattern instances as sorted 4-tuples. `edge_masks[i]` records which of
/// the six member pairs `(0,1) (0,2) (0,3) (1,2) (1,3) (2,3)` the instance
/// uses, telling apart embeddings on the same vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    pub pattern: PatternId,
    pub instances: InstanceSet,
    pub edge_masks: Vec<u8>,
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Sorted tuple and pair mask for a 4-vertex subgraph given by its edges.
fn canonical(vertices: [usize; 4], edges: &[(usize, usize)]) -> ([usize; 4], u8) {
    let mut sorted = vertices;
    sorted.sort_unstable();
    let position = |v: usize| sorted.iter().position(|&w| w == v).unwrap();
    let mut mask = 0u8;
    for &(a, b) in edges {
        let (i, j) = (position(a).min(position(b)), position(a).max(position(b)));
        mask |= 1 << PAIRS.iter().position(|&p| p == (i, j)).unwrap();
    }
    (sorted, mask)
}

fn common_neighbors(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
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

fn raw_instances(g: &Graph, pattern: PatternId) -> Vec<([usize; 4], u8)> {
    let mut out = Vec::new();
    match pattern {
        PatternId::ThreeStar => {
            for c in 0..g.n() {
                let nb = g.neighbors(c);
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        for k in j + 1..nb.len() {
                            let (x, y, z) = (nb[i], nb[j], nb[k]);
                            out.push(canonical([c, x, y, z], &[(c, x), (c, y), (c, z)]));
                        }
                    }
                }
            }
        }
        PatternId::FourPath => {
            for (b, c) in g.edges() {
                for &a in g.neighbors(b) {
                    for &d in g.neighbors(c) {
                        if a != c && d != b && a != d {
                            out.push(canonical([a, b, c, d], &[(a, b), (b, c), (c, d)]));
                        }
                    }
                }
            }
        }
        PatternId::TailedTriangle => {
            for (x, y) in g.edges() {
                for z in common_neighbors(g, x, y).into_iter().filter(|&z| z > y) {
                    for anchor in [x, y, z] {
                        for &tail in g.neighbors(anchor) {
                            if tail != x && tail != y && tail != z {
                                let edges = [(x, y), (y, z), (x, z), (anchor, tail)];
                                out.push(canonical([x, y, z, tail], &edges));
                            }
                        }
                    }
                }
            }
        }
        PatternId::FourLoop => {
            // Cycles a-b-c-d with a the smallest member, grouped by the
            // opposite vertex c.
            let mut mids: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
            let mut touched = Vec::new();
            for a in 0..g.n() {
                for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
                    for &c in g.neighbors(b).iter().filter(|&&c| c > a) {
                        if mids[c].is_empty() {
                            touched.push(c);
                        }
                        mids[c].push(b);
                    }
                }
                for c in touched.drain(..) {
                    let mid = std::mem::take(&mut mids[c]);
                    for i in 0..mid.len() {
                        for &d in &mid[i + 1..] {
                            let b = mid[i];
                            out.push(canonical([a, b, c, d], &[(a, b), (b, c), (c, d), (d, a)]));
                        }
                    }
                }
            }
        }
        PatternId::Diamond => {
            for (u, v) in g.edges() {
                let wings = common_neighbors(g, u, v);
                for i in 0..wings.len() {
                    for j in i + 1..wings.len() {
                        let (x, y) = (wings[i], wings[j]);
                        let edges = [(u, v), (u, x), (v, x), (u, y), (v, y)];
                        out.push(canonical([u, v, x, y], &edges));
                    }
                }
            }
        }
        PatternId::FourClique => unreachable!(),
    }
    out
}

/// All instances of `pattern` in `g`, sorted by member tuple then pair mask.
/// The 4-clique pattern yields exactly the 4-cliques.
pub fn enumerate_patterns(g: &Graph, pattern: PatternId) -> Result<PatternSet> {
    if pattern == PatternId::FourClique {
        let instances = enumerate_cliques(g, 4)?;
        let edge_masks = vec![0b11_1111; instances.len()];
        return Ok(PatternSet {
            pattern,
            instances,
            edge_masks,
        });
    }
    let mut found = raw_instances(g, pattern);
    found.sort_unstable();
    debug_assert!(found.windows(2).all(|w| w[0] != w[1]));
    let members = found
        .iter()
        .flat_map(|(tuple, _)| tuple.iter().map(|&v| v as u32))
        .collect();
    Ok(PatternSet {
        pattern,
        instances: InstanceSet::from_flat(g.n(), 4, members),
        edge_masks: found.into_iter().map(|(_, mask)| mask).collect(),
    })
}

/// Instances fully inside `s` per vertex of `s`.
pub fn pattern_density(ps: &PatternSet, s: &VertexSet) -> Result<Rational> {
    if s.is_empty() {
        return Err(Error::EmptyCandidate);
    }
    Ok(Rational::new(
        ps.instances.count_in_set(s) as i128,
        s.len() as i128,
    ))
}
