//! Exhaustive ground truth for tiny graphs.

use num_traits::Zero;

use crate::bounds::Rational;
use crate::clique::{enumerate_cliques, InstanceSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const MAX_COMPACTNESS_VERTICES: usize = 15;
pub const MAX_ENUMERATION_VERTICES: usize = 12;

fn check_size(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::OracleTooLarge { n, max });
    }
    Ok(())
}

/// Instance counts and connectivity of every vertex subset, keyed by bitmask.
struct SubsetTable {
    n: usize,
    count: Vec<u64>,
    connected: Vec<bool>,
}

impl SubsetTable {
    fn new(g: &Graph, cs: &InstanceSet) -> SubsetTable {
        let n = g.n();
        let full = 1usize << n;
        let mut count = vec![0u64; full];
        for tuple in cs.iter() {
            count[tuple.iter().fold(0, |m, &v| m | 1 << v)] += 1;
        }
        for bit in 0..n {
            for mask in 0..full {
                if mask >> bit & 1 == 1 {
                    count[mask] += count[mask ^ (1 << bit)];
                }
            }
        }
        let adjacency: Vec<usize> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
            .collect();
        let connected = (0..full)
            .map(|mask| {
                if mask == 0 {
                    return false;
                }
                let mut reached = mask & mask.wrapping_neg();
                loop {
                    let mut grown = reached;
                    let mut rest = reached;
                    while rest != 0 {
                        let v = rest.trailing_zeros() as usize;
                        grown |= adjacency[v] & mask;
                        rest &= rest - 1;
                    }
                    if grown == reached {
                        return reached == mask;
                    }
                    reached = grown;
                }
            })
            .collect();
        SubsetTable {
            n,
            count,
            connected,
        }
    }

    /// Minimum over non-empty removals `U` of lost instances per vertex.
    fn compactness(&self, mask: usize) -> Rational {
        let mut best: Option<Rational> = None;
        let mut removed = mask;
        while removed != 0 {
            let lost = self.count[mask] - self.count[mask & !removed];
            let value = Rational::new(lost as i128, removed.count_ones() as i128);
            if best.is_none_or(|b| value < b) {
                best = Some(value);
            }
            removed = (removed - 1) & mask;
        }
        best.unwrap_or_else(Rational::zero)
    }

    fn density(&self, mask: usize) -> Rational {
        Rational::new(self.count[mask] as i128, mask.count_ones() as i128)
    }

    fn set(&self, mask: usize) -> VertexSet {
        (0..self.n).filter(|&v| mask >> v & 1 == 1).collect()
    }
}

/// Largest `rho` such that the connected graph `g` is `rho`-compact.
pub fn oracle_compactness(g: &Graph, h: usize) -> Result<Rational> {
    oracle_compactness_of(g, &enumerate_cliques(g, h)?)
}

pub fn oracle_compactness_of(g: &Graph, cs: &InstanceSet) -> Result<Rational> {
    check_size(g.n(), MAX_COMPACTNESS_VERTICES)?;
    if g.n() == 0 {
        return Err(Error::EmptyCandidate);
    }
    let table = SubsetTable::new(g, cs);
    let full = (1usize << g.n()) - 1;
    if !table.connected[full] {
        return Err(Error::DisconnectedCandidate);
    }
    Ok(table.compactness(full))
}

/// Compact number of every vertex: the best compactness over connected
/// subsets containing it.
pub fn oracle_compact_numbers(g: &Graph, h: usize) -> Result<Vec<Rational>> {
    oracle_compact_numbers_of(g, &enumerate_cliques(g, h)?)
}

pub fn oracle_compact_numbers_of(g: &Graph, cs: &InstanceSet) -> Result<Vec<Rational>> {
    check_size(g.n(), MAX_ENUMERATION_VERTICES)?;
    let table = SubsetTable::new(g, cs);
    let mut phi = vec![Rational::zero(); g.n()];
    for mask in 1..1usize << g.n() {
        if !table.connected[mask] {
            continue;
        }
        let c = table.compactness(mask);
        for v in table.set(mask).iter() {
            if c > phi[v] {
                phi[v] = c;
            }
        }
    }
    Ok(phi)
}

/// Every locally densest subgraph with positive density, densest first, ties
/// by smallest vertex id.
pub fn oracle_lhcds(g: &Graph, h: usize) -> Result<Vec<(VertexSet, Rational)>> {
    oracle_lhcds_of(g, &enumerate_cliques(g, h)?)
}

pub fn oracle_lhcds_of(g: &Graph, cs: &InstanceSet) -> Result<Vec<(VertexSet, Rational)>> {
    let n = g.n();
    check_size(n, MAX_ENUMERATION_VERTICES)?;
    let table = SubsetTable::new(g, cs);
    let full = (1usize << n) - 1;
    let compactness: Vec<Option<Rational>> = (0..=full)
        .map(|mask| table.connected[mask].then(|| table.compactness(mask)))
        .collect();

    let mut found = Vec::new();
    for mask in 1..=full {
        let Some(c) = compactness[mask] else { continue };
        if table.count[mask] == 0 {
            continue;
        }
        let d = table.density(mask);
        if c < d {
            continue;
        }
        let outside = full & !mask;
        let mut extra = outside;
        let mut maximal = true;
        while extra != 0 {
            if compactness[mask | extra].is_some_and(|c2| c2 >= d) {
                maximal = false;
                break;
            }
            extra = (extra - 1) & outside;
        }
        if maximal {
            found.push((table.set(mask), d));
        }
    }

    let phi = oracle_compact_numbers_of(g, cs)?;
    for (s, d) in &found {
        assert!(
            s.iter().all(|v| phi[v] == *d),
            "compact numbers differ from density"
        );
    }
    found.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.first().cmp(&b.0.first())));
    Ok(found)
}
