//! Exact max-flow networks for extracting maximal compact subgraphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bounds::Rational;
use crate::clique::InstanceSet;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Instances that reach outside the working vertex set: only `members`
/// (local ids) lie inside; the remaining `arity - members.len()` members are
/// assumed present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundaryCliqueSet {
    pub entries: Vec<BoundaryInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryInstance {
    /// Id of the instance in the caller's full instance set.
    pub id: usize,
    pub members: Vec<usize>,
}

impl BoundaryCliqueSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: i128,
}

/// Node 0 is the source, node 1 the sink, nodes `2..2+n` the vertices, then
/// one node per interior instance and per boundary instance. Capacities are
/// integer numerators over `denominator`.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    vertices: usize,
    nodes: usize,
    denominator: i128,
    arcs: Vec<Arc>,
    tails: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl FlowNetwork {
    fn with_nodes(vertices: usize, nodes: usize, denominator: i128) -> Self {
        FlowNetwork {
            vertices,
            nodes,
            denominator,
            arcs: Vec::new(),
            tails: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i128) {
        self.adjacency[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.tails.push(from);
        self.adjacency[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
        self.tails.push(to);
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// Forward arcs only.
    pub fn arc_count(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    /// Capacity of the forward arc `from -> to`, summed over parallel arcs.
    pub fn capacity(&self, from: usize, to: usize) -> Rational {
        let total: i128 = self.adjacency[from]
            .iter()
            .filter(|&&a| a % 2 == 0 && self.arcs[a].to == to)
            .map(|&a| self.arcs[a].cap)
            .sum();
        Rational::new(total, self.denominator)
    }

    pub fn vertex_node(v: usize) -> usize {
        v + 2
    }

    /// One `from to numerator denominator` line per forward arc.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for a in (0..self.arcs.len()).step_by(2) {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                self.tails[a], self.arcs[a].to, self.arcs[a].cap, self.denominator
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub source_side: VertexSet,
    pub flow_value: Rational,
}

fn lcm_up_to(h: usize) -> i128 {
    (1..=h as i128).fold(1, |acc, x| acc.lcm(&x))
}

fn scaled(value: Rational, denominator: i128) -> Result<i128> {
    value
        .numer()
        .checked_mul(denominator / value.denom())
        .ok_or(Error::CapacityOverflow)
}

/// Network whose minimum cut separates the largest vertex set maximising
/// `instances inside - rho * size`. Boundary instances count as inside when
/// all of their local members are chosen.
pub fn build_network(
    cs: &InstanceSet,
    rho: Rational,
    p: &BoundaryCliqueSet,
) -> Result<FlowNetwork> {
    if rho.is_negative() {
        return Err(Error::NegativeThreshold(rho.to_string()));
    }
    let h = cs.arity();
    for (instance, entry) in p.entries.iter().enumerate() {
        let count = entry.members.len();
        if count == 0 || count >= h {
            return Err(Error::BoundaryCount {
                instance,
                count,
                max: h - 1,
            });
        }
    }
    let mut denominator = *rho.denom();
    if !p.is_empty() {
        denominator = denominator.lcm(&lcm_up_to(h));
    }

    let n = cs.n();
    let nodes = 2 + n + cs.len() + p.len();
    let mut net = FlowNetwork::with_nodes(n, nodes, denominator);
    let one = denominator;
    let spread = (h as i128 - 1)
        .checked_mul(denominator)
        .ok_or(Error::CapacityOverflow)?;
    let mut mass: Vec<i128> = (0..n)
        .map(|v| (cs.degree(v) as i128).checked_mul(denominator))
        .collect::<Option<_>>()
        .ok_or(Error::CapacityOverflow)?;

    for (i, tuple) in cs.iter().enumerate() {
        let node = 2 + n + i;
        for &v in tuple {
            let v = v as usize;
            net.add_arc(FlowNetwork::vertex_node(v), node, one);
            net.add_arc(node, FlowNetwork::vertex_node(v), spread);
        }
    }
    for (j, entry) in p.entries.iter().enumerate() {
        let node = 2 + n + cs.len() + j;
        let weight = denominator / entry.members.len() as i128 * h as i128;
        for &v in &entry.members {
            net.add_arc(FlowNetwork::vertex_node(v), node, weight);
            net.add_arc(node, FlowNetwork::vertex_node(v), spread);
            mass[v] = mass[v].checked_add(weight).ok_or(Error::CapacityOverflow)?;
        }
    }
    let sink_cap = scaled(rho * Rational::from_integer(h as i128), denominator)?;
    for (v, &m) in mass.iter().enumerate() {
        net.add_arc(SOURCE, FlowNetwork::vertex_node(v), m);
        net.add_arc(FlowNetwork::vertex_node(v), SINK, sink_cap);
    }
    Ok(net)
}

struct Dinic<'a> {
    net: &'a mut FlowNetwork,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Dinic<'_> {
    fn bfs(&mut self) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[SOURCE] = 0;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.net.adjacency[u] {
                let arc = self.net.arcs[a];
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[SINK] >= 0
    }

    /// One augmenting path in the level graph, found iteratively.
    fn augment(&mut self) -> i128 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = SOURCE;
        loop {
            if u == SINK {
                let pushed = path.iter().map(|&a| self.net.arcs[a].cap).min().unwrap();
                for &a in &path {
                    self.net.arcs[a].cap -= pushed;
                    self.net.arcs[a ^ 1].cap += pushed;
                }
                return pushed;
            }
            let mut advanced = false;
            while self.cursor[u] < self.net.adjacency[u].len() {
                let a = self.net.adjacency[u][self.cursor[u]];
                let arc = self.net.arcs[a];
                if arc.cap > 0 && self.level[arc.to] == self.level[u] + 1 {
                    path.push(a);
                    u = arc.to;
                    advanced = true;
                    break;
                }
                self.cursor[u] += 1;
            }
            if !advanced {
                if u == SOURCE {
                    return 0;
                }
                self.level[u] = -1;
                let a = path.pop().unwrap();
                u = self.net.tails[a];
                self.cursor[u] += 1;
            }
        }
    }
}

/// Maximum flow by blocking flows on level graphs. The source side holds
/// every vertex that cannot reach the sink in the residual network, which is
/// the largest minimum cut.
pub fn min_cut(net: &FlowNetwork) -> CutResult {
    let mut residual = net.clone();
    let nodes = residual.nodes;
    let mut dinic = Dinic {
        net: &mut residual,
        level: vec![-1; nodes],
        cursor: vec![0; nodes],
    };
    let mut total: i128 = 0;
    while dinic.bfs() {
        dinic.cursor.iter_mut().for_each(|c| *c = 0);
        loop {
            let pushed = dinic.augment();
            if pushed == 0 {
                break;
            }
            total += pushed;
        }
    }

    let mut reaches_sink = vec![false; nodes];
    reaches_sink[SINK] = true;
    let mut queue = VecDeque::from([SINK]);
    while let Some(w) = queue.pop_front() {
        for &a in &residual.adjacency[w] {
            let x = residual.arcs[a].to;
            if residual.arcs[a ^ 1].cap > 0 && !reaches_sink[x] {
                reaches_sink[x] = true;
                queue.push_back(x);
            }
        }
    }
    let source_side = (0..residual.vertices)
        .filter(|&v| !reaches_sink[FlowNetwork::vertex_node(v)])
        .collect();
    CutResult {
        source_side,
        flow_value: Rational::new(total, residual.denominator),
    }
}

/// Largest vertex set maximising `instances inside - rho * size`.
/// Below zero the objective grows with every vertex, so all are kept.
pub fn derive_compact(cs: &InstanceSet, rho: Rational, p: &BoundaryCliqueSet) -> Result<VertexSet> {
    if rho.is_negative() {
        return Ok((0..cs.n()).collect());
    }
    Ok(min_cut(&build_network(cs, rho, p)?).source_side)
}

/// The largest subset strictly denser than the whole vertex set of `cs`, or
/// the empty set when the whole set is already densest.
pub fn denser_subset(cs: &InstanceSet) -> Result<VertexSet> {
    let n = cs.n() as i128;
    if n == 0 {
        return Err(Error::EmptyCandidate);
    }
    let density = Rational::new(cs.len() as i128, n);
    let rho = density + Rational::new(1, 2 * n * n);
    derive_compact(cs, rho, &BoundaryCliqueSet::default())
}

/// Whether no subset of the vertex set of `cs` has larger density.
pub fn is_densest(cs: &InstanceSet) -> Result<bool> {
    Ok(denser_subset(cs)?.is_empty())
}

pub fn density(cs: &InstanceSet, s: &VertexSet) -> Rational {
    if s.is_empty() {
        return Rational::zero();
    }
    Rational::new(cs.count_in_set(s) as i128, s.len() as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ratio;
    use crate::clique::enumerate_cliques;
    use crate::graph::fixtures::*;
    use crate::graph::Graph;
    use proptest::prelude::*;

    /// Largest set maximising `count - rho * size`, by trying every subset.
    fn subset_argmax(cs: &InstanceSet, rho: Rational) -> VertexSet {
        let n = cs.n();
        let mut best = (Rational::zero(), 0u32, 0usize);
        for mask in 0usize..(1 << n) {
            let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            let size = mask.count_ones();
            let value = Rational::from_integer(cs.count_within(&inside) as i128)
                - rho * Rational::from_integer(size as i128);
            if value > best.0 || (value == best.0 && size > best.1) {
                best = (value, size, mask);
            }
        }
        (0..n).filter(|&v| best.2 >> v & 1 == 1).collect()
    }

    #[test]
    fn triangle_network_shape() {
        let cs = enumerate_cliques(&complete(3), 3).unwrap();
        let net = build_network(&cs, ratio(2, 9), &BoundaryCliqueSet::default()).unwrap();
        assert_eq!(net.node_count(), 2 + 3 + 1);
        for v in 0..3 {
            let node = FlowNetwork::vertex_node(v);
            assert_eq!(net.capacity(node, SINK), ratio(6, 9));
            assert_eq!(net.capacity(SOURCE, node), ratio(1, 1));
            assert_eq!(net.capacity(node, 5), ratio(1, 1));
            assert_eq!(net.capacity(5, node), ratio(2, 1));
        }
    }

    #[test]
    fn boundary_entry_weights() {
        // A single edge inside; one triangle reaches outside through vertex 0.
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cs = enumerate_cliques(&g, 3).unwrap();
        let p = BoundaryCliqueSet {
            entries: vec![BoundaryInstance {
                id: 7,
                members: vec![0],
            }],
        };
        let net = build_network(&cs, ratio(1, 2), &p).unwrap();
        let v0 = FlowNetwork::vertex_node(0);
        assert_eq!(net.capacity(v0, 4), ratio(3, 1));
        assert_eq!(net.capacity(4, v0), ratio(2, 1));
        assert_eq!(net.capacity(SOURCE, v0), ratio(3, 1));
        assert_eq!(net.denominator() % 6, 0);
    }

    #[test]
    fn boundary_count_is_checked() {
        let cs = enumerate_cliques(&complete(3), 3).unwrap();
        let p = BoundaryCliqueSet {
            entries: vec![BoundaryInstance {
                id: 0,
                members: vec![0, 1, 2],
            }],
        };
        assert!(matches!(
            build_network(&cs, ratio(1, 3), &p),
            Err(Error::BoundaryCount { count: 3, .. })
        ));
        assert!(build_network(&cs, ratio(-1, 3), &BoundaryCliqueSet::default()).is_err());
    }

    #[test]
    fn triangle_cuts() {
        let cs = enumerate_cliques(&complete(3), 3).unwrap();
        let empty = BoundaryCliqueSet::default();
        let kept = min_cut(&build_network(&cs, ratio(2, 9), &empty).unwrap());
        assert_eq!(kept.source_side, VertexSet::new(vec![0, 1, 2]));
        let gone = min_cut(&build_network(&cs, ratio(1, 2), &empty).unwrap());
        assert!(gone.source_side.is_empty());
        let shifted = derive_compact(&cs, ratio(1, 3) - ratio(1, 9), &empty).unwrap();
        assert_eq!(shifted.len(), 3);
    }

    #[test]
    fn zero_mass_network_is_empty() {
        let cs = enumerate_cliques(&path(4), 3).unwrap();
        let cut = min_cut(&build_network(&cs, ratio(1, 2), &BoundaryCliqueSet::default()).unwrap());
        assert!(cut.source_side.is_empty());
        assert_eq!(cut.flow_value, Rational::zero());
    }

    #[test]
    fn zero_rho_keeps_every_vertex_with_mass() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let cs = enumerate_cliques(&g, 3).unwrap();
        let cut = min_cut(&build_network(&cs, ratio(0, 1), &BoundaryCliqueSet::default()).unwrap());
        // Vertices without instances cost nothing at zero, so all are kept.
        assert_eq!(cut.source_side, g.all_vertices());
    }

    #[test]
    fn bridge_graph_keeps_both_k4s() {
        let cs = enumerate_cliques(&two_k4_bridge(), 3).unwrap();
        let out = derive_compact(
            &cs,
            ratio(1, 1) - ratio(1, 64),
            &BoundaryCliqueSet::default(),
        )
        .unwrap();
        assert_eq!(out, subset_argmax(&cs, ratio(63, 64)));
        assert_eq!(out.len(), 8);
        let above = derive_compact(&cs, ratio(3, 2), &BoundaryCliqueSet::default()).unwrap();
        assert!(above.is_empty());
    }

    #[test]
    fn densest_examples() {
        let cs = enumerate_cliques(&complete(5), 4).unwrap();
        assert!(is_densest(&cs).unwrap());
        let pendant =
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
                .unwrap();
        let cs = enumerate_cliques(&pendant, 3).unwrap();
        assert!(!is_densest(&cs).unwrap());
        assert_eq!(
            denser_subset(&cs).unwrap(),
            VertexSet::new(vec![0, 1, 2, 3])
        );
        assert!(is_densest(&enumerate_cliques(&complete(3), 3).unwrap()).unwrap());
        let empty = enumerate_cliques(&Graph::from_edges(0, &[]).unwrap(), 3).unwrap();
        assert!(matches!(is_densest(&empty), Err(Error::EmptyCandidate)));
    }

    #[test]
    fn dump_lists_forward_arcs() {
        let cs = enumerate_cliques(&complete(3), 3).unwrap();
        let net = build_network(&cs, ratio(1, 3), &BoundaryCliqueSet::default()).unwrap();
        let dump = net.dump();
        assert_eq!(dump.lines().count(), net.arc_count());
        assert!(dump.lines().any(|l| l == "2 1 3 3"));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..28)
                .prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn cut_matches_subset_argmax(
            g in arb_graph(), h in 2usize..5, num in 0i128..40, den in 1i128..12
        ) {
            let cs = enumerate_cliques(&g, h).unwrap();
            let rho = ratio(num, den);
            let got = derive_compact(&cs, rho, &BoundaryCliqueSet::default()).unwrap();
            prop_assert_eq!(got, subset_argmax(&cs, rho));
        }

        #[test]
        fn doubling_capacities_doubles_flow(g in arb_graph(), h in 2usize..4, num in 0i128..20) {
            let cs = enumerate_cliques(&g, h).unwrap();
            let empty = BoundaryCliqueSet::default();
            let base = min_cut(&build_network(&cs, ratio(num, 7), &empty).unwrap());
            let mut doubled = build_network(&cs, ratio(num, 7), &empty).unwrap();
            doubled.arcs.iter_mut().for_each(|a| a.cap *= 2);
            let twice = min_cut(&doubled);
            prop_assert_eq!(twice.flow_value, base.flow_value * ratio(2, 1));
            prop_assert_eq!(twice.source_side, base.source_side);
        }
    }
}
