//! The propose, prune and verify driver.

use std::time::{Duration, Instant};

use crate::bounds::{Bounds, Rational};
use crate::clique::{clique_core_numbers, enumerate_cliques, initialize_bounds, InstanceSet};
use crate::convex::WeightState;
use crate::error::{Error, Result};
use crate::flow::{denser_subset, is_densest};
use crate::graph::{Graph, VertexSet};
use crate::pattern::{enumerate_patterns, PatternId};
use crate::proposal::{derive_stable_groups, tentative_decomposition};
use crate::pruning::prune;
use crate::verify::{verify_basic_with_stats, verify_fast_with_stats, VerifyStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    Basic,
    #[default]
    Fast,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub h: usize,
    pub k: usize,
    pub iterations: usize,
    pub verify: VerifyMode,
    /// Report every locally densest subgraph instead of the top `k`.
    pub emit_all: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            h: 3,
            k: 5,
            iterations: 20,
            verify: VerifyMode::Fast,
            emit_all: false,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h < 2 {
            return Err(Error::InvalidConfig(format!(
                "h must be at least 2, got {}",
                self.h
            )));
        }
        if self.k < 1 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.iterations < 1 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultRecord {
    pub rank: usize,
    /// Internal vertex ids.
    pub vertices: VertexSet,
    /// External labels of `vertices`, in the same order.
    pub labels: Vec<u64>,
    pub count: u64,
    pub density: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub instances: usize,
    pub rounds: usize,
    pub candidates_popped: usize,
    pub densest_checks: usize,
    /// Candidates split directly because re-proposal could not refine them.
    pub splits: usize,
    pub verify_calls: usize,
    pub flow_calls: usize,
    pub verify_flow_nodes: usize,
    pub verify_time: Duration,
}

/// Hooks into the driver, for inspection in tests.
pub trait Observer {
    /// Global bounds after each proposal round.
    fn bounds(&mut self, _global: &Bounds) {}
    /// Vertices (global ids) removed by pruning in a round.
    fn pruned(&mut self, _vertices: &[usize]) {}
    /// A candidate taken off the stack, with the state it is judged against.
    fn popped(
        &mut self,
        _candidate: &VertexSet,
        _global: &Bounds,
        _emitted: &[bool],
        _densest: bool,
    ) {
    }
}

impl Observer for () {}

#[derive(Debug, Clone)]
struct Candidate {
    vertices: VertexSet,
    /// Largest compact number any member can have.
    ceiling: Rational,
    /// Proposed from a round on exactly this vertex set.
    stalled: bool,
}

struct Driver<'a, O: Observer> {
    g: &'a Graph,
    cs: &'a InstanceSet,
    cfg: &'a PipelineConfig,
    observer: &'a mut O,
    global: Bounds,
    emitted: Vec<bool>,
    stack: Vec<Candidate>,
    found: Vec<(VertexSet, u64, Rational)>,
    stats: RunStats,
}

impl<O: Observer> Driver<'_, O> {
    /// Proposes and prunes on `g[w]`, pushing the resulting candidates.
    fn round(&mut self, w: &VertexSet) -> Result<()> {
        self.stats.rounds += 1;
        let whole = w.len() == self.g.n();
        let sub = self.g.induced_subgraph(w)?;
        let sub_cs = self.cs.restrict(w);
        let mut working = self.global.restrict(w.as_slice());
        if !whole {
            let local = initialize_bounds(&clique_core_numbers(&sub_cs), sub_cs.arity());
            for v in 0..w.len() {
                working.tighten_upper(v, local.upper[v]);
                working.tighten_lower(v, local.lower[v]);
            }
        }

        let mut ws = WeightState::init(&sub_cs);
        ws.run_iterations(&sub_cs, self.cfg.iterations);
        let (partition, ws) = tentative_decomposition(&sub_cs, &ws);
        let (groups, tightened) = derive_stable_groups(&partition, &ws, &sub_cs, &working);
        for (i, &v) in sub.to_parent.iter().enumerate() {
            if whole {
                self.global.tighten_upper(v, tightened.upper[i]);
            }
            self.global.tighten_lower(v, tightened.lower[i]);
        }
        self.observer.bounds(&self.global);

        let outcome = prune(&sub.graph, &sub_cs, &groups, &tightened);
        let removed: Vec<usize> = outcome.removed.iter().map(|&v| sub.to_parent[v]).collect();
        self.observer.pruned(&removed);

        let mut proposed = Vec::new();
        for group in &outcome.candidates {
            let mut parts: Vec<Candidate> = sub
                .graph
                .components_within(&group.vertices)
                .into_iter()
                .filter(|c| sub_cs.count_in_set(c) > 0)
                .map(|c| {
                    let ceiling = c.iter().map(|v| tightened.upper[v]).max().unwrap();
                    let vertices = sub.parent_set(&c);
                    let stalled = vertices == *w;
                    Candidate {
                        vertices,
                        ceiling,
                        stalled,
                    }
                })
                .collect();
            parts.sort_by(|a, b| {
                b.ceiling
                    .cmp(&a.ceiling)
                    .then(a.vertices.first().cmp(&b.vertices.first()))
            });
            proposed.extend(parts);
        }
        self.stack.extend(proposed.into_iter().rev());
        Ok(())
    }

    /// Whether the `k` best subgraphs found so far beat everything left.
    fn settled(&self) -> bool {
        if self.cfg.emit_all || self.found.len() < self.cfg.k {
            return false;
        }
        let mut densities: Vec<Rational> = self.found.iter().map(|f| f.2).collect();
        densities.sort_by(|a, b| b.cmp(a));
        let kth = densities[self.cfg.k - 1];
        self.stack.iter().all(|c| c.ceiling < kth)
    }

    fn verify(&mut self, s: &VertexSet) -> Result<bool> {
        let start = Instant::now();
        let (ok, vs): (bool, VerifyStats) = match self.cfg.verify {
            VerifyMode::Basic => verify_basic_with_stats(self.g, self.cs, s)?,
            VerifyMode::Fast => {
                verify_fast_with_stats(self.g, self.cs, s, &self.global, &self.emitted)?
            }
        };
        self.stats.verify_time += start.elapsed();
        self.stats.verify_calls += 1;
        self.stats.flow_calls += vs.flow_calls;
        self.stats.verify_flow_nodes += vs.flow_nodes;
        Ok(ok)
    }

    fn run(&mut self) -> Result<()> {
        let mut work = Some(self.g.all_vertices());
        loop {
            if let Some(w) = work.take() {
                self.round(&w)?;
            }
            if self.settled() {
                return Ok(());
            }
            let Some(candidate) = self.stack.pop() else {
                return Ok(());
            };
            self.stats.candidates_popped += 1;
            let s = &candidate.vertices;
            let sub_cs = self.cs.restrict(s);
            let count = sub_cs.len() as u64;
            self.stats.densest_checks += 1;
            self.stats.flow_calls += 1;
            let densest = is_densest(&sub_cs)?;
            self.observer
                .popped(s, &self.global, &self.emitted, densest);
            if !densest {
                if candidate.stalled {
                    self.split(&candidate, &sub_cs)?;
                } else {
                    work = Some(s.clone());
                }
                continue;
            }
            if self.verify(s)? {
                let density = Rational::new(count as i128, s.len() as i128);
                for v in s.iter() {
                    self.emitted[v] = true;
                    self.global.upper[v] = density;
                    self.global.lower[v] = density;
                }
                self.found.push((s.clone(), count, density));
            }
        }
    }

    /// Splits a candidate that re-proposal cannot refine: the largest denser
    /// subset and the rest, each by connected component.
    fn split(&mut self, candidate: &Candidate, sub_cs: &InstanceSet) -> Result<()> {
        self.stats.flow_calls += 1;
        self.stats.splits += 1;
        let s = &candidate.vertices;
        let denser = denser_subset(sub_cs)?.map(s.as_slice());
        let rest = s.difference(&denser);
        let mut parts = Vec::new();
        for piece in [rest, denser] {
            let mut comps = self.g.components_within(&piece);
            comps.retain(|c| self.cs.count_in_set(c) > 0);
            comps.sort_by_key(|c| std::cmp::Reverse(c.first()));
            parts.extend(comps.into_iter().map(|vertices| Candidate {
                vertices,
                ceiling: candidate.ceiling,
                stalled: false,
            }));
        }
        self.stack.extend(parts);
        Ok(())
    }
}

fn records(
    g: &Graph,
    mut found: Vec<(VertexSet, u64, Rational)>,
    limit: Option<usize>,
) -> Vec<ResultRecord> {
    found.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.first().cmp(&b.0.first())));
    if let Some(k) = limit {
        found.truncate(k);
    }
    found
        .into_iter()
        .enumerate()
        .map(|(i, (vertices, count, density))| ResultRecord {
            rank: i + 1,
            labels: vertices.iter().map(|v| g.label(v)).collect(),
            vertices,
            count,
            density,
        })
        .collect()
}

/// Runs the driver on a prepared instance set.
pub fn run_instances<O: Observer>(
    g: &Graph,
    cs: &InstanceSet,
    cfg: &PipelineConfig,
    observer: &mut O,
) -> Result<(Vec<ResultRecord>, RunStats)> {
    cfg.validate()?;
    let mut driver = Driver {
        g,
        cs,
        cfg,
        observer,
        global: initialize_bounds(&clique_core_numbers(cs), cs.arity()),
        emitted: vec![false; g.n()],
        stack: Vec::new(),
        found: Vec::new(),
        stats: RunStats {
            instances: cs.len(),
            ..RunStats::default()
        },
    };
    if g.n() > 0 && !cs.is_empty() {
        driver.run()?;
    }
    let limit = (!cfg.emit_all).then_some(cfg.k);
    let found = std::mem::take(&mut driver.found);
    let stats = std::mem::take(&mut driver.stats);
    Ok((records(g, found, limit), stats))
}

/// Top-`k` locally densest subgraphs for `h`-cliques.
pub fn ippv(g: &Graph, cfg: &PipelineConfig) -> Result<Vec<ResultRecord>> {
    Ok(ippv_with_stats(g, cfg, &mut ())?.0)
}

pub fn ippv_with_stats<O: Observer>(
    g: &Graph,
    cfg: &PipelineConfig,
    observer: &mut O,
) -> Result<(Vec<ResultRecord>, RunStats)> {
    cfg.validate()?;
    let cs = enumerate_cliques(g, cfg.h)?;
    run_instances(g, &cs, cfg, observer)
}

/// Top-`k` locally densest subgraphs for a 4-vertex pattern; `cfg.h` is
/// ignored.
pub fn ippv_pattern(
    g: &Graph,
    pattern: PatternId,
    cfg: &PipelineConfig,
) -> Result<Vec<ResultRecord>> {
    Ok(ippv_pattern_with_stats(g, pattern, cfg, &mut ())?.0)
}

pub fn ippv_pattern_with_stats<O: Observer>(
    g: &Graph,
    pattern: PatternId,
    cfg: &PipelineConfig,
    observer: &mut O,
) -> Result<(Vec<ResultRecord>, RunStats)> {
    let ps = enumerate_patterns(g, pattern)?;
    let cfg = PipelineConfig {
        h: 4,
        ..cfg.clone()
    };
    run_instances(g, &ps.instances, &cfg, observer)
}
