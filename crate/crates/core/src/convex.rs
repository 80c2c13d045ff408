//! Weight distribution state for the clique convex program and its
//! sequential Frank-Wolfe iteration.
//!
//! Each instance owns one unit of weight split over its members (`alpha`);
//! a vertex collects `r(u)`, the sum of the weight it receives. Minimising
//! `sum r(u)^2` over all splits makes `r` equal to the compact numbers.

use crate::clique::InstanceSet;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightState {
    arity: usize,
    /// Weight of member `j` of instance `i`, at `i * arity + j`.
    pub alpha: Vec<f64>,
    pub r: Vec<f64>,
    rounds: usize,
    /// Times each member slot was picked; after `t` rounds its weight is
    /// `(1/h + picks) / (t + 1)`.
    picks: Vec<u64>,
    /// `h * (t + 1) * r(u)`, kept exactly.
    load: Vec<u64>,
}

impl WeightState {
    /// Every instance splits its weight evenly: `alpha = 1/h`.
    pub fn init(cs: &InstanceSet) -> WeightState {
        let arity = cs.arity();
        let share = 1.0 / arity as f64;
        let alpha = vec![share; cs.len() * arity];
        let r = (0..cs.n()).map(|v| cs.degree(v) as f64 * share).collect();
        WeightState {
            arity,
            alpha,
            r,
            rounds: 0,
            picks: vec![0; cs.len() * arity],
            load: cs.degrees(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Rounds performed so far; the next round uses step `1 / (rounds + 2)`.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn weight(&self, instance: usize, position: usize) -> f64 {
        self.alpha[instance * self.arity + position]
    }

    /// Runs `rounds` more sequential rounds. Round `t` scales every weight by
    /// `1 - 1/(t+1)`, then visits instances in id order and gives `1/(t+1)`
    /// to the member with the smallest current `r` (smallest id on ties).
    /// Updates to `r` are visible to later instances in the same round.
    ///
    /// The rounds run on exact integer counters, continuing from the last
    /// call; `alpha` and `r` are refreshed from them at the end.
    pub fn run_iterations(&mut self, cs: &InstanceSet, rounds: usize) {
        debug_assert_eq!(cs.len() * self.arity, self.picks.len());
        if rounds == 0 {
            return;
        }
        // Scaling by `1 - 1/(t+1)` leaves the counters unchanged; a pick adds
        // `h` to the load.
        let h = self.arity as u64;
        for _ in 0..rounds {
            self.rounds += 1;
            for (i, tuple) in cs.iter().enumerate() {
                let mut best = 0;
                for j in 1..tuple.len() {
                    if self.load[tuple[j] as usize] < self.load[tuple[best] as usize] {
                        best = j;
                    }
                }
                self.picks[i * self.arity + best] += 1;
                self.load[tuple[best] as usize] += h;
            }
        }
        let scale = (self.rounds + 1) as f64;
        let share = 1.0 / self.arity as f64;
        for (a, &p) in self.alpha.iter_mut().zip(&self.picks) {
            *a = (share + p as f64) / scale;
        }
        let denom = h as f64 * scale;
        for (x, &l) in self.r.iter_mut().zip(&self.load) {
            *x = l as f64 / denom;
        }
    }

    /// `sum r(u)^2`.
    pub fn objective(&self) -> f64 {
        self.r.iter().map(|x| x * x).sum()
    }

    /// Recomputes every `r(u)` from the instance weights.
    pub fn recompute_r(&mut self, cs: &InstanceSet) {
        self.r.iter_mut().for_each(|x| *x = 0.0);
        for (i, tuple) in cs.iter().enumerate() {
            for (j, &v) in tuple.iter().enumerate() {
                self.r[v as usize] += self.alpha[i * self.arity + j];
            }
        }
    }
}
