use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask, Vertex};
use crate::instance::Instance;
use crate::sparsity::greedy_order;

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 40;

/// Size of a maximum harmless set together with one such set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub size: usize,
    /// Sorted.
    pub witness: Vec<Vertex>,
}

/// Exact branch-and-bound over the vertices that may appear in a solution.
#[derive(Clone, Copy, Debug)]
pub struct BruteForce {
    /// Largest number of selectable vertices accepted.
    pub cap: usize,
    /// Stop as soon as a harmless set of this size is found.
    pub goal: Option<usize>,
}

impl Default for BruteForce {
    fn default() -> Self {
        Self {
            cap: DEFAULT_BRUTE_FORCE_CAP,
            goal: None,
        }
    }
}

pub fn brute_force_max(instance: &Instance) -> Result<Optimum> {
    BruteForce::default().solve(instance)
}

impl BruteForce {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap, goal: None }
    }

    pub fn solve(&self, instance: &Instance) -> Result<Optimum> {
        self.solve_within(instance, &instance.compute_core())
    }

    /// Maximum harmless set contained in `allowed`.
    pub fn solve_within(&self, instance: &Instance, allowed: &[Vertex]) -> Result<Optimum> {
        instance.graph().check_vertices(allowed)?;
        let in_core = mask(instance.num_vertices(), &instance.compute_core());
        let candidates: Vec<Vertex> = greedy_order(instance.graph(), allowed)
            .into_iter()
            .filter(|&v| in_core[v])
            .collect();
        if candidates.len() > self.cap {
            return Err(Error::ResourceLimit {
                what: "selectable vertices",
                actual: candidates.len(),
                cap: self.cap,
            });
        }
        let mut search = Search {
            inst: instance,
            cands: candidates,
            count: vec![0; instance.num_vertices()],
            chosen: Vec::new(),
            best: Vec::new(),
            goal: self.goal,
            group: vec![0; instance.num_vertices()],
            touched: Vec::new(),
        };
        search.run(0);
        let mut witness = search.best;
        witness.sort_unstable();
        debug_assert!(instance.violated_vertex(&witness).is_none());
        Ok(Optimum {
            size: witness.len(),
            witness,
        })
    }
}

struct Search<'a> {
    inst: &'a Instance,
    cands: Vec<Vertex>,
    /// Selected neighbours per vertex.
    count: Vec<usize>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
    goal: Option<usize>,
    group: Vec<usize>,
    touched: Vec<Vertex>,
}

impl Search<'_> {
    #[inline]
    fn residual(&self, w: Vertex) -> usize {
        // Never negative: every increment is checked beforehand.
        self.inst.threshold(w) - self.count[w] - 1
    }

    #[inline]
    fn addable(&self, c: Vertex) -> bool {
        self.inst
            .graph()
            .neighbors(c)
            .iter()
            .all(|&w| self.residual(w) >= 1)
    }

    fn done(&self) -> bool {
        self.goal.is_some_and(|g| self.best.len() >= g)
    }

    fn run(&mut self, i: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if i == self.cands.len() || self.done() {
            return;
        }
        if self.chosen.len() + self.upper_bound(i) <= self.best.len() {
            return;
        }
        let c = self.cands[i];
        if self.addable(c) {
            for &w in self.inst.graph().neighbors(c) {
                self.count[w] += 1;
            }
            self.chosen.push(c);
            self.run(i + 1);
            self.chosen.pop();
            for &w in self.inst.graph().neighbors(c) {
                self.count[w] -= 1;
            }
            if self.done() {
                return;
            }
        }
        self.run(i + 1);
    }

    /// Bound on how many of `cands[i..]` can still be added.
    ///
    /// Constraint vertices claim still-addable candidates among their
    /// neighbours, most restrictive first; a group claimed by `w` contributes
    /// at most `residual(w)`. Unclaimed candidates count once each.
    fn upper_bound(&mut self, i: usize) -> usize {
        let g = self.inst.graph();
        let live: Vec<Vertex> = self.cands[i..]
            .iter()
            .copied()
            .filter(|&c| self.addable(c))
            .collect();
        if self.chosen.len() + live.len() <= self.best.len() {
            return live.len();
        }
        // How many live candidates each constraint vertex sees.
        for &c in &live {
            for &w in g.neighbors(c) {
                if self.group[w] == 0 {
                    self.touched.push(w);
                }
                self.group[w] += 1;
            }
        }
        let mut constraints: Vec<(usize, Vertex)> = self
            .touched
            .iter()
            .filter_map(|&w| {
                let saving = self.group[w].saturating_sub(self.residual(w));
                (saving > 0).then_some((saving, w))
            })
            .collect();
        constraints.sort_unstable_by(|a, b| b.cmp(a));
        for &w in &self.touched {
            self.group[w] = 0;
        }
        self.touched.clear();

        let mut claimed = vec![false; live.len()];
        let mut sorted_live = live.clone();
        sorted_live.sort_unstable();
        let mut bound = 0;
        let mut unclaimed = live.len();
        for &(_, w) in &constraints {
            let mut size = 0;
            for &c in g.neighbors(w) {
                if let Ok(p) = sorted_live.binary_search(&c) {
                    if !claimed[p] {
                        claimed[p] = true;
                        size += 1;
                    }
                }
            }
            if size > 0 {
                bound += size.min(self.residual(w));
                unclaimed -= size;
            }
        }
        bound + unclaimed
    }
}
