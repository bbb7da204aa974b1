use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{mask, Vertex};
use crate::instance::Instance;

/// Vertices outside a vertex cover that share the same neighbourhood, all of
/// which lies in the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighbourhoodClass {
    /// The common neighbourhood, sorted.
    pub roots: Vec<Vertex>,
    /// Sorted.
    pub members: Vec<Vertex>,
}

impl NeighbourhoodClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Integer program for one guess `S` of the solution's intersection with the
/// cover: choose `x_c <= |class c|` per class, maximise `sum x_c`, subject to
/// `sum_{c : u in roots(c)} x_c <= capacity(u)` for every cover vertex `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpModel {
    /// Sorted cover.
    pub cover: Vec<Vertex>,
    /// The guessed intersection with the cover, sorted.
    pub guess: Vec<Vertex>,
    pub classes: Vec<NeighbourhoodClass>,
    /// `t(u) - |N(u) ∩ S| - 1`, aligned with `cover`.
    pub capacity: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpSolution {
    /// `|S| + sum x_c`.
    pub total: usize,
    /// `x_c`, aligned with `classes`.
    pub counts: Vec<usize>,
}

/// Builds the program for `guess`, or `None` when `guess` itself is not
/// harmless.
pub fn build_ilp(instance: &Instance, cover: &[Vertex], guess: &[Vertex]) -> Result<Option<IlpModel>> {
    let g = instance.graph();
    g.check_vertices(cover)?;
    g.check_vertices(guess)?;
    let n = instance.num_vertices();
    let in_cover = mask(n, cover);
    if let Some(&v) = guess.iter().find(|&&v| !in_cover[v]) {
        return Err(crate::Error::invalid(format!("guessed vertex {v} is outside the cover")));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !in_cover[u] && !in_cover[v]) {
        return Err(crate::Error::invalid(format!("edge {u}-{v} is not covered")));
    }
    if !instance.is_harmless(guess)? {
        return Ok(None);
    }
    let in_guess = mask(n, guess);
    let hits = |u: Vertex| g.neighbors(u).iter().filter(|&&w| in_guess[w]).count() as i64;
    let residual = |u: Vertex| instance.threshold(u) as i64 - hits(u) - 1;

    let mut by_roots: BTreeMap<&[Vertex], Vec<Vertex>> = BTreeMap::new();
    for u in g.vertices().filter(|&u| !in_cover[u]) {
        // A vertex outside the cover only sees the guess, so its own
        // constraint is settled by it. Under a harmless guess this never
        // excludes anything; kept for the strict reading.
        if residual(u) >= 0 {
            by_roots.entry(g.neighbors(u)).or_default().push(u);
        }
    }
    let classes = by_roots
        .into_iter()
        .map(|(roots, members)| NeighbourhoodClass {
            roots: roots.to_vec(),
            members,
        })
        .collect();
    let mut cover = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();
    let capacity = cover.iter().map(|&u| residual(u)).collect();
    let mut guess = guess.to_vec();
    guess.sort_unstable();
    guess.dedup();
    Ok(Some(IlpModel {
        cover,
        guess,
        classes,
        capacity,
    }))
}

/// Exact optimum by branch and bound; `None` if some capacity is negative.
pub fn ilp_solve(model: &IlpModel) -> Option<IlpSolution> {
    if model.capacity.iter().any(|&c| c < 0) {
        return None;
    }
    let pos = |u: Vertex| model.cover.binary_search(&u).expect("roots lie in the cover");
    let rows: Vec<Vec<usize>> = model
        .classes
        .iter()
        .map(|c| c.roots.iter().map(|&u| pos(u)).collect())
        .collect();
    // Larger classes first; their choices dominate the objective.
    let mut order: Vec<usize> = (0..model.classes.len()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(model.classes[c].size()), c));

    let mut state = IlpSearch {
        model,
        rows: &rows,
        order: &order,
        cap: model.capacity.iter().map(|&c| c as usize).collect(),
        counts: vec![0; model.classes.len()],
        best: None,
    };
    state.run(0, 0);
    let (extra, counts) = state.best.expect("the all-zero assignment is feasible");
    Some(IlpSolution {
        total: model.guess.len() + extra,
        counts,
    })
}

struct IlpSearch<'a> {
    model: &'a IlpModel,
    rows: &'a [Vec<usize>],
    order: &'a [usize],
    cap: Vec<usize>,
    counts: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
}

impl IlpSearch<'_> {
    fn room(&self, class: usize) -> usize {
        let size = self.model.classes[class].size();
        self.rows[class].iter().map(|&u| self.cap[u]).fold(size, usize::min)
    }

    fn run(&mut self, depth: usize, value: usize) {
        let bound: usize = self.order[depth..].iter().map(|&c| self.room(c)).sum();
        if let Some((b, _)) = &self.best {
            if value + bound <= *b {
                return;
            }
        }
        if depth == self.order.len() || bound == 0 {
            self.best = Some((value, self.counts.clone()));
            return;
        }
        let c = self.order[depth];
        for x in (0..=self.room(c)).rev() {
            for &u in &self.rows[c] {
                self.cap[u] -= x;
            }
            self.counts[c] = x;
            self.run(depth + 1, value + x);
            for &u in &self.rows[c] {
                self.cap[u] += x;
            }
        }
        self.counts[c] = 0;
    }
}
