use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Bfs, Graph, Vertex};

use super::greedy_order;

/// An `r`-dominating set of a query set together with an `r`-scattered
/// subset of the query set inside it. The scattered part certifies a lower
/// bound on the `r`-domination number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationResult {
    pub radius: usize,
    /// Sorted.
    pub dominating: Vec<Vertex>,
    /// Sorted.
    pub scattered: Vec<Vertex>,
}

/// Greedy maximal subset of `candidates` whose members are pairwise more
/// than `2 * radius` apart in the graph minus `removed`, scanned in the given
/// order.
pub(crate) fn greedy_scattered(
    g: &Graph,
    candidates: &[Vertex],
    radius: usize,
    removed: &[bool],
) -> Vec<Vertex> {
    let mut blocked = vec![false; g.num_vertices()];
    let mut bfs = Bfs::new(g.num_vertices());
    let mut picked = Vec::new();
    for &x in candidates {
        if blocked[x] || removed[x] {
            continue;
        }
        picked.push(x);
        for (w, _) in bfs.run(g, x, 2 * radius, |w| !removed[w], |_| true) {
            blocked[w] = true;
        }
    }
    picked
}

/// Scattered set first (greedy maximal over `query` with pairwise distance
/// at least `2r + 1`), then extended to an `r`-dominating set of `query`.
///
/// Each extension step takes the first undominated query vertex `x` and adds
/// the vertex of `N^r[x]` that dominates the most still-undominated query
/// vertices.
pub fn domination_scattered(g: &Graph, query: &[Vertex], radius: usize) -> Result<DominationResult> {
    g.check_vertices(query)?;
    let n = g.num_vertices();
    let order = greedy_order(g, query);
    let nothing_removed = vec![false; n];
    let scattered = greedy_scattered(g, &order, radius, &nothing_removed);

    let mut in_query = vec![false; n];
    for &x in query {
        in_query[x] = true;
    }
    let mut dominated = vec![false; n];
    let mut bfs = Bfs::new(n);
    let mut dominating = scattered.clone();
    for &s in &scattered {
        for (w, _) in bfs.run(g, s, radius, |_| true, |_| true) {
            dominated[w] = true;
        }
    }
    let mut inner = Bfs::new(n);
    for &x in &order {
        if dominated[x] {
            continue;
        }
        let best = bfs
            .run(g, x, radius, |_| true, |_| true)
            .into_iter()
            .map(|(v, _)| {
                let gain = inner
                    .run(g, v, radius, |_| true, |_| true)
                    .into_iter()
                    .filter(|&(w, _)| in_query[w] && !dominated[w])
                    .count();
                (std::cmp::Reverse(gain), super::greedy_key(g, v), v)
            })
            .min()
            .map(|(_, _, v)| v)
            .expect("ball contains its centre");
        dominating.push(best);
        for (w, _) in bfs.run(g, best, radius, |_| true, |_| true) {
            dominated[w] = true;
        }
    }

    let mut scattered = scattered;
    scattered.sort_unstable();
    dominating.sort_unstable();
    dominating.dedup();
    Ok(DominationResult {
        radius,
        dominating,
        scattered,
    })
}
