use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Bfs, Graph, Vertex};

use super::domination::greedy_scattered;
use super::{greedy_key, greedy_order};

/// A set `scattered` that is `r`-scattered once `hubs` are deleted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scattered {
    /// In removal order.
    pub hubs: Vec<Vertex>,
    /// Sorted.
    pub scattered: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterFailure {
    /// Largest scattered set seen over all rounds.
    pub best: Scattered,
}

/// Finds at most `max_hubs` vertices `S` and a subset `B` of `candidates - S`
/// of size at least `target` that is `radius`-scattered in `G - S`.
///
/// Greedy scattering is retried after each hub removal; the hub is the
/// vertex lying inside the most shortest paths between candidate pairs that
/// are still too close.
pub fn uqw_scattered(
    g: &Graph,
    candidates: &[Vertex],
    radius: usize,
    target: usize,
    max_hubs: usize,
) -> Result<Scattered, ScatterFailure> {
    let removed = vec![false; g.num_vertices()];
    scatter_avoiding(g, &removed, candidates, radius, target, max_hubs)
}

/// As [`uqw_scattered`] but in the graph minus `removed`.
pub(crate) fn scatter_avoiding(
    g: &Graph,
    removed: &[bool],
    candidates: &[Vertex],
    radius: usize,
    target: usize,
    max_hubs: usize,
) -> Result<Scattered, ScatterFailure> {
    let mut removed = removed.to_vec();
    let order: Vec<Vertex> = greedy_order(g, candidates)
        .into_iter()
        .filter(|&v| !removed[v])
        .collect();
    let mut hubs = Vec::new();
    let mut best: Option<Scattered> = None;
    loop {
        let mut picked = greedy_scattered(g, &order, radius, &removed);
        picked.sort_unstable();
        if best.as_ref().is_none_or(|b| picked.len() > b.scattered.len()) {
            best = Some(Scattered {
                hubs: hubs.clone(),
                scattered: picked.clone(),
            });
        }
        if picked.len() >= target {
            return Ok(Scattered {
                hubs,
                scattered: picked,
            });
        }
        let fail = |best: Option<Scattered>| ScatterFailure {
            best: best.unwrap_or_default(),
        };
        if hubs.len() >= max_hubs || target > order.len() {
            return Err(fail(best));
        }
        let live: Vec<Vertex> = order.iter().copied().filter(|&v| !removed[v]).collect();
        let Some(hub) = busiest_hub(g, &removed, &live, radius) else {
            return Err(fail(best));
        };
        removed[hub] = true;
        hubs.push(hub);
    }
}

/// Vertex internal to the most shortest paths between pairs of `live`
/// vertices at distance at most `2 * radius` in `G - removed`.
fn busiest_hub(g: &Graph, removed: &[bool], live: &[Vertex], radius: usize) -> Option<Vertex> {
    let reach = 2 * radius;
    let mut bfs = Bfs::new(g.num_vertices());
    let balls: HashMap<Vertex, HashMap<Vertex, usize>> = live
        .iter()
        .map(|&a| {
            let ball = bfs.run(g, a, reach, |w| !removed[w], |_| true).into_iter().collect();
            (a, ball)
        })
        .collect();
    let mut load: HashMap<Vertex, usize> = HashMap::new();
    for &a in live {
        let ball_a = &balls[&a];
        for &b in live {
            if b <= a {
                continue;
            }
            let Some(&dist) = ball_a.get(&b) else { continue };
            let ball_b = &balls[&b];
            for (&w, &da) in ball_a {
                if da > 0 && da < dist && ball_b.get(&w) == Some(&(dist - da)) {
                    *load.entry(w).or_default() += 1;
                }
            }
        }
    }
    load.into_iter()
        .min_by_key(|&(w, c)| (std::cmp::Reverse(c), greedy_key(g, w)))
        .map(|(w, _)| w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_vertices_are_already_scattered() {
        let g = Graph::new(5);
        let res = uqw_scattered(&g, &[0, 2, 4], 3, 3, 0).unwrap();
        assert!(res.hubs.is_empty());
        assert_eq!(res.scattered, vec![0, 2, 4]);
    }

    #[test]
    fn star_hub_is_the_centre() {
        let g = Graph::from_edges(7, (1..7).map(|l| (0, l))).unwrap();
        let leaves: Vec<_> = (1..7).collect();
        let res = uqw_scattered(&g, &leaves, 2, 6, 1).unwrap();
        assert_eq!(res.hubs, vec![0]);
        assert_eq!(res.scattered, leaves);
    }

    #[test]
    fn too_large_target_fails() {
        let g = Graph::new(3);
        let err = uqw_scattered(&g, &[0, 1], 1, 3, 4).unwrap_err();
        assert_eq!(err.best.scattered, vec![0, 1]);
    }

    #[test]
    fn no_budget_returns_best() {
        let g = Graph::from_edges(4, (1..4).map(|l| (0, l))).unwrap();
        let err = uqw_scattered(&g, &[1, 2, 3], 1, 3, 0).unwrap_err();
        assert_eq!(err.best.scattered.len(), 1);
        assert!(err.best.hubs.is_empty());
    }
}
