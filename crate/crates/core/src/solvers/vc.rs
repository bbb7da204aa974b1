use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::Instance;

use super::brute::Optimum;
use super::ilp::{build_ilp, ilp_solve};

pub const DEFAULT_COVER_CAP: usize = 22;

/// Both endpoints of a greedy maximal matching, scanning edges in
/// lexicographic order. At most twice the minimum cover. Sorted.
pub fn greedy_vertex_cover(g: &Graph) -> Vec<Vertex> {
    let mut matched = vec![false; g.num_vertices()];
    for (u, v) in g.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
        }
    }
    g.vertices().filter(|&v| matched[v]).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct VcOptions {
    /// Largest cover accepted; the running time is exponential in it.
    pub cover_cap: usize,
    /// Worker threads; `None` lets rayon decide.
    pub workers: Option<usize>,
}

impl Default for VcOptions {
    fn default() -> Self {
        Self {
            cover_cap: DEFAULT_COVER_CAP,
            workers: None,
        }
    }
}

/// Exact maximum harmless set by guessing the solution's intersection with
/// a vertex cover and solving one integer program per guess.
///
/// The result does not depend on the number of workers: among optimal
/// guesses the one with the smallest bitmask wins, and each class
/// contributes its lowest-numbered members.
pub fn vc_solve(instance: &Instance, options: VcOptions) -> Result<Optimum> {
    let cover = greedy_vertex_cover(instance.graph());
    let cap = options.cover_cap.min(63);
    if cover.len() > cap {
        return Err(Error::ResourceLimit {
            what: "vertex cover size",
            actual: cover.len(),
            cap,
        });
    }
    let evaluate = |bits: u64| -> Option<(usize, u64)> {
        let guess = subset(&cover, bits);
        let model = build_ilp(instance, &cover, &guess).ok()??;
        ilp_solve(&model).map(|sol| (sol.total, bits))
    };
    let pick = |a: (usize, u64), b: (usize, u64)| {
        if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
            b
        } else {
            a
        }
    };
    let run = || {
        (0..1u64 << cover.len())
            .into_par_iter()
            .filter_map(evaluate)
            .reduce(|| (0, 0), pick)
    };
    let (_, bits) = match options.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };

    let guess = subset(&cover, bits);
    let model = build_ilp(instance, &cover, &guess)?.expect("the chosen guess is harmless");
    let solution = ilp_solve(&model).expect("the chosen guess is feasible");
    let mut witness = guess;
    for (class, &x) in model.classes.iter().zip(&solution.counts) {
        witness.extend_from_slice(&class.members[..x]);
    }
    witness.sort_unstable();
    debug_assert!(instance.violated_vertex(&witness).is_none());
    Ok(Optimum {
        size: witness.len(),
        witness,
    })
}

fn subset(cover: &[Vertex], bits: u64) -> Vec<Vertex> {
    cover
        .iter()
        .enumerate()
        .filter(|&(i, _)| bits >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::brute_force_max;

    #[test]
    fn cover_covers() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = greedy_vertex_cover(&g);
        assert!(g.edges().all(|(u, v)| c.contains(&u) || c.contains(&v)));
        assert_eq!(c, vec![0, 1, 2, 3]);
    }

    #[test]
    fn agrees_with_brute_force_on_a_star() {
        let inst = Instance::from_parts(6, (1..6).map(|l| (0, l)), vec![3, 2, 2, 2, 2, 2], 0).unwrap();
        let vc = vc_solve(&inst, VcOptions::default()).unwrap();
        assert_eq!(vc.size, brute_force_max(&inst).unwrap().size);
        assert!(inst.is_harmless(&vc.witness).unwrap());
    }

    #[test]
    fn worker_count_does_not_change_the_answer() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)];
        let inst = Instance::from_parts(6, edges, vec![2, 3, 2, 2, 1, 2], 0).unwrap();
        let one = vc_solve(&inst, VcOptions { workers: Some(1), ..Default::default() }).unwrap();
        let four = vc_solve(&inst, VcOptions { workers: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn cover_cap_is_enforced() {
        let inst = Instance::from_parts(4, [(0, 1), (2, 3)], vec![2; 4], 0).unwrap();
        let err = vc_solve(&inst, VcOptions { cover_cap: 3, workers: None }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { actual: 4, cap: 3, .. }));
    }
}
