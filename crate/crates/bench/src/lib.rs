//! Fixed inputs shared by the benchmarks.

use harmless_core::random::{bounded_degree_graph, rng, with_random_thresholds};
use harmless_core::Instance;

/// Sparse instance of maximum degree three with thresholds in `1..=p`.
pub fn sparse_instance(n: usize, p: usize, k: usize, seed: u64) -> Instance {
    let mut r = rng(seed);
    let g = bounded_degree_graph(&mut r, n, 3, 0.8);
    with_random_thresholds(&mut r, g, p, k)
}
