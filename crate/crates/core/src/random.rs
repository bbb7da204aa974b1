//! Seeded instance generators for tests, benchmarks and fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::gadgets::{ColouredEdge, MccInstance};
use crate::graph::{Graph, Vertex};
use crate::instance::Instance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` with thresholds uniform in `1..=max_threshold`.
pub fn random_instance(rng: &mut impl Rng, n: usize, p: f64, max_threshold: usize, k: usize) -> Instance {
    let g = gnp(rng, n, p);
    with_random_thresholds(rng, g, max_threshold, k)
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple by construction")
}

pub fn with_random_thresholds(rng: &mut impl Rng, g: Graph, max_threshold: usize, k: usize) -> Instance {
    let t = (0..g.num_vertices())
        .map(|_| rng.gen_range(1..=max_threshold.max(1)))
        .collect();
    Instance::new(g, crate::instance::Thresholds::new(t).expect("positive"), k).expect("sizes agree")
}

/// About `n * max_degree / 2 * fill` random edges, none pushing a degree
/// past `max_degree`.
pub fn bounded_degree_graph(rng: &mut impl Rng, n: usize, max_degree: usize, fill: f64) -> Graph {
    let mut degree = vec![0usize; n];
    let mut edges = std::collections::BTreeSet::new();
    if n >= 2 {
        let wanted = ((n * max_degree) as f64 / 2.0 * fill) as usize;
        for _ in 0..wanted * 4 {
            if edges.len() >= wanted {
                break;
            }
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v || degree[u] >= max_degree || degree[v] >= max_degree {
                continue;
            }
            if edges.insert((u.min(v), u.max(v))) {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple by construction")
}

pub fn grid_graph(width: usize, height: usize) -> Graph {
    let id = |x: usize, y: usize| -> Vertex { y * width + x };
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < height {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::from_edges(width * height, edges).expect("simple by construction")
}

/// Every possible edge between two classes is present with probability `p`.
pub fn random_mcc(rng: &mut impl Rng, k: usize, n: usize, p: f64) -> MccInstance {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for x in 0..n {
                for y in 0..n {
                    if rng.gen_bool(p) {
                        edges.push(ColouredEdge { i, x, j, y });
                    }
                }
            }
        }
    }
    MccInstance::new(k, n, edges).expect("valid by construction")
}

/// A random instance that has a clique: one is planted, the rest of the
/// edges appear with probability `p`.
pub fn planted_mcc(rng: &mut impl Rng, k: usize, n: usize, p: f64) -> (MccInstance, Vec<usize>) {
    let choice: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let base = random_mcc(rng, k, n, p);
    let mut edges = base.edges().to_vec();
    for i in 0..k {
        for j in i + 1..k {
            let e = ColouredEdge { i, x: choice[i], j, y: choice[j] };
            if !base.has_edge(i, e.x, j, e.y) {
                edges.push(e);
            }
        }
    }
    edges.shuffle(rng);
    (MccInstance::new(k, n, edges).expect("valid by construction"), choice)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_output() {
        let a = random_instance(&mut rng(7), 20, 0.2, 4, 3);
        let b = random_instance(&mut rng(7), 20, 0.2, 4, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_bound_holds() {
        let g = bounded_degree_graph(&mut rng(1), 200, 3, 1.0);
        assert!(g.max_degree() <= 3);
        assert!(g.num_edges() > 200);
    }

    #[test]
    fn grid_shape() {
        let g = grid_graph(4, 3);
        assert_eq!(g.num_vertices(), 12);
        assert_eq!(g.num_edges(), 3 * 3 + 4 * 2);
    }

    #[test]
    fn planted_clique_is_found() {
        let (m, choice) = planted_mcc(&mut rng(3), 3, 3, 0.2);
        assert!(m.is_clique(&choice));
    }
}
