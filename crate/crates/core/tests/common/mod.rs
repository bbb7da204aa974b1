//! Oracles that share no code with the library's algorithms.

#![allow(dead_code)]

use harmless_core::sparsity::Waterlily;
use harmless_core::{Graph, Instance, Vertex};

pub const INF: usize = usize::MAX;

/// All-pairs distances in `g` minus `removed` (rows of removed vertices stay
/// infinite).
pub fn floyd_warshall(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        if removed[u] {
            continue;
        }
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            if !removed[v] {
                d[u][v] = 1;
            }
        }
    }
    for m in 0..n {
        for u in 0..n {
            if d[u][m] == INF {
                continue;
            }
            for v in 0..n {
                if d[m][v] != INF && d[u][m] + d[m][v] < d[u][v] {
                    d[u][v] = d[u][m] + d[m][v];
                }
            }
        }
    }
    d
}

/// Shortest path from `u` to target `x` whose internal vertices avoid `targets`.
pub fn avoiding_distance(g: &Graph, targets: &[bool], u: Vertex, x: Vertex, inner: &[Vec<usize>]) -> usize {
    if u == x {
        return 0;
    }
    // Last step enters x from a non-target neighbour w (or from u itself).
    g.neighbors(x)
        .iter()
        .filter_map(|&w| {
            if w == u {
                Some(1)
            } else if targets[w] || inner[u][w] == INF {
                None
            } else {
                Some(inner[u][w] + 1)
            }
        })
        .min()
        .unwrap_or(INF)
}

pub fn is_harmless(inst: &Instance, set: &[Vertex]) -> bool {
    let g = inst.graph();
    g.vertices()
        .all(|v| g.neighbors(v).iter().filter(|w| set.contains(w)).count() < inst.threshold(v))
}

/// Every harmless set, by depth-first extension in id order. Harmlessness
/// is hereditary, so this visits each exactly once.
pub fn all_harmless_sets(inst: &Instance, within: Option<&[Vertex]>) -> Vec<Vec<Vertex>> {
    let n = inst.num_vertices();
    let allowed: Vec<Vertex> = match within {
        Some(w) => {
            let mut w = w.to_vec();
            w.sort_unstable();
            w
        }
        None => (0..n).collect(),
    };
    let mut out = Vec::new();
    let mut count = vec![0usize; n];
    let mut current = Vec::new();
    extend(inst, &allowed, 0, &mut count, &mut current, &mut out);
    out
}

fn extend(
    inst: &Instance,
    allowed: &[Vertex],
    from: usize,
    count: &mut Vec<usize>,
    current: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    out.push(current.clone());
    let g = inst.graph();
    for i in from..allowed.len() {
        let v = allowed[i];
        if g.neighbors(v).iter().all(|&w| count[w] + 1 < inst.threshold(w)) {
            for &w in g.neighbors(v) {
                count[w] += 1;
            }
            current.push(v);
            extend(inst, allowed, i + 1, count, current, out);
            current.pop();
            for &w in g.neighbors(v) {
                count[w] -= 1;
            }
        }
    }
}

/// Largest harmless set size by plain subset enumeration (`n <= 20`).
pub fn exhaustive_optimum(inst: &Instance, within: Option<&[Vertex]>) -> usize {
    let n = inst.num_vertices();
    assert!(n <= 20);
    let allowed: Vec<bool> = match within {
        Some(w) => (0..n).map(|v| w.contains(&v)).collect(),
        None => vec![true; n],
    };
    let mut best = 0;
    for bits in 0u32..1 << n {
        let size = bits.count_ones() as usize;
        if size <= best {
            continue;
        }
        let set: Vec<Vertex> = (0..n).filter(|&v| bits >> v & 1 == 1).collect();
        if set.iter().all(|&v| allowed[v]) && is_harmless(inst, &set) {
            best = size;
        }
    }
    best
}

/// Rechecks the four waterlily invariants from all-pairs distances.
pub fn check_waterlily(g: &Graph, lily: &Waterlily) -> Result<(), String> {
    let n = g.num_vertices();
    let (r, d) = (lily.radius, lily.depth);
    let mut in_roots = vec![false; n];
    for &x in &lily.roots {
        in_roots[x] = true;
    }
    if lily.centres.is_empty() {
        return Err("no centres".into());
    }
    if let Some(c) = lily.centres.iter().find(|&&c| in_roots[c]) {
        return Err(format!("centre {c} is a root"));
    }
    let full = floyd_warshall(g, &vec![false; n]);
    let cut = floyd_warshall(g, &in_roots);
    for (i, &a) in lily.centres.iter().enumerate() {
        for &b in &lily.centres[i + 1..] {
            if cut[a][b] != INF && cut[a][b] <= 2 * r {
                return Err(format!("centres {a} and {b} at distance {} in G - R", cut[a][b]));
            }
        }
    }
    for &c in &lily.centres {
        for w in 0..n {
            if cut[c][w] <= r {
                let near = lily.roots.iter().map(|&x| full[w][x]).min().unwrap_or(INF);
                if near > d {
                    return Err(format!("pad vertex {w} of {c} is {near} from the roots"));
                }
            }
        }
    }
    let profile = |c: Vertex| -> Vec<usize> {
        lily.roots
            .iter()
            .map(|&x| {
                let dist = avoiding_distance(g, &in_roots, c, x, &cut);
                if dist <= d {
                    dist
                } else {
                    INF
                }
            })
            .collect()
    };
    let first = profile(lily.centres[0]);
    if let Some(&c) = lily.centres.iter().find(|&&c| profile(c) != first) {
        return Err(format!("centre {c} has a different profile"));
    }
    Ok(())
}
