//! Simple undirected graphs over dense vertex ids, plus the bounded
//! breadth-first searches everything else is built from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n`. Adjacency lists are kept
/// sorted so membership tests are a binary search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    num_edges: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        Graph::from_edges(repr.n, repr.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.num_vertices(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            num_edges: 0,
        }
    }

    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut num_edges = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            num_edges += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(Self { adj, num_edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "vertex {v} out of range for {} vertices",
                self.num_vertices()
            )))
        }
    }

    pub fn check_vertices(&self, set: &[Vertex]) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Subgraph induced by the vertices with `keep[v]`, renumbered densely
    /// in increasing order. Also returns the old id of every new vertex.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        let old_ids: Vec<Vertex> = self.vertices().filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = Vec::with_capacity(old_ids.len());
        let mut num_edges = 0;
        for &v in &old_ids {
            let list: Vec<Vertex> = self.adj[v]
                .iter()
                .filter(|&&w| keep[w])
                .map(|&w| new_id[w])
                .collect();
            num_edges += list.len();
            adj.push(list);
        }
        (
            Graph {
                adj,
                num_edges: num_edges / 2,
            },
            old_ids,
        )
    }

    /// The graph with the given vertices deleted (renumbered as in [`Graph::induced`]).
    pub fn without(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = vec![true; self.num_vertices()];
        for &v in removed {
            keep[v] = false;
        }
        self.induced(&keep)
    }

    /// Distances from `source` up to `radius` in the whole graph.
    pub fn ball(&self, source: Vertex, radius: usize) -> Vec<(Vertex, usize)> {
        Bfs::new(self.num_vertices()).run(self, source, radius, |_| true, |_| true)
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.num_vertices()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Membership mask of `set` over `n` vertices.
pub fn mask(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// Reusable bounded BFS. Keeps its distance array between runs and only
/// resets the entries it touched, so repeated small searches on a large
/// graph stay proportional to the ball size.
#[derive(Clone, Debug)]
pub struct Bfs {
    dist: Vec<usize>,
    touched: Vec<Vertex>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![usize::MAX; n],
            touched: Vec::new(),
        }
    }

    /// Vertices at distance at most `radius` from `source`, in BFS order.
    ///
    /// A vertex is only reached if `enter(v)` holds, and its neighbours are
    /// only explored if `expand(v)` holds. The source is always entered and
    /// expanded.
    pub fn run(
        &mut self,
        g: &Graph,
        source: Vertex,
        radius: usize,
        enter: impl Fn(Vertex) -> bool,
        expand: impl Fn(Vertex) -> bool,
    ) -> Vec<(Vertex, usize)> {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
        }
        self.touched.clear();

        let mut order = vec![(source, 0)];
        self.dist[source] = 0;
        self.touched.push(source);
        let mut i = 0;
        while i < order.len() {
            let (v, d) = order[i];
            i += 1;
            if d == radius || (v != source && !expand(v)) {
                continue;
            }
            for &w in g.neighbors(v) {
                if self.dist[w] == usize::MAX && enter(w) {
                    self.dist[w] = d + 1;
                    self.touched.push(w);
                    order.push((w, d + 1));
                }
            }
        }
        order
    }
}

/// Length of a shortest path from `u` to `v` whose internal vertices avoid
/// `avoid`, or `None` if every such path is longer than `radius`.
pub fn x_avoiding_distance(
    g: &Graph,
    avoid: &[Vertex],
    u: Vertex,
    v: Vertex,
    radius: usize,
) -> Result<Option<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_vertices(avoid)?;
    if avoid.contains(&u) {
        return Err(Error::invalid(format!("source {u} lies in the avoided set")));
    }
    if u == v {
        return Ok(Some(0));
    }
    let in_x = mask(g.num_vertices(), avoid);
    let ball = Bfs::new(g.num_vertices()).run(g, u, radius, |_| true, |w| !in_x[w]);
    Ok(ball.into_iter().find(|&(w, _)| w == v).map(|(_, d)| d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::from_edges(4, [(3, 1), (0, 2), (2, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2), (1, 3)]);
        assert_eq!(g.num_edges(), 3);
        assert!(g.has_edge(1, 3) && !g.has_edge(0, 1));
    }

    #[test]
    fn induced_renumbers() {
        let g = path(5);
        let (h, ids) = g.without(&[2]);
        assert_eq!(ids, vec![0, 1, 3, 4]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn avoiding_distance_on_path() {
        // a-b-c-d, X = {a, d}
        let g = path(4);
        assert_eq!(x_avoiding_distance(&g, &[0, 3], 1, 3, 2).unwrap(), Some(2));
        assert_eq!(x_avoiding_distance(&g, &[0, 3], 1, 3, 1).unwrap(), None);
        assert_eq!(x_avoiding_distance(&g, &[0, 3], 1, 0, 1).unwrap(), Some(1));
    }

    #[test]
    fn avoiding_distance_blocks_internal_members() {
        // 0-1-2 with X = {1}: 2 is unreachable from 0 without passing 1.
        let g = path(3);
        assert_eq!(x_avoiding_distance(&g, &[1], 0, 2, 5).unwrap(), None);
        assert_eq!(x_avoiding_distance(&g, &[1], 0, 1, 5).unwrap(), Some(1));
    }

    #[test]
    fn adjacent_vertices_ignore_x() {
        let g = path(2);
        assert_eq!(x_avoiding_distance(&g, &[1], 0, 1, 1).unwrap(), Some(1));
    }

    #[test]
    fn source_in_x_is_rejected() {
        let g = path(3);
        assert!(matches!(
            x_avoiding_distance(&g, &[0], 0, 2, 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn components_of_forest() {
        let g = Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
