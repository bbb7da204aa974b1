//! Harmless Set instances and the feasibility predicate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Per-vertex activation thresholds; every entry is at least one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Thresholds(Vec<usize>);

impl Thresholds {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(v) = values.iter().position(|&t| t == 0) {
            return Err(Error::invalid(format!("threshold of vertex {v} is zero")));
        }
        Ok(Self(values))
    }

    pub fn uniform(n: usize, t: usize) -> Result<Self> {
        Self::new(vec![t; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(1)
    }
}

impl std::ops::Index<Vertex> for Thresholds {
    type Output = usize;

    fn index(&self, v: Vertex) -> &usize {
        &self.0[v]
    }
}

impl TryFrom<Vec<usize>> for Thresholds {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Thresholds> for Vec<usize> {
    fn from(t: Thresholds) -> Self {
        t.0
    }
}

/// A graph, its thresholds and the target solution size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    graph: Graph,
    thresholds: Thresholds,
    k: usize,
}

impl Instance {
    pub fn new(graph: Graph, thresholds: Thresholds, k: usize) -> Result<Self> {
        if graph.num_vertices() != thresholds.len() {
            return Err(Error::invalid(format!(
                "{} thresholds for {} vertices",
                thresholds.len(),
                graph.num_vertices()
            )));
        }
        Ok(Self {
            graph,
            thresholds,
            k,
        })
    }

    /// Convenience constructor from raw parts.
    pub fn from_parts(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        thresholds: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        Self::new(Graph::from_edges(n, edges)?, Thresholds::new(thresholds)?, k)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn thresholds(&self) -> &Thresholds {
        &self.thresholds
    }

    #[inline]
    pub fn threshold(&self, v: Vertex) -> usize {
        self.thresholds[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    /// Largest threshold, i.e. the `p` of the p-bounded variant.
    pub fn max_threshold(&self) -> usize {
        self.thresholds.max()
    }

    #[inline]
    pub fn is_fragile(&self, v: Vertex) -> bool {
        self.thresholds[v] == 1
    }

    /// Whether every vertex (members of `set` included) has fewer than
    /// `t(v)` neighbours in `set`.
    pub fn is_harmless(&self, set: &[Vertex]) -> Result<bool> {
        self.graph.check_vertices(set)?;
        Ok(self.violated_vertex(set).is_none())
    }

    /// Some vertex whose threshold is reached by `set`, if any. Ids must be valid.
    pub fn violated_vertex(&self, set: &[Vertex]) -> Option<Vertex> {
        let mut count = vec![0usize; self.num_vertices()];
        for &s in dedup(set).iter() {
            for &w in self.graph.neighbors(s) {
                count[w] += 1;
                if count[w] >= self.thresholds[w] {
                    return Some(w);
                }
            }
        }
        None
    }

    /// `t(u) - |N(u) ∩ set| - 1`: how many more neighbours of `u` may still
    /// be selected. Negative once `u` is already violated.
    pub fn residual_budget(&self, set: &[Vertex], u: Vertex) -> Result<i64> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertices(set)?;
        let set = dedup(set);
        let hits = self
            .graph
            .neighbors(u)
            .iter()
            .filter(|w| set.binary_search(w).is_ok())
            .count();
        Ok(self.thresholds[u] as i64 - hits as i64 - 1)
    }

    /// Replaces every threshold above `k + 1` by `k + 1`. The answer for
    /// solution size `k` is unchanged.
    pub fn cap_thresholds(&self) -> Instance {
        let cap = self.k + 1;
        let values = self.thresholds.0.iter().map(|&t| t.min(cap)).collect();
        Instance {
            graph: self.graph.clone(),
            thresholds: Thresholds(values),
            k: self.k,
        }
    }

    /// Vertices without a fragile neighbour. Every harmless set lies inside.
    pub fn compute_core(&self) -> Vec<Vertex> {
        self.graph
            .vertices()
            .filter(|&u| self.graph.neighbors(u).iter().all(|&v| !self.is_fragile(v)))
            .collect()
    }

    /// The instance restricted to the vertices with `keep[v]`; also returns
    /// the old id of every new vertex.
    pub fn induced(&self, keep: &[bool]) -> (Instance, Vec<Vertex>) {
        let (graph, ids) = self.graph.induced(keep);
        let thresholds = Thresholds(ids.iter().map(|&v| self.thresholds[v]).collect());
        (
            Instance {
                graph,
                thresholds,
                k: self.k,
            },
            ids,
        )
    }
}

fn dedup(set: &[Vertex]) -> Vec<Vertex> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// An instance whose solutions are additionally required to lie inside the
/// solution core `core`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedInstance {
    instance: Instance,
    core: Vec<Vertex>,
}

impl AnnotatedInstance {
    pub fn new(instance: Instance, mut core: Vec<Vertex>) -> Result<Self> {
        instance.graph().check_vertices(&core)?;
        core.sort_unstable();
        core.dedup();
        Ok(Self { instance, core })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn graph(&self) -> &Graph {
        self.instance.graph()
    }

    /// Sorted core vertices.
    pub fn core(&self) -> &[Vertex] {
        &self.core
    }

    pub fn k(&self) -> usize {
        self.instance.k()
    }

    pub fn in_core(&self, v: Vertex) -> bool {
        self.core.binary_search(&v).is_ok()
    }

    pub fn core_mask(&self) -> Vec<bool> {
        crate::graph::mask(self.instance.num_vertices(), &self.core)
    }

    pub(crate) fn remove_from_core(&mut self, v: Vertex) -> bool {
        match self.core.binary_search(&v) {
            Ok(i) => {
                self.core.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    /// Deletes a vertex outside the core, renumbering the rest. Returns the
    /// old id of every remaining vertex.
    pub(crate) fn delete_vertex(&mut self, v: Vertex) -> Vec<Vertex> {
        debug_assert!(!self.in_core(v));
        let mut keep = vec![true; self.instance.num_vertices()];
        keep[v] = false;
        let (instance, ids) = self.instance.induced(&keep);
        self.core = self.core.iter().map(|&c| if c > v { c - 1 } else { c }).collect();
        self.instance = instance;
        ids
    }

    pub fn into_parts(self) -> (Instance, Vec<Vertex>) {
        (self.instance, self.core)
    }
}

/// A vertex set, optionally certified harmless for a specific instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub vertices: Vec<Vertex>,
    pub verified: bool,
}

impl SolutionSet {
    pub fn unverified(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self {
            vertices,
            verified: false,
        }
    }

    /// Checks harmlessness against `instance` and records the result.
    pub fn verify(mut self, instance: &Instance) -> Result<Self> {
        self.verified = instance.is_harmless(&self.vertices)?;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(t: usize) -> Instance {
        Instance::from_parts(3, [(0, 1), (1, 2), (0, 2)], vec![t; 3], 1).unwrap()
    }

    fn star(leaves: usize, centre_t: usize, leaf_t: usize) -> Instance {
        let mut t = vec![leaf_t; leaves + 1];
        t[0] = centre_t;
        Instance::from_parts(leaves + 1, (1..=leaves).map(|l| (0, l)), t, 1).unwrap()
    }

    #[test]
    fn harmless_examples() {
        let tri = triangle(2);
        assert!(tri.is_harmless(&[0]).unwrap());
        assert!(!tri.is_harmless(&[0, 1]).unwrap());
        let s = star(3, 3, 2);
        assert!(!s.is_harmless(&[1, 2, 3]).unwrap());
        assert!(s.is_harmless(&[1, 2]).unwrap());
    }

    #[test]
    fn empty_set_is_harmless() {
        assert!(triangle(1).is_harmless(&[]).unwrap());
    }

    #[test]
    fn out_of_range_member_is_rejected() {
        assert!(matches!(triangle(2).is_harmless(&[3]), Err(Error::InvalidArgument(_))));
        assert!(triangle(2).residual_budget(&[], 7).is_err());
    }

    #[test]
    fn residual_budget_examples() {
        // u = 0 with five neighbours, t(u) = 5, two of them selected.
        let inst = star(5, 5, 2);
        assert_eq!(inst.residual_budget(&[1, 2], 0).unwrap(), 2);
        assert_eq!(star(2, 1, 1).residual_budget(&[], 0).unwrap(), 0);
        assert_eq!(star(3, 3, 2).residual_budget(&[1, 2, 3], 0).unwrap(), -1);
    }

    #[test]
    fn cap_examples() {
        let inst = Instance::from_parts(2, [(0, 1)], vec![100, 2], 3).unwrap();
        let capped = inst.cap_thresholds();
        assert_eq!(capped.thresholds().as_slice(), &[4, 2]);
        assert_eq!(capped.k(), 3);
    }

    #[test]
    fn core_examples() {
        assert_eq!(star(3, 1, 2).compute_core(), vec![0]);
        assert_eq!(triangle(2).compute_core(), vec![0, 1, 2]);
        let edge = Instance::from_parts(2, [(0, 1)], vec![1, 1], 1).unwrap();
        assert!(edge.compute_core().is_empty());
    }

    #[test]
    fn zero_threshold_rejected() {
        assert!(Thresholds::new(vec![1, 0]).is_err());
        assert!(Instance::from_parts(2, [], vec![1], 0).is_err());
    }

    #[test]
    fn empty_instance_is_valid() {
        let inst = Instance::from_parts(0, [], vec![], 0).unwrap();
        assert!(inst.is_harmless(&[]).unwrap());
        assert!(inst.compute_core().is_empty());
    }

    #[test]
    fn solution_set_verification() {
        let tri = triangle(2);
        assert!(SolutionSet::unverified(vec![1]).verify(&tri).unwrap().verified);
        assert!(!SolutionSet::unverified(vec![1, 0]).verify(&tri).unwrap().verified);
    }
}
