use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask, Bfs, Graph, Vertex};

use super::greedy_key;

/// Shortest `X`-avoiding distances from one vertex to every member of `X`,
/// truncated at the radius. `None` stands for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectionProfile {
    pub radius: usize,
    /// Sorted target set.
    pub targets: Vec<Vertex>,
    /// One entry per target, aligned with `targets`.
    pub distances: Vec<Option<usize>>,
}

impl ProjectionProfile {
    pub fn get(&self, x: Vertex) -> Option<usize> {
        self.targets
            .binary_search(&x)
            .ok()
            .and_then(|i| self.distances[i])
    }

    /// Targets at finite distance: the projection itself.
    pub fn support(&self) -> Vec<Vertex> {
        self.finite().map(|(x, _)| x).collect()
    }

    pub fn finite(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.targets
            .iter()
            .zip(&self.distances)
            .filter_map(|(&x, d)| d.map(|d| (x, d)))
    }
}

/// Finite part of a profile as `(target, distance)` pairs sorted by target.
/// Two vertices have equal profiles onto the same set iff these agree.
pub(crate) type ProfileKey = Vec<(Vertex, usize)>;

/// Computes projection keys for many sources against one fixed target set.
pub(crate) struct Projector<'g> {
    g: &'g Graph,
    in_x: Vec<bool>,
    radius: usize,
    bfs: Bfs,
}

impl<'g> Projector<'g> {
    pub(crate) fn new(g: &'g Graph, targets: &[Vertex], radius: usize) -> Self {
        Self::with_mask(g, mask(g.num_vertices(), targets), radius)
    }

    pub(crate) fn with_mask(g: &'g Graph, in_x: Vec<bool>, radius: usize) -> Self {
        Self {
            g,
            in_x,
            radius,
            bfs: Bfs::new(g.num_vertices()),
        }
    }

    pub(crate) fn in_targets(&self, v: Vertex) -> bool {
        self.in_x[v]
    }

    pub(crate) fn add_target(&mut self, v: Vertex) {
        self.in_x[v] = true;
    }

    /// Members of the target set are leaves of the search: paths may end in
    /// them but never pass through.
    pub(crate) fn key(&mut self, u: Vertex) -> ProfileKey {
        let in_x = &self.in_x;
        let mut key: ProfileKey = self
            .bfs
            .run(self.g, u, self.radius, |_| true, |w| !in_x[w])
            .into_iter()
            .filter(|&(w, _)| in_x[w])
            .collect();
        key.sort_unstable();
        key
    }
}

fn check_source(g: &Graph, targets: &[Vertex], u: Vertex) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertices(targets)?;
    if targets.contains(&u) {
        return Err(Error::invalid(format!("vertex {u} lies in the target set")));
    }
    Ok(())
}

/// Members of `targets` reachable from `u` by a target-avoiding path of
/// length at most `radius`, sorted.
pub fn r_projection(g: &Graph, targets: &[Vertex], u: Vertex, radius: usize) -> Result<Vec<Vertex>> {
    check_source(g, targets, u)?;
    Ok(Projector::new(g, targets, radius)
        .key(u)
        .into_iter()
        .map(|(x, _)| x)
        .collect())
}

pub fn projection_profile(
    g: &Graph,
    targets: &[Vertex],
    u: Vertex,
    radius: usize,
) -> Result<ProjectionProfile> {
    check_source(g, targets, u)?;
    let key = Projector::new(g, targets, radius).key(u);
    let mut sorted = targets.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let distances = sorted
        .iter()
        .map(|x| key.binary_search_by_key(x, |&(v, _)| v).ok().map(|i| key[i].1))
        .collect();
    Ok(ProjectionProfile {
        radius,
        targets: sorted,
        distances,
    })
}

/// Number of distinct profiles realised by vertices outside `targets`.
pub fn count_profiles(g: &Graph, targets: &[Vertex], radius: usize) -> usize {
    let mut proj = Projector::new(g, targets, radius);
    let mut seen: HashSet<ProfileKey> = HashSet::new();
    for u in g.vertices() {
        if !proj.in_targets(u) {
            seen.insert(proj.key(u));
        }
    }
    seen.len()
}

/// Grows `targets` until every outside vertex projects onto at most
/// `max_projection` members. Each round moves in the outside vertex with the
/// largest projection (ties: higher degree, then lower id).
pub fn projection_closure(
    g: &Graph,
    targets: &[Vertex],
    radius: usize,
    max_projection: usize,
) -> Result<Vec<Vertex>> {
    g.check_vertices(targets)?;
    if max_projection == 0 {
        return Err(Error::invalid("closure bound must be at least 1"));
    }
    let n = g.num_vertices();
    let mut proj = Projector::new(g, targets, radius);
    let mut size = vec![0usize; n];
    for u in g.vertices() {
        if !proj.in_targets(u) {
            size[u] = proj.key(u).len();
        }
    }
    let mut bfs = Bfs::new(n);
    loop {
        let pick = g
            .vertices()
            .filter(|&u| !proj.in_targets(u) && size[u] > max_projection)
            .min_by_key(|&u| (std::cmp::Reverse(size[u]), greedy_key(g, u)));
        let Some(z) = pick else { break };
        proj.add_target(z);
        size[z] = 0;
        // Only sources within `radius` of z can see it.
        for (u, _) in bfs.run(g, z, radius, |_| true, |_| true) {
            if !proj.in_targets(u) {
                size[u] = proj.key(u).len();
            }
        }
    }
    Ok(g.vertices().filter(|&u| proj.in_targets(u)).collect())
}
