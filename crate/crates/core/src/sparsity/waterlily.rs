use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask, Bfs, Graph, Vertex};

use super::domination::domination_scattered;
use super::projection::{projection_closure, ProfileKey, Projector};
use super::scatter::scatter_avoiding;
use super::{greedy_order, DEFAULT_CLOSURE_BOUND, DEFAULT_MAX_HUBS};

/// Roots `R` and centres `C` such that the centres are `radius`-scattered in
/// `G - R`, every pad `N^radius_{G-R}[c]` lies within distance `depth` of `R`
/// in `G`, and all centres share one `depth`-projection profile onto `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Waterlily {
    /// Sorted.
    pub roots: Vec<Vertex>,
    /// Sorted.
    pub centres: Vec<Vertex>,
    pub radius: usize,
    pub depth: usize,
}

impl Waterlily {
    /// Pad of a centre: its `radius`-ball in `G - R`.
    pub fn pad(&self, g: &Graph, centre: Vertex) -> Vec<Vertex> {
        let in_r = mask(g.num_vertices(), &self.roots);
        let mut pad: Vec<Vertex> = Bfs::new(g.num_vertices())
            .run(g, centre, self.radius, |w| !in_r[w], |_| true)
            .into_iter()
            .map(|(w, _)| w)
            .collect();
        pad.sort_unstable();
        pad
    }

    /// Re-checks all defining properties from scratch.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        g.check_vertices(&self.roots).map_err(|e| e.to_string())?;
        g.check_vertices(&self.centres).map_err(|e| e.to_string())?;
        if self.depth > self.radius {
            return Err(format!("depth {} exceeds radius {}", self.depth, self.radius));
        }
        let n = g.num_vertices();
        let in_r = mask(n, &self.roots);
        if let Some(&c) = self.centres.iter().find(|&&c| in_r[c]) {
            return Err(format!("centre {c} is also a root"));
        }
        let mut bfs = Bfs::new(n);

        // Scattered in G - R.
        let mut owner = vec![usize::MAX; n];
        for &c in &self.centres {
            for (w, _) in bfs.run(g, c, self.radius, |w| !in_r[w], |_| true) {
                if owner[w] != usize::MAX {
                    return Err(format!("pads of centres {} and {c} meet at {w}", owner[w]));
                }
                owner[w] = c;
            }
        }

        // Pads dominated by R.
        let near_r = within_distance(g, &self.roots, self.depth);
        if let Some(w) = g.vertices().find(|&w| owner[w] != usize::MAX && !near_r[w]) {
            return Err(format!("pad vertex {w} is farther than {} from the roots", self.depth));
        }

        // Uniform profile.
        let mut proj = Projector::with_mask(g, in_r, self.depth);
        let mut profiles = self.centres.iter().map(|&c| proj.key(c));
        if let Some(first) = profiles.next() {
            if profiles.any(|p| p != first) {
                return Err("centres have different projection profiles onto the roots".into());
            }
        }
        Ok(())
    }
}

/// Vertices within `radius` of some member of `sources`.
fn within_distance(g: &Graph, sources: &[Vertex], radius: usize) -> Vec<bool> {
    let mut near = vec![false; g.num_vertices()];
    let mut bfs = Bfs::new(g.num_vertices());
    for &s in sources {
        for (w, _) in bfs.run(g, s, radius, |_| true, |_| true) {
            near[w] = true;
        }
    }
    near
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaterlilyParams {
    /// Projection bound handed to the closure step.
    pub closure_bound: usize,
    /// Hub budget of the scattering step.
    pub max_hubs: usize,
    /// How many of the largest profile classes are tried as seeds.
    pub max_classes: usize,
}

impl Default for WaterlilyParams {
    fn default() -> Self {
        Self {
            closure_bound: DEFAULT_CLOSURE_BOUND,
            max_hubs: DEFAULT_MAX_HUBS,
            max_classes: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaterlilyStage {
    EmptyInput,
    Classes,
    Scatter,
    Verification,
    TooFewCentres,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaterlilyFailure {
    pub stage: WaterlilyStage,
    /// One line per attempted seed class.
    pub report: Vec<String>,
    /// Largest verified waterlily found, if any.
    pub best: Option<Waterlily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaterlilyOutcome {
    Built(Waterlily),
    Failed(WaterlilyFailure),
}

impl WaterlilyOutcome {
    pub fn built(self) -> Option<Waterlily> {
        match self {
            WaterlilyOutcome::Built(w) => Some(w),
            WaterlilyOutcome::Failed(_) => None,
        }
    }
}

/// Builds a uniform waterlily with centres in `candidates` and at least
/// `target` centres. Every returned structure has passed [`Waterlily::verify`].
pub fn build_waterlily(
    g: &Graph,
    candidates: &[Vertex],
    radius: usize,
    depth: usize,
    target: usize,
    params: &WaterlilyParams,
) -> Result<WaterlilyOutcome> {
    if target == 0 {
        return Err(Error::invalid("waterlily target must be at least 1"));
    }
    Ok(match best_waterlily(g, candidates, radius, depth, params)? {
        WaterlilyOutcome::Built(w) if w.centres.len() < target => {
            WaterlilyOutcome::Failed(WaterlilyFailure {
                stage: WaterlilyStage::TooFewCentres,
                report: vec![format!("best has {} centres, wanted {target}", w.centres.len())],
                best: Some(w),
            })
        }
        other => other,
    })
}

/// The waterlily with the most centres (ties: fewer roots) over the tried
/// seed classes.
///
/// Pipeline: `depth`-dominate the candidates, close the dominator under
/// `(radius + depth)`-projections, group the remaining candidates by their
/// profile onto the closure, and for each large group take its projection as
/// roots, scatter the group around extra hubs, keep the centres whose pads
/// are dominated, restrict to one profile class onto the roots and finally
/// greedily add any other candidate that fits.
pub fn best_waterlily(
    g: &Graph,
    candidates: &[Vertex],
    radius: usize,
    depth: usize,
    params: &WaterlilyParams,
) -> Result<WaterlilyOutcome> {
    if depth > radius {
        return Err(Error::invalid(format!("depth {depth} exceeds radius {radius}")));
    }
    g.check_vertices(candidates)?;
    let fail = |stage, report| {
        Ok(WaterlilyOutcome::Failed(WaterlilyFailure {
            stage,
            report,
            best: None,
        }))
    };
    if candidates.is_empty() {
        return fail(WaterlilyStage::EmptyInput, vec!["no candidates".into()]);
    }
    let n = g.num_vertices();
    let dominators = domination_scattered(g, candidates, depth)?.dominating;
    let closure = projection_closure(g, &dominators, radius + depth, params.closure_bound)?;
    let in_closure = mask(n, &closure);

    let mut classes: BTreeMap<ProfileKey, Vec<Vertex>> = BTreeMap::new();
    let mut proj = Projector::with_mask(g, in_closure.clone(), radius + depth);
    for a in greedy_order(g, candidates) {
        if !in_closure[a] {
            classes.entry(proj.key(a)).or_default().push(a);
        }
    }
    let mut classes: Vec<(ProfileKey, Vec<Vertex>)> = classes.into_iter().collect();
    classes.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.1[0].cmp(&b.1[0])));
    if classes.is_empty() {
        return fail(
            WaterlilyStage::Classes,
            vec![format!("all {} candidates absorbed by the closure", candidates.len())],
        );
    }

    let mut report = Vec::new();
    let mut best: Option<Waterlily> = None;
    for (profile, class) in classes.iter().take(params.max_classes.max(1)) {
        let seed_roots: Vec<Vertex> = profile.iter().map(|&(x, _)| x).collect();
        match lily_from_class(g, candidates, class, &seed_roots, radius, depth, params) {
            Ok(lily) => {
                report.push(format!(
                    "class of {}: {} roots, {} centres",
                    class.len(),
                    lily.roots.len(),
                    lily.centres.len()
                ));
                let better = best.as_ref().is_none_or(|b| {
                    (lily.centres.len(), std::cmp::Reverse(lily.roots.len()))
                        > (b.centres.len(), std::cmp::Reverse(b.roots.len()))
                });
                if better {
                    best = Some(lily);
                }
            }
            Err((stage, msg)) => report.push(format!("class of {}: {stage:?}: {msg}", class.len())),
        }
    }
    match best {
        Some(w) => Ok(WaterlilyOutcome::Built(w)),
        None => fail(WaterlilyStage::Scatter, report),
    }
}

fn lily_from_class(
    g: &Graph,
    candidates: &[Vertex],
    class: &[Vertex],
    seed_roots: &[Vertex],
    radius: usize,
    depth: usize,
    params: &WaterlilyParams,
) -> std::result::Result<Waterlily, (WaterlilyStage, String)> {
    let n = g.num_vertices();
    let seed_mask = mask(n, seed_roots);
    let scattered = match scatter_avoiding(g, &seed_mask, class, radius, class.len(), params.max_hubs) {
        Ok(s) => s,
        Err(f) => f.best,
    };
    let mut roots: Vec<Vertex> = seed_roots.iter().chain(&scattered.hubs).copied().collect();
    roots.sort_unstable();
    roots.dedup();
    let in_r = mask(n, &roots);
    let near_r = within_distance(g, &roots, depth);
    let mut bfs = Bfs::new(n);
    let pad_ok = |c: Vertex, bfs: &mut Bfs| {
        bfs.run(g, c, radius, |w| !in_r[w], |_| true)
            .iter()
            .all(|&(w, _)| near_r[w])
    };

    let mut proj = Projector::with_mask(g, in_r.clone(), depth);
    let mut by_profile: BTreeMap<ProfileKey, Vec<Vertex>> = BTreeMap::new();
    for &c in &scattered.scattered {
        if !in_r[c] && pad_ok(c, &mut bfs) {
            by_profile.entry(proj.key(c)).or_default().push(c);
        }
    }
    let (profile, mut centres) = by_profile
        .into_iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.1[0].cmp(&a.1[0])))
        .ok_or((WaterlilyStage::Scatter, "no centre has a dominated pad".to_string()))?;

    // Greedy augmentation over all candidates.
    let mut blocked = vec![false; n];
    let block = |c: Vertex, bfs: &mut Bfs, blocked: &mut Vec<bool>| {
        for (w, _) in bfs.run(g, c, 2 * radius, |w| !in_r[w], |_| true) {
            blocked[w] = true;
        }
    };
    for &c in &centres {
        block(c, &mut bfs, &mut blocked);
    }
    for a in greedy_order(g, candidates) {
        if in_r[a] || blocked[a] || proj.key(a) != profile || !pad_ok(a, &mut bfs) {
            continue;
        }
        centres.push(a);
        block(a, &mut bfs, &mut blocked);
    }
    centres.sort_unstable();

    let lily = Waterlily {
        roots,
        centres,
        radius,
        depth,
    };
    lily.verify(g).map_err(|e| (WaterlilyStage::Verification, e))?;
    Ok(lily)
}
