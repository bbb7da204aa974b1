//! Sparse-graph machinery: projections and their profiles, projection
//! closures, domination with scattered certificates, hub-assisted
//! scattering and waterlilies.
//!
//! All greedy choices scan vertices by descending degree, then ascending id.

mod domination;
mod projection;
mod scatter;
mod waterlily;

pub use domination::{domination_scattered, DominationResult};
pub use projection::{count_profiles, projection_closure, projection_profile, r_projection, ProjectionProfile};
pub use scatter::{uqw_scattered, ScatterFailure, Scattered};
pub use waterlily::{
    best_waterlily, build_waterlily, Waterlily, WaterlilyFailure, WaterlilyOutcome, WaterlilyParams,
    WaterlilyStage,
};

pub use crate::graph::x_avoiding_distance;

use crate::graph::{Graph, Vertex};

pub const DEFAULT_CLOSURE_BOUND: usize = 4;
pub const DEFAULT_MAX_HUBS: usize = 4;

/// Sort key realising the greedy order.
#[inline]
pub(crate) fn greedy_key(g: &Graph, v: Vertex) -> (std::cmp::Reverse<usize>, Vertex) {
    (std::cmp::Reverse(g.degree(v)), v)
}

/// `vertices` deduplicated and sorted into greedy order.
pub(crate) fn greedy_order(g: &Graph, vertices: &[Vertex]) -> Vec<Vertex> {
    let mut order = vertices.to_vec();
    order.sort_unstable();
    order.dedup();
    order.sort_by_key(|&v| greedy_key(g, v));
    order
}
