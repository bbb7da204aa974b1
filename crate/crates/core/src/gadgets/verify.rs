use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Vertex;
use crate::solvers::BruteForce;

use super::mcc::MccInstance;
use super::reduction::{build_reduction, construct_clique_solution, modulator_set};
use super::spider::is_2_spider_forest;

/// Everything checked about one reduction, with both sides solved exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCheck {
    pub target: usize,
    pub vertices: usize,
    pub edges: usize,
    pub clique: Option<Vec<usize>>,
    /// Maximum harmless set size of the reduced instance.
    pub optimum: usize,
    pub witness: Vec<Vertex>,
    /// `clique.is_some() == (optimum >= target)`.
    pub equivalent: bool,
    /// The clique's encoded solution is harmless with exactly `target` vertices.
    pub encoded_ok: Option<bool>,
    pub witness_avoids_forbidden: bool,
    pub modulator_size: usize,
    pub modulator_ok: bool,
}

impl ReductionCheck {
    pub fn passed(&self) -> bool {
        self.equivalent
            && self.encoded_ok != Some(false)
            && self.witness_avoids_forbidden
            && self.modulator_ok
    }
}

/// Builds the reduction for `mcc`, decides both instances exhaustively and
/// compares. `cap` bounds the number of selectable vertices in the solver.
pub fn verify_reduction(mcc: &MccInstance, cap: usize) -> Result<ReductionCheck> {
    let out = build_reduction(mcc)?;
    let clique = mcc.find_clique();
    let optimum = BruteForce { cap, goal: None }.solve(&out.instance)?;
    let target = out.target();

    let encoded_ok = match &clique {
        Some(choice) => {
            let s = construct_clique_solution(&out, choice)?;
            Some(s.len() == target && out.instance.is_harmless(&s)?)
        }
        None => None,
    };
    let modulator = modulator_set(&out);
    let (rest, _) = out.instance.graph().without(&modulator);
    let k = mcc.k();
    Ok(ReductionCheck {
        target,
        vertices: out.instance.num_vertices(),
        edges: out.instance.graph().num_edges(),
        equivalent: clique.is_some() == (optimum.size >= target),
        clique,
        encoded_ok,
        witness_avoids_forbidden: optimum.witness.iter().all(|&v| !out.roles[v].is_forbidden()),
        modulator_size: modulator.len(),
        modulator_ok: modulator.len() == 5 * k * (k - 1) / 2 + 1 && is_2_spider_forest(&rest),
        optimum: optimum.size,
        witness: optimum.witness,
    })
}
