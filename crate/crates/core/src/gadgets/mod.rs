//! Hardness gadgets: Multicoloured Clique reduced to Harmless Set on graphs
//! with a small modulator to a 2-spider forest.

mod mcc;
mod reduction;
mod spider;
mod verify;

pub use mcc::{load_mcc, save_mcc, ColouredEdge, MccInstance};
pub use reduction::{
    build_reduction, construct_clique_solution, modulator_set, reduction_target_size, Layout,
    PairLayout, ReductionOutput, VertexRole,
};
pub use spider::is_2_spider_forest;
pub use verify::{verify_reduction, ReductionCheck};
