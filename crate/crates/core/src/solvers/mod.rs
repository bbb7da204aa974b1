//! Exact solvers for maximum harmless sets.

mod brute;
mod ilp;
mod vc;

pub use brute::{brute_force_max, BruteForce, Optimum, DEFAULT_BRUTE_FORCE_CAP};
pub use ilp::{build_ilp, ilp_solve, IlpModel, IlpSolution, NeighbourhoodClass};
pub use vc::{greedy_vertex_cover, vc_solve, VcOptions, DEFAULT_COVER_CAP};
