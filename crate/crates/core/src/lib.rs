//! Harmless Set: find `k` vertices such that every vertex `v` has fewer than
//! `t(v)` neighbours among them.
//!
//! The crate provides the instance model and IO, tools for sparse graphs
//! (distance domination, projections, scattered sets, waterlilies), a
//! kernel for the bounded-threshold variant, exact solvers and the gadgets
//! of a hardness reduction from Multicoloured Clique.

pub mod error;
pub mod gadgets;
pub mod graph;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod random;
pub mod solvers;
pub mod sparsity;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use instance::{AnnotatedInstance, Instance, SolutionSet, Thresholds};
pub use solvers::Optimum;
