//! Distance-preserving edge contractions.
//!
//! A set C of edges is a φ-contraction of a graph G when setting the length
//! of every edge in C to zero keeps each distance at least φ of its original
//! value. This crate checks such sets, computes optimal ones for paths,
//! cycles and trees, builds large ones for general graphs by clustering, and
//! generates the reduction instances used to cross-validate all of it.

pub mod feasibility;
pub mod graph;
pub mod greedy;
pub mod heuristics;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod tolerance;
pub mod tree_dp;

pub use feasibility::{
    check_additive_endpoint_restricted, check_bipartite_unit_11, check_contraction,
    check_girth6_weak_20, check_weak_contraction, CheckError, Checker, Verdict, Violation,
};
pub use graph::{
    apply_contraction, phi_value, shortest_distances, ContractionResult, EdgeSet, Graph,
};
pub use rational::{Ext, Rational};
pub use tolerance::{AffineTolerance, LogStretch, Tolerance};
