//! Exact combinatorics of parking functions on directed trees and stars:
//! a nondeterministic parking-process checker, a brute-force counting
//! oracle, closed-form counts and inequality checks, the flip involution on
//! preference sequences, and verification suites binding the formulas to the
//! oracle.

pub mod counting;
pub mod digraph;
pub mod flip;
pub mod formulas;
pub mod parking;
pub mod samples;
pub mod treegen;
pub mod verify;

pub use digraph::{build_star, build_tree, DiGraph, GraphError, Orientation, PathSeg, VertexId};
pub use parking::PrefSeq;
