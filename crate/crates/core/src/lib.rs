//! Exact Coxeter group computations for partitions of inversion sets:
//! weak order balls, bipartitions, partition-irreducibility, and the
//! permutation models of types A and B.

pub mod cache;
pub mod coxeter;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod partitions;
pub mod perm_a;
pub mod perm_b;
pub mod quadring;
pub mod rootset;
pub mod weak_order;

pub use cache::BallCache;
pub use coxeter::{CoxeterSystem, GroupElement, Root};
pub use enumeration::GenPoly;
pub use error::{Error, Result};
pub use graph::{parse_graph, CoxeterGraph, EdgeLabel};
pub use perm_a::Permutation;
pub use perm_b::SignedPermutation;
pub use quadring::{QuadError, QuadScalar, Sign};
pub use rootset::{RootId, RootRegistry, RootSet};
pub use weak_order::{Ball, ElementId, Interval};
