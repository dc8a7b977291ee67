//! Exact computations on decorated tropical curves: torsion of tropical
//! jacobians, saturated monoid extensions for root stacks, and the
//! piecewise-polynomial spin double ramification formula.

pub mod divpl;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod monoid;
pub mod pixton;
pub mod poly;
pub mod tropjac;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Cycle, DecoratedGraph, MonoidElement, Q};
