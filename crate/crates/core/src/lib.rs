//! Exact domination, fractional domination and independence numbers of
//! simple loopless digraphs, together with the constructive procedures
//! relating them and a harness that checks the inequalities.

pub mod constructions;
pub mod digraph;
pub mod exact;
pub mod generators;
pub mod harness;
pub mod io;
pub mod limits;
pub mod lp;
pub mod rational;
pub mod vertex_set;

pub use digraph::{Digraph, GraphError, WeightFn};
pub use generators::Seed;
pub use limits::{CapError, Limits};
pub use rational::Rational;
pub use vertex_set::VertexSet;
