//! Extremal hypergraphs with the (p,q)-property and the q-wise Kneser
//! hypergraphs whose independent sets they are.
//!
//! The crate decides the (p,q)-property, builds the split families that
//! attain the extremal counts, computes exact extremal numbers for small
//! parameters, and computes independence, chromatic and fractional
//! chromatic numbers of q-wise Kneser hypergraphs in exact arithmetic.

pub mod binom;
pub mod budget;
pub mod constructions;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod kneser;
pub mod matching;
mod lp;
pub mod pq;
pub mod rational;

pub use budget::{SearchBudget, SearchStats};
pub use error::{Error, Result};
pub use hypergraph::{enumerate_k_subsets, EdgeFamily, Hypergraph, VertexSet};
pub use pq::{find_violation, has_pq_property, is_bounded_degree_member, PQParams, Violation};
pub use rational::Rational;
