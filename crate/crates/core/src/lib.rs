//! Hard-core model toolkit for bounded-degree `H`-free graphs.
//!
//! * [`graph`]: graphs, vertex subsets, the named families and expansion checks.
//! * [`pattern`]: induced-subgraph detection and the subdivided-claw lemma harnesses.
//! * [`exact`]: enumeration, partition functions, pinned distributions,
//!   transition matrices, mixing times and Hamming `W₁`.
//! * [`glauber`]: Glauber dynamics, the product chain and their monotone coupling.
//! * [`cluster`]: the red-blue cluster coupling and its BFS layering.
//! * [`torpid`]: stretched cubic bipartite expanders and their conductance certificate.
//!
//! Exact computations are generic over [`Scalar`]; the aliases below fix the
//! two modes used in practice.

pub mod cluster;
pub mod error;
pub mod exact;
pub mod glauber;
pub mod graph;
pub mod pattern;
pub mod scalar;
pub mod torpid;

pub use error::{Error, Result};
pub use exact::{Distribution, HardCoreModel, Limits, Pinning};
pub use graph::{Graph, SubdividedClawSpec, VertexSubset};
pub use scalar::Scalar;

/// Exact rational arithmetic.
pub type Rational = num_rational::BigRational;

pub type ExactModel = exact::HardCoreModel<Rational>;
pub type FloatModel = exact::HardCoreModel<f64>;
pub type ExactDistribution = exact::Distribution<Rational>;
pub type FloatDistribution = exact::Distribution<f64>;
