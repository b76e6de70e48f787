//! Measures of graph quasirandomness and a randomized edge-flip construction.
//!
//! The crate revolves around a handful of statistics of a graph `G` relative
//! to the Erdős–Rényi model `G(n,p)`:
//!
//! * exact induced-subgraph counts `N(F, G)` for small `F` (up to 5 vertices),
//!   their expectations under `G(n,p)`, and the deviation `u_k(G, p)` —
//!   the largest gap over all `k`-vertex classes;
//! * signed subgraph sums `S(F, G)` and the per-pair flip deltas `S_ij(F, G)`,
//!   together with the exact linear decomposition that expresses every
//!   `N(F, G)` through the signed sums;
//! * Schatten-style norms of the shifted adjacency matrix `A - pJ`, including
//!   the complete-bipartite variants;
//! * a seeded local-search construction that edits a random graph pair by
//!   pair until its low-order signed sums are as small as the integrality of
//!   `p * C(n,2)` permits;
//! * exhaustive brute-force oracles over tiny graphs that pin every identity
//!   and minimum down exactly.
//!
//! Statistics run on two interchangeable numeric backends: `f64`, and exact
//! big rationals for identity test suites at small `n`.

pub mod catalog;
pub mod census;
pub mod error;
pub mod flip;
pub mod formats;
pub mod graph;
pub mod matching;
pub mod numeric;
pub mod oracle;
pub mod schatten;
pub mod signed;

pub use error::Error;
pub use graph::{Graph, Seed};
pub use numeric::EdgeProbability;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
