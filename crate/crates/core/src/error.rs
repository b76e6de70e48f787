//! Error taxonomy shared by every module.
//!
//! The CLI maps these onto exit codes, so the split matters: argument-shaped
//! problems, violated preconditions, and run-time failures of the randomized
//! construction are distinct variants rather than strings.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A pair (i, j) that is not a valid vertex pair for the operation.
    #[error("invalid pair ({i}, {j}): {reason}")]
    InvalidPair { i: usize, j: usize, reason: String },

    /// Vertex index out of range.
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    /// Unsupported subgraph order (catalogs stop at 5 vertices).
    #[error("unsupported subgraph order k={k}; supported range is {min}..={max}")]
    UnsupportedOrder { k: usize, min: usize, max: usize },

    /// An operation that only accepts loopless graphs received loops.
    #[error("{op} does not support graphs with loops")]
    LoopsUnsupported { op: &'static str },

    /// graph6 cannot encode loops.
    #[error("graph6 cannot encode loops; use the loopgraph format")]
    LoopsInGraph6,

    /// Malformed input file.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    /// A brute-force path was asked to do more work than its cap allows.
    #[error("work cap exceeded for {op}: {required} > {cap}")]
    WorkCapExceeded {
        op: &'static str,
        required: u128,
        cap: u128,
    },

    /// p(1-p)*sqrt(n) is below the configured floor, outside the regime in
    /// which the flip construction is meaningful.
    #[error(
        "regime floor violated: p(1-p)*sqrt(n) = {value:.6} < {floor}; \
         the construction needs 1/(p(1-p)) small against sqrt(n)"
    )]
    RegimeFloor { value: f64, floor: f64 },

    /// A required pair class ran out of usable edges.
    #[error("flip reservoir shortfall in class {class}: {detail}")]
    ReservoirShortfall { class: String, detail: String },

    /// Phase 2 exhausted its swap budget before both triad statistics fit.
    #[error(
        "balancing did not converge within {steps} steps: |S(P2)| = {s_p2:.3}, \
         |S(K3)| = {s_k3:.3}, target {target:.3}"
    )]
    ConvergenceFailure {
        steps: usize,
        s_p2: f64,
        s_k3: f64,
        target: f64,
    },

    /// All sampling attempts (including the one relaxation pass) failed.
    #[error("no sample satisfied properties A-C after {attempts} attempts: {detail}")]
    RetriesExhausted { attempts: usize, detail: String },

    /// Invalid parameter value supplied by a caller.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI uses for this error.
    ///
    /// 2: argument errors, 3: precondition errors, 4: convergence/shortfall.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::Parse { .. } | Error::Io(_) => 2,
            Error::InvalidPair { .. }
            | Error::VertexOutOfRange { .. }
            | Error::UnsupportedOrder { .. }
            | Error::LoopsUnsupported { .. }
            | Error::LoopsInGraph6
            | Error::WorkCapExceeded { .. }
            | Error::RegimeFloor { .. } => 3,
            Error::ReservoirShortfall { .. }
            | Error::ConvergenceFailure { .. }
            | Error::RetriesExhausted { .. } => 4,
        }
    }
}
