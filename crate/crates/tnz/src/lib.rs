//! Exact tensor-network contraction and non-zero certification.
//!
//! Everything here computes over Gaussian rationals (complex numbers with
//! arbitrary-precision rational parts), so results are exact: a value is zero
//! precisely when the mathematics says it is, and "is this network non-zero?"
//! is a question with a definite answer rather than a tolerance.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`network`] defines sparse tensors, ordered slots, virtual edges, and
//!   validation; [`scalar`] supplies the exact arithmetic.
//! * [`contract`] eliminates edges, evaluates networks at basis or vector
//!   inputs, plans elimination orders, and provides an independent
//!   brute-force evaluator for cross-checking.
//! * [`reduce`] compiles other problems into networks: 2-CNF model counting,
//!   proper edge colorings, commuting local-projector ground spaces, a
//!   long-range-entangled matrix product state, and an additive scalar shift
//!   that preserves network shape.
//! * [`certify`] produces and checks evidence that a network is non-zero:
//!   positive witnesses for non-negative networks, injectivity certificates,
//!   basis-witness peeling, and model counting through thresholded non-zero
//!   queries.
//! * [`hamiltonian`] handles commuting local terms, projector guesses, and a
//!   basis-search decision procedure for stoquastic satisfiability.
//! * [`io`] reads and writes the textual formats used by the `tnz` binary.
//!
//! The runnable programs under `examples/` walk through each capability;
//! `cargo run --example <name>` is the quickest way to see the library work.

pub mod budget;
pub mod certify;
pub mod contract;
pub mod error;
pub mod hamiltonian;
pub mod io;
pub mod linalg;
pub mod network;
pub mod reduce;
pub mod scalar;

pub use budget::Budget;
pub use error::{Error, Result};
pub use network::{EdgeId, NodeId, SlotRef, TensorNetwork, TensorNode};
pub use scalar::Scalar;
