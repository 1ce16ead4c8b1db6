//! Large-deviation rate functions for the giant component of the
//! Erdős–Rényi graph `G(n, α/n)`.
//!
//! The crate is split along the lines of how the numbers are obtained:
//!
//! * [`rate`] holds the closed-form rate functions (entropy, `π₁`, `Ψ`, `Φ`,
//!   `Ξ`), the mean-field fixed point and the minimizer of `Φ`.
//! * [`saddle`] enumerates labeled trees, evaluates the truncated tree
//!   generating polynomial `F_r` and solves the saddle-point system whose
//!   value controls the probability that the graph is a forest.
//! * [`exact`] computes finite-`n` event probabilities exactly, either with
//!   rational arithmetic or in log-space floating point, plus brute-force
//!   enumerators used as oracles.
//! * [`sampler`] draws graphs by geometric skipping, analyses components with
//!   union-find and estimates event probabilities with exact binomial
//!   confidence intervals.
//! * [`verify`] runs the end-to-end acceptance checks shared by the CLI and
//!   the test suite.

pub mod combin;
pub mod error;
pub mod exact;
pub mod prob;
pub mod rate;
pub mod saddle;
pub mod sampler;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{EdgeProb, EventSpec, ExactProb};
pub use prob::LogProb;
pub use rate::{AlphaParam, Density, RatePoint};
pub use saddle::SaddleSolution;
pub use sampler::{ComponentCensus, Estimate};
