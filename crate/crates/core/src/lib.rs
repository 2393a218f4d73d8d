//! Truncation error bounds for Whittaker–Kotel'nikov–Shannon reconstruction
//! from jittered samples of multidimensional bandlimited signals.
//!
//! The crate is organised bottom-up:
//!
//! * [`sampling_set`]: the jittered lattice, windows and admissibility.
//! * [`kernel`]: the Lagrange-type interpolation kernel on a window.
//! * [`bounds`]: the constants `C₁ … C₄`, the truncation bound `K_δ` and its
//!   Plancherel–Pólya factor.
//! * [`signal`]: bandlimited test signals with exact type and `L^q` norms.
//! * [`reconstruct`]: truncated sums, measured errors and certificates.
//! * [`harness`]: configuration, experiment runners and report files.

// `!(x > 0.0)` is used on purpose: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod numeric;
pub mod reconstruct;
pub mod sampling_set;
pub mod signal;

pub use bounds::{k_bound, k_tilde, pp_constant_1d, pp_constant_multi, BoundBreakdown, BoundInputs};
pub use error::{Error, Result};
pub use kernel::{kernel, kernel_tensor, KernelEval};
pub use reconstruct::{measure_error, truncated_sum, ErrorReport, ReconstructionRequest};
pub use sampling_set::{build_nodes, JitterKind, JitterSpec, NodeSet};
pub use signal::{lq_norm, make_signal, Signal, SignalKind};
