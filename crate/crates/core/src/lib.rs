//! Certified local invertibility of ReLU networks.
//!
//! The crate encodes "is this network injective on a ball?" and "is the
//! output of one network a function of another's?" as mixed-integer linear
//! programs and solves them with a small embedded branch-and-bound solver.
//! Ground-truth dynamical systems (forward-Euler Brusselator, scalar
//! quadratic Euler map, Van der Pol) and brute-force oracles live alongside
//! so every certificate can be cross-checked.
//!
//! The crate is `no_std` and only needs `alloc`. Wall-clock time limits are
//! injected through [`milp::Clock`]; everything else is deterministic.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::too_many_arguments)]
// `!(a <= b)` is used on purpose so NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod certify;
pub mod dynamics;
pub mod encoder;
mod error;
pub mod milp;
pub mod network;
pub mod oracle;

pub use bounds::{InputBox, IntervalBounds, LayerBounds, Norm};
pub use certify::{Certificate, CertificateKind, CertifyError, CertifyOptions, Certifier};
pub use encoder::{EncodeOptions, EncodedProblem};
pub use error::Error;
pub use milp::{MilpModel, MilpSolution, MilpStatus, SolveOptions};
pub use network::{ActivationPattern, Affine, ReluMlp, ResidualNet};

pub type Result<T, E = Error> = core::result::Result<T, E>;
