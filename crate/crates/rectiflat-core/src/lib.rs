//! Rectifiability-sensitive computations on finite metric models.
//!
//! The crate is `no_std` with `alloc`. Floating point transcendental functions
//! come from `libm`, so every algorithm here runs unchanged on targets without
//! an operating system. File formats, the command line and parallel drivers
//! live in the companion `rectiflat` crate.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod curves;
pub mod error;
pub mod flat;
pub mod free;
pub mod hausdorff;
pub mod lipschitz;
pub mod math;
pub mod metric;
pub mod ur;
pub mod zoo;

pub use error::{Error, Result};
pub use metric::{FiniteMetricSpace, PointSubset};

/// Relative tolerance used for equality assertions unless stated otherwise.
pub const REL_TOL: f64 = 1e-9;
