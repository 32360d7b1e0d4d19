//! Clock-induced decoherence and the gravitational limits it places on
//! quantum computation.
//!
//! - [`numerics`]: sign + log10 scalars for magnitudes like e^{-10^9}.
//! - [`physics`]: constants and computer specifications.
//! - [`decoherence`]: dephasing master equation, closed-form propagator,
//!   RK4 cross-check and NOT-gate error.
//! - [`limits`]: operations-per-second bounds and reports.
//! - [`cli`]: the `gravbound` command-line tool.

pub mod cli;
pub mod decoherence;
pub mod error;
pub mod exec;
pub mod limits;
pub mod numerics;
pub mod physics;

pub use error::{Error, Result};
pub use numerics::{Exponent, LogScalar, RangeFlag};
pub use physics::{ComputerSpec, PhysConstants, Preset};
