//! Quantum-state evolution under clock-induced dephasing.
//!
//! States live in the energy eigenbasis of a diagonal Hamiltonian, given by
//! its [`Spectrum`]. Evolution runs in rescaled units (frequencies and an
//! effective Planck time of order one); physical-scale magnitudes go
//! through [`crate::limits`] and [`gate`] in log space.

mod dephasing;
pub mod gate;
mod integrate;
mod propagate;
mod state;

pub use dephasing::{decoherence_exponent, sigma_of_t, DecoherenceParams, ExponentMode};
pub use gate::{not_gate_error, GateAnalysis, GateVariant};
pub use integrate::{
    convergence_check, evolve_numeric, evolve_numeric_on, max_discrepancy, ConvergenceCheck,
    Sample, TimeGrid, Trajectory,
};
pub use propagate::{overlap, overlap_complex, propagate_analytic, purity, OVERLAP_IMAG_TOL};
pub use state::{DensityMatrix, PureState, Spectrum, SystemInput, MAX_DIM};
