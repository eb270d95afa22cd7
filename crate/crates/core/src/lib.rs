//! Peak age of information in slotted-ALOHA Poisson bipolar networks.
//!
//! - [`model`]: network parameters and derived constants
//! - [`fixed_point`]: success probability roots, regime classification and
//!   steady-state sensitivity
//! - [`aoi`]: peak AoI and its closed-form optimizers, with brute-force
//!   grid oracles
//! - [`sim`]: discrete-time Monte Carlo simulator of the network

// Negated comparisons reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aoi;
pub mod error;
pub mod fixed_point;
pub mod model;
pub mod sim;

pub use error::{Error, Result};
pub use fixed_point::{
    classify_regime, queue_steady_state, solve_fixed_point, steady_state_sensitivity,
    FixedPointSolution, QueueSteadyState, Regime, DEFAULT_TOL,
};
pub use model::{compute_c, derive_constants, DerivedConstants, Snr, SystemParams};
