//! Simulation core for a transmon qubit coupled to nitrogen-vacancy spins.
//!
//! Frequencies are angular (rad/s) with ħ = 1 and times are in seconds.
//! Every numerical type is generic over [`Real`]; the aliases below pin the
//! common `f64` instantiation.

pub mod constants;
pub mod error;
pub mod hybrid;
pub mod magnetostatics;
pub mod protocols;
pub mod quantum;
pub mod scalar;
pub mod transmon;

pub use error::{Error, Result};
pub use scalar::{Complex, Real};

pub type Operator = quantum::Operator<f64>;
pub type StateVector = quantum::StateVector<f64>;
pub type DensityMatrix = quantum::DensityMatrix<f64>;
