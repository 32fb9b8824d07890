//! Dense complex linear algebra on small labeled tensor-product spaces.

pub mod evolution;
pub mod lindblad;
pub mod local;
pub mod operator;
pub mod space;
pub mod state;

pub use evolution::{evolve_unitary, exp_antihermitian, UnitaryPropagator};
pub use lindblad::{evolve_damped, Collapse, LindbladEvolution};
pub use local::{embed, ladder, local_identity, number, sigma_minus, sigma_plus, sigma_x, sigma_z};
pub use operator::{hermiticity_tolerance, Eigen, Operator};
pub use space::{Factor, HilbertSpace};
pub use state::{DensityMatrix, StateVector};
