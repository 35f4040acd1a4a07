//! Entanglement of a tetrapartite W state shared by uniformly accelerated
//! fermionic observers, in the single-mode approximation.
//!
//! The pipeline is: build the inertial state ([`states`]), split every
//! accelerated observer's mode into Rindler regions I and II ([`unruh`]),
//! trace region II out, and evaluate negativities, residual tangles and
//! entropies on the result ([`measures`]). [`closed_form`] holds the
//! published analytic expressions and checks them against the numbers;
//! [`analysis`] drives sweeps, threshold searches and CSV output.

pub mod analysis;
pub mod closed_form;
pub mod density;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod register;
pub mod states;
pub mod unruh;

pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use linalg::{hermitian_eigen, hermitian_eigenvalues, kron, trace_norm, ComplexMatrix};
pub use register::{ModeRegister, Party, Region, Slot};
pub use states::{ghz_state, pure_density, w_state, StateVector};
pub use unruh::{
    physical_density, r_from_acceleration, unruh_expand, PhysicalAcceleration, Scenario,
    StateFamily,
};
