//! Lie-Poisson Rikitake systems and their Poisson-Lie integrable deformations.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] and [`poisson`]: scalar fields with analytic gradients, Poisson
//!   structures, brackets, Hamiltonian vector fields and axiom residuals.
//! * [`liebialg`]: exact rational Lie algebra / Lie bialgebra machinery and the
//!   common-cocycle solver for Poisson pencils.
//! * [`systems`]: the catalog of concrete brackets, Hamiltonians and Casimirs.
//! * [`coupling`]: coproduct maps, the Poisson-map check and the two-copy
//!   coupled systems with their cluster variables.
//! * [`realization`]: symplectic realizations onto leaves and time-of-flight
//!   quadratures.
//! * [`integrate`]: deterministic RK4 / Dormand-Prince integration with
//!   invariant monitoring and orbit-closure detection.

pub mod coupling;
pub mod error;
pub mod field;
pub mod integrate;
pub mod liebialg;
pub mod poisson;
pub mod realization;
pub mod sampling;
pub mod systems;

pub use error::{Error, Result};
pub use field::ScalarField;
pub use poisson::{Dynamics, HamiltonianSystem, PoissonStructure, StatePoint, VectorFieldSystem};
