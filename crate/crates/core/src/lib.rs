//! Clifford-algebra quantum perceptrons and the verification machinery
//! around them.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, `exp(iH)`.
//! - [`clifford`]: Pauli words, Cl(2n) generators, the Hermitian blade
//!   basis, anticommutation counting and the Lie-embedding check.
//! - [`simulator`]: statevectors, the swap test, entanglement entropy.
//! - [`cqp`]: Type I/II perceptrons, multilayer forward pass, fidelity
//!   training, unitary equivalence, operator-activation networks.
//! - [`trotter`]: first-order product formulas with measured error and
//!   analytic bounds.
//! - [`gqft`]: the generalized quantum Fourier transform.
//! - [`circuits`]: two-level decomposition and controlled-gate compilation.

pub mod circuits;
pub mod clifford;
pub mod cqp;
pub mod error;
pub mod gqft;
pub mod linalg;
pub mod random;
pub mod simulator;
pub mod trotter;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use simulator::StateVector;
