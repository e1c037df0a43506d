//! Energy-based entanglement detection for XY and Heisenberg spin chains.
//!
//! Builds the chain Hamiltonians by exact diagonalization at desk scale
//! (N <= 12), evaluates thermal Gibbs states, and certifies bipartite and
//! multipartite entanglement from the energy alone via closed-form
//! witness bounds. An independent derivative-free optimizer re-derives
//! the product-state and pair-producible minima as a cross-check.

pub mod error;
pub mod measures;
pub mod models;
pub mod oracle;
pub mod par;
pub mod scan;
pub mod tensor;
pub mod thermal;
pub mod tol;
pub mod witness;

pub use error::{Error, Result};
