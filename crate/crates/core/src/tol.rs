//! Centralized numerical tolerances.
//!
//! Every threshold used by the library lives here so that reproducibility
//! has a single knob.

/// Largest dimension `kron` will produce (2^14).
pub const MAX_KRON_DIM: usize = 1 << 14;

/// Largest chain length accepted by the Hamiltonian builders.
pub const MAX_QUBITS: usize = 12;

/// Elementwise Hermiticity residual for matrices flagged Hermitian.
pub const HERMITIAN_FLAG: f64 = 1e-12;

/// Relative Hermiticity residual accepted by `eigh`.
pub const EIGH_HERMITICITY: f64 = 1e-9;

/// Relative eigendecomposition reconstruction residual.
pub const EIGH_RECONSTRUCTION: f64 = 1e-9;

/// Unit-trace deviation for density matrices.
pub const TRACE_UNIT: f64 = 1e-12;

/// How far below zero an eigenvalue may dip before a state is rejected
/// as non-positive (validation of externally supplied matrices).
pub const PSD_VALIDATION: f64 = 1e-8;

/// Negativity threshold for the NPT test.
pub const NPT_THRESHOLD: f64 = 1e-10;

/// Relative degeneracy tolerance when averaging a ground space.
pub const GROUND_DEGENERACY: f64 = 1e-8;

/// Bisection bracket and tolerance for threshold temperatures.
pub const BISECTION_T_MIN: f64 = 1e-3;
pub const BISECTION_T_MAX: f64 = 100.0;
pub const BISECTION_ABS_TOL: f64 = 1e-5;

/// Convergence threshold for the derivative-free optimizer (energy
/// improvement per sweep).
pub const OPT_SWEEP_TOL: f64 = 1e-12;

/// Margin used when turning an energy comparison into a detection flag.
pub const DETECTION_MARGIN: f64 = 1e-12;

/// Clamp for tiny negative values that are analytically non-negative
/// (Wootters spectrum, Boltzmann weights).
pub const NONNEG_CLAMP: f64 = 1e-12;
