//! Two-qubit entanglement measures and the partial-transpose test.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{
    eigh, kron, partial_transpose, pauli_y, ComplexMatrix, DensityState,
};
use crate::tol;

/// Concurrence and entanglement of formation of a two-qubit state.
#[derive(Debug, Clone, Copy)]
pub struct PairMeasureResult {
    pub concurrence: f64,
    pub eof: f64,
}

/// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with l_i the
/// descending square roots of the spectrum of rho * (Y(x)Y) rho* (Y(x)Y).
///
/// The spectrum is taken along a Hermitian route: with A = sqrt(rho),
/// the eigenvalues of A rho_tilde A coincide with those of rho rho_tilde
/// and the product is Hermitian PSD.
pub fn concurrence(rho2: &DensityState) -> Result<f64> {
    if rho2.n_qubits() != 2 {
        return Err(Error::InvalidArgument(format!(
            "concurrence is defined for 2 qubits (got {})",
            rho2.n_qubits()
        )));
    }
    let rho = rho2.matrix();
    let eig = eigh(rho)?;
    if eig.values[0] < -tol::PSD_VALIDATION {
        return Err(Error::InvalidDensity(format!(
            "negative eigenvalue {:.3e}",
            eig.values[0]
        )));
    }
    let sqrt_rho = eig.apply_spectral(|x| x.max(0.0).sqrt());
    let yy = kron(&pauli_y(), &pauli_y())?;
    let rho_tilde = yy.matmul(&rho.conjugate()).matmul(&yy);
    let core = sqrt_rho.matmul(&rho_tilde).matmul(&sqrt_rho);
    let mut lambdas: Vec<f64> = eigh(&core)?
        .values
        .iter()
        .map(|&v| {
            debug_assert!(v > -tol::NONNEG_CLAMP, "Wootters spectrum dipped to {v}");
            v.max(0.0).sqrt()
        })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Binary entropy, 0 at the endpoints by continuity.
fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Entanglement of formation from the concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

/// Entanglement of formation of a two-qubit state, in ebits.
pub fn eof(rho2: &DensityState) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho2)?))
}

pub fn pair_measures(rho2: &DensityState) -> Result<PairMeasureResult> {
    let c = concurrence(rho2)?;
    Ok(PairMeasureResult {
        concurrence: c,
        eof: eof_from_concurrence(c),
    })
}

/// Negative-partial-transpose test across the given cut. Returns the
/// verdict and the minimum eigenvalue of the partial transpose.
pub fn is_npt(rho: &DensityState, subset: &[usize]) -> Result<(bool, f64)> {
    let pt = partial_transpose(rho, subset);
    let min_eig = eigh(&pt)?.values[0];
    Ok((min_eig < -tol::NPT_THRESHOLD, min_eig))
}

/// Werner state p |psi_s><psi_s| + (1-p) I/4.
pub fn werner_state(p: f64) -> DensityState {
    let singlet = crate::models::singlet_ket();
    let proj = ComplexMatrix::projector(&singlet);
    let mixed = ComplexMatrix::identity(4).scale(Complex64::new((1.0 - p) / 4.0, 0.0));
    let mat = &proj.scale(Complex64::new(p, 0.0)) + &mixed;
    DensityState::from_matrix_unchecked(mat, 2)
}
