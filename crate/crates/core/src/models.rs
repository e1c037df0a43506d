//! Chain Hamiltonians and reference states.
//!
//! Periodic boundary conditions throughout: the sum over bonds runs
//! k = 1..N with site N+1 identified with site 1, so at N = 2 the single
//! physical bond is counted twice (H = 2 h). That literal-sum convention
//! is what makes the N = 2 threshold come out at 8/ln 3.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{
    embed_site, kron_vec, pauli_x, pauli_y, pauli_z, shift_operator, ComplexMatrix, DensityState,
    C_ONE, C_ZERO,
};
use crate::tol;

/// Which chain, with couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    Xy,
    Heisenberg,
    HeisenbergField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainModel {
    pub kind: ModelKind,
    pub n: usize,
    pub j: f64,
    /// Field strength; nonzero only for HeisenbergField.
    pub b: f64,
}

impl ChainModel {
    pub fn xy(n: usize, j: f64) -> Self {
        Self { kind: ModelKind::Xy, n, j, b: 0.0 }
    }

    pub fn heisenberg(n: usize, j: f64) -> Self {
        Self { kind: ModelKind::Heisenberg, n, j, b: 0.0 }
    }

    pub fn heisenberg_field(n: usize, j: f64, b: f64) -> Self {
        Self { kind: ModelKind::HeisenbergField, n, j, b }
    }

    pub fn validate(&self) -> Result<()> {
        if self.j <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupling J must be positive (got {})",
                self.j
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!(
                "chain needs at least 2 qubits (got {})",
                self.n
            )));
        }
        if self.n > tol::MAX_QUBITS {
            return Err(Error::SizeExceeded(self.n, tol::MAX_QUBITS));
        }
        Ok(())
    }

    /// Does the bond include the ZZ term?
    pub fn has_zz(&self) -> bool {
        !matches!(self.kind, ModelKind::Xy)
    }
}

/// h_XY = XX + YY on two qubits.
pub fn build_pair_xy() -> ComplexMatrix {
    pair_term(false)
}

/// h_H = XX + YY + ZZ on two qubits.
pub fn build_pair_heisenberg() -> ComplexMatrix {
    pair_term(true)
}

fn pair_term(with_zz: bool) -> ComplexMatrix {
    let xx = crate::tensor::kron(&pauli_x(), &pauli_x()).unwrap();
    let yy = crate::tensor::kron(&pauli_y(), &pauli_y()).unwrap();
    let mut h = &xx + &yy;
    if with_zz {
        let zz = crate::tensor::kron(&pauli_z(), &pauli_z()).unwrap();
        h = &h + &zz;
    }
    h
}

/// Full 2^N Hamiltonian: J * sum_k bond(k, k+1) (+ B * sum_k Z_k).
pub fn build_hamiltonian(model: &ChainModel) -> Result<ComplexMatrix> {
    model.validate()?;
    let n = model.n;
    let dim = 1usize << n;
    let mut h = ComplexMatrix::zeros(dim);
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let terms = if model.has_zz() { 3 } else { 2 };
    for k in 1..=n {
        let next = k % n + 1;
        for p in &paulis[..terms] {
            let a = embed_site(p, k, n)?;
            let b = embed_site(p, next, n)?;
            h = &h + &a.matmul(&b);
        }
    }
    h = &h * model.j;
    if matches!(model.kind, ModelKind::HeisenbergField) && model.b != 0.0 {
        let z = pauli_z();
        for k in 1..=n {
            h = &h + &(&embed_site(&z, k, n)? * model.b);
        }
    }
    Ok(h)
}

/// Reference states from the witness discussion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateLabel {
    /// (|10> - |01>)/sqrt(2), N = 2.
    Singlet,
    /// Singlet pairs on bonds (1,2)(3,4)...
    SingletChain,
    /// Equal mixture of the singlet chain and its one-site shift.
    ShiftedMixture,
    /// |1...1>.
    Polarized,
}

impl StateLabel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "singlet" => Ok(Self::Singlet),
            "singlet_chain" => Ok(Self::SingletChain),
            "shifted_mixture" => Ok(Self::ShiftedMixture),
            "polarized" => Ok(Self::Polarized),
            _ => Err(Error::InvalidArgument(format!("unknown state label {s:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Singlet => "singlet",
            Self::SingletChain => "singlet_chain",
            Self::ShiftedMixture => "shifted_mixture",
            Self::Polarized => "polarized",
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedState {
    pub label: StateLabel,
    pub state: DensityState,
}

/// The singlet ket on two qubits.
pub fn singlet_ket() -> Vec<Complex64> {
    let s = 1.0 / 2f64.sqrt();
    vec![
        C_ZERO,
        Complex64::new(-s, 0.0),
        Complex64::new(s, 0.0),
        C_ZERO,
    ]
}

/// |Phi_s> = singlet^(N/2) with pairs (1,2)(3,4)...
pub fn singlet_chain_ket(n: usize) -> Vec<Complex64> {
    assert!(n >= 2 && n % 2 == 0);
    kron_vec(&vec![singlet_ket(); n / 2])
}

pub fn make_state(label: StateLabel, n: usize) -> Result<NamedState> {
    let chain_like = matches!(label, StateLabel::SingletChain | StateLabel::ShiftedMixture)
        || (matches!(label, StateLabel::Singlet));
    if chain_like && n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "state {:?} needs an even qubit count (got {n})",
            label.name()
        )));
    }
    let state = match label {
        StateLabel::Singlet => {
            if n != 2 {
                return Err(Error::InvalidArgument(format!(
                    "singlet is a 2-qubit state (got N = {n})"
                )));
            }
            DensityState::from_pure(&singlet_ket(), 2)
        }
        StateLabel::SingletChain => DensityState::from_pure(&singlet_chain_ket(n), n),
        StateLabel::ShiftedMixture => {
            let chain = singlet_chain_ket(n);
            let s = shift_operator(n);
            let shifted = s.apply(&chain);
            let p1 = ComplexMatrix::projector(&chain);
            let p2 = ComplexMatrix::projector(&shifted);
            let mix = (&(&p1 + &p2)).scale(Complex64::new(0.5, 0.0));
            DensityState::from_matrix_unchecked(mix, n)
        }
        StateLabel::Polarized => {
            let dim = 1usize << n;
            let mut v = vec![C_ZERO; dim];
            v[dim - 1] = C_ONE;
            DensityState::from_pure(&v, n)
        }
    };
    Ok(NamedState { label, state })
}
