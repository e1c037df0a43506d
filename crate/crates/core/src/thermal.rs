//! Gibbs states, ground states and nearest-neighbor marginals.
//!
//! One eigendecomposition per Hamiltonian is cached in a `ThermalSolver`
//! and reused for every temperature: energies come straight from the
//! spectrum, full Gibbs matrices from V diag(w) V^dagger, and thermal
//! two- or three-site marginals from precomputed eigenvector marginals.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::ChainModel;
use crate::tensor::{eigh, partial_trace, reduced_from_vector, ComplexMatrix, DensityState, EigenSystem};
use crate::tol;

/// A thermal state together with its temperature and energy.
#[derive(Debug, Clone)]
pub struct ThermalPoint {
    pub model: ChainModel,
    pub temperature: f64,
    pub energy: f64,
    pub state: DensityState,
}

/// Cached spectral data for one Hamiltonian.
pub struct ThermalSolver {
    n_qubits: usize,
    hamiltonian: ComplexMatrix,
    eig: EigenSystem,
}

impl ThermalSolver {
    pub fn new(hamiltonian: ComplexMatrix) -> Result<Self> {
        let dim = hamiltonian.dim();
        let n_qubits = dim.trailing_zeros() as usize;
        if dim != 1 << n_qubits {
            return Err(Error::InvalidArgument(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        let eig = eigh(&hamiltonian)?;
        Ok(Self {
            n_qubits,
            hamiltonian,
            eig,
        })
    }

    pub fn eigensystem(&self) -> &EigenSystem {
        &self.eig
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Normalized Boltzmann weights at temperature T (max-eigenvalue
    /// shift applied before exponentiating).
    pub fn weights(&self, temperature: f64) -> Result<Vec<f64>> {
        if temperature <= 0.0 {
            return Err(Error::NonPositiveTemperature(temperature));
        }
        let e0 = self.eig.values[0];
        let mut w: Vec<f64> = self
            .eig
            .values
            .iter()
            .map(|&e| (-(e - e0) / temperature).exp())
            .collect();
        let z: f64 = w.iter().sum();
        for x in &mut w {
            *x /= z;
        }
        Ok(w)
    }

    /// Thermal mean energy at temperature T.
    pub fn energy(&self, temperature: f64) -> Result<f64> {
        let w = self.weights(temperature)?;
        Ok(self
            .eig
            .values
            .iter()
            .zip(&w)
            .map(|(e, p)| e * p)
            .sum())
    }

    /// Full Gibbs state exp(-H/T)/Z.
    pub fn gibbs_state(&self, temperature: f64) -> Result<DensityState> {
        let w = self.weights(temperature)?;
        let mat = spectral_mix(&self.eig.vectors, &w);
        Ok(DensityState::from_matrix_unchecked(mat, self.n_qubits))
    }

    /// Ground energy and the degeneracy-averaged ground projector.
    pub fn ground_state(&self) -> (f64, DensityState) {
        let e0 = self.eig.values[0];
        let scale = self
            .eig
            .values
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
            .max(1.0);
        let cut = e0 + tol::GROUND_DEGENERACY * scale;
        let degeneracy = self.eig.values.iter().take_while(|&&v| v <= cut).count();
        let mut w = vec![0.0; self.eig.values.len()];
        for x in w.iter_mut().take(degeneracy) {
            *x = 1.0 / degeneracy as f64;
        }
        let mat = spectral_mix(&self.eig.vectors, &w);
        (e0, DensityState::from_matrix_unchecked(mat, self.n_qubits))
    }

    pub fn thermal_point(&self, model: ChainModel, temperature: f64) -> Result<ThermalPoint> {
        Ok(ThermalPoint {
            model,
            temperature,
            energy: self.energy(temperature)?,
            state: self.gibbs_state(temperature)?,
        })
    }

    /// Per-eigenvector marginals on the given sites; combine with
    /// `weights` to get a thermal marginal without forming the full
    /// Gibbs matrix.
    pub fn eigenvector_marginals(&self, sites: &[usize]) -> Vec<ComplexMatrix> {
        let n = self.n_qubits;
        (0..self.eig.values.len())
            .map(|k| reduced_from_vector(&self.eig.vectors.column(k), sites, n))
            .collect()
    }

    /// Thermal reduced state on `sites` at temperature T, via the
    /// eigenvector marginals.
    pub fn thermal_marginal(&self, sites: &[usize], temperature: f64) -> Result<DensityState> {
        let w = self.weights(temperature)?;
        let marginals = self.eigenvector_marginals(sites);
        Ok(mix_marginals(&marginals, &w, sites.len()))
    }
}

/// Weighted sum of same-shaped density matrices.
pub fn mix_marginals(marginals: &[ComplexMatrix], weights: &[f64], n_qubits: usize) -> DensityState {
    let dim = marginals[0].dim();
    let mut out = ComplexMatrix::zeros(dim);
    for (m, &p) in marginals.iter().zip(weights) {
        if p == 0.0 {
            continue;
        }
        out = &out + &(m * p);
    }
    DensityState::from_matrix_unchecked(out, n_qubits)
}

fn spectral_mix(vectors: &ComplexMatrix, weights: &[f64]) -> ComplexMatrix {
    let n = vectors.dim();
    let mut scaled = vectors.clone();
    for j in 0..n {
        let w = Complex64::new(weights[j], 0.0);
        for i in 0..n {
            scaled[(i, j)] *= w;
        }
    }
    scaled.matmul(&vectors.dagger())
}

/// Reduced state of m consecutive qubits starting at `start` (cyclic).
pub fn nn_reduced(state: &DensityState, start: usize, m: usize) -> Result<DensityState> {
    if !(m == 2 || m == 3) {
        return Err(Error::InvalidArgument(format!(
            "nn_reduced supports 2 or 3 consecutive qubits (got {m})"
        )));
    }
    let n = state.n_qubits();
    if start < 1 || start > n {
        return Err(Error::SiteOutOfRange { site: start, n });
    }
    let sites: Vec<usize> = (0..m).map(|k| (start - 1 + k) % n + 1).collect();
    partial_trace(state, &sites)
}
