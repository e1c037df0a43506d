//! Dense complex linear algebra kernel.
//!
//! Tensor products, site embedding, partial trace, partial transpose,
//! Hermitian eigendecomposition and the cyclic shift operator, all on a
//! dense row-major complex matrix. Site 1 is the leftmost tensor factor,
//! i.e. the most significant bits of the basis index.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::tol;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            dim,
            data: vec![C_ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C_ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build a 2x2 matrix from real entries.
    pub fn two_by_two_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            dim: 2,
            data: vec![a.into(), b.into(), c.into(), d.into()],
        }
    }

    /// Projector |v><v| (v need not be normalized; it is normalized first).
    pub fn projector(v: &[Complex64]) -> Self {
        let norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj() / norm_sq;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |M - M^dagger| over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|c| c.im == 0.0)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C_ZERO {
                    continue;
                }
                let row_b = &other.data[k * n..(k + 1) * n];
                let row_o = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    row_o[j] += a * row_b[j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        let n = self.dim;
        let mut out = vec![C_ZERO; n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            out[i] = row.iter().zip(v).map(|(a, x)| a * x).sum();
        }
        out
    }

    /// <v|M|v> for a normalized vector; real part.
    pub fn expval(&self, v: &[Complex64]) -> f64 {
        let mv = self.apply(v);
        v.iter()
            .zip(&mv)
            .map(|(a, b)| (a.conj() * b).re)
            .sum::<f64>()
    }

    /// tr(rho * self), real part (both Hermitian in practice).
    pub fn expectation_in(&self, rho: &Self) -> f64 {
        assert_eq!(self.dim, rho.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = C_ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += rho[(i, j)] * self[(j, i)];
            }
        }
        acc.re
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }
}

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::two_by_two_real(0.0, 1.0, 1.0, 0.0)
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

/// Pauli Z, with Z|0> = +|0>.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::two_by_two_real(1.0, 0.0, 0.0, -1.0)
}

/// Kronecker product. Errors if the product dimension exceeds the
/// configured maximum.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a
        .dim()
        .checked_mul(b.dim())
        .filter(|&d| d <= tol::MAX_KRON_DIM)
        .ok_or(Error::SizeExceeded(a.dim().saturating_mul(b.dim()), tol::MAX_KRON_DIM))?;
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == C_ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a list of vectors (kets).
pub fn kron_vec(parts: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut out = vec![C_ONE];
    for p in parts {
        let mut next = Vec::with_capacity(out.len() * p.len());
        for a in &out {
            for b in p {
                next.push(a * b);
            }
        }
        out = next;
    }
    out
}

/// I (x) ... (x) op (x) ... (x) I with `op` at 1-based position `site`.
pub fn embed_site(op: &ComplexMatrix, site: usize, n: usize) -> Result<ComplexMatrix> {
    assert_eq!(op.dim(), 2, "embed_site expects a single-qubit operator");
    if site < 1 || site > n {
        return Err(Error::SiteOutOfRange { site, n });
    }
    let dim = 1usize << n;
    if dim > tol::MAX_KRON_DIM {
        return Err(Error::SizeExceeded(dim, tol::MAX_KRON_DIM));
    }
    // Basis index bit for site s sits at position n - s (site 1 = MSB).
    let bit = n - site;
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let bi = (i >> bit) & 1;
        for bj in 0..2 {
            let v = op[(bi, bj)];
            if v == C_ZERO {
                continue;
            }
            let j = (i & !(1 << bit)) | (bj << bit);
            out[(i, j)] = v;
        }
    }
    Ok(out)
}

/// Unitary permutation mapping |a1 ... aN> to |aN a1 ... a(N-1)>.
pub fn shift_operator(n: usize) -> ComplexMatrix {
    assert!(n >= 2, "shift needs at least two qubits");
    let dim = 1usize << n;
    let mut s = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        // Last qubit (LSB) moves to the front (MSB).
        let target = (j >> 1) | ((j & 1) << (n - 1));
        s[(target, j)] = C_ONE;
    }
    s
}

/// Positive-semidefinite unit-trace matrix tagged with its qubit count.
#[derive(Debug, Clone)]
pub struct DensityState {
    mat: ComplexMatrix,
    n_qubits: usize,
}

impl DensityState {
    /// Wrap a matrix after validating shape, Hermiticity, trace and
    /// positivity. Meant for externally supplied data.
    pub fn from_matrix(mat: ComplexMatrix, n_qubits: usize) -> Result<Self> {
        if mat.dim() != 1 << n_qubits {
            return Err(Error::InvalidDensity(format!(
                "dimension {} does not match {} qubits",
                mat.dim(),
                n_qubits
            )));
        }
        let herm = mat.hermiticity_residual();
        if herm > tol::PSD_VALIDATION {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (residual {herm:.3e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tol::PSD_VALIDATION || tr.im.abs() > tol::PSD_VALIDATION {
            return Err(Error::InvalidDensity(format!("trace is {tr}, not 1")));
        }
        let sym = symmetrize(&mat);
        let eig = eigh(&sym)?;
        if eig.values[0] < -tol::PSD_VALIDATION {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:.3e}",
                eig.values[0]
            )));
        }
        Ok(Self { mat, n_qubits })
    }

    /// Wrap a matrix that is known valid by construction.
    pub fn from_matrix_unchecked(mat: ComplexMatrix, n_qubits: usize) -> Self {
        debug_assert_eq!(mat.dim(), 1 << n_qubits);
        Self { mat, n_qubits }
    }

    pub fn from_pure(v: &[Complex64], n_qubits: usize) -> Self {
        assert_eq!(v.len(), 1 << n_qubits);
        Self {
            mat: ComplexMatrix::projector(v),
            n_qubits,
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            mat: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
            n_qubits,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

fn symmetrize(m: &ComplexMatrix) -> ComplexMatrix {
    (&(m + &m.dagger())).scale(Complex64::new(0.5, 0.0))
}

/// Reduced state on the (ordered) `keep` sites, tracing out the rest.
pub fn partial_trace(rho: &DensityState, keep: &[usize]) -> Result<DensityState> {
    let n = rho.n_qubits();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("keep set must not be empty".into()));
    }
    let mut seen = vec![false; n + 1];
    for &s in keep {
        if s < 1 || s > n {
            return Err(Error::SiteOutOfRange { site: s, n });
        }
        if seen[s] {
            return Err(Error::InvalidArgument(format!("duplicate site {s}")));
        }
        seen[s] = true;
    }
    let traced: Vec<usize> = (1..=n).filter(|s| !seen[*s]).collect();
    let m = keep.len();
    let out_dim = 1usize << m;
    let keep_bits: Vec<usize> = keep.iter().map(|&s| n - s).collect();
    let traced_bits: Vec<usize> = traced.iter().map(|&s| n - s).collect();

    let compose = |a: usize, t: usize| -> usize {
        let mut idx = 0usize;
        for (out_pos, &b) in keep_bits.iter().enumerate() {
            idx |= ((a >> (m - 1 - out_pos)) & 1) << b;
        }
        for (pos, &b) in traced_bits.iter().enumerate() {
            idx |= ((t >> pos) & 1) << b;
        }
        idx
    };

    let r = traced.len();
    let mut out = ComplexMatrix::zeros(out_dim);
    for a in 0..out_dim {
        for b in 0..out_dim {
            let mut acc = C_ZERO;
            for t in 0..(1usize << r) {
                acc += rho.matrix()[(compose(a, t), compose(b, t))];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(DensityState::from_matrix_unchecked(out, m))
}

/// Reduced density matrix of a pure state vector on the `keep` sites.
/// Same convention as `partial_trace` but O(4^m * 2^N) without forming
/// the full projector.
pub fn reduced_from_vector(v: &[Complex64], keep: &[usize], n: usize) -> ComplexMatrix {
    let m = keep.len();
    let out_dim = 1usize << m;
    let keep_bits: Vec<usize> = keep.iter().map(|&s| n - s).collect();
    let keep_mask: usize = keep_bits.iter().map(|&b| 1usize << b).sum();
    let dim = 1usize << n;

    let extract = |i: usize| -> usize {
        let mut a = 0usize;
        for (out_pos, &b) in keep_bits.iter().enumerate() {
            a |= ((i >> b) & 1) << (m - 1 - out_pos);
        }
        a
    };
    let replace = |i: usize, a: usize| -> usize {
        let mut idx = i & !keep_mask;
        for (out_pos, &b) in keep_bits.iter().enumerate() {
            idx |= ((a >> (m - 1 - out_pos)) & 1) << b;
        }
        idx
    };

    let mut out = ComplexMatrix::zeros(out_dim);
    for i in 0..dim {
        let vi = v[i];
        if vi == C_ZERO {
            continue;
        }
        let a = extract(i);
        for b in 0..out_dim {
            let j = replace(i, b);
            out[(a, b)] += vi * v[j].conj();
        }
    }
    out
}

/// Transpose the indices of the `subset` sites. Involution; preserves
/// trace and Hermiticity.
pub fn partial_transpose(rho: &DensityState, subset: &[usize]) -> ComplexMatrix {
    let n = rho.n_qubits();
    let mask: usize = subset
        .iter()
        .map(|&s| {
            assert!(s >= 1 && s <= n, "site {s} out of range");
            1usize << (n - s)
        })
        .sum();
    let dim = rho.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let ti = (i & !mask) | (j & mask);
            let tj = (j & !mask) | (i & mask);
            out[(ti, tj)] = rho.matrix()[(i, j)];
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Hermitian eigendecomposition, ascending eigenvalues. Purely real input
/// takes a real symmetric path.
pub fn eigh(h: &ComplexMatrix) -> Result<EigenSystem> {
    let tolerance = tol::EIGH_HERMITICITY * h.max_abs().max(1.0);
    let residual = h.hermiticity_residual();
    if residual > tolerance {
        return Err(Error::NonHermitian { residual, tolerance });
    }
    let n = h.dim();
    let (mut values, vectors) = if h.is_real() {
        let m = faer::Mat::from_fn(n, n, |i, j| (h[(i, j)].re + h[(j, i)].re) * 0.5);
        let eig = m
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|e| Error::EigenFailure(format!("{e:?}")))?;
        let vals: Vec<f64> = (0..n).map(|i| eig.S()[i]).collect();
        let u = eig.U();
        let vecs = ComplexMatrix::from_fn(n, |i, j| Complex64::new(u[(i, j)], 0.0));
        (vals, vecs)
    } else {
        let m = faer::Mat::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
        let eig = m
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|e| Error::EigenFailure(format!("{e:?}")))?;
        let vals: Vec<f64> = (0..n).map(|i| eig.S()[i].re) .collect();
        let u = eig.U();
        let vecs = ComplexMatrix::from_fn(n, |i, j| u[(i, j)]);
        (vals, vecs)
    };
    // Sort ascending, permuting columns to match.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let sorted_vecs = ComplexMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    values = sorted_vals;
    Ok(EigenSystem {
        values,
        vectors: sorted_vecs,
    })
}

impl EigenSystem {
    /// V diag(f(lambda)) V^dagger.
    pub fn apply_spectral(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let w = Complex64::new(f(self.values[j]), 0.0);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        scaled.matmul(&self.vectors.dagger())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singlet() -> Vec<Complex64> {
        let s = 1.0 / 2f64.sqrt();
        vec![C_ZERO, Complex64::new(-s, 0.0), Complex64::new(s, 0.0), C_ZERO]
    }

    #[test]
    fn kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        let k = kron(&i2, &i2).unwrap();
        assert_eq!(k, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_xx_spectrum() {
        // Oracle: direct 4x4 eigensolve of X (x) X.
        let k = kron(&pauli_x(), &pauli_x()).unwrap();
        let eig = eigh(&k).unwrap();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (v, e) in eig.values.iter().zip(expect) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
    }

    #[test]
    fn kron_z_i_diagonal() {
        let k = kron(&pauli_z(), &ComplexMatrix::identity(2)).unwrap();
        let expect = [1.0, 1.0, -1.0, -1.0];
        for i in 0..4 {
            assert!((k[(i, i)].re - expect[i]).abs() < 1e-15);
            for j in 0..4 {
                if i != j {
                    assert_eq!(k[(i, j)], C_ZERO);
                }
            }
        }
    }

    #[test]
    fn kron_overflow_errors() {
        let big = ComplexMatrix::identity(1 << 13);
        let err = kron(&big, &ComplexMatrix::identity(4));
        assert!(matches!(err, Err(Error::SizeExceeded(_, _))));
    }

    #[test]
    fn embed_site_cases() {
        let z = pauli_z();
        assert_eq!(embed_site(&z, 1, 1).unwrap(), z);
        let x2 = embed_site(&pauli_x(), 2, 2).unwrap();
        assert_eq!(x2, kron(&ComplexMatrix::identity(2), &pauli_x()).unwrap());
        let z3 = embed_site(&z, 3, 4).unwrap();
        assert!(z3.trace().norm() < 1e-12);
        assert!(matches!(
            embed_site(&z, 5, 4),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn partial_trace_singlet_marginal() {
        let rho = DensityState::from_pure(&singlet(), 2);
        let red = partial_trace(&rho, &[1]).unwrap();
        let half = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
        assert!(red.matrix().max_abs_diff(&half) < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        let mut v = vec![C_ZERO; 4];
        v[0] = C_ONE; // |00>
        let rho = DensityState::from_pure(&v, 2);
        let red = partial_trace(&rho, &[2]).unwrap();
        assert!((red.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(red.matrix()[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn partial_trace_empty_keep_errors() {
        let rho = DensityState::maximally_mixed(2);
        assert!(partial_trace(&rho, &[]).is_err());
    }

    #[test]
    fn partial_transpose_singlet_spectrum() {
        let rho = DensityState::from_pure(&singlet(), 2);
        let pt = partial_transpose(&rho, &[2]);
        let eig = eigh(&pt).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (v, e) in eig.values.iter().zip(expect) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
    }

    #[test]
    fn partial_transpose_product_stays_positive() {
        let mut v = vec![C_ZERO; 4];
        let s = 0.5f64.sqrt();
        v[0] = Complex64::new(s, 0.0);
        v[1] = Complex64::new(s, 0.0); // |0> (x) |+>
        let rho = DensityState::from_pure(&v, 2);
        let pt = partial_transpose(&rho, &[2]);
        let eig = eigh(&pt).unwrap();
        assert!(eig.values[0] > -1e-12);
    }

    #[test]
    fn partial_transpose_involution() {
        let rho = DensityState::from_pure(&singlet(), 2);
        let pt = partial_transpose(&rho, &[2]);
        let pt2 = partial_transpose(
            &DensityState::from_matrix_unchecked(pt.clone(), 2),
            &[2],
        );
        assert_eq!(&pt2, rho.matrix());
        assert!((pt.trace() - rho.matrix().trace()).norm() < 1e-15);
        assert!(pt.hermiticity_residual() < 1e-15);
    }

    #[test]
    fn eigh_z() {
        let eig = eigh(&pauli_z()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = C_ONE;
        assert!(matches!(eigh(&m), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn eigh_complex_input_reconstruction() {
        let y = pauli_y();
        let h = kron(&y, &pauli_x()).unwrap();
        let eig = eigh(&h).unwrap();
        let rec = eig.apply_spectral(|x| x);
        assert!(rec.max_abs_diff(&h) < 1e-9 * h.max_abs());
        // Columns orthonormal.
        let gram = eig.vectors.dagger().matmul(&eig.vectors);
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
    }

    #[test]
    fn shift_swaps_two_qubits() {
        let s = shift_operator(2);
        // |01> (index 1) -> |10> (index 2)
        assert_eq!(s[(2, 1)], C_ONE);
        assert_eq!(s[(1, 2)], C_ONE);
        assert_eq!(s[(0, 0)], C_ONE);
        assert_eq!(s[(3, 3)], C_ONE);
    }

    #[test]
    fn shift_cyclic_order_and_unitarity() {
        let n = 4;
        let s = shift_operator(n);
        let mut p = ComplexMatrix::identity(1 << n);
        for _ in 0..n {
            p = s.matmul(&p);
        }
        assert!(p.max_abs_diff(&ComplexMatrix::identity(1 << n)) < 1e-12);
        let ssd = s.matmul(&s.dagger());
        assert!(ssd.max_abs_diff(&ComplexMatrix::identity(1 << n)) < 1e-12);
    }

    #[test]
    fn reduced_from_vector_matches_partial_trace() {
        // Arbitrary 3-qubit state.
        let v: Vec<Complex64> = (0..8)
            .map(|i| Complex64::new((i as f64 + 1.0).sin(), (i as f64).cos()))
            .collect();
        let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<Complex64> = v.iter().map(|c| c / norm).collect();
        let rho = DensityState::from_pure(&v, 3);
        for keep in [vec![1], vec![2, 3], vec![3, 1]] {
            let a = partial_trace(&rho, &keep).unwrap();
            let b = reduced_from_vector(&v, &keep, 3);
            assert!(a.matrix().max_abs_diff(&b) < 1e-12, "keep={keep:?}");
        }
    }

    #[test]
    fn density_validation_rejects_bad_input() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 0)] = Complex64::new(1.5, 0.0);
        m[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(DensityState::from_matrix(m, 1).is_err()); // negative eigenvalue
        let mut nh = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
        nh[(0, 1)] = C_ONE;
        assert!(DensityState::from_matrix(nh, 1).is_err()); // non-Hermitian
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn random_pure(seed: [f64; 8], n: usize) -> (Vec<Complex64>, DensityState) {
            let dim = 1 << n;
            let mut v: Vec<Complex64> = (0..dim)
                .map(|i| Complex64::new(seed[2 * i % 8] + 0.1, seed[(2 * i + 1) % 8]))
                .collect();
            let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in &mut v {
                *c /= norm;
            }
            let rho = DensityState::from_pure(&v, n);
            (v, rho)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn kron_trace_is_multiplicative(a in prop::array::uniform4(-3.0f64..3.0),
                                            b in prop::array::uniform4(-3.0f64..3.0)) {
                let ma = ComplexMatrix::two_by_two_real(a[0], a[1], a[2], a[3]);
                let mb = ComplexMatrix::two_by_two_real(b[0], b[1], b[2], b[3]);
                let t = kron(&ma, &mb).unwrap().trace();
                let expect = ma.trace() * mb.trace();
                prop_assert!((t - expect).norm() < 1e-9 * (1.0 + expect.norm()));
            }

            #[test]
            fn partial_transpose_involutes_and_keeps_trace(
                seed in prop::array::uniform8(-1.0f64..1.0),
                mask in 1u8..7,
            ) {
                let (_, rho) = random_pure(seed, 2);
                let subset: Vec<usize> = (1..=2).filter(|s| mask >> (s - 1) & 1 == 1).collect();
                let pt = partial_transpose(&rho, &subset);
                prop_assert!((pt.trace() - rho.matrix().trace()).norm() < 1e-12);
                let back = partial_transpose(
                    &DensityState::from_matrix_unchecked(pt, 2),
                    &subset,
                );
                prop_assert!(back.max_abs_diff(rho.matrix()) < 1e-12);
            }

            #[test]
            fn partial_trace_preserves_trace_and_hermiticity(
                seed in prop::array::uniform8(-1.0f64..1.0),
            ) {
                let (_, rho) = random_pure(seed, 3);
                for keep in [vec![1], vec![2], vec![1, 3]] {
                    let red = partial_trace(&rho, &keep).unwrap();
                    prop_assert!((red.matrix().trace().re - 1.0).abs() < 1e-12);
                    prop_assert!(red.matrix().hermiticity_residual() < 1e-12);
                }
            }
        }
    }
}
