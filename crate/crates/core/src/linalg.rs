//! Dense complex linear algebra for small Hilbert spaces (dimension ≤ 8).
//!
//! Everything the rest of the crate needs from a matrix library lives here:
//! Kronecker products, partial traces over tensor factors, a Jacobi
//! eigensolver for Hermitian matrices, and positive-semidefinite square
//! roots. Dimensions never exceed 8, so the implementations favour clarity
//! and numerical robustness over asymptotic cleverness.

use crate::error::{Error, Result};
pub use num_complex::Complex64;
use std::fmt;

/// Entrywise tolerance for treating a matrix as Hermitian. Downstream
/// validation tolerances in the crate derive from this one.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// How far an eigenvalue of a nominally positive-semidefinite matrix may dip
/// below zero (roundoff from partial traces) before [`psd_sqrt`] rejects the
/// matrix; anything in `(-PSD_EIG_TOL, 0]` is clamped to zero.
pub const PSD_EIG_TOL: f64 = 1e-10;

/// Relative cutoff below which an eigenvalue is treated as an exact zero
/// before taking square roots. Eigenvalues that are mathematically zero come
/// out of the eigensolver as O(ε)·‖M‖ noise, and `sqrt` would amplify that
/// noise to O(√ε) ≈ 1e-8 — far above the accuracy the fidelity routines
/// promise. The cutoff sits well above the solver's converged noise floor
/// and well below any spectral value this crate produces.
pub(crate) const EIG_ZERO_REL_CUT: f64 = 1e-13;

/// Shorthand constructor for a complex scalar.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense row-major complex matrix. The universal carrier for state vectors
/// (n×1), density operators, and isometries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf components.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(
                "matrix dimensions must be positive".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "entry count must equal rows × cols",
                rows,
                cols,
            });
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a slice of equal-length rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![c64(0.0, 0.0); rows * cols],
        }
    }

    /// n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c64(1.0, 0.0));
        }
        m
    }

    /// Column vector from a slice of amplitudes.
    pub fn column_vector(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(amplitudes.len(), 1, amplitudes.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries backing the matrix.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j]
    }

    /// Sets an entry; panics on out-of-bounds or non-finite values so that
    /// NaN/Inf can never enter a matrix.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        assert!(
            v.re.is_finite() && v.im.is_finite(),
            "non-finite matrix entry"
        );
        self.entries[i * self.cols + j] = v;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            self.cols == other.rows,
            "matrix product shape mismatch: {}x{} · {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.entries[i * self.cols + k];
                if aik == c64(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += aik * other.entries[k * other.cols + j];
                }
            }
        }
        out
    }

    /// Entrywise sum; panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "matrix sum shape mismatch"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Entrywise difference; panics on shape mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "matrix difference shape mismatch"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Multiplies every entry by a real scalar.
    pub fn scale(&self, factor: f64) -> Self {
        let entries = self.entries.iter().map(|z| z * factor).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// The j-th column as a column vector.
    pub fn column(&self, j: usize) -> Self {
        assert!(j < self.cols, "column index out of bounds");
        let mut out = Self::zeros(self.rows, 1);
        for i in 0..self.rows {
            out.entries[i] = self.get(i, j);
        }
        out
    }

    /// Hermitian inner product ⟨self|other⟩ of two column vectors.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert!(
            self.cols == 1 && other.cols == 1 && self.rows == other.rows,
            "inner product expects column vectors of equal length"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean norm of a column vector.
    pub fn vector_norm(&self) -> f64 {
        assert!(self.cols == 1, "vector norm expects a column vector");
        self.entries
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise absolute difference between two equal-shape
    /// matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "comparison shape mismatch"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation |M − M†| of a square matrix.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(
            self.is_square(),
            "Hermitian deviation of a non-square matrix"
        );
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Whether the matrix equals its adjoint within `tol` entrywise.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= tol
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.get(i, j);
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Ordered local dimensions of the tensor factors a matrix acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemShape {
    dims: Vec<usize>,
}

impl SubsystemShape {
    /// A shape from explicit factor dimensions; every factor must be ≥ 1 and
    /// the list non-empty.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidShape(format!(
                "factor dimensions must be positive and non-empty, got {dims:?}"
            )));
        }
        Ok(Self { dims })
    }

    /// `n` qubit factors.
    pub fn qubits(n: usize) -> Self {
        Self::new(vec![2; n.max(1)]).expect("qubit shape is always valid")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Product of the factor dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }
}

/// Kronecker product with entry ((i·rows_b + k), (j·cols_b + l)) = a_ij·b_kl,
/// i.e. factor order (a, b) with `a` most significant.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == c64(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Reduced operator on the kept factors of `m`, tracing the others out.
///
/// Factor indices refer to `shape` in order (factor 0 most significant, as
/// produced by [`tensor_product`]); kept factors retain their original
/// relative order. An empty `keep` list traces everything out and returns
/// the 1×1 matrix holding `Tr(m)`.
pub fn partial_trace(
    m: &ComplexMatrix,
    shape: &SubsystemShape,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            context: "partial_trace expects a square matrix",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if shape.total_dim() != m.rows() {
        return Err(Error::InvalidShape(format!(
            "factor dimensions {:?} have total {}, but the matrix is {}x{}",
            shape.dims(),
            shape.total_dim(),
            m.rows(),
            m.cols()
        )));
    }
    let dims = shape.dims();
    let nf = dims.len();
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    if kept.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!(
            "duplicate factor index in keep list {keep:?}"
        )));
    }
    if let Some(&bad) = kept.iter().find(|&&f| f >= nf) {
        return Err(Error::InvalidArgument(format!(
            "factor index {bad} out of range for {nf} factors"
        )));
    }
    let traced: Vec<usize> = (0..nf).filter(|f| !kept.contains(f)).collect();

    // Row-major stride of each factor's digit inside a full index.
    let mut stride = vec![1usize; nf];
    for f in (0..nf.saturating_sub(1)).rev() {
        stride[f] = stride[f + 1] * dims[f + 1];
    }
    // Maps a compound index over the listed factors (first factor most
    // significant) to its contribution to the full index.
    let offset = |set: &[usize], mut idx: usize| -> usize {
        let mut full = 0;
        for &f in set.iter().rev() {
            full += (idx % dims[f]) * stride[f];
            idx /= dims[f];
        }
        full
    };

    let dk: usize = kept.iter().map(|&f| dims[f]).product();
    let dt: usize = traced.iter().map(|&f| dims[f]).product();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for rk in 0..dk {
        let rbase = offset(&kept, rk);
        for ck in 0..dk {
            let cbase = offset(&kept, ck);
            let mut sum = c64(0.0, 0.0);
            for t in 0..dt {
                let toff = offset(&traced, t);
                sum += m.get(rbase + toff, cbase + toff);
            }
            out.set(rk, ck, sum);
        }
    }
    Ok(out)
}

/// Maximum number of Jacobi sweeps; convergence is quadratic and typical
/// 8×8 inputs need fewer than ten.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns the eigenvalues in descending order together with a unitary whose
/// columns are the matching eigenvectors, so that `m = V·diag(w)·V†`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            context: "hermitian_eig expects a square matrix",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let dev = m.hermitian_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }

    let n = m.rows();
    // Work on the Hermitian average (M + M†)/2 so the ≤1e-12 asymmetry the
    // tolerance admits cannot leak into the rotations.
    let mut a = vec![c64(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();

    if scale > 0.0 {
        // Converge until the off-diagonal mass is at rounding level; the
        // zero-eigenvalue cutoff in the sqrt routines relies on eigenvalues
        // being accurate to well under EIG_ZERO_REL_CUT·‖M‖.
        let target = scale * f64::EPSILON * n as f64;
        let mut prev_off = f64::INFINITY;
        for _ in 0..MAX_JACOBI_SWEEPS {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off += a[i * n + j].norm_sqr();
                    }
                }
            }
            let off = off.sqrt();
            if off <= target || off >= prev_off {
                break;
            }
            prev_off = off;

            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    let abs = apq.norm();
                    if abs == 0.0 {
                        continue;
                    }
                    // Unitary in the (p,q) plane: a phase that makes the
                    // pivot real followed by the classic symmetric rotation.
                    let phase = apq / abs; // e^{iφ}
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    let tau = (aqq - app) / (2.0 * abs);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let sp = s * phase.conj(); // s·e^{−iφ}

                    // A ← A·R, columns p and q.
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip * c - aiq * sp;
                        a[i * n + q] = aip * s + aiq * (phase.conj() * c);
                    }
                    // A ← R†·A, rows p and q.
                    for j in 0..n {
                        let apj = a[p * n + j];
                        let aqj = a[q * n + j];
                        a[p * n + j] = apj * c - aqj * (phase * s);
                        a[q * n + j] = apj * s + aqj * (phase * c);
                    }
                    // The pivot is now zero by construction; make it exact.
                    a[p * n + q] = c64(0.0, 0.0);
                    a[q * n + p] = c64(0.0, 0.0);

                    // V ← V·R.
                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, vip * c - viq * sp);
                        v.set(i, q, vip * s + viq * (phase.conj() * c));
                    }
                }
            }
        }
    }

    // Sort eigenvalues descending, carrying the eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_col, v.get(i, old_col));
        }
    }
    Ok((eigenvalues, vectors))
}

/// Zeroes eigenvalues that are indistinguishable from 0 at working
/// precision, relative to the largest eigenvalue.
pub(crate) fn floor_spectrum(eigenvalues: &[f64]) -> Vec<f64> {
    let max = eigenvalues.iter().fold(0.0f64, |m, &w| m.max(w));
    let cut = EIG_ZERO_REL_CUT * max;
    eigenvalues
        .iter()
        .map(|&w| if w <= cut { 0.0 } else { w })
        .collect()
}

/// Hermitian positive-semidefinite square root via eigendecomposition.
///
/// Eigenvalues in `(-PSD_EIG_TOL, 0]` (roundoff from partial traces) are
/// clamped to zero; anything more negative is rejected.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (w, v) = hermitian_eig(m)?;
    if let Some(&bad) = w.iter().find(|&&wi| wi < -PSD_EIG_TOL) {
        return Err(Error::NotPositiveSemidefinite { eigenvalue: bad });
    }
    let floored = floor_spectrum(&w);
    let n = m.rows();
    let mut scaled = v.clone();
    for (j, wj) in floored.iter().enumerate() {
        let root = wj.sqrt();
        for i in 0..n {
            scaled.set(i, j, v.get(i, j) * root);
        }
    }
    let product = scaled.mul(&v.dagger());
    // Symmetrize away the last rounding crumbs so the result is Hermitian
    // exactly, as callers assume.
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, (product.get(i, j) + product.get(j, i).conj()) * 0.5);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
        let entries: Vec<Complex64> = data.iter().map(|&x| c64(x, 0.0)).collect();
        ComplexMatrix::new(rows, cols, entries).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_shapes_and_values() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c64(0.0, 0.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c64(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 0 })
        ));
        assert!(ComplexMatrix::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn tensor_product_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_product_of_basis_projectors() {
        let p0 = real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p1 = real_matrix(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let expected = real_matrix(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        );
        assert_eq!(tensor_product(&p0, &p1), expected);
    }

    #[test]
    fn tensor_product_of_rank_one_projector_with_itself() {
        let psi = real_matrix(2, 1, &[0.6, 0.8]);
        let rho = psi.mul(&psi.dagger());
        let rho2 = tensor_product(&rho, &rho);
        assert!((rho2.get(0, 0).re - 0.1296).abs() < 1e-15);
        assert!((rho2.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn partial_trace_factors_a_product_state() {
        let rho = real_matrix(2, 2, &[0.7, 0.2, 0.2, 0.3]);
        let sigma = ComplexMatrix::from_rows(&[
            vec![c64(0.4, 0.0), c64(0.1, 0.3)],
            vec![c64(0.1, -0.3), c64(0.6, 0.0)],
        ])
        .unwrap();
        let joint = tensor_product(&rho, &sigma);
        let shape = SubsystemShape::qubits(2);
        let reduced_a = partial_trace(&joint, &shape, &[0]).unwrap();
        let reduced_b = partial_trace(&joint, &shape, &[1]).unwrap();
        assert!(reduced_a.max_abs_diff(&rho) < 1e-15); // Tr(σ) = 1
        assert!(reduced_b.max_abs_diff(&sigma) < 1e-15); // Tr(ρ) = 1
                                                         // Trace is preserved by the reduction.
        assert!((reduced_a.trace() - joint.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_of_bell_projector_is_maximally_mixed() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let bell = real_matrix(4, 1, &[inv, 0.0, 0.0, inv]);
        let rho = bell.mul(&bell.dagger());
        let shape = SubsystemShape::qubits(2);
        let reduced = partial_trace(&rho, &shape, &[1]).unwrap();
        let half = ComplexMatrix::identity(2).scale(0.5);
        assert!(reduced.max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_over_everything_is_the_scalar_trace() {
        let m = real_matrix(4, 4, &(0..16).map(|k| k as f64).collect::<Vec<_>>());
        let shape = SubsystemShape::qubits(2);
        let scalar = partial_trace(&m, &shape, &[]).unwrap();
        assert_eq!(scalar.rows(), 1);
        assert!((scalar.get(0, 0) - m.trace()).norm() < 1e-13);
    }

    #[test]
    fn partial_trace_validates_its_inputs() {
        let m = ComplexMatrix::identity(4);
        let shape = SubsystemShape::qubits(3);
        assert!(matches!(
            partial_trace(&m, &shape, &[0]),
            Err(Error::InvalidShape(_))
        ));
        let shape2 = SubsystemShape::qubits(2);
        assert!(partial_trace(&m, &shape2, &[0, 0]).is_err());
        assert!(partial_trace(&m, &shape2, &[2]).is_err());
    }

    #[test]
    fn eig_of_diagonal_matrix_is_sorted_descending() {
        let m = real_matrix(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let (w, v) = hermitian_eig(&m).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-15);
        assert!(w[1].abs() < 1e-15);
        // Reconstruction.
        let mut diag = ComplexMatrix::zeros(2, 2);
        diag.set(0, 0, c64(w[0], 0.0));
        diag.set(1, 1, c64(w[1], 0.0));
        let back = v.mul(&diag).mul(&v.dagger());
        assert!(back.max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn eig_of_pure_state_density_is_one_and_zero() {
        let psi = real_matrix(2, 1, &[0.6, 0.8]);
        let rho = psi.mul(&psi.dagger());
        let (w, _) = hermitian_eig(&rho).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-14);
        assert!(w[1].abs() < 1e-14);
    }

    #[test]
    fn eig_reconstructs_a_dense_hermitian_matrix() {
        let m = ComplexMatrix::from_rows(&[
            vec![c64(2.0, 0.0), c64(0.5, 0.25), c64(-0.3, 0.1)],
            vec![c64(0.5, -0.25), c64(-1.0, 0.0), c64(0.2, -0.6)],
            vec![c64(-0.3, -0.1), c64(0.2, 0.6), c64(0.4, 0.0)],
        ])
        .unwrap();
        let (w, v) = hermitian_eig(&m).unwrap();
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
        let mut diag = ComplexMatrix::zeros(3, 3);
        for (i, &wi) in w.iter().enumerate() {
            diag.set(i, i, c64(wi, 0.0));
        }
        let back = v.mul(&diag).mul(&v.dagger());
        assert!(back.max_abs_diff(&m) < 1e-12);
        // V is unitary.
        let vv = v.dagger().mul(&v);
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
        // Traces match.
        let sum: f64 = w.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian_input() {
        let m = real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn psd_sqrt_of_identity_and_diagonal() {
        let i4 = ComplexMatrix::identity(4);
        assert!(psd_sqrt(&i4).unwrap().max_abs_diff(&i4) < 1e-14);

        let m = real_matrix(2, 2, &[4.0, 0.0, 0.0, 9.0]);
        let expected = real_matrix(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert!(psd_sqrt(&m).unwrap().max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn psd_sqrt_of_projector_is_the_projector() {
        let psi = real_matrix(2, 1, &[0.6, 0.8]);
        let proj = psi.mul(&psi.dagger());
        assert!(psd_sqrt(&proj).unwrap().max_abs_diff(&proj) < 1e-13);
    }

    #[test]
    fn psd_sqrt_squares_back_to_the_input() {
        // A†A is PSD for any A.
        let a = ComplexMatrix::from_rows(&[
            vec![c64(0.3, 0.4), c64(-0.7, 0.2), c64(0.5, 0.0), c64(0.1, -0.9)],
            vec![c64(1.1, 0.0), c64(0.0, 0.8), c64(-0.2, 0.3), c64(0.6, 0.0)],
            vec![c64(0.0, -0.5), c64(0.4, 0.4), c64(0.9, 0.0), c64(-0.3, 0.2)],
            vec![c64(0.2, 0.1), c64(0.3, 0.0), c64(0.0, -0.6), c64(0.8, 0.5)],
        ])
        .unwrap();
        let m = a.dagger().mul(&a);
        let root = psd_sqrt(&m).unwrap();
        assert!(root.is_hermitian(1e-13));
        assert!(root.mul(&root).max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn psd_sqrt_rejects_indefinite_matrices() {
        let m = real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            psd_sqrt(&m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn psd_sqrt_clamps_rounding_level_negatives() {
        let m = real_matrix(2, 2, &[1.0, 0.0, 0.0, -1e-12]);
        let root = psd_sqrt(&m).unwrap();
        assert!(root.get(1, 1).norm() == 0.0);
        assert!((root.get(0, 0).re - 1.0).abs() < 1e-14);
    }
}
