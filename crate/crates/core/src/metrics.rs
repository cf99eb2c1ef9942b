//! Distance and fidelity functionals, numeric and closed-form.
//!
//! Two families of copy-quality measures are provided for both one-mode and
//! two-mode comparisons:
//!
//! * Hilbert–Schmidt distance  D(ρ₁, ρ₂) = Tr[(ρ₁ − ρ₂)²]
//! * Bures fidelity            F(ρ₁, ρ₂) = Tr[(ρ₁^{1/2} ρ₂ ρ₁^{1/2})^{1/2}]
//!
//! The numeric definitions work on arbitrary density operators; the
//! `*_closed` functions evaluate the analytic expressions these machines
//! satisfy as functions of λ alone.

use crate::error::{Error, Result};
use crate::linalg::{
    floor_spectrum, hermitian_eig, psd_sqrt, ComplexMatrix, HERMITICITY_TOL, PSD_EIG_TOL,
};
use crate::states::TRACE_TOL;
use std::fmt;

/// Which of the four copy-quality measures is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    /// One-mode Hilbert–Schmidt distance D_a.
    HsOne,
    /// Two-mode Hilbert–Schmidt distance D_ab.
    HsTwo,
    /// One-mode Bures fidelity F₁.
    BuresOne,
    /// Two-mode Bures fidelity F₂.
    BuresTwo,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::HsOne,
        MetricKind::HsTwo,
        MetricKind::BuresOne,
        MetricKind::BuresTwo,
    ];

    /// Kebab-case name as used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::HsOne => "hs-one",
            MetricKind::HsTwo => "hs-two",
            MetricKind::BuresOne => "bures-one",
            MetricKind::BuresTwo => "bures-two",
        }
    }

    /// Distances improve downward, fidelities upward.
    pub fn is_distance(self) -> bool {
        matches!(self, MetricKind::HsOne | MetricKind::HsTwo)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_same_square(rho1: &ComplexMatrix, rho2: &ComplexMatrix) -> Result<()> {
    if !rho1.is_square() || rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols() {
        return Err(Error::DimensionMismatch {
            context: "metric arguments must be square matrices of equal size",
            rows: rho2.rows(),
            cols: rho2.cols(),
        });
    }
    Ok(())
}

fn check_hermitian(rho: &ComplexMatrix) -> Result<()> {
    let dev = rho.hermitian_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(())
}

fn check_unit_trace(rho: &ComplexMatrix) -> Result<()> {
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    Ok(())
}

/// Hilbert–Schmidt distance Tr[(ρ₁ − ρ₂)²]. For Hermitian arguments this is
/// the squared Frobenius norm of the difference, hence symmetric and ≥ 0.
pub fn hs_distance(rho1: &ComplexMatrix, rho2: &ComplexMatrix) -> Result<f64> {
    check_same_square(rho1, rho2)?;
    check_hermitian(rho1)?;
    check_hermitian(rho2)?;
    let diff = rho1.sub(rho2);
    Ok(diff
        .entries()
        .iter()
        .map(num_complex::Complex64::norm_sqr)
        .sum())
}

/// Bures fidelity Tr[(ρ₁^{1/2} ρ₂ ρ₁^{1/2})^{1/2}] of two density operators.
///
/// The inner product matrix has the same spectrum as ρ₁ρ₂ but is Hermitian
/// PSD, so the trace of its square root is the sum of the square roots of
/// its eigenvalues; eigenvalues indistinguishable from zero are floored
/// before the square root so rounding noise cannot contribute O(√ε) terms.
pub fn bures_fidelity(rho1: &ComplexMatrix, rho2: &ComplexMatrix) -> Result<f64> {
    check_same_square(rho1, rho2)?;
    check_hermitian(rho1)?;
    check_hermitian(rho2)?;
    check_unit_trace(rho1)?;
    check_unit_trace(rho2)?;
    let root1 = psd_sqrt(rho1)?;
    let inner = root1.mul(rho2).mul(&root1);
    let (w, _) = hermitian_eig(&inner)?;
    if let Some(&bad) = w.iter().find(|&&wi| wi < -PSD_EIG_TOL) {
        return Err(Error::NotPositiveSemidefinite { eigenvalue: bad });
    }
    Ok(floor_spectrum(&w).iter().map(|wi| wi.sqrt()).sum())
}

/// Fidelity of a pure state against a density operator: √⟨ψ|ρ|ψ⟩. Agrees
/// with [`bures_fidelity`] of |ψ⟩⟨ψ| against ρ whenever ψ is normalized.
pub fn pure_fidelity(psi: &ComplexMatrix, rho: &ComplexMatrix) -> Result<f64> {
    if psi.cols() != 1 || !rho.is_square() || rho.rows() != psi.rows() {
        return Err(Error::DimensionMismatch {
            context: "pure_fidelity expects |ψ⟩ (n×1) and ρ (n×n)",
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    let norm = psi.vector_norm();
    if (norm - 1.0).abs() > crate::states::NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    check_hermitian(rho)?;
    let overlap = psi.dagger().mul(rho).mul(psi).get(0, 0).re;
    Ok(overlap.max(0.0).sqrt())
}

/// Common denominator of all four closed forms.
#[inline]
fn s_of(lambda: f64) -> f64 {
    3.0 - 2.0 * lambda + 3.0 * lambda * lambda
}

/// Closed-form one-mode Hilbert–Schmidt distance,
/// D_a(λ) = (1 − 2λ + 5λ²)² / (2(3 − 2λ + 3λ²)²).
///
/// The expression is defined for every real λ; machine construction
/// restricts λ to (−1, 1).
pub fn d_a_closed(lambda: f64) -> f64 {
    let num = 1.0 - 2.0 * lambda + 5.0 * lambda * lambda;
    let s = s_of(lambda);
    num * num / (2.0 * s * s)
}

/// Closed-form two-mode Hilbert–Schmidt distance,
/// D_ab(λ) = 2(1 − 4λ + 12λ² − 8λ³ + 7λ⁴) / (3 − 2λ + 3λ²)².
pub fn d_ab_closed(lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    let quartic = 1.0 - 4.0 * lambda + 12.0 * l2 - 8.0 * l2 * lambda + 7.0 * l2 * l2;
    let s = s_of(lambda);
    2.0 * quartic / (s * s)
}

/// Closed-form one-mode Bures fidelity,
/// F₁(λ) = √[(5 − 2λ + λ²) / (2(3 − 2λ + 3λ²))].
pub fn f1_closed(lambda: f64) -> f64 {
    ((5.0 - 2.0 * lambda + lambda * lambda) / (2.0 * s_of(lambda))).sqrt()
}

/// Closed-form two-mode Bures fidelity, F₂(λ) = √[2 / (3 − 2λ + 3λ²)].
pub fn f2_closed(lambda: f64) -> f64 {
    (2.0 / s_of(lambda)).sqrt()
}

/// The closed form matching a [`MetricKind`].
pub fn closed_form(kind: MetricKind, lambda: f64) -> f64 {
    match kind {
        MetricKind::HsOne => d_a_closed(lambda),
        MetricKind::HsTwo => d_ab_closed(lambda),
        MetricKind::BuresOne => f1_closed(lambda),
        MetricKind::BuresTwo => f2_closed(lambda),
    }
}
