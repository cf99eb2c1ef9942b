//! The λ-parametrized family of cloning machines for equatorial qubits.
//!
//! Each machine is an isometry from the input qubit into the 8-dimensional
//! space input ⊗ copy ⊗ machine. The joint basis is indexed as
//! `4·(input bit) + 2·(copy bit) + (machine bit)`, with machine basis state
//! 0 written |↑⟩ and 1 written |↓⟩.
//!
//! For the x–z plane the two columns (images of |0⟩ and |1⟩) are
//!
//! ```text
//! |0⟩ ↦ q(|00⟩ + λ|11⟩)|↑⟩ + y(|10⟩ + |01⟩)|↓⟩
//! |1⟩ ↦ q(|11⟩ + λ|00⟩)|↓⟩ + y(|10⟩ + |01⟩)|↑⟩
//! ```
//!
//! with q = √(2/(3−2λ+3λ²)) and y = (1−λ)/√(2(3−2λ+3λ²)). The y–z plane
//! uses the same layout with λ → −λ in the q-terms, and the x–y plane uses
//! its own two-coefficient layout (see [`build_isometry`]). All derived
//! quantities (ξ, η, q, y) follow from λ alone; the two-dimensional machine
//! realization forces exactly these values, so no independent (ξ, η) machine
//! is exposed.

use crate::error::{Error, Result};
use crate::linalg::{c64, partial_trace, ComplexMatrix, SubsystemShape};
use crate::states::{state_vector, EquatorPlane, EquatorialInput, NORM_TOL};

/// The machine family parameter λ with its derived quantities.
///
/// Invariants (all hold to working precision by construction):
/// * ξ = (1−λ)²/(2(3−2λ+3λ²))
/// * η = (1−λ)(1−2ξ)/(1+λ²)
/// * (1+λ²)q² + 2y² = 1   (isometry normalization)
/// * 2qy = η and y² = ξ   (machine-vector overlaps)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClonerParams {
    pub lambda: f64,
    pub xi: f64,
    pub eta: f64,
    pub q: f64,
    pub y: f64,
}

impl ClonerParams {
    /// Derives all machine quantities from λ ∈ (−1, 1).
    pub fn derive(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= -1.0 || lambda >= 1.0 {
            return Err(Error::LambdaOutOfRange { lambda });
        }
        let s = 3.0 - 2.0 * lambda + 3.0 * lambda * lambda;
        let xi = (1.0 - lambda) * (1.0 - lambda) / (2.0 * s);
        let eta = (1.0 - lambda) * (1.0 - 2.0 * xi) / (1.0 + lambda * lambda);
        let q = (2.0 / s).sqrt();
        let y = (1.0 - lambda) / (2.0 * s).sqrt();
        Ok(Self {
            lambda,
            xi,
            eta,
            q,
            y,
        })
    }

    /// Scalar by which the machine shrinks every Bloch vector of its plane:
    /// s(λ) = η(1+λ). Equals 2/3 at λ = 0 and 1/√2 at λ = 3−2√2.
    pub fn shrink_factor(&self) -> f64 {
        self.eta * (1.0 + self.lambda)
    }

    /// The four machine-space vectors of the realization.
    pub fn machine_vectors(&self) -> MachineVectors {
        let vec2 = |up: f64, down: f64| {
            ComplexMatrix::new(2, 1, vec![c64(up, 0.0), c64(down, 0.0)])
                .expect("finite machine amplitudes")
        };
        MachineVectors {
            q0: vec2(self.q, 0.0),
            q1: vec2(0.0, self.q),
            y0: vec2(0.0, self.y),
            y1: vec2(self.y, 0.0),
        }
    }
}

/// The vectors q₀ = q|↑⟩, q₁ = q|↓⟩, y₀ = y|↓⟩, y₁ = y|↑⟩ in the machine
/// space; mutually orthogonal pairs (q₀⊥q₁, y₀⊥y₁, qⱼ⊥yⱼ) by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineVectors {
    pub q0: ComplexMatrix,
    pub q1: ComplexMatrix,
    pub y0: ComplexMatrix,
    pub y1: ComplexMatrix,
}

/// The full pure output on input ⊗ copy ⊗ machine together with its reduced
/// density operators.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneOutput {
    /// Unit-norm 8×1 joint state.
    pub joint: ComplexMatrix,
    /// Two-copy reduced operator (4×4).
    pub rho_ab: ComplexMatrix,
    /// Original-mode reduced operator (2×2); equals `rho_b`.
    pub rho_a: ComplexMatrix,
    /// Copy-mode reduced operator (2×2).
    pub rho_b: ComplexMatrix,
    /// Machine-mode reduced operator (2×2).
    pub rho_x: ComplexMatrix,
}

impl CloneOutput {
    /// Derives all reduced operators from a unit-norm joint state on three
    /// qubit factors ordered (input, copy, machine).
    pub fn from_joint(joint: ComplexMatrix) -> Result<Self> {
        if joint.rows() != 8 || joint.cols() != 1 {
            return Err(Error::DimensionMismatch {
                context: "joint state must be an 8x1 column vector",
                rows: joint.rows(),
                cols: joint.cols(),
            });
        }
        let norm = joint.vector_norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        let rho_full = joint.mul(&joint.dagger());
        let shape = SubsystemShape::qubits(3);
        let rho_ab = partial_trace(&rho_full, &shape, &[0, 1])?;
        let rho_a = partial_trace(&rho_full, &shape, &[0])?;
        let rho_b = partial_trace(&rho_full, &shape, &[1])?;
        let rho_x = partial_trace(&rho_full, &shape, &[2])?;
        Ok(Self {
            joint,
            rho_ab,
            rho_a,
            rho_b,
            rho_x,
        })
    }
}

/// Builds the 8×2 cloning isometry of the given plane; columns are the
/// images of |0⟩ and |1⟩ and are orthonormal for every λ ∈ (−1, 1).
pub fn build_isometry(plane: EquatorPlane, lambda: f64) -> Result<ComplexMatrix> {
    let p = ClonerParams::derive(lambda)?;
    let mut u = ComplexMatrix::zeros(8, 2);
    let set = |u: &mut ComplexMatrix, i: usize, j: usize, v: f64| u.set(i, j, c64(v, 0.0));
    match plane {
        // |0⟩ ↦ q(|00⟩ + λ|11⟩)|↑⟩ + y(|10⟩+|01⟩)|↓⟩
        // |1⟩ ↦ q(|11⟩ + λ|00⟩)|↓⟩ + y(|10⟩+|01⟩)|↑⟩
        EquatorPlane::Xz => {
            set(&mut u, 0b000, 0, p.q);
            set(&mut u, 0b110, 0, lambda * p.q);
            set(&mut u, 0b101, 0, p.y);
            set(&mut u, 0b011, 0, p.y);
            set(&mut u, 0b111, 1, p.q);
            set(&mut u, 0b001, 1, lambda * p.q);
            set(&mut u, 0b100, 1, p.y);
            set(&mut u, 0b010, 1, p.y);
        }
        // Same layout with λ → −λ in the q-terms.
        EquatorPlane::Yz => {
            set(&mut u, 0b000, 0, p.q);
            set(&mut u, 0b110, 0, -lambda * p.q);
            set(&mut u, 0b101, 0, p.y);
            set(&mut u, 0b011, 0, p.y);
            set(&mut u, 0b111, 1, p.q);
            set(&mut u, 0b001, 1, -lambda * p.q);
            set(&mut u, 0b100, 1, p.y);
            set(&mut u, 0b010, 1, p.y);
        }
        // |0⟩ ↦ g|00⟩|↑⟩ + h(|01⟩+|10⟩)|↓⟩, |1⟩ mirrored with 0↔1, ↑↔↓,
        // where g = 2(1−λ)/√(6−4λ+6λ²) and h = (1+λ)/√(6−4λ+6λ²).
        EquatorPlane::Xy => {
            let denom = (6.0 - 4.0 * lambda + 6.0 * lambda * lambda).sqrt();
            let g = 2.0 * (1.0 - lambda) / denom;
            let h = (1.0 + lambda) / denom;
            set(&mut u, 0b000, 0, g);
            set(&mut u, 0b011, 0, h);
            set(&mut u, 0b101, 0, h);
            set(&mut u, 0b111, 1, g);
            set(&mut u, 0b010, 1, h);
            set(&mut u, 0b100, 1, h);
        }
    }
    Ok(u)
}

/// Runs the machine on one equatorial input: applies the plane's isometry
/// to the input state and reduces the joint output.
pub fn clone_state(input: &EquatorialInput, lambda: f64) -> Result<CloneOutput> {
    let isometry = build_isometry(input.plane, lambda)?;
    let joint = isometry.mul(&state_vector(input));
    CloneOutput::from_joint(joint)
}

/// Closed-form one-mode output operator for a real-amplitude input with the
/// given α², taking αβ = +√(α²β²):
///
/// ```text
/// ρ_a = [[ξ + (α² + λ²β²)·w,  αβ·η(1+λ)        ],
///        [αβ·η(1+λ),          ξ + (β² + λ²α²)·w]],   w = (1−2ξ)/(1+λ²)
/// ```
pub fn closed_form_rho_a(alpha_sq: f64, params: &ClonerParams) -> Result<ComplexMatrix> {
    if !alpha_sq.is_finite() || !(0.0..=1.0).contains(&alpha_sq) {
        return Err(Error::AlphaSqOutOfRange { alpha_sq });
    }
    closed_form_rho_a_signed(alpha_sq.sqrt(), (1.0 - alpha_sq).sqrt(), params)
}

/// Closed-form one-mode output operator for real amplitudes (α, β) with
/// α² + β² = 1; accepts signed amplitudes so angle-generated inputs (where
/// αβ = cos θ·sin θ may be negative) evaluate exactly.
pub fn closed_form_rho_a_signed(
    alpha: f64,
    beta: f64,
    params: &ClonerParams,
) -> Result<ComplexMatrix> {
    let norm_sq = alpha * alpha + beta * beta;
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            norm: norm_sq.sqrt(),
        });
    }
    let l = params.lambda;
    let w = (1.0 - 2.0 * params.xi) / (1.0 + l * l);
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    let diag0 = params.xi + (a2 + l * l * b2) * w;
    let diag1 = params.xi + (b2 + l * l * a2) * w;
    let off = alpha * beta * params.eta * (1.0 + l);
    ComplexMatrix::new(
        2,
        2,
        vec![
            c64(diag0, 0.0),
            c64(off, 0.0),
            c64(off, 0.0),
            c64(diag1, 0.0),
        ],
    )
}
