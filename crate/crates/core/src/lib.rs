//! Simulation and verification library for a one-parameter family of
//! cloning machines for equatorial qubits.
//!
//! The machines copy pure qubits whose Bloch vectors lie on one of the three
//! great circles of the Bloch sphere (the x–z, x–y, or y–z equator). Each
//! machine is an isometry, parametrized by a single real λ ∈ (−1, 1), from
//! the input qubit into input ⊗ copy ⊗ machine; both output modes carry the
//! same reduced state, and the copy quality is independent of where on the
//! equator the input sits.
//!
//! The crate provides:
//!
//! * [`linalg`] — dense complex matrices, Kronecker products, partial
//!   traces, Hermitian eigendecomposition, and PSD square roots;
//! * [`states`] — equatorial inputs and Bloch-vector conversions;
//! * [`cloner`] — the machine family: derived parameters (ξ, η, q, y),
//!   isometry construction, and the cloning pipeline;
//! * [`metrics`] — Hilbert–Schmidt distances and Bures fidelities, both
//!   numeric and closed-form in λ;
//! * [`analysis`] — λ sweeps, input-independence scans, golden-section
//!   optimization, and a reference-constants report.
//!
//! Copy quality is optimal (for distances and the one-mode fidelity) at
//! λ = 3 − 2√2, where the machine shrinks every equatorial Bloch vector by
//! exactly 1/√2; the two-mode fidelity instead peaks at λ = 1/3.
//!
//! # Example
//!
//! ```
//! use eqcm_core::{clone_state, pure_fidelity, state_vector, EquatorPlane, EquatorialInput};
//!
//! // Clone the |0⟩ pole of the x–z equator with the λ = 0 machine.
//! let input = EquatorialInput::new(EquatorPlane::Xz, 0.0)?;
//! let output = clone_state(&input, 0.0)?;
//! let fidelity = pure_fidelity(&state_vector(&input), &output.rho_a)?;
//! assert!((fidelity - (5.0f64 / 6.0).sqrt()).abs() < 1e-12);
//! # Ok::<(), eqcm_core::Error>(())
//! ```

pub mod analysis;
pub mod cloner;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod states;

pub use analysis::{
    analytic_reference, angle_grid, default_lambda_grid, independence_scan, lambda_opt,
    numeric_metric, optimize_scalar, reproduce_constants, reproduce_constants_with_offset, sweep,
    ConstantRow, Direction, OptimumReport, SweepRecord,
};
pub use cloner::{
    build_isometry, clone_state, closed_form_rho_a, closed_form_rho_a_signed, CloneOutput,
    ClonerParams, MachineVectors,
};
pub use error::{Error, Result};
pub use linalg::{
    c64, hermitian_eig, partial_trace, psd_sqrt, tensor_product, Complex64, ComplexMatrix,
    SubsystemShape,
};
pub use metrics::{
    bures_fidelity, closed_form, d_a_closed, d_ab_closed, f1_closed, f2_closed, hs_distance,
    pure_fidelity, MetricKind,
};
pub use states::{
    bloch_of_density, state_vector, to_density, BlochVector, EquatorPlane, EquatorialInput,
};
