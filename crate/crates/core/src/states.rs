//! Equatorial pure qubit inputs and conversions between state vectors,
//! density operators, and Bloch vectors.
//!
//! An equatorial qubit lives on one of the three great circles of the Bloch
//! sphere — the intersection of the x–z, x–y, or y–z plane with the sphere —
//! and is parametrized by a single real angle:
//!
//! * x–z: cos θ·|0⟩ + sin θ·|1⟩
//! * x–y: (|0⟩ + e^{iφ}·|1⟩)/√2
//! * y–z: cos θ·|0⟩ + i·sin θ·|1⟩

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, HERMITICITY_TOL};
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

/// Unit-norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-12;

/// Unit-trace tolerance for density operators.
pub const TRACE_TOL: f64 = 1e-10;

/// One of the three Bloch-sphere great circles the machines copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquatorPlane {
    /// Real-amplitude states cos θ·|0⟩ + sin θ·|1⟩.
    Xz,
    /// Balanced-amplitude states (|0⟩ + e^{iφ}·|1⟩)/√2.
    Xy,
    /// States cos θ·|0⟩ + i·sin θ·|1⟩.
    Yz,
}

impl EquatorPlane {
    /// All three planes, in a fixed order convenient for grids.
    pub const ALL: [EquatorPlane; 3] = [EquatorPlane::Xz, EquatorPlane::Xy, EquatorPlane::Yz];

    /// Lowercase name as used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            EquatorPlane::Xz => "xz",
            EquatorPlane::Xy => "xy",
            EquatorPlane::Yz => "yz",
        }
    }

    /// Angle period after which the parametrized density operator repeats:
    /// π for the two real-θ parametrizations (the state flips sign at θ+π),
    /// 2π for the phase parametrization.
    pub fn period(self) -> f64 {
        match self {
            EquatorPlane::Xz | EquatorPlane::Yz => PI,
            EquatorPlane::Xy => TAU,
        }
    }
}

impl fmt::Display for EquatorPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquatorPlane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xz" => Ok(EquatorPlane::Xz),
            "xy" => Ok(EquatorPlane::Xy),
            "yz" => Ok(EquatorPlane::Yz),
            other => Err(Error::InvalidArgument(format!(
                "unknown equator plane '{other}' (expected xz, xy, or yz)"
            ))),
        }
    }
}

/// A pure qubit on one of the three great circles, fixed by plane and angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquatorialInput {
    pub plane: EquatorPlane,
    pub angle: f64,
}

impl EquatorialInput {
    pub fn new(plane: EquatorPlane, angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "angle must be finite, got {angle}"
            )));
        }
        Ok(Self { plane, angle })
    }
}

/// Real Bloch 3-vector of a qubit density operator
/// ρ = (I + x·σₓ + y·σ_y + z·σ_z)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    /// Angle between two Bloch vectors in radians. Computed from
    /// atan2(‖a×b‖, a·b), which stays fully accurate for nearly parallel
    /// vectors where acos of the normalized dot product would lose half the
    /// significand.
    pub fn angle_between(&self, other: &Self) -> f64 {
        self.cross(other).norm().atan2(self.dot(other))
    }
}

/// Unit-norm 2-vector of the input state, per the plane's parametrization.
pub fn state_vector(input: &EquatorialInput) -> ComplexMatrix {
    let a = input.angle;
    let (upper, lower) = match input.plane {
        EquatorPlane::Xz => (c64(a.cos(), 0.0), c64(a.sin(), 0.0)),
        EquatorPlane::Xy => (
            c64(FRAC_1_SQRT_2, 0.0),
            c64(a.cos(), a.sin()) * FRAC_1_SQRT_2,
        ),
        EquatorPlane::Yz => (c64(a.cos(), 0.0), c64(0.0, a.sin())),
    };
    ComplexMatrix::new(2, 1, vec![upper, lower]).expect("finite trigonometric amplitudes")
}

/// Rank-1 density operator |ψ⟩⟨ψ| of a unit-norm column vector.
pub fn to_density(psi: &ComplexMatrix) -> Result<ComplexMatrix> {
    if psi.cols() != 1 {
        return Err(Error::DimensionMismatch {
            context: "to_density expects a column vector",
            rows: psi.rows(),
            cols: psi.cols(),
        });
    }
    let norm = psi.vector_norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(psi.mul(&psi.dagger()))
}

/// Bloch vector of a 2×2 density operator, with the sign convention
/// x = 2·Re ρ₀₁, y = 2·Im ρ₁₀, z = ρ₀₀ − ρ₁₁ (so the x–y state with
/// φ = π/2 maps to y = +1).
pub fn bloch_of_density(rho: &ComplexMatrix) -> Result<BlochVector> {
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::DimensionMismatch {
            context: "bloch_of_density expects a 2x2 matrix",
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    let dev = rho.hermitian_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    Ok(BlochVector {
        x: 2.0 * rho.get(0, 1).re,
        y: 2.0 * rho.get(1, 0).im,
        z: rho.get(0, 0).re - rho.get(1, 1).re,
    })
}
