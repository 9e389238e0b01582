//! Pinned verification tolerances.
//!
//! Class and index outputs are exact integers or rationals; floating point
//! appears only in residuals. Each gate below is sized to the numerical
//! method behind it, not tuned to make a particular run pass.

/// Unitarity gate on band operators before index or class extraction.
/// Band compositions of exact monomial entries accumulate only a handful of
/// rounding steps.
pub const UNITARY_GATE: f64 = 1e-9;

/// Corner sums of a genuine band unitary are exactly integral; this only
/// absorbs floating-point accumulation before snapping to an integer.
pub const INDEX_SNAP: f64 = 1e-6;

/// Agreement between the exact circle transition and its quadrature
/// verification. Trapezoid sums of trigonometric polynomials below the
/// Nyquist limit are exact up to rounding.
pub const FOURIER_NUMERIC: f64 = 1e-10;

/// Branch differences across chart overlaps are integers up to rounding in
/// `atan2` and one subtraction.
pub const BRANCH_INTEGRAL: f64 = 1e-9;

/// Hermitian-unitary certification of 2x2 matrices (a few exact flops).
pub const HERMITIAN_UNITARY: f64 = 1e-12;

/// Intertwiner identities are closed-form 2x2 algebra.
pub const INTERTWINE: f64 = 1e-12;

/// Gaussian-decay gate at the grid boundary for fields entering
/// verification.
pub const BOUNDARY_DECAY: f64 = 1e-10;

/// Relative residual for the ladder-algebra operator identities on damped
/// test fields (fourth-order stencils at the default grid sit well below
/// this).
pub const IDENTITY_REL: f64 = 1e-5;

/// Eigenvalue residual growth per ladder level for the Hermite tower.
pub fn tower_eig(level: usize) -> f64 {
    1e-4 * (1.0 + level as f64)
}

/// Gram-matrix deviation from identity for orthonormal frames.
pub const GRAM: f64 = 1e-6;

/// Eigen-relation residuals of conjugated frames.
pub const FRAME_EIG: f64 = 1e-3;

/// Unitarity and off-pattern mass of the measured equator transition.
pub const OVERLAP: f64 = 1e-6;

/// Phase-tracking residual allowed before snapping a winding to an integer.
pub const WINDING_RESIDUAL: f64 = 0.1;

/// Commutation of the oscillator Hamiltonian with constant component
/// matrices (discretization-exact).
pub const H_COMMUTE: f64 = 1e-8;

/// Norm defect of the discretized ground state.
pub const GROUND_NORM: f64 = 1e-8;

/// Eigen-residual of the discretized ground state.
pub const GROUND_EIG: f64 = 1e-5;

/// Annihilation residual of the discretized ground state.
pub const GROUND_ANNIHILATE: f64 = 1e-6;
