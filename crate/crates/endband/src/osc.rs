//! Grid verification of the harmonic-oscillator ladder algebra and the
//! spectral bundle over the sphere of involutions.
//!
//! Fields are complex (or `C^2`-valued) functions of one real variable on a
//! uniform grid, differentiated by fourth-order central stencils with zero
//! extension. The 2-D oscillator `H = -d^2/dx^2 + x^2` acts componentwise;
//! the hidden parameter is a Hermitian unitary `U` entering only through the
//! ladder pair `A_U = d/dx + Ux`, `A_U^* = -d/dx + Ux`.
//!
//! The sphere component of the parameter space is covered by two closed
//! hemispheres around the poles `P = diag(1, -1)` and `-P`. The intertwiners
//! `phi_plus`/`phi_minus` conjugate any `U` to its pole, so eigenframes over
//! each hemisphere are pole Hermite towers transported by a single constant
//! matrix. Comparing the two transports along the equator produces the
//! transition of the spectral bundle, whose per-index windings are measured
//! (not assumed) by phase tracking.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::band::MonomialLoop;
use crate::bundle::EndCocycle;
use crate::dense::DenseMat;
use crate::rational::Rational;
use crate::rng::SplitMix64;
use crate::seq::{CoinvClass, EPSeq, Functional};
use crate::tol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OscError {
    #[error("grid cannot resolve the requested field to default tolerances")]
    GridTooCoarse,
    #[error("{check} residual {value:e} exceeds {limit:e}")]
    ToleranceExceeded {
        check: &'static str,
        value: f64,
        limit: f64,
    },
    #[error("matrix is not Hermitian unitary")]
    NotHermitianUnitary,
    #[error("|z| > 1 is outside the hemisphere disc")]
    OutOfDisc,
    #[error("matrix does not lie on the requested closed hemisphere")]
    WrongHemisphere,
    #[error("winding of index {index} has phase-tracking residual {residual}")]
    WindingUnstable { index: i64, residual: f64 },
}

const C0: Complex64 = Complex64::ZERO;
const C1: Complex64 = Complex64::ONE;

// ---------------------------------------------------------------------------
// Grids and fields
// ---------------------------------------------------------------------------

/// Uniform grid on `[-x_max, x_max]` with `n_points` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_max: f64,
    n_points: usize,
}

impl GridSpec {
    pub fn new(x_max: f64, n_points: usize) -> Self {
        assert!(n_points >= 8 && x_max > 0.0);
        Self { x_max, n_points }
    }

    /// Default verification grid; sized so Gaussian truncation error is
    /// negligible against the stencil error.
    pub fn verification_default() -> Self {
        Self::new(12.0, 6144)
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> f64 {
        2.0 * self.x_max / (self.n_points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.x_max + i as f64 * self.step()
    }

    /// Whether default tolerances apply (the gates in the verification
    /// operations assume at least this resolution).
    fn resolves_defaults(&self) -> bool {
        self.n_points >= 1024 && self.x_max >= 10.0
    }
}

/// Complex scalar field sampled on a grid.
#[derive(Debug, Clone)]
pub struct GridField1 {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl GridField1 {
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let values = (0..grid.n_points()).map(|i| f(grid.node(i))).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.grid.step() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>())
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.grid.step()
            * self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| c * v)
    }

    pub fn normalized(&self) -> Self {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Largest modulus within the stencil width of either boundary.
    pub fn boundary_max(&self) -> f64 {
        let n = self.values.len();
        let edge = self.values[..2].iter().chain(&self.values[n - 2..]);
        edge.map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn decayed(&self) -> bool {
        self.boundary_max() < tol::BOUNDARY_DECAY
    }

    /// Fourth-order first derivative, zero extension outside the grid.
    pub fn deriv1(&self) -> Self {
        let n = self.values.len() as i64;
        let h = self.grid.step();
        let at = |j: i64| {
            if (0..n).contains(&j) {
                self.values[j as usize]
            } else {
                C0
            }
        };
        let values = (0..n)
            .map(|j| (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h))
            .collect();
        Self {
            grid: self.grid,
            values,
        }
    }

    /// Fourth-order second derivative, zero extension outside the grid.
    pub fn deriv2(&self) -> Self {
        let n = self.values.len() as i64;
        let h = self.grid.step();
        let at = |j: i64| {
            if (0..n).contains(&j) {
                self.values[j as usize]
            } else {
                C0
            }
        };
        let values = (0..n)
            .map(|j| {
                (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) - at(j - 2))
                    / (12.0 * h * h)
            })
            .collect();
        Self {
            grid: self.grid,
            values,
        }
    }

    /// Multiplication by the coordinate.
    pub fn mul_x(&self) -> Self {
        let grid = self.grid;
        Self {
            grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| grid.node(i) * v)
                .collect(),
        }
    }
}

/// `C^2`-valued field on a grid.
#[derive(Debug, Clone)]
pub struct GridField2 {
    pub c1: GridField1,
    pub c2: GridField1,
}

impl GridField2 {
    pub fn new(c1: GridField1, c2: GridField1) -> Self {
        debug_assert_eq!(c1.grid, c2.grid);
        Self { c1, c2 }
    }

    pub fn grid(&self) -> GridSpec {
        self.c1.grid
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.c1.norm() * self.c1.norm() + self.c2.norm() * self.c2.norm())
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.c1.inner(&other.c1) + self.c2.inner(&other.c2)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.c1.add(&other.c1), self.c2.add(&other.c2))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.c1.sub(&other.c1), self.c2.sub(&other.c2))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.c1.scale(c), self.c2.scale(c))
    }

    pub fn boundary_max(&self) -> f64 {
        self.c1.boundary_max().max(self.c2.boundary_max())
    }

    fn decayed(&self) -> bool {
        self.boundary_max() < tol::BOUNDARY_DECAY
    }

    /// Pointwise constant-matrix action.
    pub fn apply_mat(&self, m: &Mat2) -> Self {
        Self::new(
            self.c1.scale(m.0[0][0]).add(&self.c2.scale(m.0[0][1])),
            self.c1.scale(m.0[1][0]).add(&self.c2.scale(m.0[1][1])),
        )
    }
}

// ---------------------------------------------------------------------------
// 1-D ladder algebra
// ---------------------------------------------------------------------------

/// Ladder direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// `A = d/dx + a x`
    Annihilate,
    /// `A* = -d/dx + a x`
    Create,
}

/// Normalized Gaussian ground state `(a/pi)^{1/4} e^{-a x^2 / 2}`.
pub fn ground_state(a: f64, grid: GridSpec) -> Result<GridField1, OscError> {
    if !grid.resolves_defaults() || a * grid.x_max() * grid.x_max() < 50.0 {
        return Err(OscError::GridTooCoarse);
    }
    let norm = libm::pow(a / core::f64::consts::PI, 0.25);
    Ok(GridField1::from_fn(grid, |x| {
        Complex64::new(norm * libm::exp(-0.5 * a * x * x), 0.0)
    }))
}

/// `A f` or `A* f` for the 1-D oscillator at stiffness `a`.
pub fn ladder_1d(f: &GridField1, a: f64, dir: Ladder) -> GridField1 {
    let ax = f.mul_x().scale(Complex64::new(a, 0.0));
    match dir {
        Ladder::Annihilate => f.deriv1().add(&ax),
        Ladder::Create => ax.sub(&f.deriv1()),
    }
}

/// `H f = -f'' + a^2 x^2 f`.
pub fn hamiltonian_1d(f: &GridField1, a: f64) -> GridField1 {
    let x2 = f.mul_x().mul_x().scale(Complex64::new(a * a, 0.0));
    x2.sub(&f.deriv2())
}

/// Hermite tower `psi_k = A* psi_{k-1} / sqrt(2 k a)` up to `k_max`,
/// renormalized at each rung; gated on the ladder relation itself, the
/// eigen-residuals, and the Gram matrix.
///
/// The creation step is evaluated through `A* = 2 a x - A`, which on
/// eigenfields collapses to the derivative-free three-term recurrence
/// `sqrt(2 k a) psi_k = 2 a x psi_{k-1} - sqrt(2 (k-1) a) psi_{k-2}`.
/// Iterating the difference stencil for `A*` instead would amplify
/// grid-scale rounding noise by the stencil's maximal gain (about `1/h`)
/// per rung, which destroys the tower long before `k = 12`. One stencil
/// application on a smooth field is accurate, so the finite-difference
/// ladder and Hamiltonian stay as independent gates on every rung.
pub fn hermite_tower(a: f64, k_max: usize, grid: GridSpec) -> Result<Vec<GridField1>, OscError> {
    let mut tower = vec![ground_state(a, grid)?];
    for k in 1..=k_max {
        let scale = libm::sqrt(2.0 * k as f64 * a);
        let mut up = tower[k - 1].mul_x().scale(Complex64::new(2.0 * a, 0.0));
        if k >= 2 {
            let down = libm::sqrt(2.0 * (k - 1) as f64 * a);
            up = up.sub(&tower[k - 2].scale(Complex64::new(down, 0.0)));
        }
        let psi = up.scale(Complex64::new(1.0 / scale, 0.0));
        if !psi.decayed() {
            return Err(OscError::GridTooCoarse);
        }
        // the defining recursion, checked by the difference-stencil route
        let ladder_resid = ladder_1d(&tower[k - 1], a, Ladder::Create)
            .sub(&psi.scale(Complex64::new(scale, 0.0)))
            .norm()
            / scale;
        let limit = tol::tower_eig(k);
        if ladder_resid > limit {
            return Err(OscError::ToleranceExceeded {
                check: "tower ladder relation",
                value: ladder_resid,
                limit,
            });
        }
        tower.push(psi.normalized());
    }
    for (k, psi) in tower.iter().enumerate() {
        let want = (2 * k + 1) as f64 * a;
        let resid = hamiltonian_1d(psi, a)
            .sub(&psi.scale(Complex64::new(want, 0.0)))
            .norm();
        let limit = tol::tower_eig(k);
        if resid > limit * psi.norm() {
            return Err(OscError::ToleranceExceeded {
                check: "tower eigen-relation",
                value: resid,
                limit,
            });
        }
    }
    let gram = gram_defect_1d(&tower);
    if gram > tol::GRAM {
        return Err(OscError::ToleranceExceeded {
            check: "tower Gram",
            value: gram,
            limit: tol::GRAM,
        });
    }
    Ok(tower)
}

fn gram_defect_1d(fields: &[GridField1]) -> f64 {
    let mut worst = 0.0f64;
    for (i, f) in fields.iter().enumerate() {
        for (j, g) in fields.iter().enumerate() {
            let want = if i == j { C1 } else { C0 };
            worst = worst.max((f.inner(g) - want).norm());
        }
    }
    worst
}

/// Residual table of a verification sweep: one row per operator identity.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub rows: Vec<(&'static str, f64)>,
}

impl IdentityReport {
    pub fn worst(&self) -> f64 {
        self.rows.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    /// Error naming the first identity that violates `limit`.
    pub fn check(&self, limit: f64) -> Result<(), OscError> {
        for (name, value) in &self.rows {
            if *value > limit {
                return Err(OscError::ToleranceExceeded {
                    check: name,
                    value: *value,
                    limit,
                });
            }
        }
        Ok(())
    }
}

fn rel(diff: f64, lhs: f64, rhs: f64) -> f64 {
    diff / lhs.max(rhs).max(1e-30)
}

/// Gaussian-damped random polynomial of degree <= 5.
fn random_damped(grid: GridSpec, rng: &mut SplitMix64) -> GridField1 {
    let coeffs: Vec<Complex64> = (0..6)
        .map(|_| Complex64::new(rng.next_signed(), rng.next_signed()))
        .collect();
    GridField1::from_fn(grid, |x| {
        let u = x / 3.0;
        let mut p = C0;
        for &c in coeffs.iter().rev() {
            p = p * u + c;
        }
        p * libm::exp(-0.5 * x * x)
    })
}

/// Measure the five 1-D ladder identities on random damped fields; the
/// reported numbers are max relative residuals.
pub fn identity_residuals_1d(
    a: f64,
    trials: usize,
    seed: u64,
    grid: GridSpec,
) -> Result<IdentityReport, OscError> {
    let mut rng = SplitMix64::new(seed);
    let mut rows = [
        ("A A* = H + a", 0.0f64),
        ("A* A = H - a", 0.0f64),
        ("[A, A*] = 2a", 0.0f64),
        ("[H, A] = -2a A", 0.0f64),
        ("[H, A*] = 2a A*", 0.0f64),
    ];
    let ca = Complex64::new(a, 0.0);
    for _ in 0..trials {
        let f = random_damped(grid, &mut rng);
        if !f.decayed() {
            return Err(OscError::GridTooCoarse);
        }
        let af = ladder_1d(&f, a, Ladder::Annihilate);
        let cf = ladder_1d(&f, a, Ladder::Create);
        let hf = hamiltonian_1d(&f, a);
        let a_cf = ladder_1d(&cf, a, Ladder::Annihilate);
        let c_af = ladder_1d(&af, a, Ladder::Create);

        let rhs = hf.add(&f.scale(ca));
        rows[0].1 = rows[0].1.max(rel(a_cf.sub(&rhs).norm(), a_cf.norm(), rhs.norm()));

        let rhs = hf.sub(&f.scale(ca));
        rows[1].1 = rows[1].1.max(rel(c_af.sub(&rhs).norm(), c_af.norm(), rhs.norm()));

        let lhs = a_cf.sub(&c_af);
        let rhs = f.scale(2.0 * ca);
        rows[2].1 = rows[2].1.max(rel(lhs.sub(&rhs).norm(), lhs.norm(), rhs.norm()));

        let lhs = hamiltonian_1d(&af, a).sub(&ladder_1d(&hf, a, Ladder::Annihilate));
        let rhs = af.scale(-2.0 * ca);
        rows[3].1 = rows[3].1.max(rel(lhs.sub(&rhs).norm(), lhs.norm(), rhs.norm()));

        let lhs = hamiltonian_1d(&cf, a).sub(&ladder_1d(&hf, a, Ladder::Create));
        let rhs = cf.scale(2.0 * ca);
        rows[4].1 = rows[4].1.max(rel(lhs.sub(&rhs).norm(), lhs.norm(), rhs.norm()));
    }
    Ok(IdentityReport {
        rows: rows.to_vec(),
    })
}

/// Measure and gate the 1-D identities.
pub fn verify_identities_1d(
    a: f64,
    trials: usize,
    limit: f64,
    seed: u64,
    grid: GridSpec,
) -> Result<IdentityReport, OscError> {
    let report = identity_residuals_1d(a, trials, seed, grid)?;
    report.check(limit)?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// 2x2 parameter matrices
// ---------------------------------------------------------------------------

/// Plain 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[C1, C0], [C0, C1]])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = [[C0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i][0] * other.0[0][j] + self.0[i][1] * other.0[1][j];
            }
        }
        Mat2(out)
    }

    pub fn adjoint(&self) -> Self {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = [[C0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i][j] - other.0[i][j];
            }
        }
        Mat2(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.0;
        for row in &mut out {
            for v in row {
                *v *= c;
            }
        }
        Mat2(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    fn hermitian_unitary_defect(&self) -> f64 {
        let herm = self.sub(&self.adjoint()).max_abs();
        let unit = self.mul(&self.adjoint()).sub(&Mat2::identity()).max_abs();
        herm.max(unit)
    }
}

/// Connected components of the Hermitian unitary 2x2 matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UH2Component {
    /// `det = -1`, the sphere.
    Sphere,
    PlusIdentity,
    MinusIdentity,
}

/// Hermitian unitary 2x2 matrix (an involution).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UH2 {
    m: Mat2,
}

impl UH2 {
    pub fn new(m: Mat2) -> Result<Self, OscError> {
        if m.hermitian_unitary_defect() > tol::HERMITIAN_UNITARY {
            return Err(OscError::NotHermitianUnitary);
        }
        Ok(Self { m })
    }

    pub fn mat(&self) -> &Mat2 {
        &self.m
    }

    /// North pole `P = diag(1, -1)`.
    pub fn pole_north() -> Self {
        Self {
            m: Mat2([[C1, C0], [C0, -C1]]),
        }
    }

    pub fn pole_south() -> Self {
        Self {
            m: Self::pole_north().m.scale(-C1),
        }
    }

    pub fn classify(&self) -> UH2Component {
        if (self.m.det() + C1).norm() < 1e-9 {
            UH2Component::Sphere
        } else if (self.m.0[0][0] - C1).norm() < 1e-9 {
            UH2Component::PlusIdentity
        } else {
            UH2Component::MinusIdentity
        }
    }
}

/// Classify a raw matrix as a point of `UH(2) = S^2 u S^0`, rejecting
/// anything that is not Hermitian unitary. Determinant `-1` (zero trace) is
/// the sphere; otherwise the matrix is `+-E_2`.
pub fn uh2_classify(m: &Mat2) -> Result<UH2Component, OscError> {
    Ok(UH2::new(*m)?.classify())
}

/// Hemisphere of the sphere component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hemisphere {
    Plus,
    Minus,
}

/// Point of the closed hemisphere over disc coordinate `z`, `|z| <= 1`:
/// `[[s, z], [conj z, -s]]` with `s = sqrt(1 - |z|^2)` on the upper
/// hemisphere, and the sign of `s` flipped on the lower. The two formulas
/// agree on the equator `|z| = 1`.
pub fn u_point(z: Complex64, hemisphere: Hemisphere) -> Result<UH2, OscError> {
    let r2 = z.norm_sqr();
    if r2 > 1.0 + 1e-12 {
        return Err(OscError::OutOfDisc);
    }
    // Snap points on the equator to it exactly: a rounding-level gap would
    // otherwise give the hemisphere formulas sqrt(gap)-sized disagreement.
    let gap = (1.0 - r2).max(0.0);
    let s = Complex64::new(if gap < 1e-12 { 0.0 } else { libm::sqrt(gap) }, 0.0);
    let s = match hemisphere {
        Hemisphere::Plus => s,
        Hemisphere::Minus => -s,
    };
    UH2::new(Mat2([[s, z], [z.conj(), -s]]))
}

fn sphere_gate(u: &UH2) -> Result<(), OscError> {
    if u.classify() != UH2Component::Sphere {
        return Err(OscError::WrongHemisphere);
    }
    Ok(())
}

/// Intertwiner conjugating an upper-hemisphere point to the north pole:
/// Hermitian unitary with `phi_plus(U) U = P phi_plus(U)`, continuous in `U`
/// and equal to `P` at the pole itself.
pub fn phi_plus(u: &UH2) -> Result<UH2, OscError> {
    sphere_gate(u)?;
    let r = u.m.0[0][0].re;
    if r < -1e-9 {
        return Err(OscError::WrongHemisphere);
    }
    let r = r.clamp(0.0, 1.0);
    let phase = unit_phase(u.m.0[0][1]);
    let up = Complex64::new(libm::sqrt(1.0 + r) / core::f64::consts::SQRT_2, 0.0);
    let dn = Complex64::new(libm::sqrt(1.0 - r) / core::f64::consts::SQRT_2, 0.0);
    UH2::new(Mat2([
        [up, dn * phase],
        [dn * phase.conj(), -up],
    ]))
}

/// Intertwiner conjugating a lower-hemisphere point to the south pole:
/// `phi_minus(U) U = -P phi_minus(U)`, equal to `-P` at the pole.
pub fn phi_minus(u: &UH2) -> Result<UH2, OscError> {
    sphere_gate(u)?;
    let r = u.m.0[1][1].re;
    if r < -1e-9 {
        return Err(OscError::WrongHemisphere);
    }
    let r = r.clamp(0.0, 1.0);
    let phase = unit_phase(u.m.0[0][1]);
    let up = Complex64::new(libm::sqrt(1.0 + r) / core::f64::consts::SQRT_2, 0.0);
    let dn = Complex64::new(libm::sqrt(1.0 - r) / core::f64::consts::SQRT_2, 0.0);
    UH2::new(Mat2([
        [-up, dn * phase],
        [dn * phase.conj(), up],
    ]))
}

fn unit_phase(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n < 1e-15 {
        C1
    } else {
        z / n
    }
}

// ---------------------------------------------------------------------------
// 2-D ladder algebra
// ---------------------------------------------------------------------------

/// `A_U f = f' + U (x f)` or its adjoint `A_U^* f = -f' + U (x f)`.
pub fn ladder_2d(f: &GridField2, u: &UH2, dir: Ladder) -> GridField2 {
    let ux = GridField2::new(f.c1.mul_x(), f.c2.mul_x()).apply_mat(u.mat());
    let df = GridField2::new(f.c1.deriv1(), f.c2.deriv1());
    match dir {
        Ladder::Annihilate => df.add(&ux),
        Ladder::Create => ux.sub(&df),
    }
}

/// `H f = -f'' + x^2 f`, componentwise (the 2-D oscillator is normalized to
/// `a = 1` and is independent of `U`).
pub fn hamiltonian_2d(f: &GridField2) -> GridField2 {
    GridField2::new(
        hamiltonian_1d(&f.c1, 1.0),
        hamiltonian_1d(&f.c2, 1.0),
    )
}

fn random_damped_2(grid: GridSpec, rng: &mut SplitMix64) -> GridField2 {
    GridField2::new(random_damped(grid, rng), random_damped(grid, rng))
}

/// Uniformish point on the sphere component.
pub fn random_sphere_point(rng: &mut SplitMix64) -> UH2 {
    let rho = libm::sqrt(rng.next_f64());
    let theta = rng.next_f64() * core::f64::consts::TAU;
    let z = Complex64::from_polar(rho, theta);
    let hemi = if rng.next_u64().is_multiple_of(2) {
        Hemisphere::Plus
    } else {
        Hemisphere::Minus
    };
    u_point(z, hemi).expect("|z| <= 1")
}

/// Measure the five 2-D ladder identities at a fixed parameter matrix.
pub fn identity_residuals_2d(
    u: &UH2,
    trials: usize,
    seed: u64,
    grid: GridSpec,
) -> Result<IdentityReport, OscError> {
    let mut rng = SplitMix64::new(seed);
    let mut rows = [
        ("A_U A_U* = H + U", 0.0f64),
        ("A_U* A_U = H - U", 0.0f64),
        ("[A_U, A_U*] = 2U", 0.0f64),
        ("[H, A_U] = -2U A_U", 0.0f64),
        ("[H, A_U*] = 2U A_U*", 0.0f64),
    ];
    let two_u = u.mat().scale(2.0 * C1);
    for _ in 0..trials {
        let f = random_damped_2(grid, &mut rng);
        if !f.decayed() {
            return Err(OscError::GridTooCoarse);
        }
        let af = ladder_2d(&f, u, Ladder::Annihilate);
        let cf = ladder_2d(&f, u, Ladder::Create);
        let hf = hamiltonian_2d(&f);
        let a_cf = ladder_2d(&cf, u, Ladder::Annihilate);
        let c_af = ladder_2d(&af, u, Ladder::Create);

        let rhs = hf.add(&f.apply_mat(u.mat()));
        rows[0].1 = rows[0].1.max(rel(a_cf.sub(&rhs).norm(), a_cf.norm(), rhs.norm()));

        let rhs = hf.sub(&f.apply_mat(u.mat()));
        rows[1].1 = rows[1].1.max(rel(c_af.sub(&rhs).norm(), c_af.norm(), rhs.norm()));

        let lhs = a_cf.sub(&c_af);
        let rhs = f.apply_mat(&two_u);
        rows[2].1 = rows[2].1.max(rel(lhs.sub(&rhs).norm(), lhs.norm(), rhs.norm()));

        let lhs = hamiltonian_2d(&af).sub(&ladder_2d(&hf, u, Ladder::Annihilate));
        let rhs = af.apply_mat(&two_u).scale(-C1);
        rows[3].1 = rows[3].1.max(rel(lhs.sub(&rhs).norm(), lhs.norm(), rhs.norm()));

        let lhs = hamiltonian_2d(&cf).sub(&ladder_2d(&hf, u, Ladder::Create));
        let rhs = cf.apply_mat(&two_u);
        rows[4].1 = rows[4].1.max(rel(lhs.sub(&rhs).norm(), lhs.norm(), rhs.norm()));
    }
    Ok(IdentityReport {
        rows: rows.to_vec(),
    })
}

/// Measure and gate the 2-D identities.
pub fn verify_identities_2d(
    u: &UH2,
    trials: usize,
    limit: f64,
    seed: u64,
    grid: GridSpec,
) -> Result<IdentityReport, OscError> {
    let report = identity_residuals_2d(u, trials, seed, grid)?;
    report.check(limit)?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Frames and the equator transition
// ---------------------------------------------------------------------------

/// How ladder levels of the two components are enumerated by `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameOrdering {
    /// Component 1 on `k >= 0`, component 2 on `k < 0` (swapped on the lower
    /// hemisphere); indices run over `[-k_max, k_max]`.
    Split,
    /// Levels alternate between components; indices run over `[0, 2 k_max]`.
    Interleaved,
}

/// Orthonormal eigenframe over one hemisphere: the pole Hermite frame
/// transported by the intertwiner of `u`.
#[derive(Debug, Clone)]
pub struct OscFrame {
    u: UH2,
    hemisphere: Hemisphere,
    ordering: FrameOrdering,
    indices: Vec<i64>,
    fields: Vec<GridField2>,
}

impl OscFrame {
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn fields(&self) -> &[GridField2] {
        &self.fields
    }

    pub fn field(&self, pos: usize) -> &GridField2 {
        &self.fields[pos]
    }

    pub fn hemisphere(&self) -> Hemisphere {
        self.hemisphere
    }

    /// Ladder level of the `pos`-th frame member.
    pub fn tower_level(&self, pos: usize) -> usize {
        let k = self.indices[pos];
        match self.ordering {
            FrameOrdering::Split => {
                if k >= 0 {
                    k as usize
                } else {
                    (-k - 1) as usize
                }
            }
            FrameOrdering::Interleaved => (k / 2) as usize,
        }
    }

    /// Signed level `k~` in the eigen-relation `H phi = (2 k~ U + E_2) phi`:
    /// positive where the pole matrix fixes the member's component, negative
    /// where it flips it.
    pub fn signed_level(&self, pos: usize) -> i64 {
        let n = self.tower_level(pos) as i64;
        let k = self.indices[pos];
        let plus_component = match self.ordering {
            FrameOrdering::Split => k >= 0,
            FrameOrdering::Interleaved => k % 2 == 0,
        };
        if plus_component {
            n
        } else {
            -n
        }
    }

    pub fn gram_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, f) in self.fields.iter().enumerate() {
            for (j, g) in self.fields.iter().enumerate() {
                let want = if i == j { C1 } else { C0 };
                worst = worst.max((f.inner(g) - want).norm());
            }
        }
        worst
    }

    /// Max of the scalar eigen-residual `|H phi - (2 level + 1) phi|` and
    /// the matrix relation residual `|H phi - (2 k~ U + E_2) phi|`.
    pub fn eigen_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (pos, f) in self.fields.iter().enumerate() {
            let hf = hamiltonian_2d(f);
            let scalar = (2 * self.tower_level(pos) + 1) as f64;
            worst = worst.max(hf.sub(&f.scale(Complex64::new(scalar, 0.0))).norm());
            let rel_mat = self
                .u
                .mat()
                .scale(Complex64::new(2.0 * self.signed_level(pos) as f64, 0.0));
            let rhs = f.apply_mat(&rel_mat).add(f);
            worst = worst.max(hf.sub(&rhs).norm());
        }
        worst
    }
}

fn pole_frame(
    hemisphere: Hemisphere,
    ordering: FrameOrdering,
    k_max: usize,
    tower: &[GridField1],
    grid: GridSpec,
) -> (Vec<i64>, Vec<GridField2>) {
    let zero = GridField1::from_fn(grid, |_| C0);
    let member = |level: usize, first_component: bool| {
        if first_component {
            GridField2::new(tower[level].clone(), zero.clone())
        } else {
            GridField2::new(zero.clone(), tower[level].clone())
        }
    };
    // On the upper hemisphere the nonnegative ray carries component 1; the
    // lower hemisphere swaps components.
    let swap = hemisphere == Hemisphere::Minus;
    let indices: Vec<i64> = match ordering {
        FrameOrdering::Split => (-(k_max as i64)..=k_max as i64).collect(),
        FrameOrdering::Interleaved => (0..=2 * k_max as i64).collect(),
    };
    let fields = indices
        .iter()
        .map(|&k| match ordering {
            FrameOrdering::Split => {
                let (level, first) = if k >= 0 {
                    (k as usize, true)
                } else {
                    ((-k - 1) as usize, false)
                };
                member(level, first ^ swap)
            }
            FrameOrdering::Interleaved => {
                let level = (k / 2) as usize;
                member(level, (k % 2 == 0) ^ swap)
            }
        })
        .collect();
    (indices, fields)
}

/// Eigenframe of `H` over the hemisphere of `u`: the pole frame conjugated
/// by the intertwiner. Gated on orthonormality and both eigen-relations.
pub fn frame(
    u: &UH2,
    hemisphere: Hemisphere,
    k_max: usize,
    ordering: FrameOrdering,
    grid: GridSpec,
) -> Result<OscFrame, OscError> {
    let phi = match hemisphere {
        Hemisphere::Plus => phi_plus(u)?,
        Hemisphere::Minus => phi_minus(u)?,
    };
    let tower = hermite_tower(1.0, k_max, grid)?;
    let (indices, pole) = pole_frame(hemisphere, ordering, k_max, &tower, grid);
    let fields = pole.iter().map(|f| f.apply_mat(phi.mat())).collect();
    let out = OscFrame {
        u: *u,
        hemisphere,
        ordering,
        indices,
        fields,
    };
    let gram = out.gram_defect();
    if gram > tol::GRAM {
        return Err(OscError::ToleranceExceeded {
            check: "frame Gram",
            value: gram,
            limit: tol::GRAM,
        });
    }
    let eig = out.eigen_defect();
    if eig > tol::FRAME_EIG {
        return Err(OscError::ToleranceExceeded {
            check: "frame eigen-relation",
            value: eig,
            limit: tol::FRAME_EIG,
        });
    }
    Ok(out)
}

/// Measured equator transition between the two hemisphere frames.
#[derive(Debug, Clone)]
pub struct EquatorOverlap {
    /// Frame indices labelling rows and columns.
    pub indices: Vec<i64>,
    /// `mat[k][l] = <frame(U_z, minus)_k, frame(U_z, plus)_l>`.
    pub mat: DenseMat,
    /// Measured pairing column for each row.
    pub pairing: Vec<usize>,
    pub unitary_defect: f64,
    pub off_pattern: f64,
}

fn overlap_from_mat(indices: Vec<i64>, mat: DenseMat) -> Result<EquatorOverlap, OscError> {
    let dim = indices.len();
    let mut pairing = Vec::with_capacity(dim);
    let mut off_pattern = 0.0f64;
    for r in 0..dim {
        let mut best = 0usize;
        for c in 0..dim {
            if mat.get(r, c).norm() > mat.get(r, best).norm() {
                best = c;
            }
        }
        for c in 0..dim {
            if c != best {
                off_pattern = off_pattern.max(mat.get(r, c).norm());
            }
        }
        pairing.push(best);
    }
    let unitary_defect = mat.unitarity_defect();
    let out = EquatorOverlap {
        indices,
        mat,
        pairing,
        unitary_defect,
        off_pattern,
    };
    if out.unitary_defect > tol::OVERLAP {
        return Err(OscError::ToleranceExceeded {
            check: "equator overlap unitarity",
            value: out.unitary_defect,
            limit: tol::OVERLAP,
        });
    }
    if out.off_pattern > tol::OVERLAP {
        return Err(OscError::ToleranceExceeded {
            check: "equator overlap off-pattern mass",
            value: out.off_pattern,
            limit: tol::OVERLAP,
        });
    }
    Ok(out)
}

/// Equator transition at `z` on the unit circle, measured directly from the
/// two hemisphere frames: `T_{kl} = <minus_k, plus_l>`. Gated unitary and
/// supported on a single pairing diagonal.
pub fn equator_overlap(
    z: Complex64,
    k_max: usize,
    grid: GridSpec,
) -> Result<EquatorOverlap, OscError> {
    let u = u_point(unit_phase(z), Hemisphere::Plus)?;
    let minus = frame(&u, Hemisphere::Minus, k_max, FrameOrdering::Split, grid)?;
    let plus = frame(&u, Hemisphere::Plus, k_max, FrameOrdering::Split, grid)?;
    let dim = minus.indices().len();
    let mut mat = DenseMat::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            mat.set(r, c, minus.field(r).inner(plus.field(c)));
        }
    }
    overlap_from_mat(minus.indices().to_vec(), mat)
}

/// Precomputed equator sweep: the pole frames and their componentwise cross
/// Gram matrices are `z`-independent, so each sample only costs the 2x2
/// intertwiner product. The assembled matrix is the same bilinear expansion
/// of `<phi_minus p_k, phi_plus p_l>` that [`equator_overlap`] integrates
/// directly.
pub struct EquatorSweep {
    indices: Vec<i64>,
    /// `cross[c][c'][k, l] = <pole_minus_k[c], pole_plus_l[c']>`.
    cross: [[DenseMat; 2]; 2],
}

impl EquatorSweep {
    pub fn new(k_max: usize, ordering: FrameOrdering, grid: GridSpec) -> Result<Self, OscError> {
        let tower = hermite_tower(1.0, k_max, grid)?;
        let (indices, minus) = pole_frame(Hemisphere::Minus, ordering, k_max, &tower, grid);
        let (_, plus) = pole_frame(Hemisphere::Plus, ordering, k_max, &tower, grid);
        let dim = indices.len();
        let mut cross =
            [[DenseMat::zeros(dim, dim), DenseMat::zeros(dim, dim)],
             [DenseMat::zeros(dim, dim), DenseMat::zeros(dim, dim)]];
        for (r, pm) in minus.iter().enumerate() {
            for (c, pl) in plus.iter().enumerate() {
                cross[0][0].set(r, c, pm.c1.inner(&pl.c1));
                cross[0][1].set(r, c, pm.c1.inner(&pl.c2));
                cross[1][0].set(r, c, pm.c2.inner(&pl.c1));
                cross[1][1].set(r, c, pm.c2.inner(&pl.c2));
            }
        }
        Ok(Self { indices, cross })
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Transition matrix at `z`: `sum_{c c'} C(z)_{c c'} cross[c][c']` for
    /// the constant comparison matrix `C(z) = phi_minus(U_z) phi_plus(U_z)`.
    pub fn overlap(&self, z: Complex64) -> Result<EquatorOverlap, OscError> {
        let u = u_point(unit_phase(z), Hemisphere::Plus)?;
        let c = phi_minus(&u)?.mat().mul(phi_plus(&u)?.mat());
        let dim = self.indices.len();
        let mut mat = DenseMat::zeros(dim, dim);
        for r in 0..dim {
            for cc in 0..dim {
                let mut acc = C0;
                for (a, row) in c.0.iter().enumerate() {
                    for (b, &coef) in row.iter().enumerate() {
                        acc += coef * self.cross[a][b].get(r, cc);
                    }
                }
                mat.set(r, cc, acc);
            }
        }
        overlap_from_mat(self.indices.clone(), mat)
    }

    /// Winding of each tracked pairing entry around the circle, by unwrapped
    /// phase accumulation over `samples` points.
    pub fn windings(&self, samples: usize) -> Result<Vec<(i64, i64)>, OscError> {
        assert!(samples >= 64);
        let dim = self.indices.len();
        let first = self.overlap(C1)?;
        let pairing = first.pairing.clone();
        let mut prev: Vec<Complex64> = (0..dim).map(|r| first.mat.get(r, pairing[r])).collect();
        let mut acc = vec![0.0f64; dim];
        for j in 1..=samples {
            let z = Complex64::from_polar(1.0, core::f64::consts::TAU * j as f64 / samples as f64);
            let t = self.overlap(z)?;
            for r in 0..dim {
                let v = t.mat.get(r, pairing[r]);
                if v.norm() < 0.5 {
                    return Err(OscError::WindingUnstable {
                        index: self.indices[r],
                        residual: v.norm(),
                    });
                }
                acc[r] += (v / prev[r]).arg();
                prev[r] = v;
            }
        }
        let mut out = Vec::with_capacity(dim);
        for (&index, &total) in self.indices.iter().zip(&acc) {
            let turns = total / core::f64::consts::TAU;
            let snapped = libm::round(turns);
            let residual = (turns - snapped).abs();
            if residual > tol::WINDING_RESIDUAL {
                return Err(OscError::WindingUnstable { index, residual });
            }
            out.push((index, snapped as i64));
        }
        Ok(out)
    }
}

/// Winding exponents of the split-ordered equator transition on
/// `[-k_max, k_max]`.
pub fn winding_per_index(
    k_max: usize,
    samples: usize,
    grid: GridSpec,
) -> Result<Vec<(i64, i64)>, OscError> {
    EquatorSweep::new(k_max, FrameOrdering::Split, grid)?.windings(samples)
}

/// The oscillator bundle over the sphere with its measured invariants.
#[derive(Debug, Clone)]
pub struct OscBundle {
    pub windings: Vec<(i64, i64)>,
    pub exponents: EPSeq<i64>,
    pub exponent_class: CoinvClass,
    pub cocycle: EndCocycle,
    /// `alpha1` against the dual of the half-half sequence.
    pub alpha1: Rational,
}

/// Assemble the spectral bundle of the 2-D oscillator from the measured
/// equator windings: the sphere cocycle whose equator loop has the
/// eventually periodic extension of the winding window as exponents.
pub fn oscillator_bundle(k_max: usize, grid: GridSpec) -> Result<OscBundle, OscError> {
    assert!(k_max >= 4);
    let windings = winding_per_index(k_max, 64, grid)?;
    let exponents = ep_extension(&windings);
    let exponent_class = exponents.coinv_class();
    let cocycle = EndCocycle::Sphere {
        equator: MonomialLoop::diagonal(exponents.clone()),
    };
    let alpha1 = Functional::tail_split().pair(&exponent_class);
    Ok(OscBundle {
        windings,
        exponents,
        exponent_class,
        cocycle,
        alpha1,
    })
}

/// Interleaved-ordering analysis: measured windings, their class, and the
/// triviality witness.
#[derive(Debug, Clone)]
pub struct InterleavedReport {
    pub windings: Vec<(i64, i64)>,
    pub class: CoinvClass,
    pub witness: Option<EPSeq<i64>>,
}

/// Class of the equator exponents under the interleaved enumeration of the
/// same frames: the windings alternate and the class vanishes.
pub fn interleaved_class(k_max: usize, grid: GridSpec) -> Result<InterleavedReport, OscError> {
    assert!(k_max >= 4);
    let windings = EquatorSweep::new(k_max, FrameOrdering::Interleaved, grid)?.windings(64)?;
    let exponents = ep_extension(&windings);
    let class = exponents.coinv_class();
    let witness = exponents.certificate_trivial().ok();
    Ok(InterleavedReport {
        windings,
        class,
        witness,
    })
}

/// Eventually periodic extension of a measured winding window: the two
/// boundary values continue as period-1 tails for a split window, and the
/// boundary parity pattern continues for an interleaved one. Either way the
/// window itself is kept as the core and the result canonicalized.
fn ep_extension(windings: &[(i64, i64)]) -> EPSeq<i64> {
    let lo = windings[0].0;
    let vals: Vec<i64> = windings.iter().map(|w| w.1).collect();
    let n = vals.len();
    let (left, right) = if n >= 4 {
        // use period 2 when the window edges alternate, period 1 otherwise
        let left = if vals[0] == vals[2] && vals[1] != vals[0] {
            vec![vals[1], vals[0]]
        } else {
            vec![vals[0]]
        };
        let right = if vals[n - 1] == vals[n - 3] && vals[n - 2] != vals[n - 1] {
            vec![vals[n - 1], vals[n - 2]]
        } else {
            vec![vals[n - 1]]
        };
        (left, right)
    } else {
        (vec![vals[0]], vec![vals[n - 1]])
    };
    // left anchoring: eval(lo - 1) must continue the pattern leftward
    EPSeq::new(left, vals, lo, right).canonicalize()
}
