//! The Fourier-transform bundle over the circle and its torus analogue.
//!
//! Points of the circle are written `w = e^{-2 pi i t}`. Two charts cover the
//! circle, with parameter intervals
//!
//! ```text
//! chart 1: t in (0, 3/4)        chart 2: t in (1/2, 5/4)
//! ```
//!
//! so the overlap has two components: on `t in (1/2, 3/4)` both branches
//! agree, and on `t in (1, 5/4)` (equivalently `(0, 1/4)` in chart 1) they
//! differ by exactly 1. Trivializing the flat line bundle `L_w` over each
//! chart multiplies sections by a branch-dependent character, so the
//! transition in the Fourier eigenbasis is `S^k` with
//! `k = branch_2(w) - branch_1(w) in {0, 1}`.
//!
//! Conventions, pinned here and shared with the bundle layer: `S` is the
//! shift with `fredholm_index(S) = +1`, and the comparison multiplier
//! integrated by the quadrature route is `e^{-2 pi i (s_2 - s_1) t}`, which
//! makes the measured matrix equal `S^k` entry for entry. (The clockwise
//! parametrization `w = e^{-2 pi i t}` makes this the natural pairing slot.)

use num_complex::Complex64;

use crate::band::{EPBandOp, MonomialLoop};
use crate::bundle::EndCocycle;
use crate::dense::DenseMat;
use crate::seq::EPSeq;
use crate::tol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FourierError {
    #[error("point is not in the chart's parameter interval")]
    NotInChart,
    #[error("point is not in the chart overlap")]
    NotInOverlap,
    #[error("branch difference {0} is not an integer")]
    BranchNotIntegral(f64),
}

/// Chart of the two-arc circle cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    One,
    Two,
}

impl Chart {
    /// Open parameter interval of the chart.
    pub fn interval(self) -> (f64, f64) {
        match self {
            Chart::One => (0.0, 0.75),
            Chart::Two => (0.5, 1.25),
        }
    }
}

/// Overlap components of the two charts.
///
/// Read off the chart intervals literally: branches agree on
/// `t in (1/2, 3/4)` and differ by one on `t in (1, 5/4)`. (The component
/// printed as `V_1 = {-1/4 < t < 0}` elsewhere is the second one here after
/// a full turn; as printed it is not a subset of chart 1, so this module
/// keeps the corrected intervals and reports carry the alias.)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapComponent {
    /// Branches agree; the transition is the identity.
    Agreeing,
    /// Branches differ by one; the transition is the unit shift.
    Shifted,
}

impl OverlapComponent {
    /// Open parameter interval in chart-1 coordinates.
    pub fn interval(self) -> (f64, f64) {
        match self {
            OverlapComponent::Agreeing => (0.5, 0.75),
            OverlapComponent::Shifted => (0.0, 0.25),
        }
    }

    /// A representative point of the component.
    pub fn sample(self) -> Complex64 {
        let (lo, hi) = self.interval();
        circle_point(0.5 * (lo + hi))
    }
}

/// The circle point `e^{-2 pi i t}`.
pub fn circle_point(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -core::f64::consts::TAU * t)
}

/// Unique `t` in the chart interval with `e^{-2 pi i t} = w`.
pub fn branch(chart: Chart, w: Complex64) -> Result<f64, FourierError> {
    debug_assert!((w.norm() - 1.0).abs() < 1e-9);
    let (lo, hi) = chart.interval();
    let base = -w.arg() / core::f64::consts::TAU; // in (-1/2, 1/2]
    for shift in [-1.0, 0.0, 1.0, 2.0] {
        let t = base + shift;
        if lo < t && t < hi {
            return Ok(t);
        }
    }
    Err(FourierError::NotInChart)
}

/// Integer branch difference `branch_2(w) - branch_1(w)` on the overlap.
pub fn branch_jump(w: Complex64) -> Result<i64, FourierError> {
    let s1 = branch(Chart::One, w)?;
    let s2 = branch(Chart::Two, w).map_err(|_| FourierError::NotInOverlap)?;
    let diff = s2 - s1;
    let snapped = libm::round(diff);
    if (diff - snapped).abs() > tol::BRANCH_INTEGRAL {
        return Err(FourierError::BranchNotIntegral(diff));
    }
    Ok(snapped as i64)
}

/// Which overlap component `w` lies in, by its branch jump.
pub fn overlap_component(w: Complex64) -> Result<OverlapComponent, FourierError> {
    match branch_jump(w)? {
        0 => Ok(OverlapComponent::Agreeing),
        1 => Ok(OverlapComponent::Shifted),
        _ => Err(FourierError::NotInOverlap),
    }
}

/// Exact chart-2-over-chart-1 transition at `w`: `S^k` for the integer
/// branch jump `k`.
pub fn transition_exact(w: Complex64) -> Result<EPBandOp, FourierError> {
    Ok(EPBandOp::shift_op(branch_jump(w)?))
}

/// Quadrature verification of the transition: the matrix of the comparison
/// multiplier `e^{-2 pi i (s_2 - s_1) t}` in the Fourier basis, for modes
/// `|m|, |n| <= n_modes`, by composite trapezoid on `m_quad` uniform panels.
///
/// The integrands are trigonometric polynomials, so the rule is exact below
/// the Nyquist limit; keep `m_quad >= 8 (n_modes + 2)`. The real-valued
/// branch difference is deliberately *not* snapped to an integer here; the
/// agreement with [`transition_exact`] is the verification.
pub fn transition_numeric(
    w: Complex64,
    n_modes: usize,
    m_quad: usize,
) -> Result<DenseMat, FourierError> {
    assert!(m_quad >= 8 * (n_modes + 2), "quadrature below Nyquist gate");
    let s1 = branch(Chart::One, w)?;
    let s2 = branch(Chart::Two, w).map_err(|_| FourierError::NotInOverlap)?;
    let kappa = s2 - s1;
    let n = n_modes as i64;
    // G(f) = integral of e^{-2 pi i kappa t} e^{2 pi i f t} dt over [0, 1]
    let m = m_quad;
    let g = |f: i64| -> Complex64 {
        let h = 1.0 / m as f64;
        let at = |t: f64| Complex64::from_polar(1.0, core::f64::consts::TAU * (f as f64 - kappa) * t);
        let mut acc = 0.5 * (at(0.0) + at(1.0));
        for j in 1..m {
            acc += at(j as f64 * h);
        }
        acc * h
    };
    let dim = (2 * n + 1) as usize;
    let mut out = DenseMat::zeros(dim, dim);
    for mm in -n..=n {
        for nn in -n..=n {
            out.set((mm + n) as usize, (nn + n) as usize, g(nn - mm));
        }
    }
    Ok(out)
}

/// The Fourier-transform bundle over the circle: identity transition on one
/// overlap component, the unit shift on the other, both produced by
/// [`transition_exact`].
pub fn l1_bundle() -> EndCocycle {
    let on_a = transition_exact(OverlapComponent::Agreeing.sample())
        .expect("component sample lies in the overlap");
    let on_b = transition_exact(OverlapComponent::Shifted.sample())
        .expect("component sample lies in the overlap");
    EndCocycle::Circle { on_a, on_b }
}

/// Torus analogue: four overlap loop assignments in the parameter
/// `z = e^{-2 pi i t}`, one per pair of chart choices on the two circle
/// factors. Stored as cocycle data only; class extraction is refused
/// upstream because the relevant invariant groups are not determined.
pub fn l2_torus_bundle() -> EndCocycle {
    let loops = [
        MonomialLoop::diagonal(EPSeq::constant(0)),
        MonomialLoop::diagonal(EPSeq::periodic(&[0, 1], 0)),
        MonomialLoop::diagonal(EPSeq::periodic(&[1, 0], 0)),
        MonomialLoop::diagonal(EPSeq::constant(1)),
    ];
    EndCocycle::Torus { transitions: loops }
}

/// Eigensection `t -> e^{2 pi i (n + s) t}` of the flat-bundle derivative
/// `D = (1 / 2 pi i) d/dt`, with eigenvalue `n + s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierSection {
    pub mode: i64,
    pub branch: f64,
}

impl FourierSection {
    pub fn eigenvalue(&self) -> f64 {
        self.mode as f64 + self.branch
    }

    /// Rayleigh-quotient estimate of the `D`-eigenvalue from `m` uniform
    /// samples, using a fourth-order difference stencil. The section is only
    /// quasi-periodic (its holonomy is the flat twist), so neighbors past the
    /// fundamental domain are evaluated directly rather than wrapped.
    pub fn eigenvalue_estimate(&self, m: usize) -> f64 {
        let freq = core::f64::consts::TAU * self.eigenvalue();
        let h = 1.0 / m as f64;
        let idx = |j: i64| Complex64::from_polar(1.0, freq * j as f64 * h);
        let mut num = Complex64::ZERO;
        let mut den = 0.0;
        for j in 0..m as i64 {
            let d1 = (-idx(j + 2) + 8.0 * idx(j + 1) - 8.0 * idx(j - 1) + idx(j - 2)) / (12.0 * h);
            let df = d1 / Complex64::new(0.0, core::f64::consts::TAU);
            num += idx(j).conj() * df;
            den += idx(j).norm_sqr();
        }
        (num / den).re
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::BundleError;
    use crate::rng::SplitMix64;
    use crate::seq::Functional;

    #[test]
    fn branch_examples() {
        let w = circle_point(0.6);
        assert!((branch(Chart::One, w).unwrap() - 0.6).abs() < 1e-12);
        assert!((branch(Chart::Two, w).unwrap() - 0.6).abs() < 1e-12);
        let w = circle_point(0.1);
        assert!((branch(Chart::One, w).unwrap() - 0.1).abs() < 1e-12);
        assert!((branch(Chart::Two, w).unwrap() - 1.1).abs() < 1e-12);
        // t = 0.9 lies in neither chart-1 shift of the interval
        assert_eq!(branch(Chart::One, circle_point(0.9)), Err(FourierError::NotInChart));
    }

    #[test]
    fn branch_reconstructs_the_point() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..200 {
            let t = rng.next_f64();
            let w = circle_point(t);
            for chart in [Chart::One, Chart::Two] {
                if let Ok(b) = branch(chart, w) {
                    assert!((circle_point(b) - w).norm() < 1e-12);
                    let (lo, hi) = chart.interval();
                    assert!(lo < b && b < hi);
                }
            }
        }
    }

    #[test]
    fn transition_exact_examples() {
        let id = transition_exact(circle_point(0.6)).unwrap();
        assert!(id.obs_eq(&EPBandOp::identity()));
        let s = transition_exact(circle_point(0.1)).unwrap();
        assert!(s.obs_eq(&EPBandOp::shift_op(1)));
        assert!(matches!(
            transition_exact(circle_point(0.3)),
            Err(FourierError::NotInOverlap)
        ));
    }

    #[test]
    fn overlap_components_are_one_trivial_one_shift() {
        let mut rng = SplitMix64::new(43);
        let mut seen = [false; 2];
        for _ in 0..200 {
            let t = rng.next_f64();
            let w = circle_point(t);
            match overlap_component(w) {
                Ok(OverlapComponent::Agreeing) => {
                    seen[0] = true;
                    assert!(transition_exact(w).unwrap().obs_eq(&EPBandOp::identity()));
                }
                Ok(OverlapComponent::Shifted) => {
                    seen[1] = true;
                    assert!(transition_exact(w).unwrap().obs_eq(&EPBandOp::shift_op(1)));
                }
                Err(_) => {}
            }
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn numeric_matches_exact_small() {
        for comp in [OverlapComponent::Agreeing, OverlapComponent::Shifted] {
            let w = comp.sample();
            let n = 8usize;
            let t = transition_numeric(w, n, 8 * (n + 2)).unwrap();
            let exact = transition_exact(w).unwrap();
            let mut worst = 0.0f64;
            for mm in -(n as i64)..=n as i64 {
                for nn in -(n as i64)..=n as i64 {
                    let got = t.get((mm + n as i64) as usize, (nn + n as i64) as usize);
                    let want = exact.matrix_entry(mm, nn);
                    worst = worst.max((got - want).norm());
                }
            }
            assert!(worst < tol::FOURIER_NUMERIC, "deviation {worst:e}");
        }
    }

    #[test]
    fn l1_bundle_invariants() {
        let l1 = l1_bundle();
        let b = l1.beta1().unwrap();
        assert_eq!(b.abs(), 1);
        assert!(l1.cocycle_check(64));
        assert!(l1.periodic_end_check());
    }

    #[test]
    fn torus_bundle_stores_but_refuses() {
        let t = l2_torus_bundle();
        assert!(t.cocycle_check(64));
        assert_eq!(
            t.alpha1(&Functional::tail_mean()),
            Err(BundleError::UnsupportedInvariant)
        );
        assert_eq!(t.beta1(), Err(BundleError::UnsupportedInvariant));
        if let EndCocycle::Torus { transitions } = &t {
            for l in transitions {
                assert!(l.eval(Complex64::ONE).obs_eq(&EPBandOp::identity()));
            }
        }
    }

    #[test]
    fn section_eigenvalue_by_quadrature() {
        for (mode, s) in [(0i64, 0.0), (3, 0.25), (-2, 0.7), (4, 0.5)] {
            let sec = FourierSection { mode, branch: s };
            let est = sec.eigenvalue_estimate(4096);
            assert!(
                (est - sec.eigenvalue()).abs() < 1e-6,
                "mode {mode}, s {s}: {est} vs {}",
                sec.eigenvalue()
            );
        }
    }
}
