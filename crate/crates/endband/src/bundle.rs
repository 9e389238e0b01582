//! Cech-cocycle model of Hilbert bundles with ends over fixed base
//! complexes, and their degree-1 characteristic classes.
//!
//! Every computation in scope lives over one of three bases with frozen
//! overlap combinatorics, so a bundle-with-end is just its transition data:
//! two constant band operators for the circle, one monomial equator loop for
//! the sphere, four loop assignments for the torus. The classes are homotopy
//! invariants of that data alone: `beta1` is the Fredholm index of the
//! circle jump transition and `alpha1` pairs a functional with the exponent
//! class of the equator loop.
//!
//! Orientation conventions, fixed once and shared with the Fourier layer:
//! the circle jump is read as `t_b * t_a^{-1}`, and the sphere equator loop
//! is oriented as the boundary of the upper patch.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::band::{EPBandOp, ExponentSpec, MonomialLoop, OpError};
use crate::rational::Rational;
use crate::seq::{EPSeq, Functional};
use crate::tol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BundleError {
    #[error("invariant is not defined over this base complex")]
    WrongBase,
    #[error("cocycle does not have a periodic end")]
    NotPeriodicEnd,
    #[error("exponent family is unbounded; the completed sum carries no end")]
    UnboundedExponents,
    #[error("invariant is not determined over this base")]
    UnsupportedInvariant,
    #[error("transition operator: {0}")]
    Op(#[from] OpError),
}

/// Fixed base complexes.
///
/// * `CircleTwoArc`: two arcs whose intersection has two interval
///   components, carrying one constant transition each.
/// * `SphereTwoDisc`: two discs glued along an equator circle.
/// * `TorusFourPatch`: products of the two circle arcs, with four overlap
///   loop assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseComplex {
    CircleTwoArc,
    SphereTwoDisc,
    TorusFourPatch,
}

/// Hilbert-bundle-with-end presented as transition data over a fixed base.
#[allow(clippy::large_enum_variant)] // cocycles are built once, not bulk-stored
#[derive(Debug, Clone)]
pub enum EndCocycle {
    Circle {
        /// Constant transition on the first overlap component.
        on_a: EPBandOp,
        /// Constant transition on the second overlap component.
        on_b: EPBandOp,
    },
    Sphere {
        /// Transition loop on the equator, oriented as the boundary of the
        /// upper disc.
        equator: MonomialLoop,
    },
    Torus {
        transitions: [MonomialLoop; 4],
    },
}

fn circle_samples(samples: usize) -> impl Iterator<Item = Complex64> {
    (0..samples).map(move |j| {
        Complex64::from_polar(1.0, core::f64::consts::TAU * j as f64 / samples as f64)
    })
}

impl EndCocycle {
    pub fn base(&self) -> BaseComplex {
        match self {
            EndCocycle::Circle { .. } => BaseComplex::CircleTwoArc,
            EndCocycle::Sphere { .. } => BaseComplex::SphereTwoDisc,
            EndCocycle::Torus { .. } => BaseComplex::TorusFourPatch,
        }
    }

    /// Unitarity of every transition at sampled points. The two-patch covers
    /// have no triple overlaps, so together with the stored-inverse reading
    /// (`g_ji = g_ij^{-1} = g_ij^*`) this is the whole cocycle condition.
    pub fn cocycle_check(&self, samples: usize) -> bool {
        let unitary = |op: &EPBandOp| op.unitarity_defect(8 * op.band() + 32, 1) < tol::UNITARY_GATE;
        match self {
            EndCocycle::Circle { on_a, on_b } => unitary(on_a) && unitary(on_b),
            EndCocycle::Sphere { equator } => {
                circle_samples(samples).all(|z| unitary(&equator.eval(z)))
            }
            EndCocycle::Torus { transitions } => transitions
                .iter()
                .all(|l| circle_samples(samples).all(|z| unitary(&l.eval(z)))),
        }
    }

    /// Degree-2 class against a functional on the coinvariant group,
    /// computed from the exponent class of the equator loop.
    pub fn alpha1(&self, f: &Functional) -> Result<Rational, BundleError> {
        match self {
            EndCocycle::Sphere { equator } => Ok(f.pair(&equator.class().odd_class)),
            EndCocycle::Circle { .. } => Err(BundleError::WrongBase),
            EndCocycle::Torus { .. } => Err(BundleError::UnsupportedInvariant),
        }
    }

    /// Degree-1 class: the Fredholm index of the circle jump transition
    /// `t_b * t_a^{-1}`.
    pub fn beta1(&self) -> Result<i64, BundleError> {
        match self {
            EndCocycle::Circle { on_a, on_b } => {
                Ok(on_b.compose(&on_a.adjoint()).fredholm_index()?)
            }
            EndCocycle::Sphere { .. } => Err(BundleError::WrongBase),
            EndCocycle::Torus { .. } => Err(BundleError::UnsupportedInvariant),
        }
    }

    /// Component label of the sphere equator loop. A nonzero value is
    /// reported alongside `alpha1` since the loop then lives off the
    /// basepoint component.
    pub fn equator_component(&self) -> Option<i64> {
        match self {
            EndCocycle::Sphere { equator } => Some(equator.shift_power()),
            _ => None,
        }
    }

    /// Whether every transition is fixed by conjugation with `S^n` for some
    /// common `n <= 16`.
    pub fn periodic_end_check(&self) -> bool {
        (1..=16).any(|n| match self {
            EndCocycle::Circle { on_a, on_b } => on_a.is_periodic(n) && on_b.is_periodic(n),
            EndCocycle::Sphere { equator } => equator.is_shift_periodic(n),
            EndCocycle::Torus { transitions } => {
                transitions.iter().all(|l| l.is_shift_periodic(n))
            }
        })
    }

    /// `alpha1` against the dual of the constant sequence, defined exactly
    /// on periodic ends.
    pub fn hat_alpha1(&self) -> Result<Rational, BundleError> {
        if !self.periodic_end_check() {
            return Err(BundleError::NotPeriodicEnd);
        }
        self.alpha1(&Functional::tail_mean())
    }

    /// `beta1` restricted to periodic ends.
    pub fn hat_beta1(&self) -> Result<i64, BundleError> {
        if !self.periodic_end_check() {
            return Err(BundleError::NotPeriodicEnd);
        }
        self.beta1()
    }
}

/// Completed sum of line bundles over the sphere with fiberwise winding
/// exponents `spec`: the equator transition is the diagonal monomial loop of
/// the exponents. Rejects unbounded families, whose transition loops are not
/// equicontinuous.
pub fn completed_sum_sphere(spec: &ExponentSpec) -> Result<EndCocycle, BundleError> {
    if !spec.equicontinuous_family_check() {
        return Err(BundleError::UnboundedExponents);
    }
    let exponents = match spec {
        ExponentSpec::Ep(a) => a.clone(),
        ExponentSpec::Linear { intercept, .. } => EPSeq::constant(*intercept),
    };
    Ok(EndCocycle::Sphere {
        equator: MonomialLoop::diagonal(exponents),
    })
}

/// Pushforward of the trivial line bundle along the universal cover of the
/// circle: trivial on one overlap component, the shift on the other.
pub fn pushforward_universal_cover() -> EndCocycle {
    EndCocycle::Circle {
        on_a: EPBandOp::identity(),
        on_b: EPBandOp::shift_op(1),
    }
}

/// Invariant-level model of pulling a circle cocycle back along a degree-`d`
/// self-map: the jump transition is replaced by its `d`-th power, so `beta1`
/// multiplies by `d`.
pub fn pullback_circle(c: &EndCocycle, d: i64) -> Result<EndCocycle, BundleError> {
    match c {
        EndCocycle::Circle { on_a, on_b } => Ok(EndCocycle::Circle {
            on_a: EPBandOp::identity(),
            on_b: on_b.compose(&on_a.adjoint()).pow(d),
        }),
        _ => Err(BundleError::WrongBase),
    }
}

/// The transfer instance: the trivial bundle pulled back along the universal
/// cover and pushed forward again. Transition blocks are permutation-only,
/// certifying the completed-sum-of-copies structure.
pub fn transfer_structure() -> EndCocycle {
    pushforward_universal_cover()
}

/// Self-map of the fiber index set of an infinite cyclic covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeckMap {
    Translation(i64),
    Negation,
}

/// Bounded-displacement gate on deck transformations: a translation keeps
/// the pushforward transitions banded, while negation produces infinitely
/// many anti-diagonal entries of unbounded offset.
pub fn deck_finite_propagation_check(m: &DeckMap) -> bool {
    match m {
        DeckMap::Translation(_) => true,
        DeckMap::Negation => false,
    }
}

/// All structural entries of a circle cocycle's transitions, for
/// permutation-only certification.
pub fn circle_transition_entries(c: &EndCocycle) -> Result<Vec<Complex64>, BundleError> {
    match c {
        EndCocycle::Circle { on_a, on_b } => {
            let mut out = Vec::new();
            for op in [on_a, on_b] {
                for d in -op.band()..=op.band() {
                    let seq = op.diagonal_at(d);
                    out.extend(seq.left_cycle().iter().copied());
                    out.extend(seq.core().iter().copied());
                    out.extend(seq.right_cycle().iter().copied());
                }
            }
            Ok(out)
        }
        _ => Err(BundleError::WrongBase),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::rng::SplitMix64;
    use crate::seq::CoinvClass;

    fn half_half() -> EPSeq<i64> {
        EPSeq::tails(&[1], &[-1], 0)
    }

    fn trivial_circle() -> EndCocycle {
        EndCocycle::Circle {
            on_a: EPBandOp::identity(),
            on_b: EPBandOp::identity(),
        }
    }

    #[test]
    fn cocycle_check_examples() {
        assert!(trivial_circle().cocycle_check(64));
        assert!(pushforward_universal_cover().cocycle_check(64));
        let bad = EndCocycle::Circle {
            on_a: EPBandOp::identity(),
            on_b: EPBandOp::diagonal(EPSeq::constant(Complex64::new(2.0, 0.0))),
        };
        assert!(!bad.cocycle_check(64));
    }

    #[test]
    fn completed_sum_examples() {
        let e = completed_sum_sphere(&ExponentSpec::Ep(EPSeq::constant(1))).unwrap();
        assert_eq!(e.alpha1(&Functional::tail_mean()), Ok(rat(1, 1)));
        assert!(matches!(
            completed_sum_sphere(&ExponentSpec::Linear { slope: 1, intercept: 0 }),
            Err(BundleError::UnboundedExponents)
        ));
        let finite = completed_sum_sphere(&ExponentSpec::Ep(EPSeq::delta(0))).unwrap();
        for f in [Functional::tail_mean(), Functional::tail_split()] {
            assert_eq!(finite.alpha1(&f), Ok(rat(0, 1)));
        }
    }

    #[test]
    fn alpha1_examples() {
        let e = completed_sum_sphere(&ExponentSpec::Ep(half_half())).unwrap();
        assert_eq!(e.alpha1(&Functional::tail_split()), Ok(rat(1, 1)));
        let t = completed_sum_sphere(&ExponentSpec::Ep(EPSeq::constant(0))).unwrap();
        for f in [Functional::tail_mean(), Functional::tail_split()] {
            assert_eq!(t.alpha1(&f), Ok(rat(0, 1)));
        }
        // additivity in the functional
        let mut rng = SplitMix64::new(17);
        for _ in 0..10 {
            let pat: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            let c = completed_sum_sphere(&ExponentSpec::Ep(EPSeq::periodic(&pat, 0))).unwrap();
            let f1 = Functional::new(rat(rng.next_range(-3, 3), 2), rat(rng.next_range(-3, 3), 3));
            let f2 = Functional::tail_split();
            assert_eq!(
                c.alpha1(&f1.add(&f2)).unwrap(),
                c.alpha1(&f1).unwrap() + c.alpha1(&f2).unwrap()
            );
        }
    }

    #[test]
    fn beta1_examples() {
        assert_eq!(pushforward_universal_cover().beta1(), Ok(1));
        assert_eq!(trivial_circle().beta1(), Ok(0));
        let squares = EndCocycle::Circle {
            on_a: EPBandOp::shift_op(2),
            on_b: EPBandOp::shift_op(2),
        };
        assert_eq!(squares.beta1(), Ok(0));
    }

    #[test]
    fn wrong_base_refusals() {
        let sphere = completed_sum_sphere(&ExponentSpec::Ep(half_half())).unwrap();
        assert_eq!(sphere.beta1(), Err(BundleError::WrongBase));
        assert_eq!(
            pushforward_universal_cover().alpha1(&Functional::tail_mean()),
            Err(BundleError::WrongBase)
        );
    }

    #[test]
    fn periodic_and_hat_examples() {
        let push = pushforward_universal_cover();
        assert!(push.periodic_end_check());
        assert_eq!(push.hat_beta1(), Ok(1));

        let e = completed_sum_sphere(&ExponentSpec::Ep(iota_rep_half())).unwrap();
        assert_eq!(e.hat_alpha1(), Ok(rat(1, 2)));

        let hh = completed_sum_sphere(&ExponentSpec::Ep(half_half())).unwrap();
        assert!(!hh.periodic_end_check());
        assert_eq!(hh.hat_alpha1(), Err(BundleError::NotPeriodicEnd));
    }

    fn iota_rep_half() -> EPSeq<i64> {
        crate::seq::iota_rep(rat(1, 2), 0)
    }

    #[test]
    fn pushforward_properties() {
        let c = pushforward_universal_cover();
        assert_eq!(c.beta1(), Ok(1));
        if let EndCocycle::Circle { on_a, on_b } = &c {
            assert!(on_a.propagation() <= 1 && on_b.propagation() <= 1);
        } else {
            unreachable!();
        }
        assert!(c.periodic_end_check());
    }

    #[test]
    fn pullback_naturality() {
        let c = pushforward_universal_cover();
        for d in -4..=4 {
            let pulled = pullback_circle(&c, d).unwrap();
            assert_eq!(pulled.beta1(), Ok(d), "degree {d}");
            assert!(pulled.cocycle_check(16));
        }
        // naturality over an arbitrary circle cocycle
        let base = EndCocycle::Circle {
            on_a: EPBandOp::shift_op(-1),
            on_b: EPBandOp::shift_op(1),
        };
        let b = base.beta1().unwrap();
        assert_eq!(b, 2);
        for d in -4..=4 {
            assert_eq!(pullback_circle(&base, d).unwrap().beta1(), Ok(d * b));
        }
    }

    #[test]
    fn transfer_is_permutation_only() {
        let t = transfer_structure();
        for v in circle_transition_entries(&t).unwrap() {
            assert!(v.norm() < 1e-12 || (v - Complex64::ONE).norm() < 1e-12);
        }
        assert_eq!(t.beta1(), Ok(1));
        let push = pushforward_universal_cover();
        if let (
            EndCocycle::Circle { on_a: a1, on_b: b1 },
            EndCocycle::Circle { on_a: a2, on_b: b2 },
        ) = (&t, &push)
        {
            assert!(a1.obs_eq(a2) && b1.obs_eq(b2));
        }
    }

    #[test]
    fn deck_map_gate() {
        assert!(deck_finite_propagation_check(&DeckMap::Translation(5)));
        assert!(deck_finite_propagation_check(&DeckMap::Translation(0)));
        assert!(!deck_finite_propagation_check(&DeckMap::Negation));
    }

    #[test]
    fn alpha1_depends_only_on_class() {
        let mut rng = SplitMix64::new(23);
        for _ in 0..20 {
            let pat: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            let a = EPSeq::periodic(&pat, rng.next_range(-2, 2));
            // a finite perturbation does not move the class
            let b = a.add(&EPSeq::finitely_supported(
                rng.next_range(-4, 4),
                &[rng.next_range(-2, 2), rng.next_range(-2, 2)],
            ));
            assert!(a.coinv_equal(&b));
            let ca = completed_sum_sphere(&ExponentSpec::Ep(a)).unwrap();
            let cb = completed_sum_sphere(&ExponentSpec::Ep(b)).unwrap();
            for f in [Functional::tail_mean(), Functional::tail_split()] {
                assert_eq!(ca.alpha1(&f), cb.alpha1(&f));
            }
        }
    }

    #[test]
    fn finite_support_vanishes() {
        let mut rng = SplitMix64::new(29);
        for _ in 0..20 {
            let vals: Vec<i64> = (0..rng.next_range(1, 4)).map(|_| rng.next_range(-3, 3)).collect();
            let a = EPSeq::finitely_supported(rng.next_range(-5, 5), &vals);
            let c = completed_sum_sphere(&ExponentSpec::Ep(a)).unwrap();
            for f in [Functional::tail_mean(), Functional::tail_split()] {
                assert_eq!(c.alpha1(&f), Ok(rat(0, 1)));
            }
        }
    }

    #[test]
    fn constructors_pass_cocycle_check() {
        let mut rng = SplitMix64::new(31);
        let mut cocycles = alloc::vec![
            pushforward_universal_cover(),
            transfer_structure(),
            trivial_circle(),
        ];
        for _ in 0..10 {
            let pat: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            cocycles.push(completed_sum_sphere(&ExponentSpec::Ep(EPSeq::periodic(&pat, 0))).unwrap());
        }
        for c in &cocycles {
            assert!(c.cocycle_check(64));
        }
    }

    #[test]
    fn hat_alpha_agrees_with_alpha_on_periodic_ends() {
        let specs = [
            EPSeq::constant(2),
            iota_rep_half(),
            EPSeq::periodic(&[1, 0, -1], 0),
        ];
        for a in specs {
            let c = completed_sum_sphere(&ExponentSpec::Ep(a)).unwrap();
            assert!(c.periodic_end_check());
            assert_eq!(c.hat_alpha1().unwrap(), c.alpha1(&Functional::tail_mean()).unwrap());
        }
    }

    #[test]
    fn equator_component_flag() {
        let c = completed_sum_sphere(&ExponentSpec::Ep(half_half())).unwrap();
        assert_eq!(c.equator_component(), Some(0));
        let off = EndCocycle::Sphere {
            equator: MonomialLoop::new(2, EPSeq::constant(0), Complex64::ONE),
        };
        assert_eq!(off.equator_component(), Some(2));
        // the class is still computed; the component is the caller's flag
        assert_eq!(off.alpha1(&Functional::tail_mean()), Ok(rat(0, 1)));
        assert_eq!(trivial_circle().equator_component(), None);
    }

    #[test]
    fn class_example_coherence() {
        // E(b) pairs exactly like the class of b
        let b = EPSeq::new(alloc::vec![1, -1], alloc::vec![2], 0, alloc::vec![0, 1]);
        let c = completed_sum_sphere(&ExponentSpec::Ep(b.clone())).unwrap();
        let cls = b.coinv_class();
        assert_eq!(cls, CoinvClass::new(rat(0, 1), rat(1, 2)));
        for f in [Functional::tail_mean(), Functional::tail_split()] {
            assert_eq!(c.alpha1(&f), Ok(f.pair(&cls)));
        }
    }
}
