//! Band operators on `l^2(Z)` with eventually periodic diagonals.
//!
//! An operator is stored by its diagonals `d -> (i -> U_{i,i+d})` for
//! `|d| <= band`, each an [`EPSeq`] of complex entries. The class is closed
//! under composition and adjoint, contains every shift power and every
//! diagonal monomial loop value, and supports exact periodicity tests through
//! observational equality of the diagonals.
//!
//! The sign convention is fixed once: the shift `S` acts on coefficient
//! sequences by `(Sa)_j = a_{j+1}`, equivalently `S e_k = e_{k-1}`, and
//! `fredholm_index(S) = +1`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::seq::{CoinvClass, EPSeq};
use crate::tol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OpError {
    #[error("operator fails the unitarity gate: defect {0:e}")]
    NotUnitary(f64),
    #[error("corner sum {0} does not snap to an integer")]
    NotInteger(f64),
    #[error("window of length {len} cannot absorb band {band}")]
    WindowTooNarrow { len: usize, band: i64 },
}

const ZERO: Complex64 = Complex64::ZERO;

fn zero_seq() -> EPSeq<Complex64> {
    EPSeq::constant(ZERO)
}

/// Banded operator with eventually periodic diagonals.
#[derive(Debug, Clone)]
pub struct EPBandOp {
    band: i64,
    /// `diagonals[k]` is the diagonal at offset `d = k - band`.
    diagonals: Vec<EPSeq<Complex64>>,
}

impl EPBandOp {
    pub fn from_diagonals(band: i64, diagonals: Vec<EPSeq<Complex64>>) -> Self {
        assert!(band >= 0);
        assert_eq!(diagonals.len(), (2 * band + 1) as usize);
        Self { band, diagonals }.trim()
    }

    pub fn identity() -> Self {
        Self {
            band: 0,
            diagonals: vec![EPSeq::constant(Complex64::ONE)],
        }
    }

    /// `S^k` for the shift `S e_k = e_{k-1}`; a single unit diagonal at
    /// offset `k`.
    pub fn shift_op(k: i64) -> Self {
        let band = k.abs();
        let mut diagonals = vec![zero_seq(); (2 * band + 1) as usize];
        diagonals[(k + band) as usize] = EPSeq::constant(Complex64::ONE);
        Self { band, diagonals }
    }

    /// Diagonal operator `e_i -> entries(i) e_i`.
    pub fn diagonal(entries: EPSeq<Complex64>) -> Self {
        Self {
            band: 0,
            diagonals: vec![entries],
        }
    }

    /// Dense `n x n` block placed at rows and columns `start..start+n`,
    /// identity outside.
    pub fn block_unitary(start: i64, block: &crate::dense::DenseMat) -> Self {
        assert_eq!(block.rows(), block.cols());
        let n = block.rows() as i64;
        assert!(n >= 1);
        let band = n - 1;
        let mut diagonals = Vec::with_capacity((2 * band + 1) as usize);
        for d in -band..=band {
            let lo = start + 0.max(-d);
            let hi = start + (n - 1) + 0.min(-d);
            let core: Vec<Complex64> = (lo..=hi)
                .map(|i| block.get((i - start) as usize, (i + d - start) as usize))
                .collect();
            let tail = if d == 0 { Complex64::ONE } else { ZERO };
            diagonals.push(EPSeq::new(vec![tail], core, lo, vec![tail]).canonicalize());
        }
        Self { band, diagonals }
    }

    pub fn band(&self) -> i64 {
        self.band
    }

    /// Diagonal at offset `d`; constant zero outside the band.
    pub fn diagonal_at(&self, d: i64) -> EPSeq<Complex64> {
        if d.abs() > self.band {
            zero_seq()
        } else {
            self.diagonals[(d + self.band) as usize].clone()
        }
    }

    pub fn matrix_entry(&self, i: i64, j: i64) -> Complex64 {
        if (j - i).abs() > self.band {
            ZERO
        } else {
            self.diagonals[(j - i + self.band) as usize].eval(i)
        }
    }

    /// Largest `|d|` with a not identically vanishing diagonal.
    pub fn propagation(&self) -> i64 {
        (1..=self.band)
            .rev()
            .find(|&d| {
                !self.diagonal_at(d).is_constant(&ZERO) || !self.diagonal_at(-d).is_constant(&ZERO)
            })
            .unwrap_or(0)
    }

    /// Drop identically-zero outer diagonals so `band == propagation`.
    fn trim(self) -> Self {
        let p = self.propagation();
        if p == self.band {
            return self;
        }
        let diagonals = (-p..=p).map(|d| self.diagonal_at(d)).collect();
        Self { band: p, diagonals }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let band = self.band + other.band;
        let mut diagonals = Vec::with_capacity((2 * band + 1) as usize);
        for e in -band..=band {
            let mut acc = zero_seq();
            for d in -self.band..=self.band {
                if (e - d).abs() > other.band {
                    continue;
                }
                let u = self.diagonal_at(d);
                if u.is_constant(&ZERO) {
                    continue;
                }
                let v = other.diagonal_at(e - d).shift_by(d);
                let term = u.zip_with(&v, |a, b| a * b);
                acc = acc.zip_with(&term, |a, b| a + b);
            }
            diagonals.push(acc);
        }
        Self { band, diagonals }.trim()
    }

    pub fn adjoint(&self) -> Self {
        let diagonals = (-self.band..=self.band)
            .map(|d| self.diagonal_at(-d).shift_by(d).map(|v| v.conj()))
            .collect();
        Self {
            band: self.band,
            diagonals,
        }
    }

    /// Integer power; negative powers go through the adjoint, so this is the
    /// inverse power only for unitaries.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.adjoint() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..k.abs() {
            out = out.compose(&base);
        }
        out
    }

    /// Entrywise observational equality.
    pub fn obs_eq(&self, other: &Self) -> bool {
        let b = self.band.max(other.band);
        (-b..=b).all(|d| self.diagonal_at(d).obs_eq(&other.diagonal_at(d)))
    }

    /// Truncated matrix-vector product on the coefficient window
    /// `start..start + x.len()`, with zero extension outside; exact on the
    /// interior `[start + band, start + len - band)`.
    pub fn apply_window(&self, start: i64, x: &[Complex64]) -> Result<Vec<Complex64>, OpError> {
        if (x.len() as i64) < 2 * self.band + 1 {
            return Err(OpError::WindowTooNarrow {
                len: x.len(),
                band: self.band,
            });
        }
        let len = x.len() as i64;
        let mut y = vec![ZERO; x.len()];
        for t in 0..len {
            let i = start + t;
            let mut acc = ZERO;
            for d in -self.band..=self.band {
                let s = t + d;
                if (0..len).contains(&s) {
                    acc += self.matrix_entry(i, i + d) * x[s as usize];
                }
            }
            y[t as usize] = acc;
        }
        Ok(y)
    }

    /// Supremum of `|U*U - I|` and `|UU* - I|` entries.
    ///
    /// The diagonals of the compositions are eventually periodic, so the
    /// supremum over the cycle and core atoms is the exact global value; it
    /// dominates the maximum over any requested window, and `window`/`margin`
    /// are kept for interface compatibility with callers that size scans.
    pub fn unitarity_defect(&self, window: i64, margin: i64) -> f64 {
        debug_assert!(window > 4 * (self.band + margin));
        let gram = |p: &Self| -> f64 {
            let mut worst = 0.0f64;
            for d in -p.band..=p.band {
                let target = if d == 0 { Complex64::ONE } else { ZERO };
                let seq = p.diagonal_at(d);
                let atoms = seq
                    .left_cycle()
                    .iter()
                    .chain(seq.core())
                    .chain(seq.right_cycle());
                for v in atoms {
                    worst = worst.max((v - target).norm());
                }
            }
            worst
        };
        let adj = self.adjoint();
        gram(&adj.compose(self)).max(gram(&self.compose(&adj)))
    }

    fn default_window(&self) -> i64 {
        8 * self.band + 32
    }

    /// Fredholm index of the half-line compression, computed by corner sums:
    /// `sum_{i<0<=j} |U_{ij}|^2 - sum_{i>=0>j} |U_{ij}|^2`. Both sums are
    /// finite for a band operator, and exactly integral for a unitary;
    /// `fredholm_index(shift_op(1)) = +1` fixes the sign.
    pub fn fredholm_index(&self) -> Result<i64, OpError> {
        let defect = self.unitarity_defect(self.default_window(), self.band);
        if defect >= tol::UNITARY_GATE {
            return Err(OpError::NotUnitary(defect));
        }
        let mut total = 0.0f64;
        for i in -self.band..0 {
            for j in 0..=(i + self.band) {
                total += self.matrix_entry(i, j).norm_sqr();
            }
        }
        for i in 0..self.band {
            for j in (i - self.band)..0 {
                total -= self.matrix_entry(i, j).norm_sqr();
            }
        }
        let snapped = libm::round(total);
        if (total - snapped).abs() > tol::INDEX_SNAP {
            return Err(OpError::NotInteger(total));
        }
        Ok(snapped as i64)
    }

    /// Whether conjugation by `S^n` fixes the operator.
    pub fn is_periodic(&self, n: i64) -> bool {
        debug_assert!(n >= 1);
        (-self.band..=self.band).all(|d| {
            let diag = self.diagonal_at(d);
            diag.shift_by(n).obs_eq(&diag)
        })
    }

    /// True when every structural entry is 0 or 1 (within rounding), i.e.
    /// the operator permutes basis vectors without phases.
    pub fn is_permutation_only(&self) -> bool {
        (-self.band..=self.band).all(|d| {
            let seq = self.diagonal_at(d);
            seq.left_cycle()
                .iter()
                .chain(seq.core())
                .chain(seq.right_cycle())
                .all(|v| (v - Complex64::ONE).norm() < 1e-12 || v.norm() < 1e-12)
        })
    }
}

/// Loop of operators `z -> phase * S^s * diag(z^{a_i})` over the unit circle;
/// the normal form of every transition family handled by the bundle layer.
#[derive(Debug, Clone)]
pub struct MonomialLoop {
    shift_power: i64,
    exponents: EPSeq<i64>,
    phase: Complex64,
}

/// Connected-component label and odd exponent class of a monomial loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopClass {
    pub component: i64,
    pub odd_class: CoinvClass,
}

impl MonomialLoop {
    pub fn new(shift_power: i64, exponents: EPSeq<i64>, phase: Complex64) -> Self {
        debug_assert!((phase.norm() - 1.0).abs() < 1e-12);
        Self {
            shift_power,
            exponents,
            phase,
        }
    }

    /// Pure diagonal loop `z -> diag(z^{a_i})`.
    pub fn diagonal(exponents: EPSeq<i64>) -> Self {
        Self::new(0, exponents, Complex64::ONE)
    }

    pub fn constant_identity() -> Self {
        Self::diagonal(EPSeq::constant(0))
    }

    pub fn shift_power(&self) -> i64 {
        self.shift_power
    }

    pub fn exponents(&self) -> &EPSeq<i64> {
        &self.exponents
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    /// Value at a point of the unit circle: a band operator with the single
    /// diagonal `i -> phase * z^{a_{i+s}}` at offset `s`.
    pub fn eval(&self, z: Complex64) -> EPBandOp {
        debug_assert!((z.norm() - 1.0).abs() < 1e-9);
        let s = self.shift_power;
        let phase = self.phase;
        let entries = self
            .exponents
            .shift_by(s)
            .map(|&n| phase * z.powi(n as i32));
        let band = s.abs();
        let mut diagonals = vec![zero_seq(); (2 * band + 1) as usize];
        diagonals[(s + band) as usize] = entries;
        EPBandOp { band, diagonals }
    }

    /// Pointwise product of loops, using
    /// `diag(z^a) S^t = S^t diag(z^{a shifted by t})`.
    pub fn product(&self, other: &Self) -> Self {
        Self::new(
            self.shift_power + other.shift_power,
            self.exponents
                .shift_by(-other.shift_power)
                .add(&other.exponents),
            self.phase * other.phase,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new(
            -self.shift_power,
            self.exponents.shift_by(self.shift_power).neg(),
            self.phase.conj(),
        )
    }

    /// Component label (the shift power) and coinvariant class of the
    /// exponents.
    pub fn class(&self) -> LoopClass {
        LoopClass {
            component: self.shift_power,
            odd_class: self.exponents.coinv_class(),
        }
    }

    /// Conjugation by `S^n` fixes every loop value iff it fixes the
    /// exponents.
    pub fn is_shift_periodic(&self, n: i64) -> bool {
        let shifted = self.exponents.shift_by(n);
        shifted.obs_eq(&self.exponents)
    }
}

/// Fiberwise winding exponents of a family of line bundles: either an
/// eventually periodic sequence or the affine family `i -> slope * i +
/// intercept` (a negative-test carrier for unbounded exponents).
#[derive(Debug, Clone)]
pub enum ExponentSpec {
    Ep(EPSeq<i64>),
    Linear { slope: i64, intercept: i64 },
}

impl ExponentSpec {
    /// Bounded exponent families have equicontinuous transition loops; an
    /// affine family with nonzero slope does not.
    pub fn equicontinuous_family_check(&self) -> bool {
        match self {
            ExponentSpec::Ep(_) => true,
            ExponentSpec::Linear { slope, .. } => *slope == 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseMat;
    use crate::rng::SplitMix64;
    use crate::seq::EPSeq;

    fn unit(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    fn half_half() -> EPSeq<i64> {
        EPSeq::tails(&[1], &[-1], 0)
    }

    #[test]
    fn matrix_entry_examples() {
        assert_eq!(EPBandOp::identity().matrix_entry(3, 3), Complex64::ONE);
        // S e_0 = e_{-1}, so the (-1, 0) entry of S is 1
        let s = EPBandOp::shift_op(1);
        assert_eq!(s.matrix_entry(-1, 0), Complex64::ONE);
        assert_eq!(s.matrix_entry(0, 0), ZERO);
    }

    #[test]
    fn propagation_examples() {
        assert_eq!(EPBandOp::identity().propagation(), 0);
        assert_eq!(EPBandOp::shift_op(1).propagation(), 1);
        assert_eq!(EPBandOp::shift_op(3).propagation(), 3);
    }

    #[test]
    fn compose_shift_with_adjoint_is_identity() {
        let s = EPBandOp::shift_op(1);
        assert!(s.compose(&s.adjoint()).obs_eq(&EPBandOp::identity()));
        assert!(s.adjoint().compose(&s).obs_eq(&EPBandOp::identity()));
    }

    #[test]
    fn propagation_subadditive_and_attained() {
        let s = EPBandOp::shift_op(1);
        assert_eq!(s.compose(&s).propagation(), 2);
        let pairs = [
            (EPBandOp::shift_op(2), EPBandOp::shift_op(-1)),
            (EPBandOp::shift_op(1), EPBandOp::identity()),
        ];
        for (u, v) in pairs {
            assert!(u.compose(&v).propagation() <= u.propagation() + v.propagation());
        }
    }

    #[test]
    fn adjoint_examples() {
        assert!(EPBandOp::shift_op(1)
            .adjoint()
            .obs_eq(&EPBandOp::shift_op(-1)));
        let d = EPBandOp::diagonal(EPSeq::constant(unit(0.7)));
        assert!(d.adjoint().obs_eq(&EPBandOp::diagonal(EPSeq::constant(unit(-0.7)))));
        assert!(d.adjoint().adjoint().obs_eq(&d));
    }

    #[test]
    fn diag_loop_commutation_past_shift() {
        // D(z^a) S = S D(z^{a shifted}) checked entrywise at scattered (i, j)
        let a = EPSeq::new(vec![2, -1], vec![3], 0, vec![0, 1, 1]);
        let z = unit(1.1);
        let d = MonomialLoop::diagonal(a.clone()).eval(z);
        let s = EPBandOp::shift_op(1);
        let lhs = d.compose(&s);
        let rhs = s.compose(&MonomialLoop::diagonal(a.shift_by(-1)).eval(z));
        let mut rng = SplitMix64::new(3);
        for _ in 0..20 {
            let i = rng.next_range(-15, 15);
            let j = rng.next_range(-15, 15);
            let diff = (lhs.matrix_entry(i, j) - rhs.matrix_entry(i, j)).norm();
            assert!(diff < 1e-14, "entry ({i},{j})");
        }
        assert!(lhs.obs_eq(&rhs));
    }

    #[test]
    fn apply_window_examples() {
        let s = EPBandOp::shift_op(1);
        // e_0 on the window [-4, 4): S e_0 = e_{-1}
        let mut x = vec![ZERO; 9];
        x[4] = Complex64::ONE;
        let y = s.apply_window(-4, &x).unwrap();
        assert_eq!(y[3], Complex64::ONE);
        assert_eq!(y[4], ZERO);
        let id = EPBandOp::identity();
        assert_eq!(id.apply_window(-4, &x).unwrap(), x);
        assert!(matches!(
            EPBandOp::shift_op(3).apply_window(0, &x[..5]),
            Err(OpError::WindowTooNarrow { .. })
        ));
    }

    #[test]
    fn apply_window_linear() {
        let op = EPBandOp::shift_op(2);
        let mut rng = SplitMix64::new(11);
        let x: Vec<Complex64> = (0..16)
            .map(|_| Complex64::new(rng.next_signed(), rng.next_signed()))
            .collect();
        let y: Vec<Complex64> = (0..16)
            .map(|_| Complex64::new(rng.next_signed(), rng.next_signed()))
            .collect();
        let sum: Vec<Complex64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = op.apply_window(-8, &sum).unwrap();
        let rx = op.apply_window(-8, &x).unwrap();
        let ry = op.apply_window(-8, &y).unwrap();
        for t in 0..16 {
            assert!((lhs[t] - rx[t] - ry[t]).norm() < 1e-14);
        }
    }

    #[test]
    fn unitarity_defect_examples() {
        for k in [-3i64, 0, 1, 4] {
            assert!(EPBandOp::shift_op(k).unitarity_defect(64, 1) < 1e-15);
        }
        let l = MonomialLoop::new(1, EPSeq::periodic(&[1, 0, 2], 0), unit(0.3));
        assert!(l.eval(unit(2.2)).unitarity_defect(64, 1) < 1e-12);
        // single diagonal entry 2: defect |2*2 - 1| = 3
        let bad = EPBandOp::diagonal(EPSeq::constant(Complex64::ONE).zip_with(
            &EPSeq::<i64>::delta(0).map(|&n| Complex64::new(n as f64, 0.0)),
            |a, b| a + b,
        ));
        assert!((bad.unitarity_defect(40, 0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fredholm_index_examples() {
        assert_eq!(EPBandOp::shift_op(1).fredholm_index(), Ok(1));
        assert_eq!(EPBandOp::identity().fredholm_index(), Ok(0));
        assert_eq!(EPBandOp::shift_op(-4).fredholm_index(), Ok(-4));
        for k in -8..=8 {
            assert_eq!(EPBandOp::shift_op(k).fredholm_index(), Ok(k));
        }
    }

    #[test]
    fn fredholm_index_rejects_non_unitary() {
        let bad = EPBandOp::diagonal(EPSeq::constant(Complex64::new(2.0, 0.0)));
        assert!(matches!(bad.fredholm_index(), Err(OpError::NotUnitary(_))));
    }

    #[test]
    fn index_additivity_on_small_corpus() {
        let z = unit(0.9);
        let ops = [
            EPBandOp::shift_op(2),
            EPBandOp::shift_op(-1),
            MonomialLoop::diagonal(EPSeq::periodic(&[1, -1, 0], 0)).eval(z),
            MonomialLoop::new(1, half_half(), unit(0.2)).eval(z),
        ];
        for u in &ops {
            for v in &ops {
                let lhs = u.compose(v).fredholm_index().unwrap();
                let rhs = u.fredholm_index().unwrap() + v.fredholm_index().unwrap();
                assert_eq!(lhs, rhs);
            }
            assert_eq!(
                u.adjoint().fredholm_index().unwrap(),
                -u.fredholm_index().unwrap()
            );
        }
    }

    #[test]
    fn block_unitary_has_index_zero() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..5 {
            let t = rng.next_f64() * core::f64::consts::TAU;
            let p = rng.next_f64() * core::f64::consts::TAU;
            let mut m = DenseMat::zeros(2, 2);
            m.set(0, 0, Complex64::new(libm::cos(t), 0.0));
            m.set(0, 1, -unit(p) * libm::sin(t));
            m.set(1, 0, unit(-p) * libm::sin(t));
            m.set(1, 1, Complex64::new(libm::cos(t), 0.0));
            let op = EPBandOp::block_unitary(rng.next_range(-5, 5), &m);
            assert!(op.unitarity_defect(64, 2) < 1e-12);
            assert_eq!(op.fredholm_index(), Ok(0));
        }
    }

    #[test]
    fn periodicity_examples() {
        assert!(EPBandOp::shift_op(1).is_periodic(1));
        let two = MonomialLoop::diagonal(EPSeq::periodic(&[1, 0], 0)).eval(unit(0.4));
        assert!(!two.is_periodic(1));
        assert!(two.is_periodic(2));
        for k in 1..=4 {
            assert!(two.is_periodic(2 * k));
        }
        let hh = MonomialLoop::diagonal(half_half()).eval(unit(0.4));
        for n in 1..=16 {
            assert!(!hh.is_periodic(n), "n = {n}");
        }
    }

    #[test]
    fn loop_eval_examples() {
        let l = MonomialLoop::diagonal(EPSeq::delta(0));
        let z = Complex64::new(0.0, 1.0);
        let op = l.eval(z);
        assert_eq!(op.propagation(), 0);
        assert!((op.matrix_entry(0, 0) - z).norm() < 1e-15);
        assert_eq!(op.matrix_entry(1, 1), Complex64::ONE);
        // loop value at z = 1 is phase * S^s
        let l = MonomialLoop::new(2, EPSeq::periodic(&[3, 1], 0), unit(0.8));
        assert!(l
            .eval(Complex64::ONE)
            .obs_eq(&EPBandOp::shift_op(2).compose(&EPBandOp::diagonal(EPSeq::constant(unit(0.8))))));
    }

    #[test]
    fn loop_product_and_inverse() {
        let a = MonomialLoop::new(1, EPSeq::new(vec![1], vec![4, -2], 0, vec![0, 2]), unit(0.5));
        let b = MonomialLoop::new(-2, EPSeq::periodic(&[0, 1, 1], 1), unit(-1.2));
        let z = unit(2.7);
        // eval is a homomorphism
        let lhs = a.product(&b).eval(z);
        let rhs = a.eval(z).compose(&b.eval(z));
        assert!(
            lhs.obs_eq(&rhs) || {
                let bnd = lhs.band().max(rhs.band());
                (-bnd..=bnd).all(|d| {
                    let x = lhs.diagonal_at(d);
                    let y = rhs.diagonal_at(d);
                    (-20..20).all(|i| (x.eval(i) - y.eval(i)).norm() < 1e-12)
                })
            }
        );
        let unit_loop = a.product(&a.inverse());
        assert_eq!(unit_loop.shift_power(), 0);
        assert!(unit_loop.exponents().is_constant(&0));
        assert!(unit_loop.eval(z).obs_eq(&EPBandOp::identity()));
    }

    #[test]
    fn loop_class_examples() {
        use crate::rational::rat;
        let ones = MonomialLoop::diagonal(EPSeq::constant(1));
        let c = ones.class();
        assert_eq!(c.component, 0);
        assert_eq!(c.odd_class, CoinvClass::new(rat(1, 1), rat(1, 1)));
        let pure_shift = MonomialLoop::new(2, EPSeq::constant(0), Complex64::ONE);
        assert_eq!(pure_shift.class().component, 2);
        assert!(pure_shift.class().odd_class.is_zero());
        // additivity under product
        let mut rng = SplitMix64::new(8);
        for _ in 0..10 {
            let pat_a: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            let pat_b: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            let a = MonomialLoop::new(rng.next_range(-2, 2), EPSeq::periodic(&pat_a, 0), Complex64::ONE);
            let b = MonomialLoop::new(rng.next_range(-2, 2), EPSeq::periodic(&pat_b, 1), Complex64::ONE);
            let p = a.product(&b).class();
            assert_eq!(p.component, a.class().component + b.class().component);
            assert_eq!(p.odd_class, a.class().odd_class.add(&b.class().odd_class));
        }
    }

    #[test]
    fn equicontinuity_gate() {
        assert!(ExponentSpec::Ep(half_half()).equicontinuous_family_check());
        assert!(!ExponentSpec::Linear { slope: 1, intercept: 0 }.equicontinuous_family_check());
        assert!(ExponentSpec::Linear { slope: 0, intercept: 5 }.equicontinuous_family_check());
    }
}
