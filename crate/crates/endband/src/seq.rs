//! Two-sided eventually periodic sequences and the coinvariant group of the
//! shift.
//!
//! A bounded integer sequence indexed by `Z` is represented here by the
//! eventually periodic subclass: a finite `core` flanked by a `left_cycle`
//! repeated toward `-inf` and a `right_cycle` repeated toward `+inf`. This
//! subclass is closed under shift, difference, and addition, and contains
//! every sequence the end-invariant calculus produces.
//!
//! The class of a sequence modulo the image of `1 - S` (the shift
//! coinvariants) is decided by the pair of tail means `(mu_minus, mu_plus)`:
//! if `a = (1-S)b` with `b` bounded, every window sum of `a` telescopes to a
//! difference of two `b` entries, so both tail means vanish; conversely the
//! partial-sum witness built by [`certificate_trivial`] is bounded and
//! integral exactly when both tail means vanish. [`brute_force_is_trivial`]
//! validates this rule independently by exhaustive witness search.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::{cycle_mean, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("sequence class is nonzero in the coinvariant group")]
    NotTrivial,
    #[error("sequence is not two-sided periodic")]
    NotPeriodic,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Two-sided eventually periodic sequence.
///
/// Anchoring fixes all index arithmetic: `eval(core_offset - 1)` reads the
/// *last* entry of `left_cycle`, and `eval(core_offset + core.len())` reads
/// the *first* entry of `right_cycle`. Both cycles are nonempty; the core may
/// be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPSeq<T = i64> {
    left_cycle: Vec<T>,
    core: Vec<T>,
    core_offset: i64,
    right_cycle: Vec<T>,
}

impl<T: Clone + PartialEq> EPSeq<T> {
    pub fn new(left_cycle: Vec<T>, core: Vec<T>, core_offset: i64, right_cycle: Vec<T>) -> Self {
        assert!(
            !left_cycle.is_empty() && !right_cycle.is_empty(),
            "cycles must be nonempty"
        );
        Self {
            left_cycle,
            core,
            core_offset,
            right_cycle,
        }
    }

    /// Constant sequence.
    pub fn constant(value: T) -> Self {
        Self::new(vec![value.clone()], Vec::new(), 0, vec![value])
    }

    /// Two-sided periodic sequence with `pattern[0]` placed at index `anchor`.
    pub fn periodic(pattern: &[T], anchor: i64) -> Self {
        assert!(!pattern.is_empty());
        Self::new(pattern.to_vec(), Vec::new(), anchor, pattern.to_vec())
    }

    /// Left tail `left`, right tail `right`, boundary at `boundary` (the
    /// first index reading the right tail).
    pub fn tails(left: &[T], right: &[T], boundary: i64) -> Self {
        Self::new(left.to_vec(), Vec::new(), boundary, right.to_vec())
    }

    pub fn left_cycle(&self) -> &[T] {
        &self.left_cycle
    }

    pub fn core(&self) -> &[T] {
        &self.core
    }

    pub fn core_offset(&self) -> i64 {
        self.core_offset
    }

    pub fn right_cycle(&self) -> &[T] {
        &self.right_cycle
    }

    fn core_end(&self) -> i64 {
        self.core_offset + self.core.len() as i64
    }

    /// Total evaluation at any integer index.
    pub fn eval(&self, i: i64) -> T {
        if i < self.core_offset {
            let m = self.left_cycle.len() as i64;
            self.left_cycle[(i - self.core_offset).rem_euclid(m) as usize].clone()
        } else if i >= self.core_end() {
            let m = self.right_cycle.len() as i64;
            self.right_cycle[(i - self.core_end()).rem_euclid(m) as usize].clone()
        } else {
            self.core[(i - self.core_offset) as usize].clone()
        }
    }

    /// `eval(shift_by(k), i) = eval(self, i + k)`.
    pub fn shift_by(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.core_offset -= k;
        out
    }

    /// Entrywise image under `f`; structure (cycles, core, offset) is kept.
    pub fn map<U: Clone + PartialEq>(&self, mut f: impl FnMut(&T) -> U) -> EPSeq<U> {
        EPSeq {
            left_cycle: self.left_cycle.iter().map(&mut f).collect(),
            core: self.core.iter().map(&mut f).collect(),
            core_offset: self.core_offset,
            right_cycle: self.right_cycle.iter().map(&mut f).collect(),
        }
    }

    /// Pointwise combination; cycle lengths go to the lcm, the core covers
    /// both cores.
    pub fn zip_with<U: Clone + PartialEq, V: Clone + PartialEq>(
        &self,
        other: &EPSeq<U>,
        mut f: impl FnMut(&T, &U) -> V,
    ) -> EPSeq<V> {
        let ml = lcm(self.left_cycle.len(), other.left_cycle.len()) as i64;
        let mr = lcm(self.right_cycle.len(), other.right_cycle.len()) as i64;
        let lo = self.core_offset.min(other.core_offset);
        let hi = self.core_end().max(other.core_end());
        let take = |i: i64| f(&self.eval(i), &other.eval(i));
        let mut take = take;
        let left: Vec<V> = (lo - ml..lo).map(&mut take).collect();
        let core: Vec<V> = (lo..hi).map(&mut take).collect();
        let right: Vec<V> = (hi..hi + mr).map(&mut take).collect();
        EPSeq::new(left, core, lo, right).canonicalize()
    }

    fn minimal_period(cycle: &[T]) -> usize {
        let m = cycle.len();
        for p in 1..=m {
            if m.is_multiple_of(p) && (0..m).all(|j| cycle[j] == cycle[j % p]) {
                return p;
            }
        }
        m
    }

    /// Minimal cycles, minimal core. Idempotent; observational value is
    /// unchanged.
    pub fn canonicalize(&self) -> Self {
        let mut left = self.left_cycle[..Self::minimal_period(&self.left_cycle)].to_vec();
        let mut right = self.right_cycle[..Self::minimal_period(&self.right_cycle)].to_vec();
        let mut core = self.core.clone();
        let mut offset = self.core_offset;
        // Absorb core entries already produced by the adjacent cycle. Each
        // absorption rotates the cycle to keep the boundary anchoring.
        while !core.is_empty() && core.last() == right.last() {
            core.pop();
            right.rotate_right(1);
        }
        while !core.is_empty() && core.first() == left.first() {
            core.remove(0);
            offset += 1;
            left.rotate_left(1);
        }
        Self {
            left_cycle: left,
            core,
            core_offset: offset,
            right_cycle: right,
        }
    }

    /// Observational equality: `eval` agrees at every integer.
    ///
    /// Both sequences are cyclic outside their cores, so agreement on the
    /// combined core window plus one lcm period on each side decides
    /// agreement everywhere.
    pub fn obs_eq(&self, other: &Self) -> bool {
        let ml = lcm(self.left_cycle.len(), other.left_cycle.len()) as i64;
        let mr = lcm(self.right_cycle.len(), other.right_cycle.len()) as i64;
        let lo = self.core_offset.min(other.core_offset) - ml;
        let hi = self.core_end().max(other.core_end()) + mr;
        (lo..hi).all(|i| self.eval(i) == other.eval(i))
    }

    /// True when every entry equals `zero`.
    pub fn is_constant(&self, value: &T) -> bool {
        self.left_cycle.iter().all(|v| v == value)
            && self.core.iter().all(|v| v == value)
            && self.right_cycle.iter().all(|v| v == value)
    }

    /// Cycle-length lcm, the basic period scale of the sequence.
    pub fn cycle_lcm(&self) -> usize {
        lcm(self.left_cycle.len(), self.right_cycle.len())
    }
}

impl EPSeq<i64> {
    /// Kronecker delta at `i`.
    pub fn delta(i: i64) -> Self {
        Self::new(vec![0], vec![1], i, vec![0])
    }

    /// Finitely supported sequence: `values` at `offset..`, zero elsewhere.
    pub fn finitely_supported(offset: i64, values: &[i64]) -> Self {
        Self::new(vec![0], values.to_vec(), offset, vec![0])
    }

    /// Step sequence `b(m)`: 1 for `i <= m`, 0 for `i > m`.
    pub fn step(m: i64) -> Self {
        Self::tails(&[1], &[0], m + 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    /// The shift `(Sa)_i = a_{i+1}`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    /// `(1 - S)a`, entrywise `a_i - a_{i+1}`.
    pub fn delta_op(&self) -> Self {
        self.zip_with(&self.shift(), |a, b| a - b)
    }

    /// Class in the shift-coinvariant group: the pair of tail means.
    pub fn coinv_class(&self) -> CoinvClass {
        CoinvClass {
            mu_minus: cycle_mean(&self.left_cycle),
            mu_plus: cycle_mean(&self.right_cycle),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coinv_class().is_zero()
    }

    pub fn coinv_equal(&self, other: &Self) -> bool {
        self.sub(other).is_trivial()
    }

    /// Bounded integer witness `b` with `(1-S)b = self`, built from partial
    /// sums anchored at the core offset and normalized so the right tail of
    /// `b` has mean in `[0, 1)`.
    pub fn certificate_trivial(&self) -> Result<Self, SeqError> {
        if !self.is_trivial() {
            return Err(SeqError::NotTrivial);
        }
        let a = self.canonicalize();
        let ll = a.left_cycle.len() as i64;
        let lr = a.right_cycle.len() as i64;
        let start = a.core_offset;
        let end = a.core_end();
        // b_{i+1} = b_i - a_i with b_start = 0; both tails of `a` sum to zero
        // over a cycle, so the window below already exhibits the cycles of b.
        let lo = start - ll;
        let hi = end + lr;
        let mut b = vec![0i64; (hi - lo + 1) as usize];
        let at = |i: i64| (i - lo) as usize;
        for i in start..hi {
            b[at(i + 1)] = b[at(i)] - a.eval(i);
        }
        for i in (lo..start).rev() {
            b[at(i)] = b[at(i + 1)] + a.eval(i);
        }
        let right: Vec<i64> = (end..end + lr).map(|i| b[at(i)]).collect();
        let shift = cycle_mean(&right).floor().to_integer();
        let witness = EPSeq::new(
            (lo..start).map(|i| b[at(i)] - shift).collect(),
            (start..end).map(|i| b[at(i)] - shift).collect(),
            start,
            right.iter().map(|v| v - shift).collect(),
        );
        Ok(witness.canonicalize())
    }

    /// Independent triviality oracle: exhaustive search for a bounded witness
    /// on the window `[-w, w]`.
    ///
    /// For each starting value `b_0` in `[-bound, bound]` the recurrence
    /// `b_{i+1} = b_i - a_i` forces the whole extension; the candidate is
    /// accepted if it stays within `bound` and is eventually periodic on the
    /// window (period = the matching cycle length of `a`). Intended for use
    /// against [`EPSeq::is_trivial`] in tests; callers should keep
    /// `w >= 4 * cycle lcm` and `bound >= w * max|entry|`.
    pub fn brute_force_is_trivial(&self, w: i64, bound: i64) -> bool {
        let a = self.canonicalize();
        let ml = a.left_cycle.len() as i64;
        let mr = a.right_cycle.len() as i64;
        let at = |i: i64| (i + w) as usize;
        'candidate: for b0 in -bound..=bound {
            let mut b = vec![0i64; (2 * w + 1) as usize];
            b[at(0)] = b0;
            for i in 0..w {
                b[at(i + 1)] = b[at(i)] - a.eval(i);
            }
            for i in (-w..0).rev() {
                b[at(i)] = b[at(i + 1)] + a.eval(i);
            }
            if b.iter().any(|v| v.abs() > bound) {
                continue 'candidate;
            }
            // Eventual periodicity of the witness on the window tails.
            let right_from = a.core_end().clamp(-w, w);
            for i in right_from..=(w - mr) {
                if b[at(i + mr)] != b[at(i)] {
                    continue 'candidate;
                }
            }
            let left_to = a.core_offset.clamp(-w, w);
            for i in -w..=(left_to - ml) {
                if b[at(i + ml)] != b[at(i)] {
                    continue 'candidate;
                }
            }
            return true;
        }
        false
    }

    /// Cesaro average of a two-sided periodic sequence: the mean over one
    /// period, which equals both components of the class.
    pub fn cesaro(&self) -> Result<Rational, SeqError> {
        let a = self.canonicalize();
        let p = lcm(a.left_cycle.len(), a.right_cycle.len()) as i64;
        if !a.obs_eq(&a.shift_by(p)) {
            return Err(SeqError::NotPeriodic);
        }
        let sum: i64 = (a.core_offset..a.core_offset + p).map(|i| a.eval(i)).sum();
        Ok(rat(sum, p))
    }
}

/// Representative of the rational `q` under the inclusion of the periodic
/// subgroup: a two-sided period-`n` sequence whose period sums to `p`, where
/// `q = p/n` in lowest terms. Entries differ by at most one.
pub fn iota_rep(q: Rational, anchor: i64) -> EPSeq<i64> {
    let p = *q.numer();
    let n = *q.denom();
    let base = p.div_euclid(n);
    let extra = p.rem_euclid(n);
    let pattern: Vec<i64> = (0..n).map(|j| if j < extra { base + 1 } else { base }).collect();
    EPSeq::periodic(&pattern, anchor)
}

/// Normal form of a class in the shift-coinvariant group: the pair of tail
/// means, exact rationals in lowest terms. Addition is componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoinvClass {
    pub mu_minus: Rational,
    pub mu_plus: Rational,
}

impl CoinvClass {
    pub fn new(mu_minus: Rational, mu_plus: Rational) -> Self {
        Self { mu_minus, mu_plus }
    }

    pub fn zero() -> Self {
        Self::new(rat(0, 1), rat(0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.mu_minus == rat(0, 1) && self.mu_plus == rat(0, 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.mu_minus + other.mu_minus, self.mu_plus + other.mu_plus)
    }
}

/// Computable functional on coinvariant classes:
/// `phi(x) = c_minus * mu_minus(x) + c_plus * mu_plus(x)`.
///
/// This two-parameter family spans the evaluations the degree-1 invariants
/// need: [`Functional::tail_mean`] is dual to the constant sequence
/// `(...,1,1,1,...)` and [`Functional::tail_split`] to the half-half sequence
/// `(...,1,1,-1,-1,...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Functional {
    pub c_minus: Rational,
    pub c_plus: Rational,
}

impl Functional {
    pub fn new(c_minus: Rational, c_plus: Rational) -> Self {
        Self { c_minus, c_plus }
    }

    pub fn tail_mean() -> Self {
        Self::new(rat(1, 2), rat(1, 2))
    }

    pub fn tail_split() -> Self {
        Self::new(rat(1, 2), rat(-1, 2))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.c_minus + other.c_minus, self.c_plus + other.c_plus)
    }

    /// Exact pairing with a class.
    pub fn pair(&self, x: &CoinvClass) -> Rational {
        self.c_minus * x.mu_minus + self.c_plus * x.mu_plus
    }
}
