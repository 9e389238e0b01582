//! Exact rational scalars used by the coinvariant calculus.
//!
//! All class and pairing computations in this crate are exact; floating point
//! only ever enters through residual checks. `Rational` is kept in lowest
//! terms by construction.

use num_rational::Ratio;

pub type Rational = Ratio<i64>;

/// `p/q` in lowest terms. Panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rational {
    Ratio::new(p, q)
}

/// Mean of an integer cycle, exact.
pub fn cycle_mean(cycle: &[i64]) -> Rational {
    let sum: i64 = cycle.iter().sum();
    Ratio::new(sum, cycle.len() as i64)
}
