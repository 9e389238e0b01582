#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod band;
pub mod bundle;
pub mod dense;
pub mod fourier;
pub mod osc;
pub mod rational;
pub mod rng;
pub mod seq;
pub mod tol;

pub use num_complex::Complex64;
pub use rational::Rational;
