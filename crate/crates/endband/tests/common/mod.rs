#![allow(dead_code)] // each test binary uses a subset

//! Shared helpers for integration tests: the truncated half-line index
//! oracle and seeded corpora of band unitaries and sequences.

use endband::band::{EPBandOp, MonomialLoop};
use endband::dense::DenseMat;
use endband::rng::SplitMix64;
use endband::seq::EPSeq;
use endband::Complex64;

/// Numerical rank by Gaussian elimination with full pivoting.
#[allow(clippy::needless_range_loop)] // pivot search reads cleanest with indices
pub fn numerical_rank(m: &DenseMat, tol: f64) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Complex64>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    let mut row0 = 0;
    let mut col0 = 0;
    while row0 < rows && col0 < cols {
        let (mut pr, mut pc, mut best) = (row0, col0, 0.0f64);
        for (r, row) in a.iter().enumerate().skip(row0) {
            for (c, v) in row.iter().enumerate().skip(col0) {
                if v.norm() > best {
                    best = v.norm();
                    pr = r;
                    pc = c;
                }
            }
        }
        if best < tol {
            break;
        }
        a.swap(row0, pr);
        for row in &mut a {
            row.swap(col0, pc);
        }
        let pivot = a[row0][col0];
        for r in row0 + 1..rows {
            let factor = a[r][col0] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for c in col0..cols {
                let sub = factor * a[row0][c];
                a[r][c] -= sub;
            }
        }
        rank += 1;
        row0 += 1;
        col0 += 1;
    }
    rank
}

/// Kernel dimension of the half-line compression `P op P`.
///
/// For a band unitary the kernel is finitely supported in `[0, band)`, so it
/// equals the kernel of the rectangular window with rows `[0, n)` and
/// columns `[0, n - 2 band)` (the column cut keeps the far truncation edge
/// from injecting spurious kernel vectors).
pub fn halfline_kernel_dim(op: &EPBandOp, n: i64) -> usize {
    let band = op.band();
    let cols = (n - 2 * band).max(1);
    let mut m = DenseMat::zeros(n as usize, cols as usize);
    for i in 0..n {
        for j in 0..cols {
            m.set(i as usize, j as usize, op.matrix_entry(i, j));
        }
    }
    cols as usize - numerical_rank(&m, 1e-7)
}

/// Independent index oracle: kernel rank minus cokernel rank of the
/// truncated half-line compression at the window `n = 8 band + 32`.
pub fn index_oracle(op: &EPBandOp) -> i64 {
    let n = 8 * op.band() + 32;
    let ker = halfline_kernel_dim(op, n) as i64;
    let coker = halfline_kernel_dim(&op.adjoint(), n) as i64;
    ker - coker
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn random_exponents(rng: &mut SplitMix64) -> EPSeq<i64> {
    let len = rng.next_range(1, 3) as usize;
    let pat: Vec<i64> = (0..len).map(|_| rng.next_range(-2, 2)).collect();
    EPSeq::periodic(&pat, rng.next_range(-2, 2))
}

fn random_block(rng: &mut SplitMix64) -> EPBandOp {
    let t = rng.next_f64() * std::f64::consts::TAU;
    let p = rng.next_f64() * std::f64::consts::TAU;
    let q = rng.next_f64() * std::f64::consts::TAU;
    // [[e^{iq} cos, -e^{ip} sin], [e^{i(q-p)} sin, cos]] is unitary
    let mut m = DenseMat::zeros(2, 2);
    m.set(0, 0, unit(q) * t.cos());
    m.set(0, 1, -unit(p) * t.sin());
    m.set(1, 0, unit(q - p) * t.sin());
    m.set(1, 1, Complex64::new(t.cos(), 0.0));
    EPBandOp::block_unitary(rng.next_range(-4, 4), &m)
}

fn random_factor(rng: &mut SplitMix64) -> EPBandOp {
    match rng.next_range(0, 3) {
        0 => EPBandOp::shift_op(rng.next_range(-3, 3)),
        1 => {
            let z = unit(rng.next_f64() * std::f64::consts::TAU);
            MonomialLoop::diagonal(random_exponents(rng)).eval(z)
        }
        2 => {
            let z = unit(rng.next_f64() * std::f64::consts::TAU);
            MonomialLoop::new(rng.next_range(-2, 2), random_exponents(rng), unit(rng.next_f64()))
                .eval(z)
        }
        _ => random_block(rng),
    }
}

/// Seeded corpus of band unitaries: shifts, monomial loop values, dense
/// blocks, and products of up to three factors.
pub fn unitary_corpus(count: usize, seed: u64) -> Vec<EPBandOp> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let factors = rng.next_range(1, 3);
        let mut op = random_factor(&mut rng);
        for _ in 1..factors {
            op = op.compose(&random_factor(&mut rng));
        }
        out.push(op);
    }
    out
}

/// Seeded corpus of eventually periodic integer sequences with small
/// parameters.
pub fn ep_corpus(count: usize, seed: u64) -> Vec<EPSeq<i64>> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let left: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            let right: Vec<i64> = (0..rng.next_range(1, 3)).map(|_| rng.next_range(-2, 2)).collect();
            let core: Vec<i64> = (0..rng.next_range(0, 2)).map(|_| rng.next_range(-2, 2)).collect();
            EPSeq::new(left, core, rng.next_range(-3, 3), right)
        })
        .collect()
}
