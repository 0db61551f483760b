//! Brute-force unitary construction.
//!
//! Builds the full `2^n x 2^n` matrix of every gate, multiplies them into the
//! circuit unitary, and reads the final state off its first column. Shares no
//! code with [`crate::sim`], so the two can check each other.

use num_complex::Complex64;

use crate::circuit::Circuit;

/// Largest circuit the brute-force path accepts.
pub const MAX_REFERENCE_QUBITS: usize = 10;

type Matrix = Vec<Vec<Complex64>>;

fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Full-register matrix of one gate. Entry `(row, col)` is the gate entry for
/// the operand bits of `row` and `col` when all other bits agree, else 0.
fn embed(n_qubits: usize, gate: &[Complex64], operands: &[usize]) -> Matrix {
    let dim = 1usize << n_qubits;
    let k = operands.len();
    let local = |basis: usize| {
        operands
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((basis >> q) & 1))
    };
    let mask: usize = operands.iter().map(|q| 1usize << q).sum();
    (0..dim)
        .map(|row| {
            (0..dim)
                .map(|col| {
                    if row & !mask != col & !mask {
                        Complex64::new(0.0, 0.0)
                    } else {
                        gate[local(row) * (1 << k) + local(col)]
                    }
                })
                .collect()
        })
        .collect()
}

pub fn unitary(c: &Circuit) -> Vec<Vec<Complex64>> {
    assert!(
        c.n_qubits() <= MAX_REFERENCE_QUBITS,
        "reference path is limited to {MAX_REFERENCE_QUBITS} qubits"
    );
    c.gates()
        .iter()
        .fold(identity(1 << c.n_qubits()), |acc, g| {
            matmul(
                &embed(c.n_qubits(), c.kind_of(g).matrix(), g.operands()),
                &acc,
            )
        })
}

/// Final state from `|0...0>`.
pub fn final_state(c: &Circuit) -> Vec<Complex64> {
    unitary(c).iter().map(|row| row[0]).collect()
}

pub fn distribution(c: &Circuit) -> Vec<f64> {
    final_state(c).iter().map(|a| a.norm_sqr()).collect()
}
