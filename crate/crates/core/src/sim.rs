//! Dense statevector simulation, used as the semantic oracle for circuits.
//!
//! Amplitudes are indexed little-endian: qubit `q` is bit `q` of the basis
//! index. Circuits always start from `|0...0>`.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::SimError;

pub const MAX_QUBITS: usize = 24;
/// Probabilities within this distance of 1/3 or 2/3 are treated as promise
/// violations.
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Result<Self, SimError> {
        check_size(n_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born-rule distribution over all `2^n` basis outcomes.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Marginal probability that `qubit` measures 1.
    pub fn prob_one(&self, qubit: usize) -> f64 {
        let mask = 1usize << qubit;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Applies a `2^k x 2^k` row-major matrix to `operands`. Operand 0 is the
    /// most significant bit of the matrix index.
    pub fn apply(&mut self, matrix: &[Complex64], operands: &[usize]) {
        match operands {
            [q] => self.apply_1q(matrix, *q),
            _ => self.apply_kq(matrix, operands),
        }
    }

    fn apply_1q(&mut self, m: &[Complex64], q: usize) {
        let mask = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = m[0] * a0 + m[1] * a1;
            self.amplitudes[j] = m[2] * a0 + m[3] * a1;
        }
    }

    fn apply_kq(&mut self, m: &[Complex64], operands: &[usize]) {
        let k = operands.len();
        let dim = 1usize << k;
        let mask: usize = operands.iter().map(|q| 1usize << q).sum();
        // offsets[j]: basis bits set by local index j
        let offsets: Vec<usize> = (0..dim)
            .map(|j| {
                operands
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| (j >> (k - 1 - pos)) & 1 == 1)
                    .map(|(_, q)| 1usize << q)
                    .sum()
            })
            .collect();
        let mut buf = vec![Complex64::new(0.0, 0.0); dim];
        for base in 0..self.amplitudes.len() {
            if base & mask != 0 {
                continue;
            }
            for (slot, off) in buf.iter_mut().zip(&offsets) {
                *slot = self.amplitudes[base | off];
            }
            for (row, off) in offsets.iter().enumerate() {
                let r = &m[row * dim..(row + 1) * dim];
                self.amplitudes[base | off] = r.iter().zip(&buf).map(|(a, b)| a * b).sum();
            }
        }
    }
}

fn check_size(n_qubits: usize) -> Result<(), SimError> {
    if n_qubits > MAX_QUBITS {
        return Err(SimError::TooManyQubits {
            n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Final state of `c` applied to `|0...0>`.
pub fn run(c: &Circuit) -> Result<StateVector, SimError> {
    let mut state = StateVector::zero(c.n_qubits())?;
    for g in c.gates() {
        state.apply(c.kind_of(g).matrix(), g.operands());
    }
    Ok(state)
}

/// Probability that the highest-index qubit measures 1.
pub fn last_qubit_one_prob(c: &Circuit) -> Result<f64, SimError> {
    Ok(run(c)?.prob_one(c.n_qubits() - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    PromiseViolation,
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Membership::In => "In",
            Membership::Out => "Out",
            Membership::PromiseViolation => "PromiseViolation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleVerdict {
    pub membership: Membership,
    pub p_one: f64,
}

pub fn classify(p_one: f64) -> Membership {
    if p_one > 2.0 / 3.0 + GUARD_BAND {
        Membership::In
    } else if p_one < 1.0 / 3.0 - GUARD_BAND {
        Membership::Out
    } else {
        Membership::PromiseViolation
    }
}

/// Decides the instance by brute-force simulation.
pub fn sdcs_oracle(c: &Circuit) -> Result<OracleVerdict, SimError> {
    let p_one = last_qubit_one_prob(c)?;
    Ok(OracleVerdict {
        membership: classify(p_one),
        p_one,
    })
}

/// True when every outcome probability of `a` and `b` differs by at most
/// `tol`.
pub fn distributions_equal(a: &Circuit, b: &Circuit, tol: f64) -> Result<bool, SimError> {
    if a.n_qubits() != b.n_qubits() {
        return Err(SimError::ShapeMismatch {
            left: a.n_qubits(),
            right: b.n_qubits(),
        });
    }
    let (pa, pb) = (run(a)?.probabilities(), run(b)?.probabilities());
    Ok(pa.iter().zip(&pb).all(|(x, y)| (x - y).abs() <= tol))
}
