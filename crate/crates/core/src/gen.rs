//! Seeded random circuits and messages for property checks.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::gateset::{GateSet, KindId};
use crate::promise::Promise;
use crate::stego::{dec, Message};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct CircuitShape {
    pub min_qubits: usize,
    pub max_qubits: usize,
    pub max_gates: usize,
    /// Multi-qubit gates act on neighbouring qubits only (`q, q+1, ...`).
    pub nearest_neighbour: bool,
}

impl CircuitShape {
    pub fn new(max_qubits: usize, max_gates: usize) -> Self {
        Self {
            min_qubits: 1,
            max_qubits,
            max_gates,
            nearest_neighbour: false,
        }
    }
}

pub fn random_circuit(rng: &mut impl Rng, gateset: &Arc<GateSet>, shape: &CircuitShape) -> Circuit {
    let n = rng.random_range(shape.min_qubits..=shape.max_qubits);
    let len = rng.random_range(0..=shape.max_gates);
    random_circuit_exact(rng, gateset, n, len, shape.nearest_neighbour)
}

/// A circuit with exactly `n_qubits` qubits and `n_gates` gates (fewer only
/// if no kind fits on `n_qubits` qubits).
pub fn random_circuit_exact(
    rng: &mut impl Rng,
    gateset: &Arc<GateSet>,
    n_qubits: usize,
    n_gates: usize,
    nearest_neighbour: bool,
) -> Circuit {
    let fitting: Vec<KindId> = (0..gateset.len())
        .map(KindId)
        .filter(|&k| gateset.kinds()[k.0].arity() <= n_qubits)
        .collect();
    let mut gates = Vec::with_capacity(n_gates);
    if !fitting.is_empty() {
        for _ in 0..n_gates {
            let kind = *fitting.choose(rng).expect("non-empty");
            let arity = gateset.kinds()[kind.0].arity();
            let operands: Vec<usize> = if nearest_neighbour {
                let start = rng.random_range(0..=n_qubits - arity);
                let mut ops: Vec<usize> = (start..start + arity).collect();
                if rng.random_bool(0.5) {
                    ops.reverse();
                }
                ops
            } else {
                rand::seq::index::sample(rng, n_qubits, arity).into_vec()
            };
            gates.push(Gate::new(kind, operands));
        }
    }
    Circuit::new(n_qubits, gateset.clone(), gates).expect("generated gates are valid")
}

/// Like [`random_circuit`] but redrawn until it carries no frame.
pub fn random_frame_free(
    rng: &mut impl Rng,
    gateset: &Arc<GateSet>,
    shape: &CircuitShape,
) -> Circuit {
    loop {
        let c = random_circuit(rng, gateset, shape);
        if dec(&c).is_none() {
            return c;
        }
    }
}

/// Uniform length in `0..=max_bits`, uniform bits.
pub fn random_message(rng: &mut impl Rng, max_bits: usize) -> Message {
    let len = rng.random_range(0..=max_bits);
    random_message_exact(rng, len)
}

pub fn random_message_exact(rng: &mut impl Rng, len: usize) -> Message {
    Message::from_bits((0..len).map(|_| rng.random_bool(0.5)).collect())
}

/// Rejection-samples a circuit satisfying `p`.
pub fn sample_in_promise(
    rng: &mut impl Rng,
    gateset: &Arc<GateSet>,
    shape: &CircuitShape,
    p: &Promise,
    attempts: usize,
) -> Option<Circuit> {
    (0..attempts)
        .map(|_| random_circuit(rng, gateset, shape))
        .find(|c| p.holds(c))
}
