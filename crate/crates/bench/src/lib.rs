//! Shared fixtures for the benchmarks.

use qpad_core::gen::{
    random_circuit_exact, random_frame_free, random_message_exact, seeded, CircuitShape,
};
use qpad_core::{clifford_t, Circuit, Message};

pub const SEED: u64 = 2024;

/// A frame-free circuit on `n_qubits` with up to `max_gates` gates.
pub fn frame_free(n_qubits: usize, max_gates: usize) -> Circuit {
    let shape = CircuitShape {
        min_qubits: n_qubits,
        max_qubits: n_qubits,
        max_gates,
        nearest_neighbour: false,
    };
    random_frame_free(&mut seeded(SEED), &clifford_t(), &shape)
}

pub fn circuit(n_qubits: usize, n_gates: usize) -> Circuit {
    random_circuit_exact(&mut seeded(SEED), &clifford_t(), n_qubits, n_gates, false)
}

pub fn message(bits: usize) -> Message {
    random_message_exact(&mut seeded(SEED ^ bits as u64), bits)
}
