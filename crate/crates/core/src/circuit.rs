//! The circuit value and the total orderings over its gates and spaces.
//!
//! Gates are ordered by their associated qubit (the lowest operand index) and
//! then by time. Every gate owns the space immediately before it; past the
//! last gate there is an unbounded grid of tail slots, enumerated across
//! qubits first and then along time.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::CircuitError;
use crate::gateset::{GateKind, GateSet, KindId};

pub type Operands = SmallVec<[usize; 2]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: KindId,
    operands: Operands,
}

impl Gate {
    pub fn new(kind: KindId, operands: impl IntoIterator<Item = usize>) -> Self {
        Self {
            kind,
            operands: operands.into_iter().collect(),
        }
    }

    pub fn single(kind: KindId, qubit: usize) -> Self {
        let mut operands = Operands::new();
        operands.push(qubit);
        Self { kind, operands }
    }

    pub fn kind(&self) -> KindId {
        self.kind
    }

    pub fn operands(&self) -> &[usize] {
        &self.operands
    }

    pub(crate) fn validate(&self, n_qubits: usize, gateset: &GateSet) -> Result<(), CircuitError> {
        let kind = gateset
            .kind(self.kind)
            .ok_or(CircuitError::KindOutOfRange(self.kind.0))?;
        if self.operands.len() != kind.arity() {
            return Err(CircuitError::ArityMismatch {
                kind: kind.name().to_string(),
                expected: kind.arity(),
                got: self.operands.len(),
            });
        }
        for (i, &q) in self.operands.iter().enumerate() {
            if q >= n_qubits {
                return Err(CircuitError::InvalidQubit { qubit: q, n_qubits });
            }
            if self.operands[..i].contains(&q) {
                return Err(CircuitError::DuplicateOperand {
                    kind: kind.name().to_string(),
                    qubit: q,
                });
            }
        }
        Ok(())
    }
}

/// An immutable gate list over `n_qubits` qubits in a fixed gate set.
#[derive(Debug, Clone)]
pub struct Circuit {
    n_qubits: usize,
    gateset: Arc<GateSet>,
    gates: Vec<Gate>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.n_qubits == other.n_qubits
            && (Arc::ptr_eq(&self.gateset, &other.gateset) || self.gateset == other.gateset)
            && self.gates == other.gates
    }
}

impl Eq for Circuit {}

impl std::hash::Hash for Circuit {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n_qubits.hash(state);
        self.gateset.name().hash(state);
        self.gates.hash(state);
    }
}

impl Circuit {
    pub fn new(
        n_qubits: usize,
        gateset: Arc<GateSet>,
        gates: Vec<Gate>,
    ) -> Result<Self, CircuitError> {
        if n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        for g in &gates {
            g.validate(n_qubits, &gateset)?;
        }
        Ok(Self {
            n_qubits,
            gateset,
            gates,
        })
    }

    pub fn empty(n_qubits: usize, gateset: Arc<GateSet>) -> Result<Self, CircuitError> {
        Self::new(n_qubits, gateset, Vec::new())
    }

    pub fn builder(n_qubits: usize, gateset: Arc<GateSet>) -> CircuitBuilder {
        CircuitBuilder {
            n_qubits,
            gateset,
            gates: Vec::new(),
            error: None,
        }
    }

    /// Callers guarantee every gate already validates against `self`.
    pub(crate) fn with_gates_unchecked(&self, gates: Vec<Gate>) -> Self {
        Self {
            n_qubits: self.n_qubits,
            gateset: self.gateset.clone(),
            gates,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gateset(&self) -> &Arc<GateSet> {
        &self.gateset
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The kind of a gate belonging to this circuit.
    pub fn kind_of(&self, gate: &Gate) -> &GateKind {
        &self.gateset.kinds()[gate.kind.0]
    }

    /// True when both circuits share qubit count and gate set.
    pub fn same_shape(&self, other: &Circuit) -> bool {
        self.n_qubits == other.n_qubits
            && (Arc::ptr_eq(&self.gateset, &other.gateset) || self.gateset == other.gateset)
    }

    /// Appends `block` on `qubit` after every existing gate.
    pub fn insert_at_tail(&self, qubit: usize, block: &[KindId]) -> Result<Circuit, CircuitError> {
        if qubit >= self.n_qubits {
            return Err(CircuitError::InvalidQubit {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        let mut gates = Vec::with_capacity(self.gates.len() + block.len());
        gates.extend_from_slice(&self.gates);
        for &kind in block {
            let k = self
                .gateset
                .kind(kind)
                .ok_or(CircuitError::KindOutOfRange(kind.0))?;
            if k.arity() != 1 {
                return Err(CircuitError::NotSingleQubit(k.name().to_string()));
            }
            gates.push(Gate::single(kind, qubit));
        }
        Ok(self.with_gates_unchecked(gates))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::write_circuit(self))
    }
}

/// Name-based circuit construction. Errors are deferred to [`build`].
///
/// [`build`]: CircuitBuilder::build
pub struct CircuitBuilder {
    n_qubits: usize,
    gateset: Arc<GateSet>,
    gates: Vec<Gate>,
    error: Option<CircuitError>,
}

impl CircuitBuilder {
    pub fn gate(mut self, name: &str, operands: impl IntoIterator<Item = usize>) -> Self {
        if self.error.is_none() {
            match self.gateset.kind_id(name) {
                Some(id) => self.gates.push(Gate::new(id, operands)),
                None => self.error = Some(CircuitError::UnknownKind(name.to_string())),
            }
        }
        self
    }

    pub fn build(self) -> Result<Circuit, CircuitError> {
        match self.error {
            Some(e) => Err(e),
            None => Circuit::new(self.n_qubits, self.gateset, self.gates),
        }
    }
}

/// The qubit a gate is filed under: its lowest operand index.
pub fn associated_qubit(gate: &Gate) -> usize {
    gate.operands.iter().copied().min().unwrap_or(0)
}

/// Time indices of the circuit's gates sorted by (associated qubit, time).
pub fn order_gates(circuit: &Circuit) -> Vec<usize> {
    let mut order: Vec<usize> = (0..circuit.gates.len()).collect();
    order.sort_by_key(|&t| (associated_qubit(&circuit.gates[t]), t));
    order
}

/// An insertion point in a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Immediately before the gate at this time index.
    BeforeGate(usize),
    /// Tail slot `slot` on `qubit`, after every gate.
    Tail { qubit: usize, slot: usize },
}

/// Lazily enumerates the spaces of a circuit in index order. Never ends.
pub struct Spaces {
    before: std::vec::IntoIter<usize>,
    n_qubits: usize,
    next_tail: usize,
}

impl Iterator for Spaces {
    type Item = Space;

    fn next(&mut self) -> Option<Space> {
        if let Some(t) = self.before.next() {
            return Some(Space::BeforeGate(t));
        }
        let i = self.next_tail;
        self.next_tail += 1;
        Some(Space::Tail {
            qubit: i % self.n_qubits,
            slot: i / self.n_qubits,
        })
    }
}

pub fn spaces(circuit: &Circuit) -> Spaces {
    Spaces {
        before: order_gates(circuit).into_iter(),
        n_qubits: circuit.n_qubits,
        next_tail: 0,
    }
}

/// An enumerated prefix of a circuit's space ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceIndex {
    entries: Vec<Space>,
}

impl SpaceIndex {
    pub fn entries(&self) -> &[Space] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, space: &Space) -> Option<usize> {
        self.entries.iter().position(|s| s == space)
    }

    /// Compares two spaces by index; `None` if either is outside the prefix.
    pub fn compare(&self, a: &Space, b: &Space) -> Option<Ordering> {
        Some(self.position(a)?.cmp(&self.position(b)?))
    }
}

/// The first `k` spaces of `circuit`.
pub fn index_spaces(circuit: &Circuit, k: usize) -> SpaceIndex {
    SpaceIndex {
        entries: spaces(circuit).take(k).collect(),
    }
}
