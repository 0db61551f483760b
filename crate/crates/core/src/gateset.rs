//! Gate kinds, gate sets, and the built-in gate set registry.
//!
//! A [`GateSet`] is an ordered list of [`GateKind`]s. The order is canonical:
//! the codec pairs `kinds[i]` with symbol `i + 2`. A gate set may also carry a
//! registered pair of single-qubit identity blocks, which is what the padding
//! scheme embeds messages with.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::CircuitError;

/// Entrywise tolerance for unitarity and identity-product checks.
pub const UNITARY_TOL: f64 = 1e-12;

/// Index of a gate kind inside its [`GateSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KindId(pub usize);

/// A named gate acting on `arity` qubits with a fixed unitary.
///
/// The matrix is row-major, `2^arity x 2^arity`. Operand 0 of a gate is the
/// most significant bit of the matrix index, so `CX` with operands
/// `[control, target]` has the textbook matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GateKind {
    name: String,
    arity: usize,
    matrix: Vec<Complex64>,
}

impl GateKind {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        matrix: Vec<Complex64>,
    ) -> Result<Self, CircuitError> {
        let name = name.into();
        if arity == 0 {
            return Err(CircuitError::ZeroArity(name));
        }
        let dim = 1usize << arity;
        if matrix.len() != dim * dim {
            return Err(CircuitError::MatrixShape {
                name,
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        // U^dagger U == I
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += matrix[k * dim + i].conj() * matrix[k * dim + j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                if (acc - Complex64::new(expect, 0.0)).norm() > UNITARY_TOL {
                    return Err(CircuitError::NotUnitary(name));
                }
            }
        }
        Ok(Self {
            name,
            arity,
            matrix,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Side length of the matrix, `2^arity`.
    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }
}

/// An ordered, finite set of gate kinds, optionally with a registered pair of
/// identity blocks.
#[derive(Debug, Clone)]
pub struct GateSet {
    name: String,
    kinds: Vec<GateKind>,
    by_name: HashMap<String, KindId>,
    blocks: Option<(Vec<KindId>, Vec<KindId>)>,
}

impl PartialEq for GateSet {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.kinds == other.kinds && self.blocks == other.blocks
    }
}

impl GateSet {
    pub fn new(name: impl Into<String>, kinds: Vec<GateKind>) -> Result<Self, CircuitError> {
        let name = name.into();
        if kinds.len() < 2 {
            return Err(CircuitError::GateSetTooSmall {
                name,
                size: kinds.len(),
            });
        }
        let mut by_name = HashMap::with_capacity(kinds.len());
        for (i, kind) in kinds.iter().enumerate() {
            if by_name.insert(kind.name.clone(), KindId(i)).is_some() {
                return Err(CircuitError::DuplicateKind {
                    gateset: name,
                    kind: kind.name.clone(),
                });
            }
        }
        Ok(Self {
            name,
            kinds,
            by_name,
            blocks: None,
        })
    }

    /// Registers the two identity blocks used to encode bits 0 and 1.
    ///
    /// Each block must be a non-empty run of single-qubit kinds whose product
    /// is the identity up to global phase, and the two blocks must not share
    /// any kind. Disjoint kinds make every block recognizable from its last
    /// gate, which is what right-to-left frame parsing relies on.
    pub fn with_identity_blocks(
        mut self,
        block0: &[&str],
        block1: &[&str],
    ) -> Result<Self, CircuitError> {
        let b0 = self.resolve_block(block0)?;
        let b1 = self.resolve_block(block1)?;
        if let Some(shared) = b0.iter().find(|k| b1.contains(k)) {
            return Err(CircuitError::InvalidBlockPair(format!(
                "kind `{}` appears in both blocks",
                self.kinds[shared.0].name
            )));
        }
        self.blocks = Some((b0, b1));
        Ok(self)
    }

    fn resolve_block(&self, names: &[&str]) -> Result<Vec<KindId>, CircuitError> {
        if names.is_empty() {
            return Err(CircuitError::InvalidBlockPair("empty block".into()));
        }
        let ids = names
            .iter()
            .map(|n| {
                self.kind_id(n)
                    .ok_or_else(|| CircuitError::UnknownKind(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for id in &ids {
            if self.kinds[id.0].arity != 1 {
                return Err(CircuitError::NotSingleQubit(self.kinds[id.0].name.clone()));
            }
        }
        if !is_identity_up_to_phase(ids.iter().map(|id| &self.kinds[id.0])) {
            return Err(CircuitError::InvalidBlockPair(format!(
                "block [{}] is not the identity",
                names.join(",")
            )));
        }
        Ok(ids)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kinds(&self) -> &[GateKind] {
        &self.kinds
    }

    /// Number of kinds (the codec base).
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn kind(&self, id: KindId) -> Option<&GateKind> {
        self.kinds.get(id.0)
    }

    pub fn kind_id(&self, name: &str) -> Option<KindId> {
        self.by_name.get(name).copied()
    }

    /// The registered `(block0, block1)` pair, if any.
    pub fn identity_blocks(&self) -> Option<(&[KindId], &[KindId])> {
        self.blocks
            .as_ref()
            .map(|(a, b)| (a.as_slice(), b.as_slice()))
    }
}

impl fmt::Display for GateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.name)?;
        for (i, k) in self.kinds.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&k.name)?;
        }
        f.write_str("]")
    }
}

/// Product of a sequence of single-qubit gates (first element applied first)
/// compared against `e^{i phi} I`.
fn is_identity_up_to_phase<'a>(kinds: impl Iterator<Item = &'a GateKind>) -> bool {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = [one, zero, zero, one];
    for k in kinds {
        let m = k.matrix();
        acc = [
            m[0] * acc[0] + m[1] * acc[2],
            m[0] * acc[1] + m[1] * acc[3],
            m[2] * acc[0] + m[3] * acc[2],
            m[2] * acc[1] + m[3] * acc[3],
        ];
    }
    let phase = acc[0];
    (phase.norm() - 1.0).abs() <= UNITARY_TOL
        && acc[1].norm() <= UNITARY_TOL
        && acc[2].norm() <= UNITARY_TOL
        && (acc[3] - phase).norm() <= UNITARY_TOL
}

/// Standard gate matrices.
pub mod standard {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn kind(name: &str, arity: usize, m: Vec<Complex64>) -> GateKind {
        GateKind::new(name, arity, m).expect("standard gate matrices are unitary")
    }

    pub fn h() -> GateKind {
        let r = FRAC_1_SQRT_2;
        kind("H", 1, vec![c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)])
    }

    pub fn s() -> GateKind {
        kind(
            "S",
            1,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        )
    }

    pub fn t() -> GateKind {
        let r = FRAC_1_SQRT_2;
        kind("T", 1, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, r)])
    }

    pub fn x() -> GateKind {
        kind(
            "X",
            1,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
    }

    pub fn z() -> GateKind {
        kind(
            "Z",
            1,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        )
    }

    pub fn cx() -> GateKind {
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        #[rustfmt::skip]
        let m = vec![
            l, o, o, o,
            o, l, o, o,
            o, o, o, l,
            o, o, l, o,
        ];
        kind("CX", 2, m)
    }

    pub fn cz() -> GateKind {
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        #[rustfmt::skip]
        let m = vec![
            l, o, o, o,
            o, l, o, o,
            o, o, l, o,
            o, o, o, -l,
        ];
        kind("CZ", 2, m)
    }
}

/// Names accepted by [`builtin_gateset`].
pub const BUILTIN_GATESETS: &[&str] = &["clifford_t", "xz_cx"];

/// `[H, S, T, CX]` with identity blocks `[H,H]` and `[S,S,S,S]`.
pub fn clifford_t() -> Arc<GateSet> {
    static CELL: OnceLock<Arc<GateSet>> = OnceLock::new();
    CELL.get_or_init(|| {
        use standard::*;
        let gs = GateSet::new("clifford_t", vec![h(), s(), t(), cx()])
            .and_then(|g| g.with_identity_blocks(&["H", "H"], &["S", "S", "S", "S"]))
            .expect("clifford_t is well formed");
        Arc::new(gs)
    })
    .clone()
}

/// `[X, Z, CX]` with identity blocks `[X,X]` and `[Z,Z]`.
pub fn xz_cx() -> Arc<GateSet> {
    static CELL: OnceLock<Arc<GateSet>> = OnceLock::new();
    CELL.get_or_init(|| {
        use standard::*;
        let gs = GateSet::new("xz_cx", vec![x(), z(), cx()])
            .and_then(|g| g.with_identity_blocks(&["X", "X"], &["Z", "Z"]))
            .expect("xz_cx is well formed");
        Arc::new(gs)
    })
    .clone()
}

pub fn builtin_gateset(name: &str) -> Option<Arc<GateSet>> {
    match name {
        "clifford_t" => Some(clifford_t()),
        "xz_cx" => Some(xz_cx()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn rejects_non_unitary() {
        let m = vec![Complex64::new(1.0, 0.0); 4];
        assert!(matches!(
            GateKind::new("bad", 1, m),
            Err(CircuitError::NotUnitary(_))
        ));
    }

    #[test]
    fn rejects_zero_arity_and_bad_shape() {
        assert!(matches!(
            GateKind::new("z0", 0, vec![Complex64::new(1.0, 0.0)]),
            Err(CircuitError::ZeroArity(_))
        ));
        assert!(matches!(
            GateKind::new("short", 1, vec![Complex64::new(1.0, 0.0)]),
            Err(CircuitError::MatrixShape { .. })
        ));
    }

    #[test]
    fn gateset_needs_two_distinct_kinds() {
        assert!(matches!(
            GateSet::new("one", vec![cx()]),
            Err(CircuitError::GateSetTooSmall { size: 1, .. })
        ));
        assert!(matches!(
            GateSet::new("dup", vec![h(), h()]),
            Err(CircuitError::DuplicateKind { .. })
        ));
    }

    #[test]
    fn canonical_order_is_declaration_order() {
        let gs = clifford_t();
        let names: Vec<_> = gs.kinds().iter().map(|k| k.name()).collect();
        assert_eq!(names, ["H", "S", "T", "CX"]);
        assert_eq!(gs.kind_id("CX"), Some(KindId(3)));
    }

    #[test]
    fn block_pair_validation() {
        let base = || GateSet::new("hst", vec![h(), s(), t()]).unwrap();
        // T^8 = I, H^2 = I: valid
        assert!(base().with_identity_blocks(&["H", "H"], &["T"; 8]).is_ok());
        // S^2 = Z is not the identity
        assert!(matches!(
            base().with_identity_blocks(&["H", "H"], &["S", "S"]),
            Err(CircuitError::InvalidBlockPair(_))
        ));
        // shared kind
        assert!(matches!(
            base().with_identity_blocks(&["H", "H"], &["H", "S", "S", "S", "S", "H"]),
            Err(CircuitError::InvalidBlockPair(_))
        ));
        let two_q = GateSet::new("cxcz", vec![cx(), cz()]).unwrap();
        assert!(matches!(
            two_q.with_identity_blocks(&["CX", "CX"], &["CZ", "CZ"]),
            Err(CircuitError::NotSingleQubit(_))
        ));
    }

    #[test]
    fn builtins_resolve() {
        for name in BUILTIN_GATESETS {
            let gs = builtin_gateset(name).unwrap();
            assert_eq!(gs.name(), *name);
            assert!(gs.identity_blocks().is_some());
        }
        assert!(builtin_gateset("nope").is_none());
    }
}
