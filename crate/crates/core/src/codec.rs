//! Invertible circuit ↔ string serialization.
//!
//! For a gate set of size `Ξ` the alphabet is `{0, ..., Ξ+1}`. Gate kind `i`
//! (canonical order) is written as the single symbol `i + 2`; each operand is
//! written as a width-`w` base-`Ξ` numeral, most significant digit first,
//! with `w = max(1, ⌈log_Ξ(n_qubits)⌉)`. A gate record is therefore
//! `1 + arity·w` symbols, and the decoder learns the arity from the gate
//! symbol before reading operands.

use std::fmt;
use std::sync::Arc;

use crate::circuit::{Circuit, Gate, Operands};
use crate::error::CodecError;
use crate::gateset::{GateSet, KindId};
use crate::stego::Message;

pub type Symbol = u32;

/// Symbol tables derived from a gate set and qubit count.
#[derive(Debug, Clone)]
pub struct CodecScheme {
    gateset: Arc<GateSet>,
    n_qubits: usize,
    width: usize,
}

impl CodecScheme {
    pub fn new(gateset: Arc<GateSet>, n_qubits: usize) -> Self {
        let width = digit_width(gateset.len(), n_qubits);
        Self {
            gateset,
            n_qubits,
            width,
        }
    }

    pub fn for_circuit(c: &Circuit) -> Self {
        Self::new(c.gateset().clone(), c.n_qubits())
    }

    /// `Ξ`, the numeral base.
    pub fn base(&self) -> usize {
        self.gateset.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of distinct symbols, `Ξ + 2`.
    pub fn alphabet_size(&self) -> usize {
        self.base() + 2
    }

    pub fn gate_symbol(&self, kind: KindId) -> Symbol {
        (kind.0 + 2) as Symbol
    }

    pub fn kind_for_symbol(&self, symbol: Symbol) -> Option<KindId> {
        let i = (symbol as usize).checked_sub(2)?;
        (i < self.base()).then_some(KindId(i))
    }

    pub fn record_len(&self, arity: usize) -> usize {
        1 + arity * self.width
    }

    fn push_index(&self, out: &mut Vec<Symbol>, q: usize) {
        let base = self.base();
        let start = out.len();
        out.resize(start + self.width, 0);
        let mut rest = q;
        for slot in out[start..].iter_mut().rev() {
            *slot = (rest % base) as Symbol;
            rest /= base;
        }
    }
}

/// Smallest `w ≥ 1` with `base^w ≥ n`.
pub fn digit_width(base: usize, n: usize) -> usize {
    let mut w = 1;
    let mut cap = base;
    while cap < n {
        cap = cap.saturating_mul(base);
        w += 1;
    }
    w
}

/// A string over the codec alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolString(Vec<Symbol>);

impl SymbolString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renders for a gate set of size `base`: one digit per symbol with no
    /// separators when every symbol fits in a single decimal digit
    /// (`base + 1 ≤ 9`), otherwise whitespace-separated decimal tokens.
    pub fn render(&self, base: usize) -> String {
        if compact(base) {
            self.0
                .iter()
                .map(|&s| char::from_digit(s, 10).expect("compact symbols are single digits"))
                .collect()
        } else {
            self.0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Inverse of [`render`](Self::render). In compact mode whitespace is
    /// ignored.
    pub fn parse(text: &str, base: usize) -> Result<Self, CodecError> {
        let bad = |token: &str| CodecError::BadToken {
            token: token.to_string(),
        };
        if compact(base) {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).ok_or_else(|| bad(&c.to_string())))
                .collect::<Result<Vec<_>, _>>()
                .map(Self)
        } else {
            text.split_whitespace()
                .map(|t| t.parse::<Symbol>().map_err(|_| bad(t)))
                .collect::<Result<Vec<_>, _>>()
                .map(Self)
        }
    }
}

fn compact(base: usize) -> bool {
    base < 9
}

pub fn encode(c: &Circuit) -> SymbolString {
    let scheme = CodecScheme::for_circuit(c);
    let mut out = Vec::with_capacity(c.len() * scheme.record_len(2));
    for g in c.gates() {
        out.push(scheme.gate_symbol(g.kind()));
        for &q in g.operands() {
            scheme.push_index(&mut out, q);
        }
    }
    SymbolString(out)
}

pub fn decode(
    s: &SymbolString,
    n_qubits: usize,
    gateset: Arc<GateSet>,
) -> Result<Circuit, CodecError> {
    if n_qubits == 0 {
        return Err(CodecError::NoQubits);
    }
    let scheme = CodecScheme::new(gateset.clone(), n_qubits);
    let base = scheme.base();
    let syms = s.symbols();
    let mut gates = Vec::new();
    let mut pos = 0;
    while pos < syms.len() {
        let start = pos;
        let kind = scheme
            .kind_for_symbol(syms[pos])
            .ok_or(CodecError::UnknownGateSymbol {
                position: pos,
                symbol: syms[pos],
            })?;
        let arity = gateset.kinds()[kind.0].arity();
        if syms.len() - start < scheme.record_len(arity) {
            return Err(CodecError::Truncated { position: start });
        }
        pos += 1;
        let mut operands = Operands::new();
        for _ in 0..arity {
            let op_pos = pos;
            let mut q = 0usize;
            for &d in &syms[pos..pos + scheme.width] {
                if d as usize >= base {
                    return Err(CodecError::DigitOutOfRange {
                        position: pos,
                        symbol: d,
                        base,
                    });
                }
                q = q * base + d as usize;
                pos += 1;
            }
            if q >= n_qubits {
                return Err(CodecError::OperandOutOfRange {
                    position: op_pos,
                    qubit: q,
                    n_qubits,
                });
            }
            if operands.contains(&q) {
                return Err(CodecError::DuplicateOperand {
                    position: op_pos,
                    qubit: q,
                });
            }
            operands.push(q);
        }
        gates.push(Gate::new(kind, operands));
    }
    Ok(Circuit::new(n_qubits, gateset, gates).expect("decoded gates are validated"))
}

/// Bits per header field of an instance word.
pub const WORD_HEADER_BITS: usize = 32;

/// Bits used per symbol in an instance word: smallest `b` with `2^b ≥ Ξ+2`.
pub fn bits_per_symbol(base: usize) -> usize {
    let mut b = 1;
    while (1usize << b) < base + 2 {
        b += 1;
    }
    b
}

/// Binary instance word for a circuit: the qubit count as a 32-bit
/// big-endian header, then every codec symbol as a fixed-width binary
/// numeral. The gate set is implied by the reduction target and not stored.
pub fn encode_word(c: &Circuit) -> Message {
    let s = encode(c);
    let b = bits_per_symbol(c.gateset().len());
    let mut bits = Vec::with_capacity(WORD_HEADER_BITS + s.len() * b);
    push_bits(&mut bits, c.n_qubits() as u64, WORD_HEADER_BITS);
    for &sym in s.symbols() {
        push_bits(&mut bits, sym as u64, b);
    }
    Message::from_bits(bits)
}

pub fn decode_word(word: &Message, gateset: Arc<GateSet>) -> Result<Circuit, CodecError> {
    let bits = word.bits();
    if bits.len() < WORD_HEADER_BITS {
        return Err(CodecError::BadWord(format!(
            "{} bits is shorter than the {WORD_HEADER_BITS}-bit header",
            bits.len()
        )));
    }
    let n_qubits = read_bits(&bits[..WORD_HEADER_BITS]) as usize;
    let b = bits_per_symbol(gateset.len());
    let body = &bits[WORD_HEADER_BITS..];
    if !body.len().is_multiple_of(b) {
        return Err(CodecError::BadWord(format!(
            "body of {} bits is not a multiple of {b}",
            body.len()
        )));
    }
    let symbols = body.chunks(b).map(|c| read_bits(c) as Symbol).collect();
    decode(&SymbolString(symbols), n_qubits, gateset)
}

fn push_bits(out: &mut Vec<bool>, value: u64, width: usize) {
    out.extend((0..width).rev().map(|i| (value >> i) & 1 == 1));
}

fn read_bits(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}
