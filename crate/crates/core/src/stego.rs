//! Embedding bit strings into circuits as identity blocks.
//!
//! A message is wrapped in a frame: 8 magic bits `10100101`, the payload, and
//! the payload length as a 32-bit big-endian count. Each frame bit becomes one
//! identity block (`block1` for 1, `block0` for 0) appended on qubit 0, after
//! every gate of the circuit. Those blocks fill qubit 0's tail slots in index
//! order. The length comes last, so [`dec`] parses from the end of the gate
//! list without any side information.

use std::fmt;
use std::sync::Arc;

use crate::circuit::{Circuit, Gate};
use crate::error::StegoError;
use crate::gateset::{GateSet, KindId};

pub const MAGIC: u8 = 0b1010_0101;
pub const MAGIC_BITS: usize = 8;
pub const LENGTH_BITS: usize = 32;
/// Frame blocks added on top of the payload.
pub const FRAME_OVERHEAD: usize = MAGIC_BITS + LENGTH_BITS;
/// Qubit the frame is written to.
pub const FRAME_QUBIT: usize = 0;

/// A finite bit string.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message {
    bits: Vec<bool>,
}

impl Message {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The low `width` bits of `value`, most significant first.
    pub fn from_uint(value: u64, width: usize) -> Self {
        Self {
            bits: (0..width)
                .rev()
                .map(|i| i < 64 && (value >> i) & 1 == 1)
                .collect(),
        }
    }

    /// Parses a `0`/`1` string.
    pub fn from_bit_str(s: &str) -> Result<Self, StegoError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(StegoError::BadMessage(format!("`{c}` is not a bit"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_bits)
    }

    /// Parses hexadecimal, most significant bit first. Four bits per digit.
    pub fn from_hex(s: &str) -> Result<Self, StegoError> {
        let s = s.strip_prefix("0x").unwrap_or(s);
        let mut bits = Vec::with_capacity(s.len() * 4);
        for c in s.chars() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| StegoError::BadMessage(format!("`{c}` is not a hex digit")))?;
            bits.extend((0..4).rev().map(|i| (d >> i) & 1 == 1));
        }
        Ok(Self::from_bits(bits))
    }

    /// Lowercase hex, or `None` when the length is not a multiple of four.
    pub fn to_hex(&self) -> Option<String> {
        if !self.bits.len().is_multiple_of(4) {
            return None;
        }
        Some(
            self.bits
                .chunks(4)
                .map(|c| {
                    let d = c.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
                    char::from_digit(d, 16).expect("nibble")
                })
                .collect(),
        )
    }

    pub fn to_bit_str(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_str())
    }
}

/// Two distinguishable single-qubit identity sequences of a gate set.
#[derive(Debug, Clone)]
pub struct IdentityBlockPair {
    gateset: Arc<GateSet>,
    block0: Vec<KindId>,
    block1: Vec<KindId>,
}

impl IdentityBlockPair {
    pub fn gateset(&self) -> &Arc<GateSet> {
        &self.gateset
    }

    pub fn block0(&self) -> &[KindId] {
        &self.block0
    }

    pub fn block1(&self) -> &[KindId] {
        &self.block1
    }

    pub fn block(&self, bit: bool) -> &[KindId] {
        if bit {
            &self.block1
        } else {
            &self.block0
        }
    }

    pub fn block_names(&self, bit: bool) -> Vec<&str> {
        self.block(bit)
            .iter()
            .map(|k| self.gateset.kinds()[k.0].name())
            .collect()
    }

    /// Matches one block ending just before `end` on the frame qubit.
    /// Returns the encoded bit and the block's start index.
    fn read_back(&self, gates: &[Gate], end: usize) -> Option<(bool, usize)> {
        let last = gates[..end].last()?;
        if last.operands() != [FRAME_QUBIT] {
            return None;
        }
        let bit = if self.block1.contains(&last.kind()) {
            true
        } else if self.block0.contains(&last.kind()) {
            false
        } else {
            return None;
        };
        let block = self.block(bit);
        let start = end.checked_sub(block.len())?;
        let matches = gates[start..end]
            .iter()
            .zip(block)
            .all(|(g, &k)| g.kind() == k && g.operands() == [FRAME_QUBIT]);
        matches.then_some((bit, start))
    }
}

/// The identity block pair registered with `gateset`.
pub fn default_block_pair(gateset: &Arc<GateSet>) -> Result<IdentityBlockPair, StegoError> {
    let (b0, b1) = gateset
        .identity_blocks()
        .ok_or_else(|| StegoError::NoBlockPair(gateset.name().to_string()))?;
    Ok(IdentityBlockPair {
        gateset: gateset.clone(),
        block0: b0.to_vec(),
        block1: b1.to_vec(),
    })
}

/// Frame bits for `payload`: magic, payload, big-endian length.
pub fn frame_bits(payload: &Message) -> Result<Vec<bool>, StegoError> {
    let len =
        u32::try_from(payload.len()).map_err(|_| StegoError::MessageTooLong(payload.len()))?;
    let mut bits = Vec::with_capacity(FRAME_OVERHEAD + payload.len());
    bits.extend((0..MAGIC_BITS).rev().map(|i| (MAGIC >> i) & 1 == 1));
    bits.extend_from_slice(payload.bits());
    bits.extend((0..LENGTH_BITS).rev().map(|i| (len >> i) & 1 == 1));
    Ok(bits)
}

/// Appends the frame for `y` to `x` as identity blocks on qubit 0.
///
/// The result has the same unitary as `x` up to global phase. A frame
/// already present in `x` is left in place; compose with [`unpad`] to
/// replace it instead.
pub fn pad(x: &Circuit, y: &Message) -> Result<Circuit, StegoError> {
    let pair = default_block_pair(x.gateset())?;
    let bits = frame_bits(y)?;
    let max_block = pair.block0.len().max(pair.block1.len());
    let mut gates = Vec::with_capacity(x.len() + bits.len() * max_block);
    gates.extend_from_slice(x.gates());
    for bit in bits {
        gates.extend(
            pair.block(bit)
                .iter()
                .map(|&k| Gate::single(k, FRAME_QUBIT)),
        );
    }
    Ok(x.with_gates_unchecked(gates))
}

/// Locates the outermost frame: the payload and the index of the frame's
/// first gate.
fn parse_frame(z: &Circuit) -> Option<(Message, usize)> {
    let pair = default_block_pair(z.gateset()).ok()?;
    let gates = z.gates();
    let mut end = gates.len();

    let mut len: u64 = 0;
    for i in 0..LENGTH_BITS {
        let (bit, start) = pair.read_back(gates, end)?;
        len |= (bit as u64) << i;
        end = start;
    }
    // every block holds at least one gate
    if len as usize > end {
        return None;
    }

    let mut payload = vec![false; len as usize];
    for slot in payload.iter_mut().rev() {
        let (bit, start) = pair.read_back(gates, end)?;
        *slot = bit;
        end = start;
    }

    let mut magic: u8 = 0;
    for i in 0..MAGIC_BITS {
        let (bit, start) = pair.read_back(gates, end)?;
        magic |= (bit as u8) << i;
        end = start;
    }
    (magic == MAGIC).then(|| (Message::from_bits(payload), end))
}

/// Recovers the message of the outermost frame, or `None` if `z` does not end
/// in a well-formed frame.
pub fn dec(z: &Circuit) -> Option<Message> {
    parse_frame(z).map(|(m, _)| m)
}

/// Removes the outermost frame, if any.
pub fn unpad(z: &Circuit) -> Circuit {
    match parse_frame(z) {
        Some((_, start)) => z.with_gates_unchecked(z.gates()[..start].to_vec()),
        None => z.clone(),
    }
}
