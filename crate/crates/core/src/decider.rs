//! Simulation-free decisions on padded instance families.
//!
//! For a fixed circuit `x`, `S_x = { pad(x, y) }` is infinite and every member
//! has the same membership as `x`. Testing `z ∈ S_x` only needs
//! `z == pad(x, dec(z))`, which is linear in the size of `z`. Given one known
//! yes-instance and one known no-instance, that test decides two infinite
//! families without ever simulating a circuit.

use std::fmt;

use crate::circuit::Circuit;
use crate::error::CircuitError;
use crate::gateset::clifford_t;
use crate::stego::{dec, pad};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "ACCEPT",
            Verdict::Reject => "REJECT",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// True iff `z` ends in a frame carrying some `y` and `z == pad(x, y)`.
pub fn is_member_sx(z: &Circuit, x: &Circuit) -> bool {
    if !z.same_shape(x) {
        return false;
    }
    let Some(y) = dec(z) else {
        return false;
    };
    match pad(x, &y) {
        Ok(expected) => expected == *z,
        Err(_) => false,
    }
}

/// Accepts members of `S_{x_in}`, rejects members of `S_{x_out}`, and
/// answers `Unknown` for everything else.
///
/// `x_in` must be a yes-instance and `x_out` a no-instance; the verdicts are
/// only as good as those witnesses.
pub fn fast_decide(z: &Circuit, x_in: &Circuit, x_out: &Circuit) -> Verdict {
    if is_member_sx(z, x_in) {
        Verdict::Accept
    } else if is_member_sx(z, x_out) {
        Verdict::Reject
    } else {
        Verdict::Unknown
    }
}

/// Witnesses over `clifford_t` on `n_qubits` qubits: `H S S H` (an X up to
/// phase) on the last qubit, which measures 1 with certainty, and the empty
/// circuit, which measures 0.
pub fn canonical_witnesses(n_qubits: usize) -> Result<(Circuit, Circuit), CircuitError> {
    let last = n_qubits.checked_sub(1).ok_or(CircuitError::NoQubits)?;
    let x_in = Circuit::builder(n_qubits, clifford_t())
        .gate("H", [last])
        .gate("S", [last])
        .gate("S", [last])
        .gate("H", [last])
        .build()?;
    let x_out = Circuit::empty(n_qubits, clifford_t())?;
    Ok((x_in, x_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{sdcs_oracle, Membership};
    use crate::stego::Message;

    fn msg(s: &str) -> Message {
        Message::from_bit_str(s).unwrap()
    }

    #[test]
    fn witnesses_are_verified_by_simulation() {
        for n in 1..=6 {
            let (x_in, x_out) = canonical_witnesses(n).unwrap();
            let v_in = sdcs_oracle(&x_in).unwrap();
            assert_eq!(v_in.membership, Membership::In);
            assert!((v_in.p_one - 1.0).abs() < 1e-12);
            let v_out = sdcs_oracle(&x_out).unwrap();
            assert_eq!(v_out.membership, Membership::Out);
            assert_eq!(v_out.p_one, 0.0);
            assert_eq!(dec(&x_in), None);
            assert_eq!(dec(&x_out), None);
        }
        assert!(canonical_witnesses(0).is_err());
    }

    #[test]
    fn membership_examples() {
        let (x, other) = canonical_witnesses(2).unwrap();
        let y = msg("1100101");
        assert!(is_member_sx(&pad(&x, &y).unwrap(), &x));
        assert!(!is_member_sx(&x, &x));
        assert!(!is_member_sx(&pad(&other, &y).unwrap(), &x));
        // different qubit count never matches
        let (x3, _) = canonical_witnesses(3).unwrap();
        assert!(!is_member_sx(&pad(&x3, &y).unwrap(), &x));
    }

    #[test]
    fn double_padding_is_not_in_sx() {
        let (x, _) = canonical_witnesses(1).unwrap();
        let twice = pad(&pad(&x, &msg("1")).unwrap(), &msg("0")).unwrap();
        assert!(!is_member_sx(&twice, &x));
        assert!(is_member_sx(&twice, &pad(&x, &msg("1")).unwrap()));
    }

    #[test]
    fn fast_decide_examples() {
        let (x_in, x_out) = canonical_witnesses(3).unwrap();
        let y = msg("0110");
        assert_eq!(
            fast_decide(&pad(&x_in, &y).unwrap(), &x_in, &x_out),
            Verdict::Accept
        );
        assert_eq!(
            fast_decide(&pad(&x_out, &y).unwrap(), &x_in, &x_out),
            Verdict::Reject
        );
        let unrelated = Circuit::builder(3, clifford_t())
            .gate("T", [1])
            .gate("CX", [1, 2])
            .build()
            .unwrap();
        assert_eq!(fast_decide(&unrelated, &x_in, &x_out), Verdict::Unknown);
        assert_eq!(Verdict::Unknown.to_string(), "UNKNOWN");
    }
}
