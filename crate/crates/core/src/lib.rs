//! Circuit padding toolkit.
//!
//! Circuits over a fixed gate set are serialized to strings ([`codec`]),
//! padded with arbitrary bit strings encoded as identity blocks ([`stego`]),
//! and the padded families are decided without simulation ([`decider`]).
//! Padding also turns many-one reductions into one-one reductions
//! ([`reduction`]). A dense statevector simulator ([`sim`]) acts as the
//! semantic oracle throughout.

pub mod circuit;
pub mod codec;
pub mod decider;
pub mod error;
pub mod gateset;
pub mod gen;
pub mod promise;
pub mod reduction;
pub mod reference;
pub mod selfcheck;
pub mod sim;
pub mod stego;
pub mod text;

pub use circuit::{
    associated_qubit, index_spaces, order_gates, spaces, Circuit, CircuitBuilder, Gate, Space,
    SpaceIndex,
};
pub use codec::{decode, decode_word, encode, encode_word, CodecScheme, SymbolString};
pub use decider::{canonical_witnesses, fast_decide, is_member_sx, Verdict};
pub use error::{
    CircuitError, CodecError, ParseError, PromiseError, ReductionError, SimError, StegoError,
};
pub use gateset::{builtin_gateset, clifford_t, xz_cx, GateKind, GateSet, KindId};
pub use promise::{check_closure, conjunction, parse_promise, ClosureReport, Promise};
pub use reduction::{
    builtin_source, check_injective, compose_one_one, pairing_f, ReductionFn, SourceLanguage, Word,
};
pub use sim::{
    distributions_equal, last_qubit_one_prob, run, sdcs_oracle, Membership, OracleVerdict,
    StateVector,
};
pub use stego::{dec, default_block_pair, pad, unpad, IdentityBlockPair, Message};
pub use text::{parse_circuit, write_circuit};
