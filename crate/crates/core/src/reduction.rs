//! Upgrading many-one reductions to one-one reductions by padding.
//!
//! Padding gives a one-one map `f(c, y) = pad(c, y)` from circuits × words to
//! circuits that preserves membership in `c`. Composing any many-one
//! reduction `g` with it, `h(x) = f(g(x), x)`, yields a reduction that is
//! one-one: `h(x) = h(x')` forces `dec` to return both `x` and `x'`.
//!
//! Words are bit strings ([`Word`]). A circuit is carried as a word through
//! [`encode_word`], so `g` and `h` are both word → word maps.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::circuit::Circuit;
use crate::codec::{decode_word, encode_word};
use crate::decider::canonical_witnesses;
use crate::error::ReductionError;
use crate::gateset::{clifford_t, GateSet};
use crate::stego::{pad, Message};

pub type Word = Message;

type MapFn = dyn Fn(&Word) -> Result<Word, ReductionError> + Send + Sync;

/// A deterministic word → word map with a polynomial-degree tag.
#[derive(Clone)]
pub struct ReductionFn {
    name: String,
    cost_degree: u32,
    map: Arc<MapFn>,
}

impl ReductionFn {
    pub fn new(
        name: impl Into<String>,
        cost_degree: u32,
        map: impl Fn(&Word) -> Result<Word, ReductionError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            cost_degree,
            map: Arc::new(map),
        }
    }

    /// A reduction that maps each word to a circuit, carried as its instance
    /// word.
    pub fn to_circuits(
        name: impl Into<String>,
        cost_degree: u32,
        map: impl Fn(&Word) -> Circuit + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, cost_degree, move |w| Ok(encode_word(&map(w))))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cost_degree(&self) -> u32 {
        self.cost_degree
    }

    pub fn apply(&self, w: &Word) -> Result<Word, ReductionError> {
        (self.map)(w)
    }
}

impl fmt::Debug for ReductionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReductionFn")
            .field("name", &self.name)
            .field("cost_degree", &self.cost_degree)
            .finish()
    }
}

/// The one-one pairing `(c, y) ↦ pad(c, y)`.
pub fn pairing_f(c: &Circuit, y: &Word) -> Result<Circuit, ReductionError> {
    Ok(pad(c, y)?)
}

/// `h(x) = f(g(x), x)`, where `g`'s outputs are instance words over
/// `gateset`.
pub fn compose_one_one(g: &ReductionFn, gateset: Arc<GateSet>) -> ReductionFn {
    let inner = g.clone();
    ReductionFn::new(
        format!("one-one({})", g.name),
        g.cost_degree.max(1),
        move |x| {
            let c = decode_word(&inner.apply(x)?, gateset.clone())?;
            Ok(encode_word(&pairing_f(&c, x)?))
        },
    )
}

/// True iff `h` maps the distinct words of `domain` to distinct words.
pub fn check_injective(h: &ReductionFn, domain: &[Word]) -> Result<bool, ReductionError> {
    let distinct: HashSet<&Word> = domain.iter().collect();
    let mut image = HashSet::with_capacity(distinct.len());
    for w in &distinct {
        image.insert(h.apply(w)?);
    }
    Ok(image.len() == distinct.len())
}

/// Every bit string of length `len`, in counting order.
pub fn all_words(len: usize) -> Vec<Word> {
    assert!(len < usize::BITS as usize, "domain too large");
    (0..1u64 << len)
        .map(|v| Message::from_uint(v, len))
        .collect()
}

/// A toy source language with a brute-force membership test and a
/// many-one reduction into circuits over `clifford_t`.
#[derive(Clone)]
pub struct SourceLanguage {
    pub name: &'static str,
    pub description: &'static str,
    pub contains: fn(&Word) -> bool,
    pub reduction: ReductionFn,
}

impl fmt::Debug for SourceLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SourceLanguage")
            .field("name", &self.name)
            .finish()
    }
}

/// Names accepted by [`builtin_source`].
pub const BUILTIN_SOURCES: &[&str] = &["parity", "last-bit", "constant", "identity"];

pub fn builtin_source(name: &str) -> Option<SourceLanguage> {
    let source = match name {
        "parity" => SourceLanguage {
            name: "parity",
            description: "words with an odd number of ones; one X per 1 bit",
            contains: |w| w.bits().iter().filter(|&&b| b).count() % 2 == 1,
            reduction: ReductionFn::to_circuits("parity", 1, |w| {
                let mut b = Circuit::builder(1, clifford_t());
                for _ in w.bits().iter().filter(|&&b| b) {
                    b = b
                        .gate("H", [0])
                        .gate("S", [0])
                        .gate("S", [0])
                        .gate("H", [0]);
                }
                b.build().expect("valid by construction")
            }),
        },
        "last-bit" => SourceLanguage {
            name: "last-bit",
            description: "words ending in 1; maps to a 2-qubit X-or-nothing circuit",
            contains: |w| w.bits().last() == Some(&true),
            reduction: ReductionFn::to_circuits("last-bit", 1, |w| {
                let (x_in, x_out) = canonical_witnesses(2).expect("two qubits");
                if w.bits().last() == Some(&true) {
                    x_in
                } else {
                    x_out
                }
            }),
        },
        "constant" => SourceLanguage {
            name: "constant",
            description: "every word; maps everything to one fixed yes-instance",
            contains: |_| true,
            reduction: ReductionFn::to_circuits("constant", 0, |_| {
                canonical_witnesses(1).expect("one qubit").0
            }),
        },
        "identity" => SourceLanguage {
            name: "identity",
            description: "instance words already in the target language",
            contains: |w| {
                decode_word(w, clifford_t())
                    .ok()
                    .and_then(|c| crate::sim::sdcs_oracle(&c).ok())
                    .is_some_and(|v| v.membership == crate::sim::Membership::In)
            },
            reduction: ReductionFn::new("identity", 1, |w| Ok(w.clone())),
        },
        _ => return None,
    };
    Some(source)
}
