//! Restrictions on circuits as composable predicates.
//!
//! Every built-in promise is closed under [`pad`](crate::stego::pad) for any
//! gate set whose identity blocks it does not rule out. Promises that could
//! rule the blocks out are checked against them at construction and fail
//! with [`PromiseError::PrecludesEncoding`].
//!
//! The text form accepted by [`parse_promise`] is a `&`-separated list of
//! atoms:
//!
//! | atom | meaning |
//! |------|---------|
//! | `true` | always holds |
//! | `even`, `prime` | qubit count is even / prime |
//! | `gates(H,S,CX)` | only these gate kinds are used |
//! | `conn(0-1,1-2)` | multi-qubit gates only act across these qubit pairs |
//! | `forbid(T:T)` | no two consecutive gates on a qubit form this pair |
//! | `first(H,S)` | a single-qubit gate that is first on its qubit is in this set |
//! | `last(H,T)` | same for the last gate on qubits `1..n` (qubit 0 carries the frame) |
//! | `max(T:3)` | at most 3 gates of kind `T` |

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::circuit::Circuit;
use crate::error::PromiseError;
use crate::gateset::{GateSet, KindId};
use crate::stego::{default_block_pair, pad, IdentityBlockPair, Message};

type Predicate = dyn Fn(&Circuit) -> bool + Send + Sync;

#[derive(Clone)]
pub struct Promise {
    name: String,
    predicate: Arc<Predicate>,
}

impl Promise {
    pub fn new(
        name: impl Into<String>,
        predicate: impl Fn(&Circuit) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            predicate: Arc::new(predicate),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn holds(&self, c: &Circuit) -> bool {
        (self.predicate)(c)
    }
}

impl fmt::Debug for Promise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Promise").field(&self.name).finish()
    }
}

pub fn always() -> Promise {
    Promise::new("true", |_| true)
}

pub fn even_qubits() -> Promise {
    Promise::new("even", |c| c.n_qubits() % 2 == 0)
}

pub fn prime_qubits() -> Promise {
    Promise::new("prime", |c| is_prime(c.n_qubits()))
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gateset_subset<S: AsRef<str>>(allowed: &[S]) -> Promise {
    let set: BTreeSet<String> = allowed.iter().map(|s| s.as_ref().to_string()).collect();
    let name = format!("gates({})", join(&set));
    Promise::new(name, move |c| {
        c.gates().iter().all(|g| set.contains(c.kind_of(g).name()))
    })
}

/// Multi-qubit gates may only act between listed (unordered) pairs; a gate on
/// more than two qubits needs every pair of its operands listed.
pub fn connectivity(edges: &[(usize, usize)]) -> Promise {
    let set: HashSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut sorted: Vec<_> = set.iter().copied().collect();
    sorted.sort_unstable();
    let name = format!(
        "conn({})",
        sorted
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect::<Vec<_>>()
            .join(",")
    );
    Promise::new(name, move |c| {
        c.gates().iter().all(|g| {
            let ops = g.operands();
            ops.iter().enumerate().all(|(i, &a)| {
                ops[i + 1..]
                    .iter()
                    .all(|&b| set.contains(&(a.min(b), a.max(b))))
            })
        })
    })
}

/// No two time-consecutive gates on the same qubit may form a listed
/// `(earlier, later)` pair.
///
/// Rejected at construction when a pair occurs inside a block, across any
/// block boundary, or ends with the first gate of a frame (which would forbid
/// padding after some circuits).
pub fn forbidden_adjacent<S: AsRef<str>>(
    pairs: &[(S, S)],
    blocks: &IdentityBlockPair,
) -> Result<Promise, PromiseError> {
    let pairs: BTreeSet<(String, String)> = pairs
        .iter()
        .map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string()))
        .collect();
    let b0 = blocks.block_names(false);
    let b1 = blocks.block_names(true);
    let mut used: HashSet<(&str, &str)> = HashSet::new();
    for b in [&b0, &b1] {
        used.extend(b.windows(2).map(|w| (w[0], w[1])));
    }
    for x in [&b0, &b1] {
        for y in [&b0, &b1] {
            used.insert((x[x.len() - 1], y[0]));
        }
    }
    // the frame always opens with a 1 bit
    let frame_start = b1[0];
    for (a, b) in &pairs {
        if used.contains(&(a.as_str(), b.as_str())) || b == frame_start {
            return Err(PromiseError::PrecludesEncoding(format!(
                "forbidding {a}:{b} conflicts with blocks [{}] / [{}]",
                b0.join(","),
                b1.join(",")
            )));
        }
    }
    let name = format!(
        "forbid({})",
        pairs
            .iter()
            .map(|(a, b)| format!("{a}:{b}"))
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(Promise::new(name, move |c| {
        let gs = c.gateset();
        let ids: HashSet<(KindId, KindId)> = pairs
            .iter()
            .filter_map(|(a, b)| Some((gs.kind_id(a)?, gs.kind_id(b)?)))
            .collect();
        if ids.is_empty() {
            return true;
        }
        let mut last: Vec<Option<KindId>> = vec![None; c.n_qubits()];
        for g in c.gates() {
            for &q in g.operands() {
                if let Some(prev) = last[q] {
                    if ids.contains(&(prev, g.kind())) {
                        return false;
                    }
                }
                last[q] = Some(g.kind());
            }
        }
        true
    }))
}

/// Restricts the single-qubit gate applied first on each qubit, right after
/// state preparation. The frame's opening gate must be allowed, since padding
/// a circuit with an idle qubit 0 makes it the first gate there.
pub fn initial_gates<S: AsRef<str>>(
    allowed: &[S],
    blocks: &IdentityBlockPair,
) -> Result<Promise, PromiseError> {
    let set: BTreeSet<String> = allowed.iter().map(|s| s.as_ref().to_string()).collect();
    let frame_start = blocks.block_names(true)[0];
    if !set.contains(frame_start) {
        return Err(PromiseError::PrecludesEncoding(format!(
            "first({}) excludes `{frame_start}`, which opens every frame",
            join(&set)
        )));
    }
    let name = format!("first({})", join(&set));
    Ok(Promise::new(name, move |c| {
        let mut seen = vec![false; c.n_qubits()];
        for g in c.gates() {
            let single = g.operands().len() == 1;
            for &q in g.operands() {
                if !seen[q] {
                    seen[q] = true;
                    if single && !set.contains(c.kind_of(g).name()) {
                        return false;
                    }
                }
            }
        }
        true
    }))
}

/// Restricts the single-qubit gate applied last, right before measurement, on
/// qubits `1..n`. Qubit 0 is exempt because it carries the frame.
pub fn final_gates<S: AsRef<str>>(allowed: &[S]) -> Promise {
    let set: BTreeSet<String> = allowed.iter().map(|s| s.as_ref().to_string()).collect();
    let name = format!("last({})", join(&set));
    Promise::new(name, move |c| {
        let mut seen = vec![false; c.n_qubits()];
        for g in c.gates().iter().rev() {
            let single = g.operands().len() == 1;
            for &q in g.operands() {
                if q != 0 && !seen[q] {
                    seen[q] = true;
                    if single && !set.contains(c.kind_of(g).name()) {
                        return false;
                    }
                }
            }
        }
        true
    })
}

/// At most `limit` gates of `kind`. The kind may not appear in either block.
pub fn max_count(
    kind: &str,
    limit: usize,
    blocks: &IdentityBlockPair,
) -> Result<Promise, PromiseError> {
    if blocks.block_names(false).contains(&kind) || blocks.block_names(true).contains(&kind) {
        return Err(PromiseError::PrecludesEncoding(format!(
            "capping `{kind}` would cap the message length"
        )));
    }
    let kind = kind.to_string();
    let name = format!("max({kind}:{limit})");
    Ok(Promise::new(name, move |c| {
        c.gates()
            .iter()
            .filter(|g| c.kind_of(g).name() == kind)
            .count()
            <= limit
    }))
}

/// Logical AND; the empty conjunction always holds.
pub fn conjunction(ps: Vec<Promise>) -> Promise {
    if ps.is_empty() {
        return always();
    }
    let name = ps
        .iter()
        .map(|p| p.name.as_str())
        .collect::<Vec<_>>()
        .join(" & ");
    Promise::new(name, move |c| ps.iter().all(|p| p.holds(c)))
}

/// Result of checking `p(pad(x, y))` over samples with `p(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub checked: usize,
    /// Indices of samples whose padded circuit leaves the promise.
    pub violations: Vec<usize>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_closure(
    p: &Promise,
    samples: &[(Circuit, Message)],
) -> Result<ClosureReport, PromiseError> {
    let mut violations = Vec::new();
    for (index, (x, y)) in samples.iter().enumerate() {
        if !p.holds(x) {
            return Err(PromiseError::SampleOutsidePromise {
                index,
                promise: p.name.clone(),
            });
        }
        if !p.holds(&pad(x, y)?) {
            violations.push(index);
        }
    }
    Ok(ClosureReport {
        checked: samples.len(),
        violations,
    })
}

/// Every built-in promise family, instantiated for `clifford_t` with its
/// registered blocks. Multi-qubit connectivity is a line over 8 qubits.
pub fn clifford_t_catalog() -> Vec<Promise> {
    let gs = crate::gateset::clifford_t();
    let blocks = default_block_pair(&gs).expect("clifford_t has blocks");
    let line: Vec<(usize, usize)> = (0..7).map(|q| (q, q + 1)).collect();
    vec![
        even_qubits(),
        prime_qubits(),
        gateset_subset(&["H", "S", "CX"]),
        gateset_subset(&["H", "S", "T", "CX"]),
        connectivity(&line),
        forbidden_adjacent(&[("T", "T")], &blocks).expect("compatible"),
        forbidden_adjacent(&[("S", "T"), ("CX", "CX")], &blocks).expect("compatible"),
        initial_gates(&["H", "S", "T"], &blocks).expect("compatible"),
        final_gates(&["H", "T"]),
        max_count("T", 2, &blocks).expect("compatible"),
    ]
}

fn join(set: &BTreeSet<String>) -> String {
    set.iter().cloned().collect::<Vec<_>>().join(",")
}

/// Parses the promise expression language (see the module docs). Atoms that
/// depend on identity blocks use the ones registered with `gateset`.
pub fn parse_promise(expr: &str, gateset: &Arc<GateSet>) -> Result<Promise, PromiseError> {
    let mut atoms = Vec::new();
    let mut offset = 0;
    for part in expr.split('&') {
        let lead = part.len() - part.trim_start().len();
        atoms.push(parse_atom(part.trim(), offset + lead + 1, gateset)?);
        offset += part.len() + 1;
    }
    Ok(match atoms.len() {
        1 => atoms.pop().expect("one atom"),
        _ => conjunction(atoms),
    })
}

fn parse_atom(atom: &str, column: usize, gateset: &Arc<GateSet>) -> Result<Promise, PromiseError> {
    let syntax = |message: String| PromiseError::Syntax { column, message };
    if atom.is_empty() {
        return Err(syntax("empty atom".into()));
    }
    let (head, args) = match atom.find('(') {
        Some(open) => {
            let inner = atom[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| syntax(format!("`{atom}` is missing `)`")))?;
            let args: Vec<&str> = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            (atom[..open].trim(), Some(args))
        }
        None => (atom, None),
    };
    let blocks = || default_block_pair(gateset).map_err(PromiseError::from);
    let pair_arg = |s: &str, sep: char| -> Result<(String, String), PromiseError> {
        let (a, b) = s
            .split_once(sep)
            .ok_or_else(|| syntax(format!("expected `a{sep}b`, found `{s}`")))?;
        Ok((a.trim().to_string(), b.trim().to_string()))
    };
    let kind_names = |args: &[&str]| -> Result<Vec<String>, PromiseError> {
        args.iter()
            .map(|a| {
                gateset
                    .kind_id(a)
                    .map(|_| a.to_string())
                    .ok_or_else(|| syntax(format!("unknown gate `{a}` in `{}`", gateset.name())))
            })
            .collect()
    };

    match (head, args) {
        ("true", None) => Ok(always()),
        ("even", None) => Ok(even_qubits()),
        ("prime", None) => Ok(prime_qubits()),
        ("gates", Some(args)) => Ok(gateset_subset(&kind_names(&args)?)),
        ("conn", Some(args)) => {
            let mut edges = Vec::new();
            for a in args {
                let (x, y) = pair_arg(a, '-')?;
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| syntax(format!("invalid qubit `{s}`")))
                };
                edges.push((parse(&x)?, parse(&y)?));
            }
            Ok(connectivity(&edges))
        }
        ("forbid", Some(args)) => {
            let pairs = args
                .iter()
                .map(|a| pair_arg(a, ':'))
                .collect::<Result<Vec<_>, _>>()?;
            for (a, b) in &pairs {
                kind_names(&[a.as_str(), b.as_str()])?;
            }
            forbidden_adjacent(&pairs, &blocks()?)
        }
        ("first", Some(args)) => initial_gates(&kind_names(&args)?, &blocks()?),
        ("last", Some(args)) => Ok(final_gates(&kind_names(&args)?)),
        ("max", Some(args)) => {
            let [arg] = args.as_slice() else {
                return Err(syntax("`max` takes one `KIND:N` argument".into()));
            };
            let (kind, n) = pair_arg(arg, ':')?;
            kind_names(&[kind.as_str()])?;
            let n = n
                .parse()
                .map_err(|_| syntax(format!("invalid count `{n}`")))?;
            max_count(&kind, n, &blocks()?)
        }
        _ => Err(syntax(format!("unknown promise `{atom}`"))),
    }
}
