//! Line-oriented text format for circuits.
//!
//! ```text
//! qcirc 1
//! gateset clifford_t
//! qubits 2
//! H 0
//! CX 0 1
//! ```
//!
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. The three header constructs must come first and in this order.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::circuit::{Circuit, Gate};
use crate::error::ParseError;
use crate::gateset::{builtin_gateset, GateSet};

pub const FORMAT_VERSION: &str = "1";

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::with_capacity(48 + c.len() * 6);
    let _ = writeln!(out, "qcirc {FORMAT_VERSION}");
    let _ = writeln!(out, "gateset {}", c.gateset().name());
    let _ = writeln!(out, "qubits {}", c.n_qubits());
    for g in c.gates() {
        out.push_str(c.kind_of(g).name());
        for q in g.operands() {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
    }
    out
}

/// Parses a circuit, resolving the gate set among the built-ins.
pub fn parse_circuit(src: &str) -> Result<Circuit, ParseError> {
    parse_circuit_with(src, builtin_gateset)
}

pub fn parse_circuit_with(
    src: &str,
    lookup: impl Fn(&str) -> Option<Arc<GateSet>>,
) -> Result<Circuit, ParseError> {
    let mut constructs = src
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, tokens(line)))
        .filter(|(_, toks)| !toks.is_empty());

    let eof = |what: &str| ParseError {
        line: src.lines().count().max(1),
        column: 1,
        message: format!("unexpected end of input, expected `{what}`"),
    };

    let (line, toks) = constructs.next().ok_or_else(|| eof("qcirc"))?;
    expect_header(line, &toks, "qcirc")?;
    if toks[1].1 != FORMAT_VERSION {
        return Err(err(
            line,
            toks[1].0,
            format!("unsupported format version `{}`", toks[1].1),
        ));
    }

    let (line, toks) = constructs.next().ok_or_else(|| eof("gateset"))?;
    expect_header(line, &toks, "gateset")?;
    let gateset = lookup(toks[1].1)
        .ok_or_else(|| err(line, toks[1].0, format!("unknown gate set `{}`", toks[1].1)))?;

    let (line, toks) = constructs.next().ok_or_else(|| eof("qubits"))?;
    expect_header(line, &toks, "qubits")?;
    let n_qubits: usize = toks[1].1.parse().map_err(|_| {
        err(
            line,
            toks[1].0,
            format!("invalid qubit count `{}`", toks[1].1),
        )
    })?;
    if n_qubits == 0 {
        return Err(err(line, toks[1].0, "qubit count must be positive".into()));
    }

    let mut gates = Vec::new();
    for (line, toks) in constructs {
        let (col, name) = toks[0];
        let kind = gateset
            .kind_id(name)
            .ok_or_else(|| err(line, col, format!("unknown gate `{name}`")))?;
        let mut operands = Vec::with_capacity(toks.len() - 1);
        for &(col, tok) in &toks[1..] {
            let q: usize = tok
                .parse()
                .map_err(|_| err(line, col, format!("invalid qubit index `{tok}`")))?;
            operands.push(q);
        }
        let gate = Gate::new(kind, operands);
        // validate per gate so the error carries this line
        gate.validate(n_qubits, &gateset)
            .map_err(|e| err(line, col, e.to_string()))?;
        gates.push(gate);
    }
    Circuit::new(n_qubits, gateset, gates).map_err(|e| err(1, 1, e.to_string()))
}

fn err(line: usize, column: usize, message: String) -> ParseError {
    ParseError {
        line,
        column,
        message,
    }
}

fn expect_header(line: usize, toks: &[(usize, &str)], keyword: &str) -> Result<(), ParseError> {
    if toks[0].1 != keyword {
        return Err(err(
            line,
            toks[0].0,
            format!("expected `{keyword}`, found `{}`", toks[0].1),
        ));
    }
    match toks.len() {
        2 => Ok(()),
        1 => Err(err(
            line,
            toks[0].0 + keyword.chars().count(),
            format!("`{keyword}` needs a value"),
        )),
        _ => Err(err(line, toks[2].0, "unexpected trailing token".into())),
    }
}

/// Whitespace-separated tokens of a line with comments removed, each paired
/// with its 1-based character column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in code.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push((c + 1, &code[b..byte]));
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push((c + 1, &code[b..]));
    }
    out
}
