//! Seeded property suites over the whole toolkit.
//!
//! Each suite draws `size` cases from its own generator, derived from the
//! run seed and the suite's position, so suites stay reproducible on their
//! own. Reports contain no timings and are byte-identical for a given
//! `(seed, size, tolerance)`.

use std::collections::HashSet;
use std::fmt;

use crate::codec::{decode, encode, SymbolString};
use crate::decider::{canonical_witnesses, fast_decide, is_member_sx, Verdict};
use crate::gateset::clifford_t;
use crate::gen::{
    random_circuit, random_frame_free, random_message, sample_in_promise, seeded, CircuitShape,
    SeededRng,
};
use crate::promise::{clifford_t_catalog, conjunction};
use crate::reduction::{builtin_source, compose_one_one, Word};
use crate::sim::{distributions_equal, run, sdcs_oracle, Membership};
use crate::stego::{dec, pad, unpad};
use crate::text::parse_circuit;
use crate::{reference, stego::Message};

use rand::seq::IndexedRandom;
use rand::Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_f9ad;
pub const DEFAULT_SIZE: usize = 100;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfcheckConfig {
    pub seed: u64,
    pub size: usize,
    pub tolerance: f64,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            size: DEFAULT_SIZE,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelfcheckReport {
    pub suites: Vec<SuiteResult>,
}

impl SelfcheckReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

impl fmt::Display for SelfcheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let status = if s.ok() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {:<24} {}/{}", s.name, s.passed, s.total)?;
            if let Some(msg) = &s.first_failure {
                writeln!(f, "     first failure: {msg}")?;
            }
        }
        Ok(())
    }
}

type CaseFn = fn(&mut SeededRng, usize, f64) -> Result<(), String>;

const SUITES: &[(&str, CaseFn)] = &[
    ("codec-roundtrip", codec_case),
    ("pad-recovery", recovery_case),
    ("semantic-preservation", semantic_case),
    ("sx-membership", membership_case),
    ("fast-decide", decide_case),
    ("promise-closure", closure_case),
    ("simulator-reference", simulator_case),
];

pub fn run_selfcheck(config: &SelfcheckConfig) -> SelfcheckReport {
    if config.size == 0 {
        return SelfcheckReport::default();
    }
    let mut suites = Vec::new();
    for (i, (name, case)) in SUITES.iter().enumerate() {
        let mut rng = seeded(config.seed.wrapping_add(i as u64));
        let mut result = SuiteResult {
            name,
            passed: 0,
            total: config.size,
            first_failure: None,
        };
        for index in 0..config.size {
            match case(&mut rng, index, config.tolerance) {
                Ok(()) => result.passed += 1,
                Err(msg) => {
                    result
                        .first_failure
                        .get_or_insert_with(|| format!("case {index}: {msg}"));
                }
            }
        }
        suites.push(result);
    }
    suites.push(one_one_suite(config.size));
    SelfcheckReport { suites }
}

fn shape() -> CircuitShape {
    CircuitShape::new(8, 64)
}

fn codec_case(rng: &mut SeededRng, _: usize, _: f64) -> Result<(), String> {
    let gs = clifford_t();
    let c = random_circuit(rng, &gs, &shape());
    let s = encode(&c);
    let back = decode(&s, c.n_qubits(), gs.clone()).map_err(|e| e.to_string())?;
    if back != c {
        return Err("decode(encode(c)) != c".into());
    }
    let reparsed = SymbolString::parse(&s.render(gs.len()), gs.len()).map_err(|e| e.to_string())?;
    if reparsed != s {
        return Err("rendered symbol string did not re-parse".into());
    }
    let text = parse_circuit(&c.to_string()).map_err(|e| e.to_string())?;
    if text != c {
        return Err("text format round trip failed".into());
    }
    Ok(())
}

fn recovery_case(rng: &mut SeededRng, _: usize, _: f64) -> Result<(), String> {
    let x = random_frame_free(rng, &clifford_t(), &shape());
    let y = random_message(rng, 128);
    let z = pad(&x, &y).map_err(|e| e.to_string())?;
    if dec(&z).as_ref() != Some(&y) {
        return Err(format!("dec lost message {y}"));
    }
    if unpad(&z) != x {
        return Err("unpad(pad(x, y)) != x".into());
    }
    if z.n_qubits() != x.n_qubits() {
        return Err("qubit count changed".into());
    }
    Ok(())
}

fn semantic_case(rng: &mut SeededRng, _: usize, tol: f64) -> Result<(), String> {
    let x = random_circuit(rng, &clifford_t(), &shape());
    let y = random_message(rng, 128);
    let z = pad(&x, &y).map_err(|e| e.to_string())?;
    match distributions_equal(&x, &z, tol) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("distribution moved beyond {tol:e}")),
        Err(e) => Err(e.to_string()),
    }
}

fn membership_case(rng: &mut SeededRng, _: usize, _: f64) -> Result<(), String> {
    let gs = clifford_t();
    let x = random_frame_free(rng, &gs, &shape());
    let other = loop {
        let c = random_frame_free(rng, &gs, &shape());
        if c != x {
            break c;
        }
    };
    let y = random_message(rng, 128);
    if !is_member_sx(&pad(&x, &y).map_err(|e| e.to_string())?, &x) {
        return Err("pad(x, y) not recognised as a member of S_x".into());
    }
    if is_member_sx(&pad(&other, &y).map_err(|e| e.to_string())?, &x) {
        return Err("pad(x', y) accepted as a member of S_x".into());
    }
    Ok(())
}

fn decide_case(rng: &mut SeededRng, index: usize, _: f64) -> Result<(), String> {
    let gs = clifford_t();
    let n = rng.random_range(1..=8);
    let (x_in, x_out) = canonical_witnesses(n).map_err(|e| e.to_string())?;
    let y = random_message(rng, 64);
    let (z, expected) = match index % 3 {
        0 => (pad(&x_in, &y).map_err(|e| e.to_string())?, Verdict::Accept),
        1 => (pad(&x_out, &y).map_err(|e| e.to_string())?, Verdict::Reject),
        _ => {
            let shape = CircuitShape {
                min_qubits: n,
                max_qubits: n,
                max_gates: 32,
                nearest_neighbour: false,
            };
            (random_frame_free(rng, &gs, &shape), Verdict::Unknown)
        }
    };
    let got = fast_decide(&z, &x_in, &x_out);
    if got != expected {
        return Err(format!("expected {expected}, got {got}"));
    }
    let oracle = sdcs_oracle(&z).map_err(|e| e.to_string())?.membership;
    match (got, oracle) {
        (Verdict::Accept, Membership::In) | (Verdict::Reject, Membership::Out) => Ok(()),
        (Verdict::Unknown, _) => Ok(()),
        (v, m) => Err(format!("{v} disagrees with oracle verdict {m}")),
    }
}

fn closure_case(rng: &mut SeededRng, _: usize, _: f64) -> Result<(), String> {
    let gs = clifford_t();
    let catalog = clifford_t_catalog();
    let k = rng.random_range(1..=3);
    let atoms: Vec<_> = catalog.choose_multiple(rng, k).cloned().collect();
    let p = conjunction(atoms);
    let shape = CircuitShape {
        min_qubits: 1,
        max_qubits: 8,
        max_gates: 12,
        nearest_neighbour: true,
    };
    let x = sample_in_promise(rng, &gs, &shape, &p, 20_000)
        .ok_or_else(|| format!("no sample found for `{}`", p.name()))?;
    let y = random_message(rng, 64);
    let z = pad(&x, &y).map_err(|e| e.to_string())?;
    if p.holds(&z) {
        Ok(())
    } else {
        Err(format!("`{}` not closed under padding", p.name()))
    }
}

fn simulator_case(rng: &mut SeededRng, _: usize, tol: f64) -> Result<(), String> {
    let c = random_circuit(rng, &clifford_t(), &CircuitShape::new(3, 6));
    let fast = run(&c).map_err(|e| e.to_string())?;
    let slow = reference::final_state(&c);
    let worst = fast
        .amplitudes()
        .iter()
        .zip(&slow)
        .map(|(a, b)| (a.norm_sqr() - b.norm_sqr()).abs())
        .fold(0.0, f64::max);
    if worst <= tol {
        Ok(())
    } else {
        Err(format!("distribution error {worst:e}"))
    }
}

/// `h` built from a constant `g` must stay injective over the first `size`
/// 12-bit words.
fn one_one_suite(size: usize) -> SuiteResult {
    let g = builtin_source("constant").expect("builtin").reduction;
    let h = compose_one_one(&g, clifford_t());
    let mut seen = HashSet::new();
    let total = size.min(1 << 12);
    let mut result = SuiteResult {
        name: "one-one-composition",
        passed: 0,
        total,
        first_failure: None,
    };
    for v in 0..total {
        let x: Word = Message::from_uint(v as u64, 12);
        match h.apply(&x) {
            Ok(w) => {
                if seen.insert(w) {
                    result.passed += 1;
                } else {
                    result
                        .first_failure
                        .get_or_insert_with(|| format!("collision at {x}"));
                }
            }
            Err(e) => {
                result.first_failure.get_or_insert_with(|| e.to_string());
            }
        }
    }
    result
}
