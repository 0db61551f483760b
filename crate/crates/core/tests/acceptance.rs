//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qpad_core::gen::{
    random_circuit, random_circuit_exact, random_frame_free, random_message, random_message_exact,
    sample_in_promise, seeded, CircuitShape,
};
use qpad_core::promise::clifford_t_catalog;
use qpad_core::reduction::all_words;
use qpad_core::{
    builtin_source, canonical_witnesses, check_closure, clifford_t, compose_one_one, conjunction,
    dec, decode, distributions_equal, encode, fast_decide, is_member_sx, pad, run, sdcs_oracle,
    unpad, Circuit, Membership, Verdict,
};
use rand::seq::IndexedRandom;
use rand::Rng;

const SEED: u64 = 20_240_611;
const TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: &[Criterion] = &[
        ("codec round-trip", codec_roundtrip),
        ("padding recovery", padding_recovery),
        ("semantic preservation", semantic_preservation),
        ("padded-family membership", padded_family_membership),
        ("fast decider verdicts", fast_decider_verdicts),
        ("one-one composition", one_one_composition),
        ("linear padding cost", linear_padding_cost),
        ("promise closure", promise_closure),
        ("simulator vs matrix chain", simulator_vs_matrix_chain),
        ("decider is simulation-free", decider_is_simulation_free),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn shape() -> CircuitShape {
    CircuitShape::new(8, 64)
}

fn codec_roundtrip() -> Outcome {
    let gs = clifford_t();
    let mut rng = seeded(SEED);
    let corpus: Vec<Circuit> = (0..1000)
        .map(|_| random_circuit(&mut rng, &gs, &shape()))
        .collect();
    let start = Instant::now();
    let ok = corpus
        .iter()
        .filter(|c| decode(&encode(c), c.n_qubits(), gs.clone()).as_ref() == Ok(*c))
        .count();
    let elapsed = start.elapsed();
    outcome(
        ok == 1000 && elapsed < Duration::from_secs(5),
        format!("{ok}/1000 exact in {elapsed:.2?} (limit 5s)"),
    )
}

fn padding_recovery() -> Outcome {
    let gs = clifford_t();
    let mut rng = seeded(SEED + 1);
    let mut ok = 0;
    for _ in 0..500 {
        let x = random_frame_free(&mut rng, &gs, &shape());
        let y = random_message(&mut rng, 128);
        let z = pad(&x, &y).expect("clifford_t has blocks");
        if dec(&z).as_ref() == Some(&y) && unpad(&z) == x {
            ok += 1;
        }
    }
    outcome(ok == 500, format!("{ok}/500 pairs recovered"))
}

fn semantic_preservation() -> Outcome {
    let gs = clifford_t();
    let mut rng = seeded(SEED + 2);
    let mut ok = 0;
    for _ in 0..200 {
        let x = random_circuit(&mut rng, &gs, &shape());
        let y = random_message(&mut rng, 128);
        let z = pad(&x, &y).expect("clifford_t has blocks");
        if distributions_equal(&x, &z, TOL) == Ok(true) {
            ok += 1;
        }
    }
    outcome(ok == 200, format!("{ok}/200 distributions within {TOL:e}"))
}

fn padded_family_membership() -> Outcome {
    let gs = clifford_t();
    let mut rng = seeded(SEED + 3);
    let (mut member, mut outsider) = (0, 0);
    for _ in 0..200 {
        let x = random_frame_free(&mut rng, &gs, &shape());
        let other = loop {
            let c = random_frame_free(&mut rng, &gs, &shape());
            if c != x {
                break c;
            }
        };
        let y = random_message(&mut rng, 128);
        if is_member_sx(&pad(&x, &y).unwrap(), &x) {
            member += 1;
        }
        if !is_member_sx(&pad(&other, &y).unwrap(), &x) {
            outsider += 1;
        }
    }
    outcome(
        member == 200 && outsider == 200,
        format!("{member}/200 members accepted, {outsider}/200 outsiders refused"),
    )
}

fn fast_decider_verdicts() -> Outcome {
    let gs = clifford_t();
    let mut rng = seeded(SEED + 4);
    let mut counts = [0usize; 3];
    let mut disagreements = 0;
    for (class, expected) in [Verdict::Accept, Verdict::Reject, Verdict::Unknown]
        .iter()
        .enumerate()
    {
        for _ in 0..200 {
            let n = rng.random_range(1..=8);
            let (x_in, x_out) = canonical_witnesses(n).unwrap();
            let z = match expected {
                Verdict::Accept => pad(&x_in, &random_message(&mut rng, 128)).unwrap(),
                Verdict::Reject => pad(&x_out, &random_message(&mut rng, 128)).unwrap(),
                Verdict::Unknown => {
                    let s = CircuitShape {
                        min_qubits: n,
                        max_qubits: n,
                        max_gates: 64,
                        nearest_neighbour: false,
                    };
                    random_frame_free(&mut rng, &gs, &s)
                }
            };
            let got = fast_decide(&z, &x_in, &x_out);
            if got == *expected {
                counts[class] += 1;
            }
            let oracle = sdcs_oracle(&z).unwrap().membership;
            let agrees = match got {
                Verdict::Accept => oracle == Membership::In,
                Verdict::Reject => oracle == Membership::Out,
                Verdict::Unknown => true,
            };
            if !agrees {
                disagreements += 1;
            }
        }
    }
    outcome(
        counts == [200; 3] && disagreements == 0,
        format!(
            "ACCEPT {}/200, REJECT {}/200, UNKNOWN {}/200, oracle disagreements {disagreements}",
            counts[0], counts[1], counts[2]
        ),
    )
}

fn one_one_composition() -> Outcome {
    let g = builtin_source("constant").unwrap().reduction;
    let h = compose_one_one(&g, clifford_t());
    let words = all_words(12);
    let start = Instant::now();
    let images: HashSet<_> = words.iter().map(|x| h.apply(x).unwrap()).collect();
    let elapsed = start.elapsed();
    let g_images: HashSet<_> = words.iter().map(|x| g.apply(x).unwrap()).collect();
    outcome(
        images.len() == 4096 && elapsed < Duration::from_secs(10),
        format!(
            "{} distinct outputs from 4096 words (g alone: {}) in {elapsed:.2?} (limit 10s)",
            images.len(),
            g_images.len()
        ),
    )
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn pad_dec_time(x: &Circuit, bits: usize, reps: usize) -> f64 {
    let y = random_message_exact(&mut seeded(bits as u64), bits);
    let samples = (0..reps)
        .map(|_| {
            let start = Instant::now();
            let z = pad(x, &y).unwrap();
            let back = dec(&z);
            let t = start.elapsed().as_secs_f64();
            assert_eq!(back.as_ref(), Some(&y));
            t
        })
        .collect();
    median(samples)
}

fn linear_padding_cost() -> Outcome {
    let x = random_circuit_exact(&mut seeded(SEED + 6), &clifford_t(), 4, 32, false);
    pad_dec_time(&x, 10_000, 3);
    let small = pad_dec_time(&x, 1_000, 41) / 1_000.0;
    let large = pad_dec_time(&x, 10_000, 41) / 10_000.0;
    let ratio = large / small;
    outcome(
        ratio <= 3.0,
        format!(
            "per-bit {:.1} ns at 10k vs {:.1} ns at 1k, ratio {ratio:.2} (limit 3)",
            large * 1e9,
            small * 1e9
        ),
    )
}

fn promise_closure() -> Outcome {
    let gs = clifford_t();
    let catalog = clifford_t_catalog();
    let mut rng = seeded(SEED + 7);
    let mut promises = catalog.clone();
    for _ in 0..20 {
        let k = rng.random_range(2..=4);
        promises.push(conjunction(
            catalog.choose_multiple(&mut rng, k).cloned().collect(),
        ));
    }
    let s = CircuitShape {
        min_qubits: 1,
        max_qubits: 8,
        max_gates: 16,
        nearest_neighbour: true,
    };
    let mut holding = 0;
    let mut problems = Vec::new();
    for p in &promises {
        let mut samples = Vec::with_capacity(100);
        for _ in 0..100 {
            match sample_in_promise(&mut rng, &gs, &s, p, 100_000) {
                Some(x) => samples.push((x, random_message(&mut rng, 128))),
                None => break,
            }
        }
        if samples.len() < 100 {
            problems.push(format!("could not sample `{}`", p.name()));
            continue;
        }
        match check_closure(p, &samples) {
            Ok(r) if r.holds() => holding += 1,
            Ok(r) => problems.push(format!("`{}`: {} violations", p.name(), r.violations.len())),
            Err(e) => problems.push(e.to_string()),
        }
    }
    let mut detail = format!(
        "{holding}/{} promises closed over 100 samples each ({} built-in, 20 conjunctions)",
        promises.len(),
        catalog.len()
    );
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first problem: {first}"));
    }
    outcome(holding == promises.len(), detail)
}

/// Circuit unitary as a sum of Kronecker products: for each gate entry
/// `U[r][c]`, operand qubits get `|r_i><c_i|`, all others the identity.
/// Qubit `n-1` is the leftmost tensor factor.
fn matrix_chain_distribution(c: &Circuit) -> Vec<f64> {
    type M = Vec<Vec<Complex64>>;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let kron = |a: &M, b: &M| -> M {
        let (ra, rb) = (a.len(), b.len());
        let mut out = vec![vec![zero; ra * rb]; ra * rb];
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rb {
                    for l in 0..rb {
                        out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    };
    let mul = |a: &M, b: &M| -> M {
        let d = a.len();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let n = c.n_qubits();
    let dim = 1usize << n;
    let eye2: M = vec![vec![one, zero], vec![zero, one]];
    let mut u: M = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { one } else { zero }).collect())
        .collect();
    for g in c.gates() {
        let kind = c.kind_of(g);
        let k = g.operands().len();
        let local = 1usize << k;
        let mut full: M = vec![vec![zero; dim]; dim];
        for r in 0..local {
            for col in 0..local {
                let coeff = kind.matrix()[r * local + col];
                if coeff == zero {
                    continue;
                }
                let mut term: M = vec![vec![one]];
                for q in (0..n).rev() {
                    let factor = match g.operands().iter().position(|&o| o == q) {
                        Some(i) => {
                            let shift = k - 1 - i;
                            let (rb, cb) = ((r >> shift) & 1, (col >> shift) & 1);
                            let mut m = vec![vec![zero; 2]; 2];
                            m[rb][cb] = one;
                            m
                        }
                        None => eye2.clone(),
                    };
                    term = kron(&term, &factor);
                }
                for i in 0..dim {
                    for j in 0..dim {
                        full[i][j] += coeff * term[i][j];
                    }
                }
            }
        }
        u = mul(&full, &u);
    }
    (0..dim).map(|i| u[i][0].norm_sqr()).collect()
}

fn oracle_known_answers() -> bool {
    let gs = clifford_t();
    let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
    let bell = Circuit::builder(2, gs.clone())
        .gate("H", [0])
        .gate("CX", [0, 1])
        .build()
        .unwrap();
    let flip_high = Circuit::builder(3, gs.clone())
        .gate("H", [2])
        .gate("S", [2])
        .gate("S", [2])
        .gate("H", [2])
        .gate("CX", [2, 0])
        .build()
        .unwrap();
    let phase_only = Circuit::builder(1, gs.clone())
        .gate("T", [0])
        .gate("S", [0])
        .build()
        .unwrap();
    let hth = Circuit::builder(1, gs)
        .gate("H", [0])
        .gate("T", [0])
        .gate("H", [0])
        .build()
        .unwrap();
    let c2 = (std::f64::consts::PI / 8.0).cos().powi(2);
    close(&matrix_chain_distribution(&bell), &[0.5, 0.0, 0.0, 0.5])
        && close(
            &matrix_chain_distribution(&flip_high),
            &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        )
        && close(&matrix_chain_distribution(&phase_only), &[1.0, 0.0])
        && close(&matrix_chain_distribution(&hth), &[c2, 1.0 - c2])
}

fn simulator_vs_matrix_chain() -> Outcome {
    if !oracle_known_answers() {
        return outcome(false, "matrix-chain oracle failed its own known answers");
    }
    let gs = clifford_t();
    let mut rng = seeded(SEED + 8);
    let mut worst: f64 = 0.0;
    let mut ok = 0;
    for _ in 0..2000 {
        let n = rng.random_range(1..=3);
        let len = rng.random_range(0..=6);
        let c = random_circuit_exact(&mut rng, &gs, n, len, false);
        let fast = run(&c).unwrap().probabilities();
        let slow = matrix_chain_distribution(&c);
        let err = fast
            .iter()
            .zip(&slow)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(err);
        if err <= TOL {
            ok += 1;
        }
    }
    outcome(
        ok == 2000,
        format!("{ok}/2000 within {TOL:e}, worst entry error {worst:.1e}"),
    )
}

fn decide_time(n: usize, reps: usize) -> f64 {
    let (x_in, x_out) = canonical_witnesses(n).unwrap();
    let y = random_message_exact(&mut seeded(SEED + 9), 256);
    let cases = [
        pad(&x_in, &y).unwrap(),
        pad(&x_out, &y).unwrap(),
        x_in.clone(),
    ];
    let samples = (0..reps)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..20 {
                for z in &cases {
                    std::hint::black_box(fast_decide(std::hint::black_box(z), &x_in, &x_out));
                }
            }
            start.elapsed().as_secs_f64()
        })
        .collect();
    median(samples)
}

fn decider_is_simulation_free() -> Outcome {
    let (small_in, _) = canonical_witnesses(4).unwrap();
    let (large_in, _) = canonical_witnesses(20).unwrap();
    assert_eq!(small_in.len(), large_in.len(), "equal gate counts");
    decide_time(20, 3);
    let t4 = decide_time(4, 51);
    let t20 = decide_time(20, 51);
    let ratio = t4.max(t20) / t4.min(t20);
    outcome(
        ratio < 2.0,
        format!(
            "median {:.1} us at n=4, {:.1} us at n=20, ratio {ratio:.2} (limit 2)",
            t4 * 1e6,
            t20 * 1e6
        ),
    )
}
