//! `qpad`: circuit padding toolkit.
//!
//! Exit codes: 0 success / ACCEPT / true, 1 REJECT / false, 2 UNKNOWN /
//! no message, 64 usage error, 65 malformed input, 66 unreadable input.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpad_core::selfcheck::{run_selfcheck, SelfcheckConfig, DEFAULT_SEED, DEFAULT_SIZE};
use qpad_core::{
    builtin_gateset, builtin_source, clifford_t, compose_one_one, dec, decode, decode_word, encode,
    fast_decide, pad, parse_circuit, parse_promise, run, sdcs_oracle, unpad, write_circuit,
    Circuit, Membership, Message, PromiseError, SymbolString, Verdict,
};

#[derive(Parser)]
#[command(
    name = "qpad",
    version,
    about = "Encode, pad, decide and simulate quantum circuits"
)]
struct Cli {
    /// Built-in gate set for inputs that do not name one.
    #[arg(long, global = true, default_value = "clifford_t")]
    gateset: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symbol string of a circuit file.
    Encode(InOut),
    /// Rebuild a circuit file from a symbol string.
    Decode {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        qubits: usize,
    },
    /// Append a message to a circuit as identity blocks.
    Pad {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        message: MessageArgs,
    },
    /// Print the message carried by a circuit, or NO MESSAGE.
    Extract { input: PathBuf },
    /// Remove the outermost message frame.
    Strip(InOut),
    /// Decide a circuit against padded witness families.
    Decide {
        input: PathBuf,
        #[arg(long)]
        yes_witness: PathBuf,
        #[arg(long)]
        no_witness: PathBuf,
        /// Simulate both witnesses first and refuse wrong ones.
        #[arg(long)]
        check_witnesses: bool,
    },
    /// Apply a built-in reduction made one-one by padding.
    Reduce {
        #[arg(long)]
        via: String,
        /// Input word as a 0/1 string.
        word: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check circuit files against a promise expression.
    PromiseCheck {
        #[arg(long)]
        promise: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Print the last-qubit probability and its verdict.
    Simulate {
        input: PathBuf,
        #[arg(long)]
        full_dist: bool,
    },
    /// Run the seeded property suites.
    Selfcheck {
        #[arg(long, env = "QPAD_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SIZE)]
        size: usize,
        #[arg(long, default_value_t = 1e-10, value_parser = positive_f64)]
        tol: f64,
    },
}

#[derive(Args)]
struct InOut {
    /// Input file, or `-` for standard input.
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MessageArgs {
    #[arg(long)]
    message_hex: Option<String>,
    #[arg(long)]
    message_bits: Option<String>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

enum Failure {
    Usage(String),
    Malformed(String),
    Unreadable(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Malformed(_) => 65,
            Failure::Unreadable(_) => 66,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Malformed(m) | Failure::Unreadable(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qpad: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let gateset = builtin_gateset(&cli.gateset)
        .ok_or_else(|| Failure::Usage(format!("unknown gate set `{}`", cli.gateset)))?;
    match cli.command {
        Command::Encode(io) => {
            let c = read_circuit(&io.input)?;
            let text = encode(&c).render(c.gateset().len());
            emit(io.output.as_deref(), &format!("{text}\n"))?;
            Ok(0)
        }
        Command::Decode { io, qubits } => {
            let text = read_text(&io.input)?;
            let bad =
                |e: &dyn fmt::Display| Failure::Malformed(format!("{}: {e}", io.input.display()));
            let symbols = SymbolString::parse(&text, gateset.len()).map_err(|e| bad(&e))?;
            let c = decode(&symbols, qubits, gateset).map_err(|e| bad(&e))?;
            emit(io.output.as_deref(), &write_circuit(&c))?;
            Ok(0)
        }
        Command::Pad { io, message } => {
            let y = match (message.message_hex, message.message_bits) {
                (Some(h), _) => Message::from_hex(&h),
                (None, Some(b)) => Message::from_bit_str(&b),
                (None, None) => unreachable!("clap enforces the group"),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let c = read_circuit(&io.input)?;
            let z = pad(&c, &y).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(io.output.as_deref(), &write_circuit(&z))?;
            Ok(0)
        }
        Command::Extract { input } => {
            let c = read_circuit(&input)?;
            match dec(&c) {
                Some(y) => {
                    match y.to_hex() {
                        Some(hex) => println!("{hex}"),
                        _ => println!("bits {}", y.to_bit_str()),
                    }
                    Ok(0)
                }
                None => {
                    println!("NO MESSAGE");
                    Ok(2)
                }
            }
        }
        Command::Strip(io) => {
            let c = read_circuit(&io.input)?;
            emit(io.output.as_deref(), &write_circuit(&unpad(&c)))?;
            Ok(0)
        }
        Command::Decide {
            input,
            yes_witness,
            no_witness,
            check_witnesses,
        } => {
            let z = read_circuit(&input)?;
            let x_in = read_circuit(&yes_witness)?;
            let x_out = read_circuit(&no_witness)?;
            if check_witnesses {
                check_witness(&yes_witness, &x_in, true)?;
                check_witness(&no_witness, &x_out, false)?;
            }
            let verdict = fast_decide(&z, &x_in, &x_out);
            println!("{verdict}");
            Ok(match verdict {
                Verdict::Accept => 0,
                Verdict::Reject => 1,
                Verdict::Unknown => 2,
            })
        }
        Command::Reduce { via, word, output } => {
            let source = builtin_source(&via)
                .ok_or_else(|| Failure::Usage(format!("unknown reduction `{via}`")))?;
            let x = Message::from_bit_str(&word).map_err(|e| Failure::Usage(e.to_string()))?;
            let h = compose_one_one(&source.reduction, clifford_t());
            let w = h.apply(&x).map_err(|e| Failure::Malformed(e.to_string()))?;
            let z = decode_word(&w, clifford_t()).map_err(|e| Failure::Malformed(e.to_string()))?;
            emit(output.as_deref(), &write_circuit(&z))?;
            Ok(0)
        }
        Command::PromiseCheck { promise, inputs } => {
            let mut parsed = HashMap::new();
            let mut all = true;
            for path in &inputs {
                let c = read_circuit(path)?;
                let gs = c.gateset().clone();
                let p = match parsed.get(gs.name()) {
                    Some(p) => p,
                    None => {
                        let p = parse_promise(&promise, &gs).map_err(|e| promise_failure(&e))?;
                        parsed.entry(gs.name().to_string()).or_insert(p)
                    }
                };
                let holds = p.holds(&c);
                all &= holds;
                println!("{}: {holds}", path.display());
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Simulate { input, full_dist } => {
            let c = read_circuit(&input)?;
            let bad =
                |e: &dyn fmt::Display| Failure::Malformed(format!("{}: {e}", input.display()));
            let verdict = sdcs_oracle(&c).map_err(|e| bad(&e))?;
            let mut out = format!(
                "p_one {}\nverdict {}\n",
                significant(verdict.p_one),
                verdict.membership
            );
            if full_dist {
                let n = c.n_qubits();
                for (i, p) in run(&c)
                    .map_err(|e| bad(&e))?
                    .probabilities()
                    .iter()
                    .enumerate()
                {
                    out.push_str(&format!("{i:0n$b} {}\n", significant(*p)));
                }
            }
            emit(None, &out)?;
            Ok(0)
        }
        Command::Selfcheck { seed, size, tol } => {
            let report = run_selfcheck(&SelfcheckConfig {
                seed,
                size,
                tolerance: tol,
            });
            emit(None, &report.to_string())?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn promise_failure(e: &PromiseError) -> Failure {
    match e {
        PromiseError::Syntax { column, message } => {
            Failure::Usage(format!("--promise: column {column}: {message}"))
        }
        other => Failure::Usage(format!("--promise: {other}")),
    }
}

fn check_witness(path: &Path, x: &Circuit, yes: bool) -> Result<(), Failure> {
    let verdict =
        sdcs_oracle(x).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    let expected = if yes { Membership::In } else { Membership::Out };
    if verdict.membership != expected {
        return Err(Failure::Malformed(format!(
            "{}: witness simulates to {} (p_one {}), expected {expected}",
            path.display(),
            verdict.membership,
            significant(verdict.p_one)
        )));
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Unreadable(format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Unreadable(format!("{}: {e}", path.display())))
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = read_text(path)?;
    parse_circuit(&text).map_err(|e| {
        Failure::Malformed(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.message
        ))
    })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Unreadable(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

/// `%.12g`-style formatting.
fn significant(p: f64) -> String {
    if p == 0.0 {
        return "0".into();
    }
    let exp = p.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{p:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{p:.11e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    }
}

#[cfg(test)]
mod tests {
    use super::significant;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(significant(0.0), "0");
        assert_eq!(significant(1.0), "1");
        assert_eq!(significant(0.5), "0.5");
        assert_eq!(significant(1.0 / 3.0), "0.333333333333");
        assert_eq!(significant(0.8535533905932737), "0.853553390593");
        assert_eq!(significant(1.5e-7), "1.5e-7");
    }
}
