//! Command implementations behind the `statevec` binary.
//!
//! Each command writes its report to a caller-supplied writer, which is what
//! makes the golden-file tests byte-exact: the binary hands in stdout, the
//! tests hand in a buffer. Output is deterministic for a fixed seed, and
//! probabilities are printed rounded to 12 significant digits.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 precondition violation
//! (bad modulus, oversized register and the like), 3 attempts exhausted.

use std::io::Write;

use crate::algorithms::{
    deutsch, shor_factor, shor_preconditions, AttemptOutcome, DeutschVerdict, ShorResult,
};
use crate::circuit_file::{parse_circuit, ParseError};
use crate::error::Error;
use crate::fourier::{qft_circuit, qft_dense, qft_gate_counts};
use crate::gates::run_circuit;
use crate::linalg::matvec;
use crate::register::{qubit_bit, RandomSource, StateVector};

/// Success.
pub const EXIT_OK: i32 = 0;
/// Bad command line or unparseable circuit file.
pub const EXIT_USAGE: i32 = 1;
/// Structurally valid input that violates a precondition.
pub const EXIT_PRECONDITION: i32 = 2;
/// The factoring pipeline gave up after its attempt budget.
pub const EXIT_EXHAUSTED: i32 = 3;

/// Seed used when the command line does not pass one.
pub const DEFAULT_SEED: u64 = 42;

/// Probabilities below this threshold are omitted from listings.
pub const PRINT_FLOOR: f64 = 1e-12;

/// Tolerance for `qft --check`.
pub const QFT_CHECK_TOL: f64 = 1e-10;

/// Largest register `qft --check` will compare. Tighter than the library's
/// dense cap because the check builds the dense matrix and runs the circuit
/// on every basis column.
pub const QFT_CHECK_MAX_QUBITS: usize = 10;

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Io(std::io::Error),
    Precondition(Error),
    Exhausted(Error),
    CheckFailed { deviation: f64 },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Precondition(e) => write!(f, "{e}"),
            CliError::Exhausted(e) => write!(f, "{e}"),
            CliError::CheckFailed { deviation } => {
                write!(f, "check failed: max deviation {deviation:.3e}")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Precondition(_) | CliError::CheckFailed { .. } => EXIT_PRECONDITION,
            CliError::Exhausted(_) => EXIT_EXHAUSTED,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::AttemptsExhausted { .. } | Error::TrialsExhausted { .. } => {
                CliError::Exhausted(e)
            }
            other => CliError::Precondition(other),
        }
    }
}

/// Rounds to 12 significant digits, then prints the shortest decimal that
/// round-trips, so `0.5` stays `0.5` and exact ones print as `1.0`.
pub fn format_prob(p: f64) -> String {
    let rounded: f64 = format!("{p:.11e}").parse().expect("formatted float");
    // f64's Debug is the shortest representation that parses back exactly
    format!("{rounded:?}")
}

/// The register bitstring for a basis index, qubit 0 leftmost.
pub fn bitstring(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| char::from(b'0' + qubit_bit(index, n, q) as u8))
        .collect()
}

/// `simulate <file>`: runs a circuit file on the all-zero register and lists
/// every outcome above [`PRINT_FLOOR`], optionally with sampled counts.
pub fn cmd_simulate(
    out: &mut dyn Write,
    source: &str,
    shots: u64,
    seed: u64,
) -> Result<(), CliError> {
    let circuit = parse_circuit(source)?;
    let n = circuit.n_qubits();
    let input = StateVector::basis_state(n, 0)?;
    let final_state = run_circuit(&input, &circuit)?;
    let probs = final_state.probabilities();

    let counts = if shots > 0 {
        // the seed goes in the header so a run documents itself
        writeln!(out, "# seed {seed}")?;
        let mut rng = RandomSource::new(seed);
        Some(probs.sample_counts(shots, &mut rng))
    } else {
        None
    };

    for (i, &p) in probs.as_slice().iter().enumerate() {
        if p <= PRINT_FLOOR {
            continue;
        }
        match &counts {
            Some(counts) => writeln!(out, "{} {} {}", bitstring(i, n), format_prob(p), counts[i])?,
            None => writeln!(out, "{} {}", bitstring(i, n), format_prob(p))?,
        }
    }
    Ok(())
}

/// `deutsch <bits>`: runs Deutsch's algorithm for the function table given
/// as two bits (`f(0)` then `f(1)`), printing the verdict and the read-out
/// qubit's distribution.
pub fn cmd_deutsch(out: &mut dyn Write, f0: bool, f1: bool) -> Result<(), CliError> {
    let result = deutsch(f0, f1);
    let verdict = match result.verdict {
        DeutschVerdict::Constant => "constant",
        DeutschVerdict::Balanced => "balanced",
    };
    writeln!(out, "{verdict}")?;
    for (bit, &p) in result.first_qubit.as_slice().iter().enumerate() {
        writeln!(out, "{bit} {}", format_prob(p))?;
    }
    Ok(())
}

/// `qft --n <k>`: without `--check`, prints the gate counts of the circuit
/// decomposition; with it, compares the circuit against the dense matrix
/// entrywise and reports the largest deviation.
pub fn cmd_qft(out: &mut dyn Write, n: usize, check: bool) -> Result<(), CliError> {
    if !check {
        // validate n by building the circuit before quoting counts for it
        qft_circuit(n)?;
        let (h, cphase, swap) = qft_gate_counts(n);
        writeln!(out, "H:{h} CPHASE:{cphase} SWAP:{swap}")?;
        return Ok(());
    }
    if n > QFT_CHECK_MAX_QUBITS {
        return Err(Error::DenseCapExceeded {
            qubits: n,
            max: QFT_CHECK_MAX_QUBITS,
        }
        .into());
    }
    let dense = qft_dense(n)?;
    let circuit = qft_circuit(n)?;
    let mut deviation = 0.0f64;
    for idx in 0..(1usize << n) {
        let basis = StateVector::basis_state(n, idx)?;
        let via_circuit = run_circuit(&basis, &circuit)?;
        let via_dense = matvec(&dense, basis.amplitudes())?;
        for (a, b) in via_circuit.as_slice().iter().zip(via_dense.as_slice()) {
            deviation = deviation.max((a - b).norm());
        }
    }
    writeln!(out, "max deviation {}", format_prob(deviation))?;
    if deviation <= QFT_CHECK_TOL {
        writeln!(out, "pass")?;
        Ok(())
    } else {
        writeln!(out, "fail")?;
        Err(CliError::CheckFailed { deviation })
    }
}

fn write_attempts(out: &mut dyn Write, result: &ShorResult, modulus: u64) -> std::io::Result<()> {
    for (i, attempt) in result.attempts.iter().enumerate() {
        let k = i + 1;
        let x = attempt.x;
        match attempt.outcome {
            AttemptOutcome::SharedFactor { divisor } => {
                writeln!(
                    out,
                    "attempt {k} x={x} shares factor {divisor} with {modulus}"
                )?;
            }
            AttemptOutcome::OrderNotFound => {
                writeln!(out, "attempt {k} x={x} order not recovered")?;
            }
            AttemptOutcome::OddOrder { order, measured_c } => {
                writeln!(
                    out,
                    "attempt {k} x={x} c={measured_c} r={order} rejected: odd order"
                )?;
            }
            AttemptOutcome::TrivialRoot { order, measured_c } => {
                writeln!(
                    out,
                    "attempt {k} x={x} c={measured_c} r={order} rejected: x^(r/2) = -1 mod {modulus}"
                )?;
            }
            AttemptOutcome::Factored { order, measured_c } => {
                writeln!(out, "attempt {k} x={x} c={measured_c} r={order}")?;
            }
        }
    }
    Ok(())
}

/// `shor <N>`: factors an odd composite, reporting every attempt and the
/// verified factor pair.
pub fn cmd_shor(
    out: &mut dyn Write,
    modulus: u64,
    seed: u64,
    max_attempts: usize,
) -> Result<(), CliError> {
    // reject bad moduli before the seed header: a run that consumes no
    // randomness should not print one
    shor_preconditions(modulus)?;
    writeln!(out, "# seed {seed}")?;
    let mut rng = RandomSource::new(seed);
    let result = shor_factor(modulus, &mut rng, max_attempts)?;
    write_attempts(out, &result, modulus)?;
    let (p, q) = result.factors;
    writeln!(out, "factors {p} {q}")?;
    debug_assert_eq!(p * q, modulus);
    writeln!(out, "check {p} * {q} = {}", p * q)?;
    Ok(())
}
