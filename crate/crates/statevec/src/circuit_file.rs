//! Parser for the line-oriented circuit file format.
//!
//! A file declares its register width first, then one instruction per line:
//!
//! ```text
//! # a Bell pair
//! QUBITS 2
//! H 0
//! CNOT 0 1
//! ```
//!
//! Supported instructions: `H q`, `X q`, `T q alpha`, `CNOT c t`,
//! `CPHASE c t alpha`, `SWAP a b`, and `QFT lo hi`, which expands in place
//! to the Fourier circuit on the inclusive qubit range. Angles are radians.
//! `#` starts a comment anywhere on a line; blank lines are ignored.
//!
//! Every diagnostic carries the 1-based line number it was raised on, and
//! malformed input of any shape produces a diagnostic, never a panic.

use thiserror::Error;

use crate::fourier::qft_ops;
use crate::gates::Circuit;
use crate::linalg::MAX_QUBITS;

/// A rejected circuit file, pinpointing the offending line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected the QUBITS header before any instruction")]
    MissingHeader { line: usize },

    #[error("line {line}: repeated QUBITS header")]
    DuplicateHeader { line: usize },

    #[error("line {line}: unknown instruction `{word}`")]
    UnknownMnemonic { line: usize, word: String },

    #[error("line {line}: {mnemonic} takes {expected} argument(s), got {got}")]
    WrongArgCount {
        line: usize,
        mnemonic: String,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: `{text}` is not a valid number")]
    MalformedNumber { line: usize, text: String },

    #[error("line {line}: qubit {qubit} out of range for {n} qubit(s)")]
    QubitOutOfRange { line: usize, qubit: usize, n: usize },

    #[error("line {line}: register must have 1 to {max} qubits, got {n}")]
    BadQubitCount { line: usize, n: usize, max: usize },

    #[error("line {line}: qubit arguments must be distinct")]
    DuplicateTargets { line: usize },

    #[error("line {line}: QFT range is empty ({lo} > {hi})")]
    EmptyRange { line: usize, lo: usize, hi: usize },
}

fn parse_qubit(word: &str, line: usize, n: usize) -> Result<usize, ParseError> {
    let q: usize = word.parse().map_err(|_| ParseError::MalformedNumber {
        line,
        text: word.to_string(),
    })?;
    if q >= n {
        return Err(ParseError::QubitOutOfRange { line, qubit: q, n });
    }
    Ok(q)
}

fn parse_angle(word: &str, line: usize) -> Result<f64, ParseError> {
    let malformed = || ParseError::MalformedNumber {
        line,
        text: word.to_string(),
    };
    let a: f64 = word.parse().map_err(|_| malformed())?;
    // "NaN" and "inf" parse as floats but make no sense as angles
    if !a.is_finite() {
        return Err(malformed());
    }
    Ok(a)
}

fn expect_args(
    args: &[&str],
    expected: usize,
    mnemonic: &str,
    line: usize,
) -> Result<(), ParseError> {
    if args.len() != expected {
        return Err(ParseError::WrongArgCount {
            line,
            mnemonic: mnemonic.to_string(),
            expected,
            got: args.len(),
        });
    }
    Ok(())
}

fn distinct(a: usize, b: usize, line: usize) -> Result<(), ParseError> {
    if a == b {
        return Err(ParseError::DuplicateTargets { line });
    }
    Ok(())
}

/// Parses circuit-file source text into a runnable [`Circuit`].
pub fn parse_circuit(src: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let mut words = text.split_whitespace();
        let mnemonic = words.next().expect("non-empty line");
        let args: Vec<&str> = words.collect();

        if mnemonic.eq_ignore_ascii_case("QUBITS") {
            if circuit.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            expect_args(&args, 1, "QUBITS", line)?;
            let n: usize = args[0].parse().map_err(|_| ParseError::MalformedNumber {
                line,
                text: args[0].to_string(),
            })?;
            if n == 0 || n > MAX_QUBITS {
                return Err(ParseError::BadQubitCount {
                    line,
                    n,
                    max: MAX_QUBITS,
                });
            }
            circuit = Some(Circuit::new(n));
            continue;
        }

        let circuit = circuit.as_mut().ok_or(ParseError::MissingHeader { line })?;
        let n = circuit.n_qubits();
        // the parser has already validated targets, so push cannot fail
        match mnemonic.to_ascii_uppercase().as_str() {
            "H" => {
                expect_args(&args, 1, "H", line)?;
                let q = parse_qubit(args[0], line, n)?;
                circuit.h(q).expect("validated");
            }
            "X" => {
                expect_args(&args, 1, "X", line)?;
                let q = parse_qubit(args[0], line, n)?;
                circuit.x(q).expect("validated");
            }
            "T" => {
                expect_args(&args, 2, "T", line)?;
                let q = parse_qubit(args[0], line, n)?;
                let alpha = parse_angle(args[1], line)?;
                circuit.twist(q, alpha).expect("validated");
            }
            "CNOT" => {
                expect_args(&args, 2, "CNOT", line)?;
                let c = parse_qubit(args[0], line, n)?;
                let t = parse_qubit(args[1], line, n)?;
                distinct(c, t, line)?;
                circuit.cnot(c, t).expect("validated");
            }
            "CPHASE" => {
                expect_args(&args, 3, "CPHASE", line)?;
                let c = parse_qubit(args[0], line, n)?;
                let t = parse_qubit(args[1], line, n)?;
                distinct(c, t, line)?;
                let alpha = parse_angle(args[2], line)?;
                circuit.cphase(c, t, alpha).expect("validated");
            }
            "SWAP" => {
                expect_args(&args, 2, "SWAP", line)?;
                let a = parse_qubit(args[0], line, n)?;
                let b = parse_qubit(args[1], line, n)?;
                distinct(a, b, line)?;
                circuit.swap(a, b).expect("validated");
            }
            "QFT" => {
                expect_args(&args, 2, "QFT", line)?;
                let lo = parse_qubit(args[0], line, n)?;
                let hi = parse_qubit(args[1], line, n)?;
                if lo > hi {
                    return Err(ParseError::EmptyRange { line, lo, hi });
                }
                for op in qft_ops(lo, hi) {
                    circuit.push(op.gate, &op.targets).expect("validated");
                }
            }
            _ => {
                return Err(ParseError::UnknownMnemonic {
                    line,
                    word: mnemonic.to_string(),
                });
            }
        }
    }
    circuit.ok_or(ParseError::MissingHeader {
        line: last_line + 1,
    })
}
