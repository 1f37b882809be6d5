//! A state-vector quantum circuit simulator, plus the three classic
//! algorithms people usually want to run on one: Deutsch's one-query
//! problem, the quantum Fourier transform, and Shor's factoring pipeline.
//!
//! A register of `n` qubits is a unit vector of `2^n` complex amplitudes;
//! qubit 0 is the leftmost tensor factor, so basis index
//! `i = sum_k bit_k * 2^(n-1-k)`. Gates are applied with strided kernels in
//! `O(2^n)` time and never materialize the full operator; dense matrices
//! exist only at gate size and for small cross-check transforms.
//!
//! ```
//! use statevec::gates::Circuit;
//! use statevec::register::StateVector;
//!
//! // build and run a Bell pair
//! let mut circuit = Circuit::new(2);
//! circuit.h(0).unwrap().cnot(0, 1).unwrap();
//! let state = statevec::gates::run_circuit(
//!     &StateVector::basis_state(2, 0).unwrap(),
//!     &circuit,
//! )
//! .unwrap();
//!
//! let p = state.probabilities();
//! assert!((p.as_slice()[0] - 0.5).abs() < 1e-12);
//! assert!((p.as_slice()[3] - 0.5).abs() < 1e-12);
//! assert!(!state.is_separable(1e-9).unwrap());
//! ```
//!
//! Everything is deterministic under a seed: measurement flows through
//! [`register::RandomSource`], and two runs with the same seed produce the
//! same samples, the same factoring attempts, the same bytes of output from
//! the bundled `statevec` binary.
//!
//! The `examples/` directory exercises every major capability end to end;
//! start with `cargo run --example bell`.

pub mod algorithms;
pub mod circuit_file;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod gates;
pub mod linalg;
pub mod register;

pub use error::{Error, Result};
pub use gates::{Circuit, Gate, GateOp};
pub use linalg::{Amplitude, CVector, UnitaryMatrix};
pub use register::{ProbDist, RandomSource, StateVector};
