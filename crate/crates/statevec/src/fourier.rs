//! The quantum Fourier transform, dense and as a circuit.
//!
//! `qft_dense(n)` is the `2^n x 2^n` matrix with entries
//! `zeta^(j*k) / sqrt(2^n)` for `zeta = e^{2 pi i / 2^n}`; for `n = 1` it
//! coincides with the Hadamard gate. `qft_circuit(n)` is the standard
//! decomposition into Hadamards, controlled phases and a final bit-reversal
//! swap layer, and `qft_apply` runs that decomposition against a register in
//! `O(n^2 * 2^n)` amplitude operations, which is what the order-finding
//! pipeline uses. The dense matrix exists for cross-checking and stops at
//! [`MAX_DENSE_QUBITS`] qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{run_circuit, Circuit, Gate, GateOp};
use crate::linalg::{Amplitude, UnitaryMatrix, MAX_DENSE_QUBITS};
use crate::register::StateVector;

/// A root of unity `e^{2 pi i * power / order}` with the exponent kept in
/// integer form until evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity {
    pub order: u64,
    pub power: i64,
}

impl RootOfUnity {
    pub fn value(self) -> Amplitude {
        // reduce first so huge exponents don't cost precision
        let reduced = self.power.rem_euclid(self.order as i64) as f64;
        Complex64::from_polar(1.0, std::f64::consts::TAU * reduced / self.order as f64)
    }
}

/// `e^{2 pi i * power / order}`.
pub fn zeta(order: u64, power: i64) -> Amplitude {
    RootOfUnity { order, power }.value()
}

/// Dense Fourier matrix on `n` qubits.
///
/// # Errors
///
/// [`Error::EmptySubset`] for `n = 0`, [`Error::DenseCapExceeded`] beyond
/// [`MAX_DENSE_QUBITS`] qubits.
pub fn qft_dense(n: usize) -> Result<UnitaryMatrix> {
    if n == 0 {
        return Err(Error::EmptySubset);
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::DenseCapExceeded {
            qubits: n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mask = (dim - 1) as u64;
    let scale = 1.0 / (dim as f64).sqrt();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        for k in 0..dim {
            let power = (j as u64 * k as u64) & mask;
            entries[j * dim + k] = zeta(dim as u64, power as i64) * scale;
        }
    }
    Ok(UnitaryMatrix::from_flat_unchecked(dim, entries))
}

/// The QFT gate sequence on the inclusive qubit range `lo..=hi`: for each
/// qubit `k` a Hadamard followed by phases `pi / 2^(j-k)` controlled from
/// every later qubit `j`, then the bit-reversal swap layer.
pub fn qft_ops(lo: usize, hi: usize) -> Vec<GateOp> {
    assert!(lo <= hi, "empty qubit range");
    let mut ops = Vec::new();
    for k in lo..=hi {
        ops.push(GateOp::new(Gate::H, vec![k]));
        for j in (k + 1)..=hi {
            let alpha = std::f64::consts::PI / (1u64 << (j - k)) as f64;
            ops.push(GateOp::new(Gate::CPhase(alpha), vec![j, k]));
        }
    }
    let len = hi - lo + 1;
    for i in 0..len / 2 {
        ops.push(GateOp::new(Gate::Swap, vec![lo + i, hi - i]));
    }
    ops
}

/// The QFT decomposition as a circuit on `n` qubits.
///
/// # Errors
///
/// [`Error::EmptySubset`] for `n = 0`.
pub fn qft_circuit(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::EmptySubset);
    }
    let mut circuit = Circuit::new(n);
    for op in qft_ops(0, n - 1) {
        circuit.push(op.gate, &op.targets)?;
    }
    Ok(circuit)
}

/// Fourier-transforms a whole register through the circuit decomposition.
pub fn qft_apply(s: &StateVector) -> StateVector {
    let circuit = qft_circuit(s.n_qubits()).expect("register is non-empty");
    run_circuit(s, &circuit).expect("widths match")
}

/// Fourier-transforms the inclusive qubit range `lo..=hi` of a register,
/// acting as identity elsewhere (`F (x) I` on a split register).
///
/// # Errors
///
/// [`Error::QubitOutOfRange`] if the range reaches past the register,
/// [`Error::EmptySubset`] if `lo > hi`.
pub fn qft_apply_range(s: &StateVector, lo: usize, hi: usize) -> Result<StateVector> {
    if lo > hi {
        return Err(Error::EmptySubset);
    }
    if hi >= s.n_qubits() {
        return Err(Error::QubitOutOfRange {
            qubit: hi,
            n: s.n_qubits(),
        });
    }
    let mut out = s.clone();
    for op in qft_ops(lo, hi) {
        out = crate::gates::apply_gate(&out, &op)?;
    }
    Ok(out)
}

/// Gate counts of [`qft_circuit`]: `n` Hadamards, `n (n-1) / 2` controlled
/// phases, `floor(n/2)` swaps. All zero for `n = 0`, where no circuit exists.
pub fn qft_gate_counts(n: usize) -> (usize, usize, usize) {
    (n, n * n.saturating_sub(1) / 2, n / 2)
}
