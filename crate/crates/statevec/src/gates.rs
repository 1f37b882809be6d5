//! Gate constructors, circuits and the strided application kernels.
//!
//! The gate set is small: Hadamard, the bit flip X, the phase twist
//! `T(alpha) = diag(1, e^{i alpha})`, CNOT, the controlled phase and SWAP,
//! plus the two oracles used by the algorithms (the one-bit function oracle
//! `U_f` and the modular-power oracle `U_x`).
//!
//! Gates applied to a register never build the `2^n x 2^n` operator. A
//! one-qubit gate on target `t` walks the `2^(n-1)` index pairs that differ
//! in bit `n-1-t`; a two-qubit gate walks quadruples. Dense matrices exist
//! only as the `2x2` / `4x4` building blocks returned by the constructors.

use num_complex::Complex64;

use crate::algorithms::{gcd, modpow};
use crate::error::{Error, Result};
use crate::linalg::{dagger, Amplitude, UnitaryMatrix, MAX_QUBITS};
use crate::register::StateVector;

fn c(re: f64, im: f64) -> Amplitude {
    Complex64::new(re, im)
}

/// Hadamard gate `(1/sqrt 2) [[1, 1], [1, -1]]`.
pub fn hadamard() -> UnitaryMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    UnitaryMatrix::from_flat_unchecked(2, vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// Bit flip `[[0, 1], [1, 0]]`.
pub fn pauli_x() -> UnitaryMatrix {
    UnitaryMatrix::from_flat_unchecked(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

/// Phase twist `diag(1, e^{i alpha})`.
pub fn twist(alpha: f64) -> UnitaryMatrix {
    UnitaryMatrix::from_flat_unchecked(
        2,
        vec![
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::from_polar(1.0, alpha),
        ],
    )
}

/// Controlled NOT, the permutation fixing basis indices 0 and 1 and swapping
/// 2 and 3. With the first tensor factor owning the high index bit this
/// reads: when the first qubit is 1, flip the second.
pub fn cnot() -> UnitaryMatrix {
    let mut m = vec![c(0.0, 0.0); 16];
    for (from, to) in [(0usize, 0usize), (1, 1), (2, 3), (3, 2)] {
        m[to * 4 + from] = c(1.0, 0.0);
    }
    UnitaryMatrix::from_flat_unchecked(4, m)
}

/// Controlled phase `diag(1, 1, 1, e^{i alpha})`.
///
/// Not an independent primitive: it factors into the rest of the gate set
/// as `(T(a/2) x I) (I x T(a/2)) CNOT (I x T(-a/2)) CNOT`, so any circuit
/// using it still needs nothing beyond Hadamard, twist, and CNOT gates.
/// The dense form here just skips the five-gate detour.
pub fn controlled_phase(alpha: f64) -> UnitaryMatrix {
    let mut m = vec![c(0.0, 0.0); 16];
    for i in 0..3 {
        m[i * 4 + i] = c(1.0, 0.0);
    }
    m[15] = Complex64::from_polar(1.0, alpha);
    UnitaryMatrix::from_flat_unchecked(4, m)
}

/// SWAP of two qubits, built literally as the product of three CNOTs
/// (forward, reversed, forward).
pub fn swap() -> UnitaryMatrix {
    let fwd = cnot();
    // CNOT with the factor roles exchanged: fixes 0 and 2, swaps 1 and 3
    let mut rev = vec![c(0.0, 0.0); 16];
    for (from, to) in [(0usize, 0usize), (2, 2), (1, 3), (3, 1)] {
        rev[to * 4 + from] = c(1.0, 0.0);
    }
    let rev = UnitaryMatrix::from_flat_unchecked(4, rev);
    fwd.matmul(&rev).unwrap().matmul(&fwd).unwrap()
}

/// Oracle for a one-bit function `f: {0,1} -> {0,1}` given by its value
/// table: maps basis index `2j + i` to `2j + (i XOR f(j))`.
pub fn oracle_uf(f0: bool, f1: bool) -> UnitaryMatrix {
    let mut m = vec![c(0.0, 0.0); 16];
    for (j, &fj) in [f0 as usize, f1 as usize].iter().enumerate() {
        for i in 0..2usize {
            let from = 2 * j + i;
            let to = 2 * j + (i ^ fj);
            m[to * 4 + from] = c(1.0, 0.0);
        }
    }
    UnitaryMatrix::from_flat_unchecked(4, m)
}

/// The modular-power oracle `U_x` on an `n + m` qubit register.
///
/// Acting on basis state `(j, t)` with `j` in the first `n` qubits and `t`
/// in the last `m`, it maps `t < modulus` to `(t + x^j) mod modulus` and
/// leaves `t >= modulus` alone. It is stored and applied as an index
/// permutation; no matrix of size `2^(n+m)` ever exists.
#[derive(Debug, Clone, PartialEq)]
pub struct UxOracle {
    x: u64,
    modulus: u64,
    n: usize,
    m: usize,
}

impl UxOracle {
    /// # Errors
    ///
    /// [`Error::ModulusTooSmall`] for `modulus < 2`,
    /// [`Error::NotCoprime`] unless `gcd(x, modulus) = 1`,
    /// [`Error::SecondRegisterTooSmall`] if `2^m < modulus`,
    /// [`Error::RegisterTooLarge`] if `n + m` exceeds [`MAX_QUBITS`].
    pub fn new(x: u64, modulus: u64, n: usize, m: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall { modulus });
        }
        if gcd(x, modulus)? != 1 {
            return Err(Error::NotCoprime { x, modulus });
        }
        if m >= 64 || (1u64 << m) < modulus {
            return Err(Error::SecondRegisterTooSmall { m, modulus });
        }
        if n == 0 || n + m > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                qubits: n + m,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            x: x % modulus,
            modulus,
            n,
            m,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n + self.m
    }

    /// Image of one basis index under the permutation.
    pub fn permute_index(&self, index: usize) -> usize {
        let t = (index as u64) & ((1u64 << self.m) - 1);
        if t >= self.modulus {
            return index;
        }
        let j = (index as u64) >> self.m;
        let shifted = (t + modpow(self.x, j, self.modulus)) % self.modulus;
        ((j << self.m) | shifted) as usize
    }

    /// Applies the permutation to a register of `n + m` qubits.
    ///
    /// # Errors
    ///
    /// [`Error::DimensionMismatch`] if the register size disagrees.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        let total = self.n_qubits();
        if s.n_qubits() != total {
            return Err(Error::DimensionMismatch {
                expected: 1 << total,
                got: s.dim(),
            });
        }
        let old = s.as_slice();
        let mut out = vec![c(0.0, 0.0); old.len()];
        let block = 1usize << self.m;
        let nmod = self.modulus as usize;
        // x^j advances by one multiplication per block instead of a modpow
        // per index
        let mut power = 1u64;
        for j in 0..(1usize << self.n) {
            let base = j * block;
            let add = power as usize;
            for t in 0..block {
                let dest = if t < nmod {
                    base + (t + add) % nmod
                } else {
                    base + t
                };
                out[dest] = old[base + t];
            }
            power = power * self.x % self.modulus;
        }
        Ok(StateVector::from_parts_unchecked(total, out))
    }
}

/// One gate from the library's fixed set, or an arbitrary small unitary.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H,
    X,
    Twist(f64),
    Cnot,
    CPhase(f64),
    Swap,
    /// Function oracle for Deutsch's problem, keyed by the value table.
    Uf {
        f0: bool,
        f1: bool,
    },
    /// A caller-supplied 2x2 or 4x4 unitary.
    Custom(UnitaryMatrix),
}

impl Gate {
    /// Number of target qubits the gate consumes.
    pub fn arity(&self) -> usize {
        match self {
            Gate::H | Gate::X | Gate::Twist(_) => 1,
            Gate::Cnot | Gate::CPhase(_) | Gate::Swap | Gate::Uf { .. } => 2,
            Gate::Custom(m) => {
                if m.dim() == 2 {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// The gate's dense matrix (2x2 or 4x4).
    pub fn matrix(&self) -> UnitaryMatrix {
        match self {
            Gate::H => hadamard(),
            Gate::X => pauli_x(),
            Gate::Twist(a) => twist(*a),
            Gate::Cnot => cnot(),
            Gate::CPhase(a) => controlled_phase(*a),
            Gate::Swap => swap(),
            Gate::Uf { f0, f1 } => oracle_uf(*f0, *f1),
            Gate::Custom(m) => m.clone(),
        }
    }

    /// The inverse gate.
    pub fn dagger(&self) -> Gate {
        match self {
            Gate::Twist(a) => Gate::Twist(-a),
            Gate::CPhase(a) => Gate::CPhase(-a),
            Gate::Custom(m) => Gate::Custom(dagger(m)),
            // H, X, CNOT, SWAP and U_f are involutions
            other => other.clone(),
        }
    }
}

/// A gate bound to target qubits. For two-qubit gates the first target is
/// the gate's first tensor factor (the control for CNOT and the controlled
/// phase).
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

impl GateOp {
    pub fn new(gate: Gate, targets: Vec<usize>) -> Self {
        Self { gate, targets }
    }
}

/// An ordered gate sequence on a fixed-width register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            ops: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    /// Appends a gate after validating its targets against the register
    /// width.
    pub fn push(&mut self, gate: Gate, targets: &[usize]) -> Result<&mut Self> {
        check_targets(&gate, targets, self.n_qubits)?;
        self.ops.push(GateOp::new(gate, targets.to_vec()));
        Ok(self)
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::H, &[q])
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::X, &[q])
    }

    pub fn twist(&mut self, q: usize, alpha: f64) -> Result<&mut Self> {
        self.push(Gate::Twist(alpha), &[q])
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cnot, &[control, target])
    }

    pub fn cphase(&mut self, control: usize, target: usize, alpha: f64) -> Result<&mut Self> {
        self.push(Gate::CPhase(alpha), &[control, target])
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.push(Gate::Swap, &[a, b])
    }

    /// The circuit that undoes this one: reversed order, each gate inverted.
    pub fn inverse(&self) -> Circuit {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| GateOp::new(op.gate.dagger(), op.targets.clone()))
            .collect();
        Circuit {
            n_qubits: self.n_qubits,
            ops,
        }
    }
}

/// See [`Circuit::inverse`].
pub fn inverse_circuit(c: &Circuit) -> Circuit {
    c.inverse()
}

fn check_targets(gate: &Gate, targets: &[usize], n: usize) -> Result<()> {
    let arity = gate.arity();
    if targets.len() != arity {
        return Err(Error::WrongTargetCount {
            expected: arity,
            got: targets.len(),
        });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n {
            return Err(Error::QubitOutOfRange { qubit: t, n });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTargets);
        }
    }
    Ok(())
}

/// Applies a single gate to a register, returning the new register.
pub fn apply_gate(s: &StateVector, op: &GateOp) -> Result<StateVector> {
    check_targets(&op.gate, &op.targets, s.n_qubits())?;
    let n = s.n_qubits();
    let mut amps = s.as_slice().to_vec();
    apply_in_place(&mut amps, n, op);
    Ok(StateVector::from_parts_unchecked(n, amps))
}

/// Runs a circuit front to back on the given input register.
///
/// # Errors
///
/// [`Error::DimensionMismatch`] if the circuit and register widths differ.
pub fn run_circuit(s: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if circuit.n_qubits() != s.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1 << circuit.n_qubits(),
            got: s.dim(),
        });
    }
    let n = s.n_qubits();
    let mut amps = s.as_slice().to_vec();
    for op in circuit.ops() {
        apply_in_place(&mut amps, n, op);
    }
    Ok(StateVector::from_parts_unchecked(n, amps))
}

pub(crate) fn apply_in_place(amps: &mut [Amplitude], n: usize, op: &GateOp) {
    let m = op.gate.matrix();
    match op.targets.len() {
        1 => apply_1q(amps, n, op.targets[0], &m),
        2 => apply_2q(amps, n, op.targets[0], op.targets[1], &m),
        _ => unreachable!("gates are one- or two-qubit"),
    }
}

fn apply_1q(amps: &mut [Amplitude], n: usize, target: usize, m: &UnitaryMatrix) {
    let p = n - 1 - target;
    let stride = 1usize << p;
    let (m00, m01, m10, m11) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    for i in 0..(amps.len() >> 1) {
        // spread i into an index with bit p forced to zero
        let i0 = ((i >> p) << (p + 1)) | (i & (stride - 1));
        let i1 = i0 | stride;
        let a = amps[i0];
        let b = amps[i1];
        amps[i0] = m00 * a + m01 * b;
        amps[i1] = m10 * a + m11 * b;
    }
}

fn apply_2q(amps: &mut [Amplitude], n: usize, t0: usize, t1: usize, m: &UnitaryMatrix) {
    let p0 = n - 1 - t0;
    let p1 = n - 1 - t1;
    let (lo, hi) = (p0.min(p1), p0.max(p1));
    let (s0, s1) = (1usize << p0, 1usize << p1);
    for i in 0..(amps.len() >> 2) {
        // spread i into an index with bits lo and hi forced to zero
        let j = ((i >> lo) << (lo + 1)) | (i & ((1 << lo) - 1));
        let base = ((j >> hi) << (hi + 1)) | (j & ((1 << hi) - 1));
        let idx = [base, base | s1, base | s0, base | s0 | s1];
        let old = [amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]];
        for (row, &target_idx) in idx.iter().enumerate() {
            let mut acc = c(0.0, 0.0);
            for (col, &o) in old.iter().enumerate() {
                acc += m.get(row, col) * o;
            }
            amps[target_idx] = acc;
        }
    }
}
