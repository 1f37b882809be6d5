use thiserror::Error;

/// Errors produced by the simulation library.
///
/// Every fallible operation in the crate reports one of these variants;
/// none of them panic on bad input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("register of {qubits} qubits exceeds the maximum of {max}")]
    RegisterTooLarge { qubits: usize, max: usize },

    #[error("dense matrix on {qubits} qubits exceeds the dense cap of {max}")]
    DenseCapExceeded { qubits: usize, max: usize },

    #[error("matrix entries are not square: {len} entries")]
    NotSquare { len: usize },

    #[error("matrix is not unitary: max |U U+ - I| entry is {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("non-finite amplitude (NaN or infinity)")]
    NonFinite,

    #[error("state vector norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("qubit {qubit} out of range for an {n}-qubit register")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("gate expects {expected} target(s), got {got}")]
    WrongTargetCount { expected: usize, got: usize },

    #[error("gate targets must be distinct")]
    DuplicateTargets,

    #[error("qubit subset is empty")]
    EmptySubset,

    #[error("operation requires a 2-qubit state, got {n} qubits")]
    NotTwoQubits { n: usize },

    #[error("gcd(0, 0) is undefined")]
    GcdZero,

    #[error("modulus {modulus} is too small")]
    ModulusTooSmall { modulus: u64 },

    #[error("{x} is not coprime to {modulus}")]
    NotCoprime { x: u64, modulus: u64 },

    #[error("second register of {m} qubits cannot hold residues mod {modulus}")]
    SecondRegisterTooSmall { m: usize, modulus: u64 },

    #[error("order finding gave no candidate after {trials} trials")]
    TrialsExhausted { trials: usize },

    #[error("no factor found after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },

    #[error("{n} is even; factor out 2 classically")]
    EvenModulus { n: u64 },

    #[error("{n} is prime")]
    PrimeModulus { n: u64 },

    #[error("{n} is a prime power ({p}^{k})")]
    PrimePowerModulus { n: u64, p: u64, k: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
