//! Deutsch's problem, order finding and factoring.
//!
//! The factoring pipeline follows the usual shape: pick a random base `x`,
//! find its multiplicative order `r` mod `N` with the quantum order-finding
//! register, and read factors off `gcd(x^(r/2) +- 1, N)`. Order finding
//! simulates the two-register state exactly: the first register's
//! post-Fourier distribution is computed once per base and sampled per
//! trial, rather than re-running the full state evolution shot by shot.
//!
//! Classical number theory lives here too (gcd, modular exponentiation,
//! continued fractions, brute-force order), both because the pipeline needs
//! it and because it provides the independent answers the quantum route is
//! tested against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{qft_apply_range, zeta};
use crate::gates::{run_circuit, Circuit, Gate, UxOracle};
use crate::linalg::MAX_QUBITS;
use crate::register::{ProbDist, RandomSource, StateVector};

/// Trials the order finder spends per base before giving up on it.
pub const ORDER_FIND_TRIALS: usize = 16;

/// Default number of bases [`shor_factor`] tries before reporting failure.
pub const DEFAULT_MAX_ATTEMPTS: usize = 32;

/// Greatest common divisor by Euclid's algorithm.
///
/// # Errors
///
/// [`Error::GcdZero`] if both arguments are zero.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdZero);
    }
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Ok(a)
}

/// `base^exp mod modulus` by square and multiply. 128-bit intermediates keep
/// any `u64` modulus safe from overflow.
pub fn modpow(base: u64, exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result = 1u128;
    let mut base = base as u128 % m;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result as u64
}

/// Multiplicative order of `x` mod `modulus` by direct iteration.
///
/// # Errors
///
/// [`Error::ModulusTooSmall`] for `modulus < 2`,
/// [`Error::NotCoprime`] when no order exists.
pub fn order_bruteforce(x: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::ModulusTooSmall { modulus });
    }
    if gcd(x, modulus)? != 1 {
        return Err(Error::NotCoprime { x, modulus });
    }
    let x = x % modulus;
    let mut acc = x;
    let mut r = 1u64;
    while acc != 1 {
        acc = acc * x % modulus;
        r += 1;
    }
    Ok(r)
}

/// Continued-fraction convergents `p/q` of `num/den`, in order, stopping
/// once a denominator would exceed `max_den`. Each convergent is already in
/// lowest terms.
pub fn continued_fraction_convergents(num: u64, den: u64, max_den: u64) -> Vec<(u64, u64)> {
    assert!(den > 0, "denominator must be positive");
    let mut out = Vec::new();
    let (mut a, mut b) = (num, den);
    // standard recurrence: p_i = digit * p_{i-1} + p_{i-2}, same for q
    let (mut p_prev, mut p) = (0u64, 1u64);
    let (mut q_prev, mut q) = (1u64, 0u64);
    while b != 0 {
        let digit = a / b;
        (a, b) = (b, a % b);
        let p_next = digit * p + p_prev;
        let q_next = digit * q + q_prev;
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
        if q > max_den {
            break;
        }
        out.push((p, q));
    }
    out
}

/// Verdict of Deutsch's algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeutschVerdict {
    Constant,
    Balanced,
}

/// Outcome of a Deutsch run: the verdict plus the exact final register it
/// was read from.
#[derive(Debug, Clone)]
pub struct DeutschResult {
    pub verdict: DeutschVerdict,
    pub final_state: StateVector,
    /// Distribution of the first qubit; a point mass on 0 for constant `f`,
    /// on 1 for balanced `f`.
    pub first_qubit: ProbDist,
}

/// The two-qubit Deutsch circuit for `f` given by its value table. It
/// queries the function oracle exactly once.
pub fn deutsch_circuit(f0: bool, f1: bool) -> Circuit {
    let mut c = Circuit::new(2);
    c.x(1).unwrap();
    c.h(0).unwrap();
    c.h(1).unwrap();
    c.push(Gate::Uf { f0, f1 }, &[0, 1]).unwrap();
    c.h(0).unwrap();
    c
}

/// Decides whether `f: {0,1} -> {0,1}` is constant with a single oracle
/// query. The first qubit of the final state carries the answer with
/// certainty.
pub fn deutsch(f0: bool, f1: bool) -> DeutschResult {
    let circuit = deutsch_circuit(f0, f1);
    let input = StateVector::basis_state(2, 0).unwrap();
    let final_state = run_circuit(&input, &circuit).unwrap();
    let first_qubit = final_state.marginal(&[0]).unwrap();
    let verdict = if first_qubit.as_slice()[0] >= 0.5 {
        DeutschVerdict::Constant
    } else {
        DeutschVerdict::Balanced
    };
    DeutschResult {
        verdict,
        final_state,
        first_qubit,
    }
}

/// Register sizing for factoring `modulus`: the unique `n` with
/// `modulus^2 <= 2^n < 2 modulus^2`, and `m = ceil(log2 modulus)`.
pub fn shor_sizing(modulus: u64) -> (usize, usize) {
    let square = modulus as u128 * modulus as u128;
    let mut n = 0usize;
    while (1u128 << n) < square {
        n += 1;
    }
    let mut m = 0usize;
    while (1u128 << m) < modulus as u128 {
        m += 1;
    }
    (n, m)
}

/// Frozen inputs of one order-finding run: the modulus `N`, the base `x`,
/// and the derived register split (`n` work qubits, `m` residue qubits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorParams {
    pub modulus: u64,
    pub x: u64,
    pub n: usize,
    pub m: usize,
}

impl ShorParams {
    /// # Errors
    ///
    /// [`Error::ModulusTooSmall`] for `modulus < 3`,
    /// [`Error::EvenModulus`] for even moduli,
    /// [`Error::NotCoprime`] unless `gcd(x, modulus) = 1`,
    /// [`Error::RegisterTooLarge`] when `n + m` would exceed
    /// [`MAX_QUBITS`].
    pub fn new(modulus: u64, x: u64) -> Result<Self> {
        if modulus < 3 {
            return Err(Error::ModulusTooSmall { modulus });
        }
        if modulus.is_multiple_of(2) {
            return Err(Error::EvenModulus { n: modulus });
        }
        if gcd(x, modulus)? != 1 {
            return Err(Error::NotCoprime { x, modulus });
        }
        let (n, m) = shor_sizing(modulus);
        if n + m > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                qubits: n + m,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            modulus,
            x: x % modulus,
            n,
            m,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n + self.m
    }
}

/// The pre-measurement register `2^(-n/2) sum_j |j> |x^j mod N>`, i.e. the
/// uniform superposition with the modular-power oracle already applied.
pub fn shor_state_prepare(params: &ShorParams) -> StateVector {
    let dim = 1usize << params.n_qubits();
    let block = 1usize << params.m;
    let amp = Complex64::new(1.0 / ((1u64 << params.n) as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut power = 1u64;
    for j in 0..(1usize << params.n) {
        amps[j * block + power as usize] = amp;
        power = power * params.x % params.modulus;
    }
    StateVector::from_parts_unchecked(params.n_qubits(), amps)
}

/// Exact measurement distribution of the first register after the Fourier
/// transform. Computed once per base; order-finding trials sample from it.
pub fn first_register_distribution(params: &ShorParams) -> ProbDist {
    let prepared = shor_state_prepare(params);
    let transformed = qft_apply_range(&prepared, 0, params.n - 1).unwrap();
    let qubits: Vec<usize> = (0..params.n).collect();
    transformed.marginal(&qubits).unwrap()
}

/// Analytic probability of measuring `c` in the first register jointly with
/// the residue branch `x^j0 mod N`, for a base of order `r`:
/// `(1/2^2n) |sum_k e^{2 pi i r k c / 2^n}|^2` where `k` counts the
/// exponents `j < 2^n` congruent to `j0` mod `r` (one extra term exactly
/// when `j0 < 2^n mod r`).
pub fn shor_peak_probability(params: &ShorParams, r: u64, c: u64, j0: u64) -> f64 {
    let two_n = 1u64 << params.n;
    let terms = two_n / r + u64::from(j0 < two_n % r);
    let step = (r as u128 * c as u128 % two_n as u128) as u64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = 0u64;
    for _ in 0..terms {
        sum += zeta(two_n, power as i64);
        power = (power + step) % two_n;
    }
    // unimodular prefactor from the offset j0; kept for fidelity to the
    // closed form even though it cannot change the magnitude
    let prefactor = zeta(two_n, (j0 as u128 * c as u128 % two_n as u128) as i64);
    (prefactor * sum).norm_sqr() / (two_n as f64 * two_n as f64)
}

/// Recovers a candidate order from a first-register sample `c` drawn on an
/// `n_bits`-qubit register: walks the continued-fraction convergents of
/// `c / 2^n_bits` with denominators below `modulus`, extends each
/// denominator by small multiples, and keeps the smallest candidate `r`
/// with `x^r = 1 mod modulus`. Returns `None` when no candidate passes
/// (always the case for `c = 0`).
pub fn recover_order_from_sample(c: u64, n_bits: u32, x: u64, modulus: u64) -> Option<u64> {
    if c == 0 {
        return None;
    }
    let den = 1u64 << n_bits;
    let mut candidates = Vec::new();
    for (p, q) in continued_fraction_convergents(c, den, modulus) {
        if p == 0 {
            // the zero convergent says nothing about the period
            continue;
        }
        let mut mult = q;
        while mult < modulus {
            candidates.push(mult);
            mult += q;
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    for cand in candidates {
        if modpow(x, cand, modulus) == 1 {
            // the true order divides any exponent that maps to 1
            return Some(smallest_order_dividing(x, cand, modulus));
        }
    }
    None
}

fn smallest_order_dividing(x: u64, exponent: u64, modulus: u64) -> u64 {
    for d in 1..=exponent {
        if exponent.is_multiple_of(d) && modpow(x, d, modulus) == 1 {
            return d;
        }
    }
    exponent
}

/// A successful order-finding run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderResult {
    /// The multiplicative order of `x` mod `N`.
    pub order: u64,
    /// The first-register sample the order was recovered from.
    pub measured_c: u64,
    /// Measurement trials consumed, starting at 1.
    pub trials: usize,
}

/// Finds the order of `params.x` by repeated simulated measurement: sample
/// `c` from the exact first-register distribution, try to recover the order
/// through continued fractions, and repeat up to `max_trials` times.
///
/// # Errors
///
/// [`Error::TrialsExhausted`] if no sample yields a verified order.
pub fn order_find_quantum(
    params: &ShorParams,
    rng: &mut RandomSource,
    max_trials: usize,
) -> Result<OrderResult> {
    let dist = first_register_distribution(params);
    for trial in 1..=max_trials {
        let c = dist.sample(rng) as u64;
        if params.x == 1 {
            // order 1; the measured register is always 0 here and carries
            // no period information
            return Ok(OrderResult {
                order: 1,
                measured_c: c,
                trials: trial,
            });
        }
        if let Some(order) = recover_order_from_sample(c, params.n as u32, params.x, params.modulus)
        {
            return Ok(OrderResult {
                order,
                measured_c: c,
                trials: trial,
            });
        }
    }
    Err(Error::TrialsExhausted { trials: max_trials })
}

/// What happened with one random base inside [`shor_factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttemptOutcome {
    /// `gcd(x, N) > 1`: a factor fell out classically.
    SharedFactor { divisor: u64 },
    /// Order finding ran out of trials for this base.
    OrderNotFound,
    /// The recovered order is odd, so `x^(r/2)` does not exist.
    OddOrder { order: u64, measured_c: u64 },
    /// `x^(r/2) = -1 mod N`, which only yields trivial divisors.
    TrivialRoot { order: u64, measured_c: u64 },
    /// The gcd pair produced the factors.
    Factored { order: u64, measured_c: u64 },
}

/// One base attempt: the base and how it went.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorAttempt {
    pub x: u64,
    pub outcome: AttemptOutcome,
}

/// A successful factoring run: the factor pair and the full attempt log.
#[derive(Debug, Clone)]
pub struct ShorResult {
    pub factors: (u64, u64),
    pub attempts: Vec<ShorAttempt>,
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// `Some((p, k))` with `k >= 1` when `n = p^k` for a prime `p`.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = smallest_prime_factor(n);
    let mut rest = n;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Checks that `modulus` is in [`shor_factor`]'s domain without running
/// anything: an odd composite with at least two distinct prime factors,
/// whose registers fit the simulator.
///
/// # Errors
///
/// [`Error::ModulusTooSmall`], [`Error::EvenModulus`],
/// [`Error::PrimeModulus`] and [`Error::PrimePowerModulus`] reject inputs
/// the pipeline is not meant for (detected by trial division, which is all
/// the moduli in reach require); [`Error::RegisterTooLarge`] rejects moduli
/// whose `shor_sizing` exceeds the register cap.
pub fn shor_preconditions(modulus: u64) -> Result<()> {
    if modulus < 4 {
        return Err(Error::ModulusTooSmall { modulus });
    }
    if modulus.is_multiple_of(2) {
        return Err(Error::EvenModulus { n: modulus });
    }
    if smallest_prime_factor(modulus) == modulus {
        return Err(Error::PrimeModulus { n: modulus });
    }
    if let Some((p, k)) = prime_power(modulus) {
        return Err(Error::PrimePowerModulus { n: modulus, p, k });
    }
    let (n, m) = shor_sizing(modulus);
    if n + m > MAX_QUBITS {
        return Err(Error::RegisterTooLarge {
            qubits: n + m,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Factors an odd composite `modulus` with the full pipeline: random base,
/// classical gcd shortcut, quantum order finding, then
/// `gcd(x^(r/2) - 1, N)` and `gcd(x^(r/2) + 1, N)`. Bases whose order is
/// odd or whose half-power is `-1 mod N` are retried, up to `max_attempts`
/// bases in total.
///
/// # Errors
///
/// Everything [`shor_preconditions`] rejects, checked before any attempt;
/// [`Error::AttemptsExhausted`] reports a run where no base worked.
pub fn shor_factor(
    modulus: u64,
    rng: &mut RandomSource,
    max_attempts: usize,
) -> Result<ShorResult> {
    shor_preconditions(modulus)?;

    let mut attempts = Vec::new();
    for _ in 0..max_attempts {
        let x = 2 + rng.next_below(modulus - 2);
        let shared = gcd(x, modulus)?;
        if shared > 1 {
            attempts.push(ShorAttempt {
                x,
                outcome: AttemptOutcome::SharedFactor { divisor: shared },
            });
            return Ok(ShorResult {
                factors: (shared, modulus / shared),
                attempts,
            });
        }
        let params = ShorParams::new(modulus, x)?;
        let found = match order_find_quantum(&params, rng, ORDER_FIND_TRIALS) {
            Ok(found) => found,
            Err(Error::TrialsExhausted { .. }) => {
                attempts.push(ShorAttempt {
                    x,
                    outcome: AttemptOutcome::OrderNotFound,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let (order, measured_c) = (found.order, found.measured_c);
        if order % 2 == 1 {
            attempts.push(ShorAttempt {
                x,
                outcome: AttemptOutcome::OddOrder { order, measured_c },
            });
            continue;
        }
        let half_power = modpow(x, order / 2, modulus);
        if half_power == modulus - 1 {
            attempts.push(ShorAttempt {
                x,
                outcome: AttemptOutcome::TrivialRoot { order, measured_c },
            });
            continue;
        }
        let p = gcd(half_power - 1, modulus)?;
        let q = gcd(half_power + 1, modulus)?;
        attempts.push(ShorAttempt {
            x,
            outcome: AttemptOutcome::Factored { order, measured_c },
        });
        return Ok(ShorResult {
            factors: (p, q),
            attempts,
        });
    }
    Err(Error::AttemptsExhausted {
        attempts: max_attempts,
    })
}

/// Runs the prepare-oracle stage as explicit gates (Hadamards then
/// [`UxOracle`]) instead of writing amplitudes directly. Exists to
/// cross-check [`shor_state_prepare`]; the pipeline itself uses the direct
/// construction.
pub fn shor_state_prepare_via_gates(params: &ShorParams) -> Result<StateVector> {
    let total = params.n_qubits();
    let mut circuit = Circuit::new(total);
    for q in 0..params.n {
        circuit.h(q)?;
    }
    let uniform = run_circuit(&StateVector::basis_state(total, 0)?, &circuit)?;
    let oracle = UxOracle::new(params.x, params.modulus, params.n, params.m)?;
    oracle.apply(&uniform)
}
