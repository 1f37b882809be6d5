//! Quantum registers, measurement and separability.
//!
//! An `n`-qubit register holds `2^n` amplitudes indexed so that qubit 0 is
//! the leftmost tensor factor: basis index `i` carries the bit of qubit `k`
//! at position `n - 1 - k`, i.e. `i = sum_k bit_k * 2^(n-1-k)`. Bitstrings
//! printed anywhere in the crate follow the same order, qubit 0 first.
//!
//! Measurement never mutates a register. Full measurement samples a basis
//! index; partial measurement returns the observed outcome together with a
//! fresh, renormalized register. All sampling goes through [`RandomSource`],
//! a seeded generator, so identical seeds replay identical runs.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{Amplitude, CVector, MAX_QUBITS};

/// Tolerance for the unit-norm check on user-supplied registers.
pub const NORM_TOL: f64 = 1e-10;

/// Default tolerance for the two-qubit separability determinant.
pub const SEPARABILITY_TOL: f64 = 1e-9;

/// Outcomes below this probability are excluded from sampling entirely, so a
/// collapse never divides by a vanishing norm.
pub const SAMPLING_FLOOR: f64 = 1e-15;

/// Bit of `qubit` inside basis index `index` of an `n`-qubit register.
pub fn qubit_bit(index: usize, n: usize, qubit: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Deterministic random source for every sampling operation in the crate.
///
/// Backed by ChaCha8, which has a stable, portable output stream; two sources
/// built from the same seed produce the same draws on any platform.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: rand_chacha::ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `0..bound` without modulo bias.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// A probability distribution over basis outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    pub(crate) fn from_vec(probs: Vec<f64>) -> Self {
        Self { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    /// Inverse-CDF sample. Outcomes below [`SAMPLING_FLOOR`] are skipped.
    pub fn sample(&self, rng: &mut RandomSource) -> usize {
        let total: f64 = self.probs.iter().filter(|&&p| p >= SAMPLING_FLOOR).sum();
        let u = rng.next_f64() * total;
        let mut acc = 0.0;
        let mut last = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p < SAMPLING_FLOOR {
                continue;
            }
            acc += p;
            last = i;
            if u < acc {
                return i;
            }
        }
        // rounding pushed u past the last cumulative step
        last
    }

    /// Draws `shots` samples and tallies them per outcome.
    pub fn sample_counts(&self, shots: u64, rng: &mut RandomSource) -> Vec<u64> {
        // cumulative array once, binary search per draw
        let mut cdf = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0;
        for &p in &self.probs {
            if p >= SAMPLING_FLOOR {
                acc += p;
            }
            cdf.push(acc);
        }
        let total = acc;
        let mut counts = vec![0u64; self.probs.len()];
        for _ in 0..shots {
            let u = rng.next_f64() * total;
            let mut idx = cdf.partition_point(|&c| c <= u);
            if idx >= self.probs.len() {
                idx = self.probs.len() - 1;
            }
            // never land on an excluded outcome
            while self.probs[idx] < SAMPLING_FLOOR && idx > 0 {
                idx -= 1;
            }
            counts[idx] += 1;
        }
        counts
    }
}

/// A unit-norm complex register on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: CVector,
}

impl StateVector {
    /// Builds a register from raw amplitudes.
    ///
    /// # Errors
    ///
    /// Rejects registers over [`MAX_QUBITS`], amplitude counts that are not
    /// `2^n_qubits`, non-finite entries, and vectors whose norm strays from 1
    /// by more than [`NORM_TOL`].
    pub fn new(n_qubits: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                qubits: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let amplitudes = CVector::new(amplitudes)?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub(crate) fn from_parts_unchecked(n_qubits: usize, amplitudes: Vec<Amplitude>) -> Self {
        Self {
            n_qubits,
            amplitudes: CVector::from_vec_unchecked(amplitudes),
        }
    }

    /// The register `|index>` with a single unit amplitude.
    ///
    /// # Errors
    ///
    /// [`Error::RegisterTooLarge`] for `n_qubits` outside `1..=MAX_QUBITS`,
    /// [`Error::IndexOutOfRange`] if `index >= 2^n_qubits`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                qubits: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self::from_parts_unchecked(n_qubits, amps))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.dim()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn as_slice(&self) -> &[Amplitude] {
        self.amplitudes.as_slice()
    }

    /// Squared magnitudes of all amplitudes, in basis order.
    pub fn probabilities(&self) -> ProbDist {
        ProbDist::from_vec(self.as_slice().iter().map(|a| a.norm_sqr()).collect())
    }

    /// Samples one full-register measurement outcome. The register itself is
    /// untouched; repeat draws simulate repeated preparations.
    pub fn measure_all(&self, rng: &mut RandomSource) -> usize {
        self.probabilities().sample(rng)
    }

    /// Marginal distribution over an ordered, non-empty set of distinct
    /// qubits. The outcome index packs the listed qubits with the first one
    /// most significant, so the marginal over `[0, 1, .., n-1]` reproduces
    /// [`Self::probabilities`].
    pub fn marginal(&self, qubits: &[usize]) -> Result<ProbDist> {
        self.check_subset(qubits)?;
        let k = qubits.len();
        let mut probs = vec![0.0f64; 1 << k];
        for (i, a) in self.as_slice().iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            probs[self.pack_outcome(i, qubits)] += p;
        }
        Ok(ProbDist::from_vec(probs))
    }

    /// Measures the listed qubits, returning the packed outcome and the
    /// collapsed, renormalized register.
    pub fn measure_subset(
        &self,
        qubits: &[usize],
        rng: &mut RandomSource,
    ) -> Result<(usize, StateVector)> {
        let dist = self.marginal(qubits)?;
        let outcome = dist.sample(rng);
        let weight = dist.as_slice()[outcome];
        let scale = 1.0 / weight.sqrt();
        let amps = self
            .as_slice()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if self.pack_outcome(i, qubits) == outcome {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((
            outcome,
            StateVector::from_parts_unchecked(self.n_qubits, amps),
        ))
    }

    fn check_subset(&self, qubits: &[usize]) -> Result<()> {
        if qubits.is_empty() {
            return Err(Error::EmptySubset);
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.n_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    n: self.n_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateTargets);
            }
        }
        Ok(())
    }

    fn pack_outcome(&self, index: usize, qubits: &[usize]) -> usize {
        let k = qubits.len();
        qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
            acc | (qubit_bit(index, self.n_qubits, q) << (k - 1 - pos))
        })
    }

    /// Whether a two-qubit register is a tensor product of one-qubit states,
    /// decided by the determinant test `|c0*c3 - c1*c2| <= tol`.
    ///
    /// # Errors
    ///
    /// [`Error::NotTwoQubits`] unless the register has exactly two qubits.
    pub fn is_separable(&self, tol: f64) -> Result<bool> {
        Ok(self.pair_determinant()?.norm() <= tol)
    }

    /// The determinant `c0*c3 - c1*c2` of a two-qubit register, zero exactly
    /// for product states.
    pub fn pair_determinant(&self) -> Result<Amplitude> {
        if self.n_qubits != 2 {
            return Err(Error::NotTwoQubits { n: self.n_qubits });
        }
        let c = self.as_slice();
        Ok(c[0] * c[3] - c[1] * c[2])
    }

    /// Factors a separable two-qubit register into its one-qubit parts, or
    /// returns `None` when the determinant test fails. On success,
    /// `kron_vec(u, v)` reproduces the register up to global phase.
    pub fn separable_factors(&self, tol: f64) -> Result<Option<(StateVector, StateVector)>> {
        if !self.is_separable(tol)? {
            return Ok(None);
        }
        let c = self.as_slice();
        // view the amplitudes as the 2x2 matrix M[a][b] = c[2a+b]; a product
        // state makes it rank one, so any non-null column is a multiple of u
        let col_norm = |b: usize| c[b].norm_sqr() + c[2 + b].norm_sqr();
        let b_star = if col_norm(0) >= col_norm(1) { 0 } else { 1 };
        let scale = 1.0 / col_norm(b_star).sqrt();
        let u = [c[b_star] * scale, c[2 + b_star] * scale];
        let mut v = [
            u[0].conj() * c[0] + u[1].conj() * c[2],
            u[0].conj() * c[1] + u[1].conj() * c[3],
        ];
        let v_norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        v[0] /= v_norm;
        v[1] /= v_norm;
        Ok(Some((
            StateVector::from_parts_unchecked(1, u.to_vec()),
            StateVector::from_parts_unchecked(1, v.to_vec()),
        )))
    }

    /// Compares two registers modulo an overall unit phase: the phases are
    /// aligned at this register's largest-magnitude amplitude, then compared
    /// entrywise against `tol`.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        let a = self.as_slice();
        let b = other.as_slice();
        let k = a
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.norm_sqr().total_cmp(&y.norm_sqr()))
            .map(|(i, _)| i)
            .unwrap();
        let ratio = b[k] / a[k];
        if ratio.norm() == 0.0 || !ratio.re.is_finite() || !ratio.im.is_finite() {
            return false;
        }
        let phase = ratio / ratio.norm();
        a.iter().zip(b).all(|(x, y)| (x * phase - y).norm() <= tol)
    }
}
