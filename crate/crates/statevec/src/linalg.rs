//! Complex vectors, unitary matrices and Kronecker products.
//!
//! Everything here is dense and unapologetically simple: a vector is a
//! `Vec<Complex64>`, a matrix is a row-major `Vec<Complex64>` with its
//! dimension. Dense matrices are only meant for small operators (single
//! gates, Fourier matrices up to [`MAX_DENSE_QUBITS`] qubits); full-register
//! work goes through the strided kernels in [`crate::gates`], which never
//! materialize a matrix.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A single complex amplitude.
pub type Amplitude = Complex64;

/// Largest register the crate will allocate: 2^26 amplitudes (1 GiB).
pub const MAX_QUBITS: usize = 26;

/// Largest operator built as an explicit matrix: 4096 x 4096.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Tolerance for the unitarity check on user-supplied matrices.
pub const UNITARY_TOL: f64 = 1e-10;

fn all_finite(entries: &[Amplitude]) -> bool {
    entries.iter().all(|a| a.re.is_finite() && a.im.is_finite())
}

/// A finite complex vector. Not necessarily normalized; see
/// [`crate::register::StateVector`] for unit-norm registers.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Amplitude>,
}

impl CVector {
    /// Builds a vector, rejecting NaN or infinite entries.
    pub fn new(entries: Vec<Amplitude>) -> Result<Self> {
        if !all_finite(&entries) {
            return Err(Error::NonFinite);
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Amplitude>) -> Self {
        debug_assert!(all_finite(&entries));
        Self { entries }
    }

    /// Convenience constructor from real entries.
    pub fn from_reals(reals: &[f64]) -> Result<Self> {
        Self::new(reals.iter().map(|&r| Amplitude::new(r, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[Amplitude] {
        &self.entries
    }

    /// Consumes the vector, handing back the raw entries.
    pub fn into_vec(self) -> Vec<Amplitude> {
        self.entries
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max entrywise absolute difference to another vector of the same length.
    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "length mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for CVector {
    type Output = Amplitude;
    fn index(&self, i: usize) -> &Amplitude {
        &self.entries[i]
    }
}

/// A square complex matrix validated (or constructed) to be unitary.
///
/// The unitarity check runs on every matrix supplied from outside the crate;
/// gates built internally satisfy it by construction, which keeps the
/// constructor cost out of hot paths like [`crate::fourier::qft_dense`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Amplitude>, // row-major, dim * dim
}

impl UnitaryMatrix {
    /// Builds a matrix from row-major entries, checking shape, finiteness and
    /// unitarity (to [`UNITARY_TOL`]).
    ///
    /// # Errors
    ///
    /// [`Error::NotSquare`] if `entries.len()` is not a perfect square,
    /// [`Error::NonFinite`] on NaN/infinite entries,
    /// [`Error::NotUnitary`] if `max |U U+ - I|` exceeds the tolerance.
    pub fn new(entries: Vec<Amplitude>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return Err(Error::NotSquare { len: entries.len() });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite);
        }
        let deviation = unitarity_deviation(dim, &entries);
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { dim, entries })
    }

    pub(crate) fn from_flat_unchecked(dim: usize, entries: Vec<Amplitude>) -> Self {
        debug_assert_eq!(dim * dim, entries.len());
        Self { dim, entries }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Amplitude::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Amplitude::new(1.0, 0.0);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[Amplitude] {
        &self.entries
    }

    /// Matrix product `self * rhs`. A product of unitaries is unitary, so no
    /// re-validation happens here.
    pub fn matmul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let d = self.dim;
        let mut out = vec![Amplitude::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        Ok(UnitaryMatrix::from_flat_unchecked(d, out))
    }

    /// Max entrywise absolute difference to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn unitarity_deviation(dim: usize, entries: &[Amplitude]) -> f64 {
    // max |U U+ - I| over all entries; O(dim^3), fine for gate-sized input
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Amplitude::new(0.0, 0.0);
            for k in 0..dim {
                acc += entries[i * dim + k] * entries[j * dim + k].conj();
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - expect).norm());
        }
    }
    worst
}

/// Checks `max |M M+ - I| <= tol` on a raw row-major square matrix.
///
/// Returns `false` for non-square input. This is the same predicate
/// [`UnitaryMatrix::new`] enforces, exposed for matrices that are allowed to
/// fail it.
pub fn is_unitary(entries: &[Amplitude], tol: f64) -> bool {
    let dim = (entries.len() as f64).sqrt().round() as usize;
    if dim * dim != entries.len() || dim == 0 {
        return false;
    }
    unitarity_deviation(dim, entries) <= tol
}

/// Kronecker product of two matrices.
///
/// Entry `(i*dB + k, j*dB + l)` of the result is `A[i,j] * B[k,l]`, so the
/// left factor owns the high-order index bits.
///
/// # Errors
///
/// [`Error::DenseCapExceeded`] if the product dimension would exceed
/// 2^[`MAX_DENSE_QUBITS`]; larger operators must be applied through the
/// strided kernels instead.
pub fn kron(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<UnitaryMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da.checked_mul(db).ok_or(Error::DenseCapExceeded {
        qubits: usize::MAX,
        max: MAX_DENSE_QUBITS,
    })?;
    if dim > (1 << MAX_DENSE_QUBITS) {
        return Err(Error::DenseCapExceeded {
            qubits: dim.ilog2() as usize,
            max: MAX_DENSE_QUBITS,
        });
    }
    let mut out = vec![Amplitude::new(0.0, 0.0); dim * dim];
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k) * dim + (j * db + l)] = aij * b.get(k, l);
                }
            }
        }
    }
    Ok(UnitaryMatrix::from_flat_unchecked(dim, out))
}

/// Kronecker product of two vectors: entry `i*dim(v) + k` is `u[i] * v[k]`.
///
/// # Errors
///
/// [`Error::RegisterTooLarge`] if the result would exceed 2^[`MAX_QUBITS`]
/// entries.
pub fn kron_vec(u: &CVector, v: &CVector) -> Result<CVector> {
    let dim = u
        .dim()
        .checked_mul(v.dim())
        .ok_or(Error::RegisterTooLarge {
            qubits: usize::MAX,
            max: MAX_QUBITS,
        })?;
    if dim > (1 << MAX_QUBITS) {
        return Err(Error::RegisterTooLarge {
            qubits: dim.ilog2() as usize,
            max: MAX_QUBITS,
        });
    }
    let mut out = Vec::with_capacity(dim);
    for ui in u.as_slice() {
        for vk in v.as_slice() {
            out.push(ui * vk);
        }
    }
    Ok(CVector::from_vec_unchecked(out))
}

/// Matrix-vector product.
///
/// # Errors
///
/// [`Error::DimensionMismatch`] if `v.dim() != m.dim()`.
pub fn matvec(m: &UnitaryMatrix, v: &CVector) -> Result<CVector> {
    let d = m.dim();
    if v.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: v.dim(),
        });
    }
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut acc = Amplitude::new(0.0, 0.0);
        for j in 0..d {
            acc += m.get(i, j) * v[j];
        }
        out.push(acc);
    }
    Ok(CVector::from_vec_unchecked(out))
}

/// Hermitian inner product, conjugate-linear in the first argument:
/// `<u, v> = sum conj(u_i) v_i`.
///
/// # Errors
///
/// [`Error::DimensionMismatch`] on unequal lengths.
pub fn inner(u: &CVector, v: &CVector) -> Result<Amplitude> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    Ok(u.as_slice()
        .iter()
        .zip(v.as_slice())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Conjugate transpose.
pub fn dagger(m: &UnitaryMatrix) -> UnitaryMatrix {
    let d = m.dim();
    let mut out = vec![Amplitude::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            out[j * d + i] = m.get(i, j).conj();
        }
    }
    UnitaryMatrix::from_flat_unchecked(d, out)
}
