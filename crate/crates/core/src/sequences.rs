//! Vector sequences and lazily evaluated Gramians.
//!
//! Indices in every public signature are 1-based. Inner products are linear
//! in the first argument and conjugate-linear in the second.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{singular_extremes, ComplexMatrix, HermitianMatrix};

/// Vectors with norm below this are treated as zero by [`ExplicitSequence::normalize`].
pub const ZERO_VECTOR_TOL: f64 = 1e-14;

/// Unit-norm tolerance for normalized sequences.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Smallest singular value accepted by [`ExplicitSequence::apply_invertible`].
pub const SINGULAR_TOL: f64 = 1e-12;

/// A (possibly infinite) Gramian `entry(n, m) = <x_n, x_m>`.
pub trait GramianProvider: Send + Sync {
    /// 1-based entry. Finite providers panic on indices past [`len`](Self::len).
    fn entry(&self, n: usize, m: usize) -> Complex64;

    /// Whether the underlying vectors have unit norm.
    fn is_normalized(&self) -> bool;

    /// Number of vectors, `None` for an infinite sequence.
    fn len(&self) -> Option<usize>;

    /// Leading `size x size` finite section.
    fn section(&self, size: usize) -> Result<HermitianMatrix> {
        if let Some(len) = self.len() {
            if size > len {
                return Err(Error::SectionTooLarge {
                    requested: size,
                    len,
                });
            }
        }
        HermitianMatrix::from_upper_fn(size, |i, j| self.entry(i + 1, j + 1))
    }
}

impl<P: GramianProvider + ?Sized> GramianProvider for &P {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        (**self).entry(n, m)
    }
    fn is_normalized(&self) -> bool {
        (**self).is_normalized()
    }
    fn len(&self) -> Option<usize> {
        (**self).len()
    }
    fn section(&self, size: usize) -> Result<HermitianMatrix> {
        (**self).section(size)
    }
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A finite list of vectors in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitSequence {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
    normalized: bool,
}

impl ExplicitSequence {
    pub fn new(dim: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter {
                name: "dimension",
                value: 0.0,
                reason: "must be positive",
            });
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|z| !z.is_finite()) {
                return Err(Error::NonFinite { what: "sequence vector" });
            }
        }
        let normalized = vectors
            .iter()
            .all(|v| (norm(v) - 1.0).abs() <= UNIT_NORM_TOL);
        Ok(Self {
            dim,
            vectors,
            normalized,
        })
    }

    /// Real vectors, mostly for tests and examples.
    pub fn from_real(dim: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        Self::new(
            dim,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, n: usize) -> Result<&[Complex64]> {
        self.check_index(n)?;
        Ok(&self.vectors[n - 1])
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.vectors.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.vectors.len(),
            });
        }
        Ok(())
    }

    /// `x_n / ||x_n||` for every vector.
    pub fn normalize(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.vectors.len());
        for (i, v) in self.vectors.iter().enumerate() {
            let r = norm(v);
            if r < ZERO_VECTOR_TOL {
                return Err(Error::ZeroVector {
                    index: i + 1,
                    norm: r,
                });
            }
            out.push(v.iter().map(|z| z / r).collect());
        }
        Ok(Self {
            dim: self.dim,
            vectors: out,
            normalized: true,
        })
    }

    /// `<x_n, x_m>`.
    pub fn gram_entry(&self, n: usize, m: usize) -> Result<Complex64> {
        self.check_index(n)?;
        self.check_index(m)?;
        Ok(inner(&self.vectors[n - 1], &self.vectors[m - 1]))
    }

    /// Synthesis map `J`: `sum_n a_n x_n` for a finite coefficient list.
    pub fn synthesis(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
        if coeffs.len() > self.vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vectors.len(),
                found: coeffs.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (a, v) in coeffs.iter().zip(&self.vectors) {
            for (o, z) in out.iter_mut().zip(v) {
                *o += a * z;
            }
        }
        Ok(out)
    }

    /// Analysis map `J*`: the list `(<x, x_n>)_n`.
    pub fn analysis_coeffs(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.vectors.iter().map(|v| inner(x, v)).collect())
    }

    /// The image sequence `(A x_n)_n`. Not re-normalized.
    pub fn apply_invertible(&self, a: &ComplexMatrix) -> Result<Self> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        let (sigma_min, _) = singular_extremes(a)?;
        if sigma_min <= SINGULAR_TOL {
            return Err(Error::Singular { sigma_min });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| a.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, vectors)
    }

    /// Pairs `(n, m)`, `n < m`, whose vectors coincide exactly. Repetitions
    /// are allowed but make the sequence non-separated.
    pub fn repeated_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.vectors.len() {
            for j in (i + 1)..self.vectors.len() {
                if self.vectors[i] == self.vectors[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

impl GramianProvider for ExplicitSequence {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        inner(&self.vectors[n - 1], &self.vectors[m - 1])
    }

    fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn len(&self) -> Option<usize> {
        Some(self.vectors.len())
    }
}

/// The canonical orthonormal basis of `l^2`: `entry(n, m) = delta_nm`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityProvider;

impl GramianProvider for IdentityProvider {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        Complex64::new(if n == m { 1.0 } else { 0.0 }, 0.0)
    }

    fn is_normalized(&self) -> bool {
        true
    }

    fn len(&self) -> Option<usize> {
        None
    }
}

/// A finite Gramian given directly as a matrix.
#[derive(Debug, Clone)]
pub struct MatrixProvider {
    matrix: HermitianMatrix,
    normalized: bool,
}

impl MatrixProvider {
    pub fn new(matrix: HermitianMatrix) -> Self {
        let normalized =
            (0..matrix.dim()).all(|i| (matrix.get(i, i).re - 1.0).abs() <= UNIT_NORM_TOL);
        Self { matrix, normalized }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

impl GramianProvider for MatrixProvider {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        self.matrix.get(n - 1, m - 1)
    }

    fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn len(&self) -> Option<usize> {
        Some(self.matrix.dim())
    }
}

/// The subsequence of a provider on the given 1-based indices, in order.
pub struct Subsequence<'a, P: GramianProvider + ?Sized> {
    parent: &'a P,
    indices: Vec<usize>,
}

impl<'a, P: GramianProvider + ?Sized> Subsequence<'a, P> {
    pub fn new(parent: &'a P, indices: Vec<usize>) -> Result<Self> {
        let len = parent.len().unwrap_or(usize::MAX);
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > len) {
            return Err(Error::IndexOutOfRange { index: bad, len });
        }
        Ok(Self { parent, indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

impl<P: GramianProvider + ?Sized> GramianProvider for Subsequence<'_, P> {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        self.parent.entry(self.indices[n - 1], self.indices[m - 1])
    }

    fn is_normalized(&self) -> bool {
        self.parent.is_normalized()
    }

    fn len(&self) -> Option<usize> {
        Some(self.indices.len())
    }
}

/// The bijection `1, 2, 3, 4, 5, ... -> 0, 1, -1, 2, -2, ...` from the
/// natural numbers onto the integers.
pub fn interleave(n: usize) -> i64 {
    assert!(n >= 1, "indices are 1-based");
    let n = n as i64;
    if n % 2 == 0 {
        n / 2
    } else {
        -(n - 1) / 2
    }
}

/// Matrix of multiplication by `1 + cos t` in the Fourier basis of `L^2(T)`,
/// evaluated on integer indices: `1` on the diagonal, `1/2` next to it.
pub fn tridiag_value(a: i64, b: i64) -> f64 {
    match (a - b).abs() {
        0 => 1.0,
        1 => 0.5,
        _ => 0.0,
    }
}

/// `tridiag_value` on the interleaved images of two 1-based indices.
pub fn tridiag_entry(n: usize, m: usize) -> Complex64 {
    Complex64::new(tridiag_value(interleave(n), interleave(m)), 0.0)
}

/// Fourier coefficient `(1/2pi) int (1 + cos t) e^{ikt} dt`, by the
/// trapezoidal rule on 512 nodes.
pub fn phi_fourier_oracle(k: i64) -> f64 {
    const NODES: usize = 512;
    assert!(k.abs() <= 64, "oracle supports |k| <= 64");
    let acc: Complex64 = (0..NODES)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / NODES as f64;
            (1.0 + t.cos()) * Complex64::from_polar(1.0, k as f64 * t)
        })
        .sum();
    acc.re / NODES as f64
}

/// How the `Z`-indexed example is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMap {
    /// `1, 2, 3, ... -> 0, 1, -1, 2, -2, ...`
    Interleaved,
    /// `1, 2, 3, ... -> start, start + 1, ...`; leading sections are contiguous blocks.
    Contiguous { start: i64 },
}

/// Gramian of `f_n = phi^{1/2} z^n` with `phi = 1 + cos t`: bounded, separated,
/// not bounded below.
#[derive(Debug, Clone, Copy)]
pub struct TridiagExampleProvider {
    map: IndexMap,
}

impl TridiagExampleProvider {
    pub fn interleaved() -> Self {
        Self {
            map: IndexMap::Interleaved,
        }
    }

    /// Block mode whose leading `2K + 1` section is the index range `-K..=K`.
    pub fn centered(half_width: usize) -> Self {
        Self {
            map: IndexMap::Contiguous {
                start: -(half_width as i64),
            },
        }
    }

    pub fn index_map(&self) -> IndexMap {
        self.map
    }

    /// Integer index of the `n`-th element.
    pub fn image(&self, n: usize) -> i64 {
        match self.map {
            IndexMap::Interleaved => interleave(n),
            IndexMap::Contiguous { start } => start + n as i64 - 1,
        }
    }
}

impl GramianProvider for TridiagExampleProvider {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        Complex64::new(tridiag_value(self.image(n), self.image(m)), 0.0)
    }

    fn is_normalized(&self) -> bool {
        true
    }

    fn len(&self) -> Option<usize> {
        None
    }
}
