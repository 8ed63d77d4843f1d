//! Dense complex Hermitian linear algebra.
//!
//! Eigenvalues come from a cyclic Jacobi solver working directly on the
//! complex entries: each rotation first removes the phase of the pivot
//! `a[p][q]` and then applies an ordinary real plane rotation. Everything else
//! in the crate (Riesz bounds, Bessel estimates, D(mu) kernel inversion) is
//! built on [`eig_hermitian`] and [`eigh`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for the Hermitian symmetry check on input matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Off-diagonal Frobenius norm, relative to the input norm, at which the
/// Jacobi iteration stops.
pub const JACOBI_TOL: f64 = 1e-13;

/// Hard cap on the number of cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense `n x n` complex Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates a row-major buffer and symmetrizes it by averaging with its
    /// conjugate transpose.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(n, data, HERMITIAN_TOL)
    }

    /// Same as [`HermitianMatrix::new`] with a caller-chosen symmetry tolerance.
    pub fn with_tolerance(n: usize, mut data: Vec<Complex64>, tol: f64) -> Result<Self> {
        check_dim(n, data.len())?;
        if data.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite {
                what: "Hermitian matrix",
            });
        }
        for i in 0..n {
            let d = data[i * n + i].im.abs();
            if d > tol {
                return Err(Error::NotHermitian {
                    row: i,
                    col: i,
                    deviation: d,
                });
            }
            for j in (i + 1)..n {
                let d = (data[i * n + j] - data[j * n + i].conj()).norm();
                if d > tol {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation: d,
                    });
                }
            }
        }
        for i in 0..n {
            data[i * n + i].im = 0.0;
            for j in (i + 1)..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i].conj());
                data[i * n + j] = avg;
                data[j * n + i] = avg.conj();
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a full entry function; the result is validated
    /// like [`HermitianMatrix::new`].
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    /// Builds a matrix from its upper triangle (including the diagonal). The
    /// lower triangle is filled by conjugation and diagonal imaginary parts
    /// are dropped.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        check_dim(n, n * n)?;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let z = f(i, j);
                if !z.is_finite() {
                    return Err(Error::NonFinite {
                        what: "Hermitian matrix",
                    });
                }
                if i == j {
                    data[i * n + i] = Complex64::new(z.re, 0.0);
                } else {
                    data[i * n + j] = z;
                    data[j * n + i] = z.conj();
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_upper_fn(n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Real symmetric matrix from rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based entry access.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.n,
            });
        }
        Self::from_upper_fn(k, |i, j| self.get(i, j))
    }

    /// Principal submatrix on the given zero-based indices.
    pub fn principal(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.n,
            });
        }
        Self::from_upper_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    /// Entrywise modulus `(|a_ij|)`.
    pub fn entrywise_abs(&self) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|z| Complex64::new(z.norm(), 0.0))
                .collect(),
        }
    }

    /// Quadratic form `x^H M x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.n {
            let row: Complex64 = (0..self.n).map(|j| self.get(i, j) * x[j]).sum();
            acc += x[i].conj() * row;
        }
        Ok(acc.re)
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn check_dim(n: usize, len: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "dimension",
            value: 0.0,
            reason: "must be positive",
        });
    }
    if len != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: len,
        });
    }
    Ok(())
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(n, data.len())?;
        if data.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite { what: "matrix" });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect())
    }

    /// `A^H A`, Hermitian by construction.
    pub fn gram(&self) -> HermitianMatrix {
        let n = self.n;
        HermitianMatrix::from_upper_fn(n, |i, j| {
            (0..n).map(|k| self.get(k, i).conj() * self.get(k, j)).sum()
        })
        .expect("product of finite matrices is finite")
    }
}

/// Eigenvalues (ascending) and unitary eigenvectors stored column-wise.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[i * n + k]` is component `i` of eigenvector `k`.
    pub vectors: Vec<Complex64>,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let n = self.values.len();
        (0..n).map(|i| self.vectors[i * n + k]).collect()
    }
}

/// Extreme eigenvalues of a finite section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSummary {
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

/// Eigenvalues of `m` in ascending order, repeated values preserved.
pub fn eig_hermitian(m: &HermitianMatrix) -> Result<Vec<f64>> {
    jacobi(m, false).map(|(values, _)| values)
}

/// Full eigendecomposition `M = V diag(values) V^H`.
pub fn eigh(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let (values, vectors) = jacobi(m, true)?;
    Ok(EigenDecomposition { values, vectors })
}

pub fn spectral_summary(m: &HermitianMatrix) -> Result<SpectralSummary> {
    let values = eig_hermitian(m)?;
    Ok(SpectralSummary {
        n: m.dim(),
        lambda_min: values[0],
        lambda_max: values[values.len() - 1],
    })
}

/// Largest absolute row sum. An upper bound for the spectral radius.
pub fn schur_row_bound(m: &HermitianMatrix) -> f64 {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `(sigma_min, sigma_max)` of a square matrix, from the spectrum of `A^H A`.
pub fn singular_extremes(a: &ComplexMatrix) -> Result<(f64, f64)> {
    let values = eig_hermitian(&a.gram())?;
    let lo = values[0].max(0.0).sqrt();
    let hi = values[values.len() - 1].max(0.0).sqrt();
    Ok((lo, hi))
}

fn jacobi(m: &HermitianMatrix, want_vectors: bool) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let n = m.dim();
    let mut a = m.data.clone();
    let mut v = if want_vectors {
        let mut id = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            id[i * n + i] = Complex64::new(1.0, 0.0);
        }
        id
    } else {
        Vec::new()
    };
    let target = JACOBI_TOL * m.frobenius();

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Jacobi eigensolver",
            iterations: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = if want_vectors {
        let mut sorted = vec![Complex64::new(0.0, 0.0); n * n];
        for (k, &src) in order.iter().enumerate() {
            for i in 0..n {
                sorted[i * n + k] = v[i * n + src];
            }
        }
        sorted
    } else {
        v
    };
    Ok((values, vectors))
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j].norm_sqr();
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = g e^{i phi}` the similarity is `G = diag(1, e^{-i phi}) R`
/// where `R = [[c, s], [-s, c]]` is the real rotation for `[[a_pp, g], [g, a_qq]]`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let phase_conj = (apq / g).conj();
    let g_qp = -s * phase_conj;
    let g_qq = c * phase_conj;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c + akq * g_qp;
        let new_kq = akp * s + akq * g_qq;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = new_kp.conj();
        a[q * n + k] = new_kq.conj();
    }
    a[p * n + p] = Complex64::new(app - t * g, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * g, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);

    if !v.is_empty() {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * c + vkq * g_qp;
            v[k * n + q] = vkp * s + vkq * g_qq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
        let mut upper = vec![c(0.0, 0.0); n * n];
        for z in upper.iter_mut() {
            *z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        HermitianMatrix::from_upper_fn(n, |i, j| upper[i * n + j]).unwrap()
    }

    #[test]
    fn identity_eigenvalues() {
        let vals = eig_hermitian(&HermitianMatrix::identity(3).unwrap()).unwrap();
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_half() {
        let m = HermitianMatrix::from_real_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let vals = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(vals[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 1.5, epsilon = 1e-14);
    }

    #[test]
    fn tridiagonal_three() {
        // det(M - x) = (1-x)((1-x)^2 - 1/2), roots 1 and 1 +- sqrt(1/2)
        let m = HermitianMatrix::from_real_rows(&[
            vec![1.0, 0.5, 0.0],
            vec![0.5, 1.0, 0.5],
            vec![0.0, 0.5, 1.0],
        ])
        .unwrap();
        let vals = eig_hermitian(&m).unwrap();
        let h = 0.5f64.sqrt();
        assert_abs_diff_eq!(vals[0], 1.0 - h, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[2], 1.0 + h, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[0], 0.292893, epsilon = 1e-6);
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = HermitianMatrix::new(2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)])
            .unwrap();
        let vals = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(vals[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = HermitianMatrix::new(2, vec![c(1.0, 0.0), c(0.5, 0.0), c(0.4, 0.0), c(1.0, 0.0)])
            .unwrap_err();
        assert!(matches!(err, Error::NotHermitian { row: 0, col: 1, .. }));
        let err = HermitianMatrix::new(1, vec![c(1.0, 1e-6)]).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn rejects_non_finite() {
        let err = HermitianMatrix::new(1, vec![c(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
        let err = ComplexMatrix::new(1, vec![c(f64::INFINITY, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn symmetrizes_within_tolerance() {
        let m = HermitianMatrix::new(2, vec![c(1.0, 0.0), c(0.5, 0.0), c(0.5 + 4e-13, 0.0), c(1.0, 0.0)])
            .unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0).conj());
    }

    #[test]
    fn reconstruction_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 5, 17, 40] {
            let m = random_hermitian(&mut rng, n);
            let eig = eigh(&m).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let r: Complex64 = (0..n)
                        .map(|k| eig.vectors[i * n + k] * eig.values[k] * eig.vectors[j * n + k].conj())
                        .sum();
                    worst = worst.max((r - m.get(i, j)).norm());
                }
            }
            assert!(worst < 1e-12 * n as f64, "n={n} residual {worst}");
            for w in eig.values.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_row_bound(&HermitianMatrix::identity(4).unwrap()), 1.0);
        let two = HermitianMatrix::from_real_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        assert_eq!(schur_row_bound(&two), 1.5);
        let tri = HermitianMatrix::from_upper_fn(6, |i, j| match j - i {
            0 => c(1.0, 0.0),
            1 => c(0.5, 0.0),
            _ => c(0.0, 0.0),
        })
        .unwrap();
        assert_eq!(schur_row_bound(&tri), 2.0);
    }

    #[test]
    fn singular_value_examples() {
        let (lo, hi) = singular_extremes(&ComplexMatrix::identity(3).unwrap()).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-14);

        let d = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(0.5, 0.0)]).unwrap();
        let (lo, hi) = singular_extremes(&d).unwrap();
        assert_abs_diff_eq!(lo, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 2.0, epsilon = 1e-14);

        // A^H A = diag(1, 4) for the antidiagonal [[0, 2], [1, 0]]
        let anti = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let ata = anti.gram();
        assert_eq!(ata.get(0, 0).re, 1.0);
        assert_eq!(ata.get(1, 1).re, 4.0);
        assert_eq!(ata.get(0, 1).norm(), 0.0);
        let (lo, hi) = singular_extremes(&anti).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn handles_larger_sections() {
        let n = 200;
        let m = HermitianMatrix::from_upper_fn(n, |i, j| match j - i {
            0 => c(1.0, 0.0),
            1 => c(0.5, 0.0),
            _ => c(0.0, 0.0),
        })
        .unwrap();
        let vals = eig_hermitian(&m).unwrap();
        let theta = std::f64::consts::PI / (n as f64 + 1.0);
        assert_abs_diff_eq!(vals[0], 1.0 - theta.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(vals[n - 1], 1.0 + theta.cos(), epsilon = 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let z = HermitianMatrix::from_upper_fn(3, |_, _| c(0.0, 0.0)).unwrap();
        assert_eq!(eig_hermitian(&z).unwrap(), vec![0.0; 3]);
    }
}
