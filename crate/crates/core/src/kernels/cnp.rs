use num_complex::Complex64;

use super::{KernelSpace, Point};
use crate::error::{Error, Result};
use crate::spectral::{eig_hermitian, HermitianMatrix};

/// A sampled matrix with `lambda_min >= -CNP_PSD_TOL` counts as positive semidefinite.
pub const CNP_PSD_TOL: f64 = 1e-9;

/// Asymmetry tolerated in the sampled matrix before it is rejected.
const CNP_SYMMETRY_TOL: f64 = 1e-10;

/// Kernel values below this modulus count as vanishing.
const VANISHING_TOL: f64 = 1e-300;

/// Sampled complete Nevanlinna-Pick positivity test.
#[derive(Debug, Clone)]
pub struct CnpDiagnostic {
    pub matrix: HermitianMatrix,
    pub lambda_min: f64,
    pub positive_semidefinite: bool,
    /// Largest `|F_ij - conj(F_ji)|` before symmetrization.
    pub max_asymmetry: f64,
}

/// `F_ij = 1 - k_w(z_j) k_{lambda_i}(w) / (k_w(w) k_{lambda_i}(z_j))` at
/// `lambda_i = z_i = points[i]`, `w = omega0`.
///
/// Fails with [`Error::KernelVanishes`] when a required kernel value is zero;
/// index `0` in that error refers to `omega0`.
pub fn cnp_matrix(space: &dyn KernelSpace, omega0: Point, points: &[Point]) -> Result<CnpDiagnostic> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "point count",
            value: 0.0,
            reason: "need at least one point",
        });
    }
    let vanishes = |z: Complex64| z.norm() <= VANISHING_TOL;

    let k_ww = space.kernel(omega0, omega0)?;
    if vanishes(k_ww) {
        return Err(Error::KernelVanishes { i: 0, j: 0 });
    }
    let mut at_omega = Vec::with_capacity(n);
    let mut from_omega = Vec::with_capacity(n);
    for (i, &p) in points.iter().enumerate() {
        let a = space.kernel(p, omega0)?;
        let b = space.kernel(omega0, p)?;
        if vanishes(a) {
            return Err(Error::KernelVanishes { i: i + 1, j: 0 });
        }
        if vanishes(b) {
            return Err(Error::KernelVanishes { i: 0, j: i + 1 });
        }
        at_omega.push(a);
        from_omega.push(b);
    }

    let mut data = Vec::with_capacity(n * n);
    for (i, &lambda) in points.iter().enumerate() {
        for (j, &z) in points.iter().enumerate() {
            let k = space.kernel(lambda, z)?;
            if vanishes(k) {
                return Err(Error::KernelVanishes { i: i + 1, j: j + 1 });
            }
            data.push(Complex64::new(1.0, 0.0) - (from_omega[j] * at_omega[i]) / (k_ww * k));
        }
    }
    let mut max_asymmetry: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            max_asymmetry = max_asymmetry.max((data[i * n + j] - data[j * n + i].conj()).norm());
        }
    }
    let matrix = HermitianMatrix::with_tolerance(n, data, CNP_SYMMETRY_TOL)?;
    let lambda_min = eig_hermitian(&matrix)?[0];
    Ok(CnpDiagnostic {
        matrix,
        lambda_min,
        positive_semidefinite: lambda_min >= -CNP_PSD_TOL,
        max_asymmetry,
    })
}
