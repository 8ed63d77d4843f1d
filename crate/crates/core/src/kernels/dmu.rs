//! Harmonically weighted Dirichlet spaces `D(mu)` for finite sums of point
//! masses on the circle.
//!
//! Monomials are not orthogonal here. Their Gram matrix has the closed form
//! `<z^n, z^m> = [n = m = 0] + min(n, m) sum_j c_j zeta_j^{n - m}`, and the
//! kernel is realized on polynomials of degree at most `N` by inverting that
//! matrix.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use super::{KernelSpace, Point};
use crate::error::{Error, Result};
use crate::spectral::{eigh, HermitianMatrix};

pub const DEFAULT_TRUNCATION: usize = 40;

/// Condition-number guard for the truncated Gram matrix.
pub const MAX_CONDITION: f64 = 1e12;

const UNIMODULAR_TOL: f64 = 1e-12;

/// `mu = sum_j c_j delta_{zeta_j}` with `|zeta_j| = 1`, `c_j > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMassMeasure {
    masses: Vec<(Complex64, f64)>,
}

impl PointMassMeasure {
    pub fn new(masses: Vec<(Complex64, f64)>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidParameter {
                name: "point mass count",
                value: 0.0,
                reason: "measure needs at least one point mass",
            });
        }
        for &(zeta, c) in &masses {
            if !zeta.is_finite() || !c.is_finite() {
                return Err(Error::NonFinite {
                    what: "point mass",
                });
            }
            if (zeta.norm() - 1.0).abs() > UNIMODULAR_TOL {
                return Err(Error::InvalidParameter {
                    name: "|zeta|",
                    value: zeta.norm(),
                    reason: "point masses must sit on the unit circle",
                });
            }
            if c <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "mass",
                    value: c,
                    reason: "must be positive",
                });
            }
        }
        Ok(Self { masses })
    }

    /// Unit mass at `zeta`.
    pub fn dirac(zeta: Complex64) -> Result<Self> {
        Self::new(vec![(zeta, 1.0)])
    }

    pub fn masses(&self) -> &[(Complex64, f64)] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().map(|&(_, c)| c).sum()
    }

    /// `sum_j c_j zeta_j^k` for any integer `k`.
    fn moment(&self, k: i64) -> Complex64 {
        self.masses
            .iter()
            .map(|&(zeta, c)| c * zeta.powi(k as i32))
            .sum()
    }
}

/// Poisson integral `P_mu(z) = sum_j c_j (1 - |z|^2) / |zeta_j - z|^2`.
pub fn poisson_extension(z: Point, mu: &PointMassMeasure) -> f64 {
    let z = z.value();
    let num = 1.0 - z.norm_sqr();
    mu.masses
        .iter()
        .map(|&(zeta, c)| c * num / (zeta - z).norm_sqr())
        .sum()
}

/// `<z^n, z^m>` in `D(mu)`.
pub fn dmu_gram_entry(n: usize, m: usize, mu: &PointMassMeasure) -> Complex64 {
    let constant = if n == 0 && m == 0 { 1.0 } else { 0.0 };
    let k = n.min(m) as f64;
    Complex64::new(constant, 0.0) + k * mu.moment(n as i64 - m as i64)
}

const ORACLE_RADIAL_NODES: usize = 200;
const ORACLE_MIN_ANGULAR_NODES: usize = 512;
const ORACLE_MAX_ANGULAR_NODES: usize = 1 << 23;
/// Angular aliasing at radius `r` is of order `r^M`; `M` is chosen so that
/// this is below `e^{-ALIAS_EXPONENT}`.
const ALIAS_EXPONENT: f64 = 30.0;

/// The `(max_degree + 1)^2` monomial Gram matrix of `D(mu)` by polar
/// quadrature of `n m int_D z^{n-1} conj(z)^{m-1} P_mu(z) dA`: Gauss-Legendre
/// in the radius and a uniform angular grid at each radius.
///
/// Near the circle the Poisson kernel concentrates around each `zeta_j`, so
/// the angular grid at radius `r` is refined until `r^M` is negligible.
pub fn dmu_gram_oracle_matrix(max_degree: usize, mu: &PointMassMeasure) -> Vec<Vec<Complex64>> {
    assert!(max_degree <= 30, "oracle supports degrees up to 30");
    let size = max_degree + 1;
    let mut acc = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    let rule = GaussLegendre::new(NonZeroUsize::new(ORACLE_RADIAL_NODES).unwrap());
    let mut powers = vec![Complex64::new(0.0, 0.0); size];

    for &(x, wx) in rule.as_node_weight_pairs() {
        let r = 0.5 * (x + 1.0);
        let wr = 0.5 * wx;
        let needed = (max_degree as f64 + ALIAS_EXPONENT / -r.ln()).ceil();
        let m_nodes = (needed as usize).clamp(ORACLE_MIN_ANGULAR_NODES, ORACLE_MAX_ANGULAR_NODES);
        // dA = r dr dtheta / pi, trapezoid weight 2 pi / M in theta
        let w = wr * r * 2.0 / m_nodes as f64;
        let poisson_num = 1.0 - r * r;
        for j in 0..m_nodes {
            let theta = 2.0 * PI * j as f64 / m_nodes as f64;
            let z = Complex64::from_polar(r, theta);
            let p: f64 = mu
                .masses
                .iter()
                .map(|&(zeta, c)| c * poisson_num / (zeta - z).norm_sqr())
                .sum();
            let weight = w * p;
            powers[0] = Complex64::new(1.0, 0.0);
            for k in 1..size {
                powers[k] = powers[k - 1] * z;
            }
            // entry (n, m) picks up n m z^{n-1} conj(z)^{m-1}
            for n in 1..size {
                let a = powers[n - 1] * (n as f64 * weight);
                for m in n..size {
                    acc[n][m] += a * powers[m - 1].conj() * m as f64;
                }
            }
        }
    }
    for n in 0..size {
        for m in 0..n {
            acc[n][m] = acc[m][n].conj();
        }
    }
    acc[0][0] += Complex64::new(1.0, 0.0);
    acc
}

/// Single entry of [`dmu_gram_oracle_matrix`].
pub fn dmu_gram_oracle(n: usize, m: usize, mu: &PointMassMeasure) -> Complex64 {
    dmu_gram_oracle_matrix(n.max(m), mu)[n][m]
}

/// `D(mu)` restricted to polynomials of degree at most `N`.
#[derive(Debug, Clone)]
pub struct DMuSpace {
    measure: PointMassMeasure,
    truncation: usize,
    condition: f64,
    /// `conj(G^{-1})`, so that `k_lambda(z) = e(z)^T conj(G^{-1}) conj(e(lambda))`.
    kernel_matrix: Vec<Complex64>,
}

impl DMuSpace {
    /// Builds and inverts the `(N + 1) x (N + 1)` Gram matrix once.
    pub fn new(measure: PointMassMeasure, truncation: usize) -> Result<Self> {
        let size = truncation + 1;
        let gram = HermitianMatrix::from_upper_fn(size, |n, m| dmu_gram_entry(n, m, &measure))?;
        let eig = eigh(&gram)?;
        let lo = eig.values[0];
        let hi = eig.values[size - 1];
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if !(condition < MAX_CONDITION) {
            return Err(Error::IllConditioned { condition });
        }
        let inverse = HermitianMatrix::from_upper_fn(size, |i, j| {
            (0..size)
                .map(|k| eig.vectors[i * size + k] * eig.vectors[j * size + k].conj() / eig.values[k])
                .sum()
        })?;
        let kernel_matrix = inverse.as_slice().iter().map(|z| z.conj()).collect();
        Ok(Self {
            measure,
            truncation,
            condition,
            kernel_matrix,
        })
    }

    pub fn measure(&self) -> &PointMassMeasure {
        &self.measure
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Condition number of the truncated Gram matrix.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Truncated kernel `K_N(z, lambda) = k_lambda(z)`.
    pub fn eval(&self, lambda: Complex64, z: Complex64) -> Complex64 {
        let size = self.truncation + 1;
        let lam_bar = lambda.conj();
        let mut lam_pow = vec![Complex64::new(1.0, 0.0); size];
        for k in 1..size {
            lam_pow[k] = lam_pow[k - 1] * lam_bar;
        }
        let mut z_pow = Complex64::new(1.0, 0.0);
        let mut out = Complex64::new(0.0, 0.0);
        for a in 0..size {
            let row = &self.kernel_matrix[a * size..(a + 1) * size];
            let y: Complex64 = row.iter().zip(&lam_pow).map(|(h, l)| h * l).sum();
            out += z_pow * y;
            z_pow *= z;
        }
        out
    }

    /// Coefficients `c` of `k_lambda = sum_m c_m z^m`.
    pub fn kernel_coefficients(&self, lambda: Complex64) -> Vec<Complex64> {
        let size = self.truncation + 1;
        let lam_bar = lambda.conj();
        let mut lam_pow = vec![Complex64::new(1.0, 0.0); size];
        for k in 1..size {
            lam_pow[k] = lam_pow[k - 1] * lam_bar;
        }
        (0..size)
            .map(|a| {
                self.kernel_matrix[a * size..(a + 1) * size]
                    .iter()
                    .zip(&lam_pow)
                    .map(|(h, l)| h * l)
                    .sum()
            })
            .collect()
    }
}

impl KernelSpace for DMuSpace {
    fn name(&self) -> String {
        format!("dirichlet_mu(N={})", self.truncation)
    }

    fn kernel(&self, lambda: Point, z: Point) -> Result<Complex64> {
        Ok(self.eval(lambda.value(), z.value()))
    }
}

/// One-off evaluation of the truncated `D(mu)` kernel `K_N(z, lambda)`.
pub fn dmu_kernel(lambda: Point, z: Point, mu: &PointMassMeasure, truncation: usize) -> Result<Complex64> {
    Ok(DMuSpace::new(mu.clone(), truncation)?.eval(lambda.value(), z.value()))
}
