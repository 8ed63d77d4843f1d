//! Reproducing-kernel spaces on the unit disc and their normalized-kernel Gramians.
//!
//! `KernelSpace::kernel(lambda, z)` evaluates `k_lambda(z)`, so that
//! `f(lambda) = <f, k_lambda>` and `<k_lambda, k_mu> = k_lambda(mu)`.

mod cnp;
mod dirichlet;
mod dmu;
mod hardy;

pub use cnp::{cnp_matrix, CnpDiagnostic, CNP_PSD_TOL};
pub use dirichlet::{
    dirichlet_weight, weight_quadrature_oracle, DirichletAlphaSpace, DEFAULT_MAX_TERMS,
    DEFAULT_SERIES_TOL, MAX_SERIES_ARGUMENT,
};
pub use dmu::{
    dmu_gram_entry, dmu_gram_oracle, dmu_gram_oracle_matrix, dmu_kernel, poisson_extension,
    DMuSpace, PointMassMeasure, DEFAULT_TRUNCATION, MAX_CONDITION,
};
pub use hardy::{pseudo_hyperbolic, HardySpace};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sequences::GramianProvider;
use crate::spectral::HermitianMatrix;

/// Points must satisfy `|lambda| < 1 - BOUNDARY_MARGIN`.
pub const BOUNDARY_MARGIN: f64 = 1e-10;

/// A point of the open unit disc, away from the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(Complex64);

impl Point {
    pub fn new(z: Complex64) -> Result<Self> {
        let radius = 1.0 - BOUNDARY_MARGIN;
        if !z.is_finite() {
            return Err(Error::NonFinite { what: "point" });
        }
        if z.norm() >= radius {
            return Err(Error::OutsideDisc {
                re: z.re,
                im: z.im,
                radius,
            });
        }
        Ok(Self(z))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// A reproducing-kernel Hilbert space of functions on the disc.
pub trait KernelSpace: Send + Sync {
    fn name(&self) -> String;

    /// `k_lambda(z)`.
    fn kernel(&self, lambda: Point, z: Point) -> Result<Complex64>;
}

/// `1 - conj(a) * b`, with the products formed exactly through FMA so the
/// result keeps full relative accuracy when both points approach the circle.
pub(crate) fn one_minus_conj_mul(a: Complex64, b: Complex64) -> Complex64 {
    let (p1, e1) = two_prod(a.re, b.re);
    let (p2, e2) = two_prod(a.im, b.im);
    let (s1, t1) = two_sum(1.0, -p1);
    let (s2, t2) = two_sum(s1, -p2);
    let re = s2 + (t1 + t2 - e1 - e2);
    // conj(a) b has imaginary part a.re b.im - a.im b.re
    let w = a.im * b.re;
    let err = (-a.im).mul_add(b.re, w);
    let diff = a.re.mul_add(b.im, -w);
    Complex64::new(re, -(diff + err))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn diagonal(space: &dyn KernelSpace, point: Point, index: usize) -> Result<f64> {
    let d = space.kernel(point, point)?;
    if !(d.re > 0.0) || !d.re.is_finite() {
        return Err(Error::NonPositiveDiagonal {
            index,
            value: d.re,
        });
    }
    Ok(d.re)
}

/// `<k^_{lambda_n}, k^_{lambda_m}> = k(lambda_n, lambda_m) / sqrt(k(lambda_n, lambda_n) k(lambda_m, lambda_m))`.
pub fn normalized_gram(space: &dyn KernelSpace, lambda_n: Point, lambda_m: Point) -> Result<Complex64> {
    let dn = diagonal(space, lambda_n, 1)?;
    let dm = diagonal(space, lambda_m, 2)?;
    if lambda_n == lambda_m {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(space.kernel(lambda_n, lambda_m)? / (dn.sqrt() * dm.sqrt()))
}

/// The Gramian of normalized kernels at a finite list of points, evaluated
/// once at construction.
#[derive(Debug, Clone)]
pub struct KernelGramProvider {
    name: String,
    points: Vec<Point>,
    gram: HermitianMatrix,
}

impl KernelGramProvider {
    pub fn new(space: &dyn KernelSpace, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter {
                name: "point count",
                value: 0.0,
                reason: "need at least one point",
            });
        }
        let roots = points
            .iter()
            .enumerate()
            .map(|(i, &p)| diagonal(space, p, i + 1).map(f64::sqrt))
            .collect::<Result<Vec<_>>>()?;
        let n = points.len();
        let mut upper = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            upper[i * n + i] = Complex64::new(1.0, 0.0);
            for j in (i + 1)..n {
                upper[i * n + j] = if points[i] == points[j] {
                    Complex64::new(1.0, 0.0)
                } else {
                    space.kernel(points[i], points[j])? / (roots[i] * roots[j])
                };
            }
        }
        let gram = HermitianMatrix::from_upper_fn(n, |i, j| upper[i * n + j])?;
        Ok(Self {
            name: space.name(),
            points,
            gram,
        })
    }

    pub fn space_name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.gram
    }
}

impl GramianProvider for KernelGramProvider {
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        self.gram.get(n - 1, m - 1)
    }

    fn is_normalized(&self) -> bool {
        true
    }

    fn len(&self) -> Option<usize> {
        Some(self.points.len())
    }
}
