//! Weighted Dirichlet spaces `D_alpha`, `0 <= alpha <= 1`.
//!
//! The norm `|f(0)|^2 + int |f'|^2 (1 - |z|^2)^{1 - alpha} dA` is radial, so
//! monomials are orthogonal with `||z^n||^2 = w_n` and the kernel is the
//! diagonal series `sum (conj(lambda) z)^n / w_n`. Area measure is normalized
//! to total mass one, which gives `w_n = n^2 B(n, 2 - alpha)` for `n >= 1`.

use num_complex::Complex64;

use super::{KernelSpace, Point};
use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh_unit;

pub const DEFAULT_SERIES_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_TERMS: usize = 5000;

/// Largest `|conj(lambda) z|` the series is evaluated at.
pub const MAX_SERIES_ARGUMENT: f64 = 0.995;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

/// Iterates `B(n, 2 - alpha)` for `n = 1, 2, ...` via
/// `B(n + 1, s) = B(n, s) * n / (n + s)`.
struct BetaSequence {
    s: f64,
    n: usize,
    value: f64,
}

impl BetaSequence {
    fn new(alpha: f64) -> Self {
        let s = 2.0 - alpha;
        Self {
            s,
            n: 1,
            value: 1.0 / s,
        }
    }

    /// `w_n = n^2 B(n, 2 - alpha)` for the current `n`.
    fn weight(&self) -> f64 {
        let n = self.n as f64;
        n * n * self.value
    }

    fn advance(&mut self) {
        let n = self.n as f64;
        self.value *= n / (n + self.s);
        self.n += 1;
    }
}

/// `||z^n||^2` in `D_alpha`: `1` for `n = 0`, else `n^2 Gamma(n) Gamma(2 - alpha) / Gamma(n + 2 - alpha)`.
pub fn dirichlet_weight(n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if n == 0 {
        return Ok(1.0);
    }
    let mut seq = BetaSequence::new(alpha);
    while seq.n < n {
        seq.advance();
    }
    Ok(seq.weight())
}

/// The same weight by direct quadrature of `n^2 2 int_0^1 r^{2n-1} (1 - r^2)^{1 - alpha} dr`.
pub fn weight_quadrature_oracle(n: usize, alpha: f64) -> f64 {
    assert!(n <= 200, "oracle supports n <= 200");
    if n == 0 {
        return 1.0;
    }
    let p = (2 * n - 1) as i32;
    let s = 1.0 - alpha;
    let integral = tanh_sinh_unit(|r, one_minus_r| {
        r.powi(p) * (one_minus_r * (1.0 + r)).powf(s)
    });
    (n * n) as f64 * 2.0 * integral
}

#[derive(Debug, Clone, Copy)]
pub struct DirichletAlphaSpace {
    alpha: f64,
    tol: f64,
    max_terms: usize,
}

impl DirichletAlphaSpace {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_series(alpha, DEFAULT_SERIES_TOL, DEFAULT_MAX_TERMS)
    }

    pub fn with_series(alpha: f64, tol: f64, max_terms: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "series tolerance",
                value: tol,
                reason: "must be positive",
            });
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameter {
                name: "max_terms",
                value: 0.0,
                reason: "must be positive",
            });
        }
        Ok(Self {
            alpha,
            tol,
            max_terms,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `sum_{n >= 0} x^n / w_n`, stopped once the geometric tail bound
    /// `|x|^{n+1} / (w_{n+1} (1 - |x|))` drops below the tolerance. The
    /// weights increase with `n`, which makes the bound valid.
    pub fn series(&self, x: Complex64) -> Result<Complex64> {
        let r = x.norm();
        if !(r <= MAX_SERIES_ARGUMENT) {
            return Err(Error::InvalidParameter {
                name: "|conj(lambda) z|",
                value: r,
                reason: "too close to the boundary for the kernel series",
            });
        }
        let mut sum = Complex64::new(1.0, 0.0);
        if r == 0.0 {
            return Ok(sum);
        }
        let mut power = Complex64::new(1.0, 0.0);
        let mut abs_power = 1.0;
        let mut weights = BetaSequence::new(self.alpha);
        for _ in 0..self.max_terms {
            power *= x;
            abs_power *= r;
            sum += power / weights.weight();
            weights.advance();
            let tail = abs_power * r / (weights.weight() * (1.0 - r));
            if tail < self.tol {
                return Ok(sum);
            }
        }
        Err(Error::NoConvergence {
            what: "Dirichlet kernel series",
            iterations: self.max_terms,
        })
    }
}

impl KernelSpace for DirichletAlphaSpace {
    fn name(&self) -> String {
        format!("dirichlet_alpha({})", self.alpha)
    }

    fn kernel(&self, lambda: Point, z: Point) -> Result<Complex64> {
        self.series(lambda.value().conj() * z.value())
    }
}
