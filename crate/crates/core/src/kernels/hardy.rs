use num_complex::Complex64;

use super::{one_minus_conj_mul, KernelSpace, Point};
use crate::error::Result;

/// The Hardy space `H^2` with kernel `k_lambda(z) = 1 / (1 - conj(lambda) z)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HardySpace;

impl KernelSpace for HardySpace {
    fn name(&self) -> String {
        "hardy".to_string()
    }

    fn kernel(&self, lambda: Point, z: Point) -> Result<Complex64> {
        Ok(one_minus_conj_mul(lambda.value(), z.value()).inv())
    }
}

/// `|(lambda - mu) / (1 - conj(lambda) mu)|`.
pub fn pseudo_hyperbolic(lambda: Point, mu: Point) -> f64 {
    (lambda.value() - mu.value()).norm() / one_minus_conj_mul(lambda.value(), mu.value()).norm()
}
