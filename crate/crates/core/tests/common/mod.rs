#![allow(dead_code)]

use gramkit::kernels::Point;
use gramkit::spectral::HermitianMatrix;
use gramkit::Complex64;
use proptest::prelude::*;

pub fn hermitian(max_n: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |raw| {
            HermitianMatrix::from_upper_fn(n, |i, j| {
                let (re, im) = raw[i * n + j];
                if i == j {
                    Complex64::new(re, 0.0)
                } else {
                    Complex64::new(re, im)
                }
            })
            .unwrap()
        })
    })
}

pub fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

pub fn disc_point(max_radius: f64) -> impl Strategy<Value = Point> {
    (0.0..max_radius, 0.0..std::f64::consts::TAU)
        .prop_map(|(r, t)| Point::new(Complex64::from_polar(r, t)).unwrap())
}
