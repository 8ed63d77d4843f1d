mod common;

use common::complex_vec;
use gramkit::sequences::{ExplicitSequence, GramianProvider, TridiagExampleProvider};
use gramkit::spectral::{eig_hermitian, singular_extremes, spectral_summary, ComplexMatrix};
use gramkit::Complex64;
use proptest::prelude::*;

fn sequence(max_dim: usize, max_len: usize) -> impl Strategy<Value = ExplicitSequence> {
    (1..=max_dim, 1..=max_len).prop_flat_map(|(d, len)| {
        prop::collection::vec(complex_vec(d), len)
            .prop_map(move |v| ExplicitSequence::new(d, v).unwrap())
    })
}

fn invertible(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_vec(d * d).prop_filter_map("numerically singular", move |raw| {
        let a = ComplexMatrix::new(d, raw).ok()?;
        let (lo, hi) = singular_extremes(&a).ok()?;
        (lo > 1e-3 * hi).then_some(a)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn explicit_sections_are_psd(seq in sequence(6, 40)) {
        let section = seq.section(seq.len()).unwrap();
        let vals = eig_hermitian(&section).unwrap();
        let scale = vals.last().unwrap().abs().max(1.0);
        prop_assert!(vals[0] >= -1e-9 * scale);
        for i in 0..section.dim() {
            for j in 0..section.dim() {
                prop_assert!((section.get(i, j) - section.get(j, i).conj()).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn normalized_sections_have_unit_diagonal(seq in sequence(6, 40)) {
        prop_assume!(seq.vectors().iter().all(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6));
        let unit = seq.normalize().unwrap();
        prop_assert!(unit.is_normalized());
        let section = unit.section(unit.len()).unwrap();
        for i in 0..section.dim() {
            prop_assert!((section.get(i, i) - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn invertible_maps_transfer_riesz_bounds(
        (seq, a) in (1usize..=8).prop_flat_map(|d| {
            (prop::collection::vec(complex_vec(d), 1..=8)
                .prop_map(move |v| ExplicitSequence::new(d, v).unwrap()), invertible(d))
        })
    ) {
        prop_assume!(seq.vectors().iter().all(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6));
        let x = seq.normalize().unwrap();
        let y = x.apply_invertible(&a).unwrap().normalize().unwrap();
        let (lo, hi) = singular_extremes(&a).unwrap();
        let k = (lo / hi).powi(2);
        let g = spectral_summary(&x.section(x.len()).unwrap()).unwrap();
        let h = spectral_summary(&y.section(y.len()).unwrap()).unwrap();
        prop_assert!(h.lambda_min >= g.lambda_min * k - 1e-10);
        prop_assert!(h.lambda_max <= g.lambda_max / k + 1e-10);
    }

    #[test]
    fn tridiagonal_sections_are_psd(n in 1usize..=40, centered in any::<bool>()) {
        let p = if centered { TridiagExampleProvider::centered(20) } else { TridiagExampleProvider::interleaved() };
        let s = spectral_summary(&p.section(n).unwrap()).unwrap();
        prop_assert!(s.lambda_min >= -1e-9);
        prop_assert!(s.lambda_max <= 2.0 + 1e-12);
    }
}
