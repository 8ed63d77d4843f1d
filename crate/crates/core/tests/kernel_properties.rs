mod common;

use common::disc_point;
use gramkit::kernels::{
    cnp_matrix, pseudo_hyperbolic, DMuSpace, DirichletAlphaSpace, HardySpace, KernelGramProvider,
    KernelSpace, Point, PointMassMeasure,
};
use gramkit::sequences::GramianProvider;
use gramkit::spectral::eig_hermitian;
use gramkit::Complex64;
use proptest::prelude::*;

fn spaces() -> Vec<Box<dyn KernelSpace>> {
    let mu = PointMassMeasure::new(vec![
        (Complex64::new(1.0, 0.0), 1.0),
        (Complex64::new(0.0, 1.0), 0.25),
        (Complex64::new(-0.6, -0.8), 0.5),
    ])
    .unwrap();
    vec![
        Box::new(HardySpace),
        Box::new(DirichletAlphaSpace::new(0.0).unwrap()),
        Box::new(DirichletAlphaSpace::new(0.5).unwrap()),
        Box::new(DirichletAlphaSpace::new(1.0).unwrap()),
        Box::new(DMuSpace::new(mu, 40).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalized_sections_psd_unit_diagonal(points in prop::collection::vec(disc_point(0.9), 1..=30)) {
        for space in spaces() {
            let p = KernelGramProvider::new(space.as_ref(), points.clone()).unwrap();
            let section = p.section(points.len()).unwrap();
            for i in 0..section.dim() {
                prop_assert!((section.get(i, i).re - 1.0).abs() <= 1e-12);
            }
            prop_assert!(eig_hermitian(&section).unwrap()[0] >= -1e-9, "{}", space.name());
        }
    }

    #[test]
    fn hardy_cnp_is_psd(
        points in prop::collection::vec(disc_point(0.95), 1..=12),
        omega in disc_point(0.9),
    ) {
        let d = cnp_matrix(&HardySpace, omega, &points).unwrap();
        prop_assert!(d.positive_semidefinite, "lambda_min = {}", d.lambda_min);
    }

    #[test]
    fn hardy_gram_matches_pseudo_hyperbolic(a in disc_point(0.999), b in disc_point(0.999)) {
        let g = gramkit::kernels::normalized_gram(&HardySpace, a, b).unwrap();
        let rho = pseudo_hyperbolic(a, b);
        prop_assert!((g.norm_sqr() - (1.0 - rho * rho)).abs() <= 1e-12);
    }
}

#[test]
fn conjugate_symmetry_and_positive_diagonal() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for space in spaces() {
        for _ in 0..200 {
            let mut pt = || Point::new(Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..6.3))).unwrap();
            let (l, z) = (pt(), pt());
            let a = space.kernel(l, z).unwrap();
            let b = space.kernel(z, l).unwrap();
            assert!((a - b.conj()).norm() <= 1e-10 * a.norm().max(1.0), "{}", space.name());
            let d = space.kernel(l, l).unwrap();
            assert!(d.re > 0.0 && d.im.abs() <= 1e-12);
        }
    }
}
