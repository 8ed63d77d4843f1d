mod common;

use common::{complex_vec, disc_point};
use gramkit::kernels::{DirichletAlphaSpace, HardySpace, KernelGramProvider, KernelSpace};
use gramkit::partition::{
    bessel_estimate, degree_bound, enemy_graph, greedy_partition, riesz_profile,
    separation_constant, BesselMode, EnemyGraph, Partition,
};
use gramkit::sequences::ExplicitSequence;
use proptest::prelude::*;

fn check_partition(g: &EnemyGraph, p: &Partition) {
    let n = g.vertex_count();
    assert_eq!(p.assignment().len(), n);
    assert!(p.classes().iter().all(|c| !c.is_empty()));
    for class in p.classes() {
        for (k, &a) in class.iter().enumerate() {
            for &b in &class[k + 1..] {
                assert!(!g.is_adjacent(a, b), "{a} and {b} share a class");
            }
        }
    }
    if n > 0 {
        assert!(p.class_count() <= g.max_degree() + 1);
    }
}

#[test]
fn exhaustive_small_graphs() {
    for n in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = EnemyGraph::from_edges(n, &edges).unwrap();
            check_partition(&g, &greedy_partition(&g));
        }
    }
}

fn random_graph() -> impl Strategy<Value = EnemyGraph> {
    (1usize..=200, 0.0f64..0.2).prop_flat_map(|(n, density)| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(prop::bool::weighted(density), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            EnemyGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn unit_frame() -> impl Strategy<Value = ExplicitSequence> {
    (1usize..=16, 2usize..=64).prop_flat_map(|(d, len)| {
        prop::collection::vec(complex_vec(d), len).prop_filter_map("zero vector", move |v| {
            ExplicitSequence::new(d, v).ok()?.normalize().ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_on_random_graphs(g in random_graph()) {
        check_partition(&g, &greedy_partition(&g));
    }

    #[test]
    fn degree_bound_on_random_frames(seq in unit_frame()) {
        let n = seq.len();
        let c = bessel_estimate(&seq, n, BesselMode::Schur).unwrap();
        let g = enemy_graph(&seq, n, 0.5).unwrap();
        prop_assert!(g.max_degree() <= degree_bound(c).unwrap());
        prop_assert!(c >= bessel_estimate(&seq, n, BesselMode::Spectral).unwrap() - 1e-12);
    }

    #[test]
    fn degree_bound_on_kernel_sequences(
        points in prop::collection::vec(disc_point(0.97), 2..=40),
        dirichlet in any::<bool>(),
    ) {
        let space: Box<dyn KernelSpace> = if dirichlet {
            Box::new(DirichletAlphaSpace::new(0.5).unwrap())
        } else {
            Box::new(HardySpace)
        };
        let p = KernelGramProvider::new(space.as_ref(), points.clone()).unwrap();
        let n = points.len();
        let c = bessel_estimate(&p, n, BesselMode::Schur).unwrap();
        prop_assert!(enemy_graph(&p, n, 0.5).unwrap().max_degree() <= degree_bound(c).unwrap());
    }

    #[test]
    fn profiles_are_monotone(seq in unit_frame(), cuts in prop::collection::vec(1usize..=64, 1..6)) {
        let mut sizes: Vec<usize> = cuts.into_iter().map(|s| s.min(seq.len())).collect();
        sizes.sort_unstable();
        let prof = riesz_profile(&seq, &sizes).unwrap();
        for w in prof.windows(2) {
            prop_assert!(w[1].lambda_min <= w[0].lambda_min + 1e-12);
            prop_assert!(w[1].lambda_max >= w[0].lambda_max - 1e-12);
        }
    }

    #[test]
    fn separated_sections_have_no_enemies(seq in unit_frame(), tau in 0.05f64..=1.0) {
        let n = seq.len();
        let sep = separation_constant(&seq, n).unwrap();
        if sep.gamma < tau.sqrt() {
            prop_assert_eq!(enemy_graph(&seq, n, tau).unwrap().edge_count(), 0);
        }
    }
}
