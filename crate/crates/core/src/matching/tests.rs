use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_w: i64) -> WeightedGraph {
    WeightedGraph::from_fn(n, |_, _| rng.gen_range(0..=max_w))
}

#[test]
fn empty_graph() {
    let g = WeightedGraph::new(0);
    assert_eq!(mwpm(&g).unwrap(), Matching::default());
    assert_eq!(brute_force_mwpm(&g).unwrap(), Matching::default());
}

#[test]
fn single_pair() {
    let mut g = WeightedGraph::new(2);
    g.set(0, 1, 17);
    for m in [mwpm(&g).unwrap(), brute_force_mwpm(&g).unwrap()] {
        assert_eq!(m.pairs, vec![(0, 1)]);
        assert_eq!(m.total_weight, 17);
    }
}

#[test]
fn four_vertex_example() {
    let mut g = WeightedGraph::from_fn(4, |_, _| 10);
    g.set(0, 1, 1);
    g.set(2, 3, 1);
    let m = mwpm(&g).unwrap();
    assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
    assert_eq!(m.total_weight, 2);
}

#[test]
fn equal_weights() {
    for n in [2, 4, 6, 8] {
        let g = WeightedGraph::from_fn(n, |_, _| 5);
        assert_eq!(mwpm(&g).unwrap().total_weight, 5 * n as i64 / 2);
        assert_eq!(brute_force_mwpm(&g).unwrap().total_weight, 5 * n as i64 / 2);
    }
}

#[test]
fn errors() {
    let g = WeightedGraph::new(3);
    assert_eq!(mwpm(&g), Err(MatchingError::OddVertexCount(3)));
    assert_eq!(brute_force_mwpm(&g), Err(MatchingError::OddVertexCount(3)));
    assert_eq!(
        brute_force_mwpm(&WeightedGraph::new(14)),
        Err(MatchingError::TooLarge(14))
    );
    let mut g = WeightedGraph::new(2);
    g.set(0, 1, -1);
    assert!(matches!(
        mwpm(&g),
        Err(MatchingError::NegativeWeight { .. })
    ));
}

#[test]
fn agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..2000 {
        let n = 2 * rng.gen_range(1..=6);
        let max_w = if trial % 3 == 0 { 3 } else { 100 };
        let g = random_graph(&mut rng, n, max_w);
        let fast = mwpm(&g).unwrap();
        let slow = brute_force_mwpm(&g).unwrap();
        assert!(fast.is_perfect(n));
        assert_eq!(fast.total_weight, slow.total_weight, "{g:?}");
    }
}

/// Points on a small torus with Manhattan weights: many ties and metric
/// structure, like the decoder's graphs.
#[test]
fn agrees_on_metric_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let n = 2 * rng.gen_range(1..=6);
        let pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(0..6), rng.gen_range(0..6)))
            .collect();
        let d = |a: i64, b: i64| (a - b).abs().min(6 - (a - b).abs());
        let g = WeightedGraph::from_fn(n, |i, j| d(pts[i].0, pts[j].0) + d(pts[i].1, pts[j].1));
        assert_eq!(
            mwpm(&g).unwrap().total_weight,
            brute_force_mwpm(&g).unwrap().total_weight
        );
    }
}

#[test]
fn large_graphs_are_perfect() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [40, 100, 160] {
        let g = random_graph(&mut rng, n, 1000);
        let m = mwpm(&g).unwrap();
        assert!(m.is_perfect(n));
        let sum: i64 = m.pairs.iter().map(|&(i, j)| g.weight(i, j)).sum();
        assert_eq!(sum, m.total_weight);
    }
}

proptest! {
    #[test]
    fn output_is_perfect(n in 0usize..=20, seed in any::<u64>()) {
        let n = n & !1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 50);
        prop_assert!(mwpm(&g).unwrap().is_perfect(n));
    }
}

#[test]
fn certified_matches_dense_on_metric_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for trial in 0..400 {
        let l = 12i64;
        let n = 2 * rng.gen_range(1..=40);
        let pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(0..l), rng.gen_range(0..l)))
            .collect();
        let d = |a: i64, b: i64| (a - b).abs().min(l - (a - b).abs());
        let man = |i: usize, j: usize| d(pts[i].0, pts[j].0) + d(pts[i].1, pts[j].1);
        // Exact weights sit up to 3 above the bound, like turn penalties.
        let extra: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..=3)).collect();
        let w = |i: usize, j: usize| man(i, j) + extra[i.min(j) * n + i.max(j)];
        let k = [1, 2, 4, 8][trial % 4];
        let fast = mwpm_certified(n, w, man, k).unwrap();
        let dense = mwpm(&WeightedGraph::from_fn(n, w)).unwrap();
        assert!(fast.is_perfect(n));
        assert_eq!(fast.total_weight, dense.total_weight);
    }
}

#[test]
fn certified_matches_dense_on_arbitrary_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for trial in 0..300 {
        let n = 2 * rng.gen_range(1..=25);
        let g = random_graph(&mut rng, n, if trial % 2 == 0 { 5 } else { 1000 });
        let fast = mwpm_certified(n, |i, j| g.weight(i, j), |_, _| 0, 3).unwrap();
        assert_eq!(fast.total_weight, mwpm(&g).unwrap().total_weight);
    }
}
