use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::code::{
    conjugate_logical, exhaustive_logical_failure, extract_syndrome, logical_failure,
};
use crate::lattice::{Axis, CellId, Color, Coord3, FaceId};
use crate::matching::{mwpm, WeightedGraph};
use crate::noise::{derive_seed, sample, NoiseSpec};

fn lat(l: usize) -> Lattice {
    Lattice::new(l).unwrap()
}

fn c3(x: u32, y: u32, z: u32) -> Coord3 {
    Coord3 { x, y, z }
}

fn residual_after(lattice: &Lattice, error: &PauliFrame, decoder: LineonDecoder) -> PauliFrame {
    let s = extract_syndrome(error).unwrap();
    let c = decoder.decode(lattice, &s).unwrap().correction;
    error.composed(&c)
}

#[test]
fn empty_syndrome_gives_identity() {
    let l = lat(6);
    let d = LineonDecoder::default()
        .decode(&l, &Syndrome::default())
        .unwrap();
    assert!(d.correction.is_identity());
    assert!(d.clusters.is_empty());
}

#[test]
fn single_errors_are_corrected() {
    let l = lat(6);
    for weights in [LineonWeights::Manhattan, LineonWeights::CornerPenalty] {
        for f in l.faces() {
            let e = PauliFrame::from_faces(l, [f], []);
            let s = extract_syndrome(&e).unwrap();
            let d = LineonDecoder::new(weights).decode(&l, &s).unwrap();
            assert_eq!(d.clusters.len(), 1);
            assert_eq!(d.clusters[0].members.len(), 2);
            let r = e.composed(&d.correction);
            assert!(extract_syndrome(&r).unwrap().is_empty());
            assert!(!exhaustive_logical_failure(&r).unwrap(), "{f:?}");
        }
    }
}

#[test]
fn separated_errors_form_separate_clusters() {
    let l = lat(12);
    let e = PauliFrame::from_faces(
        l,
        [
            FaceId {
                orientation: Color::R,
                base: c3(1, 1, 1),
            },
            FaceId {
                orientation: Color::G,
                base: c3(7, 7, 7),
            },
        ],
        [],
    );
    let s = extract_syndrome(&e).unwrap();
    let d = LineonDecoder::default().decode(&l, &s).unwrap();
    assert_eq!(d.clusters.len(), 2);
    assert!(extract_syndrome(&e.composed(&d.correction))
        .unwrap()
        .is_empty());
}

#[test]
fn straight_pair_is_joined_by_a_string() {
    let l = lat(8);
    let cluster = CellCluster {
        members: vec![
            (CellId(c3(2, 1, 3)), Color::R),
            (CellId(c3(2, 4, 3)), Color::R),
        ],
        edges: vec![
            PairEdge {
                a: 0,
                b: 1,
                matching: Color::G,
            },
            PairEdge {
                a: 0,
                b: 1,
                matching: Color::B,
            },
        ],
    };
    cluster.check_pairing().unwrap();
    let frame = neutralize_lineon(&l, &cluster).unwrap();
    let s = extract_syndrome(&frame).unwrap();
    assert_eq!(s.cell_defects, cluster.members);
    // The operator is the string between them up to stabilizers.
    let string = PauliFrame::from_faces(
        l,
        (2..=4).map(|y| FaceId {
            orientation: Color::R,
            base: c3(2, y, 3),
        }),
        [],
    );
    let r = frame.composed(&string);
    assert!(extract_syndrome(&r).unwrap().is_empty());
    assert!(!exhaustive_logical_failure(&r).unwrap());
}

#[test]
fn three_color_cluster_is_neutralized() {
    // X on the upper R face and the upper G face of one cell leaves an R, a G
    // and a B defect.
    let l = lat(8);
    let e = PauliFrame::from_faces(
        l,
        [
            FaceId {
                orientation: Color::R,
                base: c3(3, 4, 3),
            },
            FaceId {
                orientation: Color::G,
                base: c3(3, 3, 4),
            },
        ],
        [],
    );
    let s = extract_syndrome(&e).unwrap();
    assert_eq!(s.cell_defects.len(), 3);
    let d = LineonDecoder::default().decode(&l, &s).unwrap();
    assert_eq!(d.clusters.len(), 1);
    assert_eq!(d.clusters[0].color_counts(), [1, 1, 1]);
    let r = e.composed(&d.correction);
    assert!(extract_syndrome(&r).unwrap().is_empty());
    assert!(!exhaustive_logical_failure(&r).unwrap());
}

#[test]
fn lemma_violation_is_reported() {
    let cluster = CellCluster {
        members: vec![
            (CellId(c3(0, 0, 0)), Color::R),
            (CellId(c3(1, 0, 0)), Color::R),
            (CellId(c3(2, 0, 0)), Color::G),
        ],
        edges: vec![],
    };
    assert!(matches!(
        cluster.check_color_parity(),
        Err(LineonError::LemmaViolation { counts: [2, 1, 0] })
    ));
}

#[test]
fn plane_problems_have_even_conserved_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for size in [4, 8, 12] {
        let l = lat(size);
        for t in 0..300 {
            let p = rng.gen_range(0.01..0.3);
            let e = sample(
                &NoiseSpec::new(p, crate::code::Sector::X, derive_seed(size as u64, t)).unwrap(),
                l,
            );
            let s = extract_syndrome(&e).unwrap();
            let problems = plane_problems(&l, &s);
            assert_eq!(problems.len(), 3 * size);
            let mut total = 0;
            for pr in &problems {
                assert_eq!(pr.conserved.len() % 2, 0);
                total += pr.conserved.len() + pr.waypoints.len();
            }
            assert_eq!(total, 3 * s.cell_defects.len());
        }
    }
}

#[test]
fn random_errors_are_always_cleared() {
    for (size, trials) in [(4, 400), (8, 200)] {
        let l = lat(size);
        for weights in [LineonWeights::Manhattan, LineonWeights::CornerPenalty] {
            for t in 0..trials {
                let p = [0.02, 0.05, 0.1, 0.15][t as usize % 4];
                let e = sample(
                    &NoiseSpec::new(p, crate::code::Sector::X, derive_seed(1, t)).unwrap(),
                    l,
                );
                let r = residual_after(&l, &e, LineonDecoder::new(weights));
                assert!(extract_syndrome(&r).unwrap().is_empty());
                // Also exercises the failure check on a clean residual.
                logical_failure(&r, &[conjugate_logical(&l, crate::code::Sector::X)]).unwrap();
            }
        }
    }
}

#[test]
fn twin_and_compact_graphs_have_equal_optima() {
    let l = lat(10);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let plane = PlaneId {
            axis: Axis::from_index(rng.gen_range(0..3)),
            offset: 3,
            dual: true,
        };
        let u = plane.color();
        let (v, w) = u.others();
        let (p, q) = plane.axis.others();
        let mut used = std::collections::BTreeSet::new();
        let mut cell = |rng: &mut ChaCha8Rng| loop {
            let c = Coord3::default()
                .with(plane.axis, 3)
                .with(p, rng.gen_range(0..10))
                .with(q, rng.gen_range(0..10));
            if used.insert(c) {
                return CellId(c);
            }
        };
        let nc = 2 * rng.gen_range(1..=4);
        let conserved: Vec<_> = (0..nc)
            .map(|i| (cell(&mut rng), if i % 2 == 0 { v } else { w }))
            .collect();
        let waypoints: Vec<_> = (0..rng.gen_range(0..6)).map(|_| cell(&mut rng)).collect();
        let problem = PlaneProblem::new(&l, plane, conserved, waypoints);
        let compact = decode_plane(
            &problem,
            LineonWeights::CornerPenalty,
            WaypointMode::Compact,
        )
        .unwrap();
        let twins =
            decode_plane(&problem, LineonWeights::CornerPenalty, WaypointMode::Twins).unwrap();
        let total = |pairs: &[PlanePair]| pairs.iter().map(|x| x.weight).sum::<u32>();
        assert_eq!(total(&compact), total(&twins));
        assert_eq!(twins.len(), nc / 2);
    }
}

#[test]
fn waypoint_at_the_corner_waives_the_turn() {
    // Plane x = 0 (blue), in-plane axes (y, z); 6 x 6.
    let l = lat(6);
    let plane = PlaneId {
        axis: Axis::X,
        offset: 0,
        dual: true,
    };
    let r = (CellId(c3(0, 1, 1)), Color::R);
    let g = (CellId(c3(0, 3, 4)), Color::G);
    let corner = CellId(c3(0, 3, 1));
    let with = PlaneProblem::new(&l, plane, vec![r, g], vec![corner]);
    let without = PlaneProblem::new(&l, plane, vec![r, g], vec![]);
    assert_eq!(corner_penalty_weight(&with, r.0 .0, g.0 .0), 5);
    assert_eq!(corner_penalty_weight(&without, r.0 .0, g.0 .0), 6);
    for mode in [WaypointMode::Compact, WaypointMode::Twins] {
        let pairs = decode_plane(&with, LineonWeights::CornerPenalty, mode).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].weight, 5);
    }
}

#[test]
fn odd_plane_is_a_symmetry_violation() {
    let l = lat(4);
    let plane = PlaneId {
        axis: Axis::Z,
        offset: 0,
        dual: true,
    };
    let problem = PlaneProblem::new(&l, plane, vec![(CellId(c3(0, 0, 0)), Color::R)], vec![]);
    assert!(matches!(
        decode_plane(
            &problem,
            LineonWeights::CornerPenalty,
            WaypointMode::Compact
        ),
        Err(LineonError::SymmetryViolation { count: 1, .. })
    ));
}

#[test]
fn manhattan_graph_matches_plain_distances() {
    let l = lat(8);
    let plane = PlaneId {
        axis: Axis::Y,
        offset: 2,
        dual: true,
    };
    // Plane y = 2 is red; G and B defects are conserved.
    let conserved = vec![
        (CellId(c3(1, 2, 1)), Color::G),
        (CellId(c3(4, 2, 5)), Color::B),
        (CellId(c3(7, 2, 1)), Color::B),
        (CellId(c3(2, 2, 6)), Color::G),
    ];
    let problem = PlaneProblem::new(&l, plane, conserved.clone(), vec![]);
    let pairs = decode_plane(&problem, LineonWeights::Manhattan, WaypointMode::Compact).unwrap();
    let g = WeightedGraph::from_fn(4, |i, j| {
        l.periodic_sep(conserved[i].0 .0, conserved[j].0 .0, &[Axis::X, Axis::Z]) as i64
    });
    let best = mwpm(&g).unwrap().total_weight;
    assert_eq!(pairs.iter().map(|p| p.weight as i64).sum::<i64>(), best);
}
