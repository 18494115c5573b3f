use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::code::{exhaustive_logical_failure, extract_syndrome, odd_multiplicity, Window};
use crate::lattice::{Axis, Color, Coord3, FaceId, VertexId};
use crate::noise::{derive_seed, sample, NoiseSpec};

fn lat(l: usize) -> Lattice {
    Lattice::new(l).unwrap()
}

fn v3(x: u32, y: u32, z: u32) -> VertexId {
    VertexId(Coord3 { x, y, z })
}

fn face(color: Color, x: u32, y: u32, z: u32) -> FaceId {
    FaceId {
        orientation: color,
        base: Coord3 { x, y, z },
    }
}

fn z_error(l: Lattice, faces: &[FaceId]) -> PauliFrame {
    PauliFrame::from_faces(l, [], faces.iter().copied())
}

fn residual(l: &Lattice, error: &PauliFrame, k: usize) -> PauliFrame {
    let s = extract_syndrome(error).unwrap();
    error.composed(&decode_z(l, &s, k).unwrap())
}

/// Every perfect matching of `0..n`.
fn all_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..]
            .iter()
            .copied()
            .filter(|&x| x != items[k])
            .collect();
        for mut m in all_matchings(&rest) {
            m.push((items[0], items[k]));
            out.push(m);
        }
    }
    out
}

#[test]
fn empty_syndrome_gives_identity() {
    let d = FractonDecoder::new(3)
        .decode(&lat(5), &Syndrome::default())
        .unwrap();
    assert!(d.correction.is_identity());
    assert!(d.clusters.is_empty());
}

#[test]
fn single_errors_are_corrected_at_any_iteration_count() {
    let l = lat(5);
    for k in [0, 1, 5] {
        for f in l.faces() {
            let r = residual(&l, &z_error(l, &[f]), k);
            assert!(extract_syndrome(&r).unwrap().is_empty());
            assert!(!exhaustive_logical_failure(&r).unwrap(), "k={k} {f:?}");
        }
    }
}

#[test]
fn single_error_pairs_within_every_plane() {
    let l = lat(8);
    let e = z_error(l, &[face(Color::G, 3, 3, 3)]);
    let s = extract_syndrome(&e).unwrap();
    let d = FractonDecoder::new(0).decode(&l, &s).unwrap();
    assert_eq!(d.clusters.len(), 1);
    d.clusters[0].check_pairing().unwrap();
    for axis in Axis::ALL {
        for (i, &j) in d.context.partners(axis).iter().enumerate() {
            assert_eq!(
                s.vertex_defects[i].0.get(axis),
                s.vertex_defects[j].0.get(axis)
            );
        }
    }
}

#[test]
fn flat_rectangle_is_filled() {
    let l = lat(8);
    let f = face(Color::G, 2, 5, 4);
    let s = extract_syndrome(&z_error(l, &[f])).unwrap();
    let d = FractonDecoder::new(0).decode(&l, &s).unwrap();
    let faces = neutralizing_faces(&l, &d.clusters[0]).unwrap();
    // Lowered to the plane below, then filled: the correction equals the
    // error up to a stabilizer, and here it is a closed box minus the error.
    assert_eq!(membrane_corners(&l, &faces), s.vertex_defects);
    assert!(!exhaustive_logical_failure(&residual(&l, &z_error(l, &[f]), 0)).unwrap());
}

#[test]
fn vertical_pairs_annihilate_on_projection() {
    let l = lat(8);
    let f = face(Color::B, 2, 3, 4);
    let e = z_error(l, &[f]);
    let s = extract_syndrome(&e).unwrap();
    let d = FractonDecoder::new(0).decode(&l, &s).unwrap();
    assert_eq!(d.clusters.len(), 1);
    let faces = neutralizing_faces(&l, &d.clusters[0]).unwrap();
    // No membrane at the projection plane: the correction is the error.
    let mut frame = PauliFrame::identity(l);
    frame.toggle_all(Sector::Z, faces);
    assert_eq!(frame, e);
}

#[test]
fn stacked_errors_are_cleared() {
    let l = lat(8);
    let e = z_error(l, &[face(Color::G, 1, 1, 1), face(Color::G, 1, 1, 3)]);
    let s = extract_syndrome(&e).unwrap();
    assert_eq!(s.vertex_defects.len(), 8);
    for k in [0, 2] {
        let r = residual(&l, &e, k);
        assert!(extract_syndrome(&r).unwrap().is_empty());
        assert!(!exhaustive_logical_failure(&r).unwrap());
    }
}

#[test]
fn odd_plane_is_a_symmetry_violation() {
    let l = lat(6);
    let s = Syndrome::from_parts(vec![v3(0, 0, 0), v3(1, 0, 0), v3(2, 0, 0)], vec![]);
    assert!(matches!(
        decode_z(&l, &s, 0),
        Err(FractonError::SymmetryViolation { count: 1, .. })
    ));
}

#[test]
fn broken_involution_is_rejected() {
    let partners = [vec![1, 0], vec![1, 1], vec![1, 0]];
    assert!(matches!(
        MatchContext::new(partners, 0),
        Err(FractonError::ClusterInvariant(_))
    ));
}

#[test]
fn two_defects_alone_are_paired_in_either_mode() {
    let l = lat(6);
    let defects = [v3(0, 0, 0), v3(3, 0, 0)];
    assert_eq!(
        match_axis(&l, &defects, Axis::Y, WeightMode::Manhattan).unwrap(),
        vec![1, 0]
    );
    let ctx = MatchContext::new([vec![1, 0], vec![1, 0], vec![1, 0]], 0).unwrap();
    assert_eq!(
        match_axis(&l, &defects, Axis::Y, WeightMode::Reweighted(&ctx)).unwrap(),
        vec![1, 0]
    );
}

#[test]
fn reweight_special_cases() {
    // Corners of one xy face: a=(0,0), b=(1,0), c=(0,1), d=(1,1) at z=0.
    let l = lat(6);
    let defects = [v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 0)];
    let (a, b, c, d) = (0, 1, 2, 3);
    let x = vec![c, d, a, b];
    let y = vec![b, a, d, c];
    // z-matching pairs along x: the same pairs as the y-matching.
    let ctx = MatchContext::new([x.clone(), y.clone(), y.clone()], 0).unwrap();
    // x-edge a-c: y-partners b, d at separation 1; a^z = b != c.
    assert_eq!(reweight(&l, &defects, &ctx, Axis::X, a, c), 1 + 1);
    // z-edge a-b: a^x = c, b^x = d; a^y = b is the other endpoint, so only
    // the x term counts.
    assert_eq!(reweight(&l, &defects, &ctx, Axis::Z, a, b), 1 + 1);
    // z-edge a-d: the partners c, b and b, c sit diagonally, 2 apart.
    assert_eq!(reweight(&l, &defects, &ctx, Axis::Z, a, d), 2 + 2);
    // Symmetric in the endpoints.
    for axis in Axis::ALL {
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(
                        reweight(&l, &defects, &ctx, axis, i, j),
                        reweight(&l, &defects, &ctx, axis, j, i)
                    );
                }
            }
        }
    }
}

#[test]
fn reweighting_breaks_the_aligned_line_tie() {
    // An xy face next to a two-face yz strip. On the plane z = 2 the six
    // defects admit an incorrect pairing, bridging the two errors, with the
    // same Manhattan weight as the correct one.
    let l = lat(8);
    let e = z_error(
        l,
        &[
            face(Color::G, 2, 2, 2),
            face(Color::B, 4, 2, 2),
            face(Color::B, 4, 3, 2),
        ],
    );
    let s = extract_syndrome(&e).unwrap();
    let defects = &s.vertex_defects;
    assert_eq!(defects.len(), 8);
    let from_a = |i: usize| defects[i].0.x < 4;

    let plane: Vec<usize> = (0..defects.len())
        .filter(|&i| defects[i].0.z == 2)
        .collect();
    assert_eq!(plane.len(), 6);
    let prior = match_all(&l, defects, WeightMode::Manhattan, 0).unwrap();
    let best = |w: &dyn Fn(usize, usize) -> u32| {
        let (mut correct, mut wrong) = (u32::MAX, u32::MAX);
        for m in all_matchings(&plane) {
            let total: u32 = m.iter().map(|&(i, j)| w(i, j)).sum();
            if m.iter().all(|&(i, j)| from_a(i) == from_a(j)) {
                correct = correct.min(total);
            } else {
                wrong = wrong.min(total);
            }
        }
        (correct, wrong)
    };
    let (c0, w0) = best(&|i, j| sep(&l, defects[i], defects[j]));
    assert_eq!(c0, w0);
    let (c1, w1) = best(&|i, j| reweight(&l, defects, &prior, Axis::Z, i, j));
    assert!(c1 < w1, "correct {c1} vs incorrect {w1}");

    let ctx = FractonDecoder::new(1).match_defects(&l, &s).unwrap();
    for &i in &plane {
        assert_eq!(from_a(i), from_a(ctx.partner(Axis::Z, i)));
    }
}

#[test]
fn random_errors_are_always_cleared() {
    for (l, p, trials) in [(4, 0.06, 300), (8, 0.04, 100)] {
        let lattice = lat(l);
        for k in [0, 2] {
            for t in 0..trials {
                let spec = NoiseSpec::new(p, Sector::Z, derive_seed(31 + k as u64, t)).unwrap();
                let e = sample(&spec, lattice);
                let s = extract_syndrome(&e).unwrap();
                assert!(s.plane_parity_violations(&lattice).is_empty());
                let d = FractonDecoder::new(k).decode(&lattice, &s).unwrap();
                d.context.check_involution().unwrap();
                let r = e.composed(&d.correction);
                assert!(
                    extract_syndrome(&r).unwrap().is_empty(),
                    "L={l} k={k} t={t}"
                );
            }
        }
    }
}

#[test]
fn filled_membrane_has_the_projected_corners() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let l = lat(10);
    for _ in 0..300 {
        // Random clusters of projected points built from random rectangles.
        let mut points = Vec::new();
        for _ in 0..rng.gen_range(1..4) {
            let (x0, y0) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let (x1, y1) = (x0 + rng.gen_range(1..4), y0 + rng.gen_range(1..4));
            points.extend([(x0, y0), (x1, y0), (x0, y1), (x1, y1)]);
        }
        let mut segments = Vec::new();
        for (i, &(x0, y0)) in points.iter().enumerate() {
            // Rectangles list corners so that i ^ 2 shares x.
            if i % 4 < 2 {
                let (_, y1) = points[i + 2];
                segments.push((x0, y0, y1));
            }
        }
        let coords: Vec<Coord3> = points.iter().map(|&(x, y)| Coord3 { x, y, z: 3 }).collect();
        let window = Window::around(&l, &coords);
        let faces = fill_interior(&window, 3, &segments).unwrap();
        let mut want: Vec<VertexId> = coords.iter().map(|&c| VertexId(c)).collect();
        want.sort_unstable();
        assert_eq!(membrane_corners(&l, &faces), odd_multiplicity(want));
        assert!(faces
            .iter()
            .all(|f| f.orientation == Color::with_normal(Axis::Z)));
    }
}

#[test]
fn open_boundary_is_non_neutral() {
    let l = lat(8);
    let coords = [Coord3 { x: 1, y: 1, z: 0 }, Coord3 { x: 1, y: 3, z: 0 }];
    let window = Window::around(&l, &coords);
    assert!(matches!(
        fill_interior(&window, 0, &[(1, 1, 3)]),
        Err(FractonError::NonNeutral(_))
    ));
}

#[test]
fn plane_members_partition_the_defects() {
    let l = lat(6);
    let spec = NoiseSpec::new(0.05, Sector::Z, 9).unwrap();
    let s = extract_syndrome(&sample(&spec, l)).unwrap();
    for axis in Axis::ALL {
        let planes = plane_members(&l, &s.vertex_defects, axis);
        assert_eq!(
            planes.iter().map(Vec::len).sum::<usize>(),
            s.vertex_defects.len()
        );
        assert!(planes.iter().all(|p| p.len() % 2 == 0));
    }
}
