use super::{FractonError, VertexCluster};
use crate::code::{
    move_defects, odd_multiplicity, sparse_vertex_defects, MoveSpec, PauliFrame, Sector, Window,
};
use crate::lattice::{Axis, Color, Coord3, FaceId, Lattice, VertexId};

/// Z faces normal to `z` at height `level` enclosed by the vertical
/// boundary segments. A segment `(x, y0, y1)` runs along `y` at `x` between
/// the two window coordinates. The fill is a scanline parity count inside
/// `window`, so every row must be crossed an even number of times.
pub fn fill_interior(
    window: &Window,
    level: u32,
    segments: &[(u32, u32, u32)],
) -> Result<Vec<FaceId>, FractonError> {
    let wx = window.axis(Axis::X);
    let wy = window.axis(Axis::Y);
    let mut crossings = Vec::new();
    for &(x, y0, y1) in segments {
        let (a, b) = (wy.offset(y0), wy.offset(y1));
        let xo = wx.offset(x);
        crossings.extend((a.min(b)..a.max(b)).map(|row| (row, xo)));
    }
    crossings.sort_unstable();
    let crossings = odd_multiplicity(crossings);

    let color = Color::with_normal(Axis::Z);
    let mut faces = Vec::new();
    let mut i = 0;
    while i < crossings.len() {
        let row = crossings[i].0;
        let mut j = i;
        while j < crossings.len() && crossings[j].0 == row {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            return Err(FractonError::NonNeutral(format!(
                "boundary is open: row {} is crossed {} times",
                wy.coord(row),
                j - i
            )));
        }
        for pair in crossings[i..j].chunks(2) {
            for xo in pair[0].1..pair[1].1 {
                faces.push(FaceId {
                    orientation: color,
                    base: Coord3 {
                        x: wx.coord(xo),
                        y: wy.coord(row),
                        z: level,
                    },
                });
            }
        }
        i = j;
    }
    Ok(faces)
}

/// Z faces whose vertex syndrome is exactly the cluster.
///
/// Every z-edge pair is lowered to the plane `z = M` just below the cluster,
/// where coinciding defects annihilate. The projected x-edges (segments along
/// `y`) and y-edges (segments along `x`) then form a closed rectilinear
/// boundary whose corners are the surviving defects; Z on the enclosed faces
/// removes them.
pub fn neutralizing_faces(
    lattice: &Lattice,
    cluster: &VertexCluster,
) -> Result<Vec<FaceId>, FractonError> {
    if cluster.members.is_empty() {
        return Ok(Vec::new());
    }
    let points: Vec<Coord3> = cluster.members.iter().map(|v| v.0).collect();
    let window = Window::around(lattice, &points);
    let level = window.axis(Axis::Z).anchor();

    let mut faces = Vec::new();
    for e in cluster.edges_along(Axis::Z) {
        let (u, v) = (cluster.members[e.a], cluster.members[e.b]);
        if u.0.z == level {
            continue;
        }
        faces.extend(move_defects(
            lattice,
            &window,
            MoveSpec::VertexPair {
                from: [u, v],
                axis: Axis::Z,
                target: level,
            },
        )?);
    }

    let segments: Vec<(u32, u32, u32)> = cluster
        .edges_along(Axis::X)
        .map(|e| {
            let (u, v) = (cluster.members[e.a].0, cluster.members[e.b].0);
            (u.x, u.y, v.y)
        })
        .collect();
    faces.extend(fill_interior(&window, level, &segments)?);

    let mut want = cluster.members.clone();
    want.sort_unstable();
    let want = odd_multiplicity(want);
    if sparse_vertex_defects(lattice, &faces) != want {
        return Err(FractonError::NonNeutral(format!(
            "correction for the cluster at {} leaves a residual syndrome",
            cluster.members[0].0
        )));
    }
    Ok(faces)
}

/// Pauli-Z frame annihilating the cluster.
pub fn neutralize_fracton(
    lattice: &Lattice,
    cluster: &VertexCluster,
) -> Result<PauliFrame, FractonError> {
    let mut frame = PauliFrame::identity(*lattice);
    frame.toggle_all(Sector::Z, neutralizing_faces(lattice, cluster)?);
    Ok(frame)
}

/// Vertices whose corner parity under Z on `faces` is odd.
pub fn membrane_corners(lattice: &Lattice, faces: &[FaceId]) -> Vec<VertexId> {
    sparse_vertex_defects(lattice, faces)
}
