//! Validated operators that transport defects.
//!
//! Every move is built from a fixed template (a straight lineon string, an
//! L-shaped split, or up to two rectangular Z membranes) and then checked:
//! the syndrome of the produced face set must be exactly "remove the defects
//! at the initial positions, create them at the final positions".
//!
//! Templates never cross the cut of a [`Window`], so a set of moves confined to
//! one window is a planar, topologically trivial operator.

use std::collections::HashMap;

use super::syndrome::{defect_mask, sparse_cell_masks, sparse_vertex_defects, CellMask};
use super::CodeError;
use crate::lattice::{Axis, CellId, Color, Coord3, FaceId, Lattice, VertexId};

/// Unwrapped coordinates along one axis, cut just below `anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisWindow {
    anchor: u32,
    size: u32,
}

impl AxisWindow {
    pub fn new(lattice: &Lattice, anchor: u32) -> Self {
        AxisWindow {
            anchor: anchor % lattice.size() as u32,
            size: lattice.size() as u32,
        }
    }

    /// Window whose anchor sits one step below the first occupied coordinate
    /// after the widest run of unoccupied ones. The occupied set then spans
    /// offsets `1..` and the anchor is free whenever any coordinate is.
    pub fn around(lattice: &Lattice, coords: impl IntoIterator<Item = u32>) -> Self {
        let l = lattice.size() as u32;
        let mut cs: Vec<u32> = coords.into_iter().collect();
        cs.sort_unstable();
        cs.dedup();
        if cs.is_empty() {
            return AxisWindow::new(lattice, 0);
        }
        // Gap that wraps from the last coordinate to the first.
        let mut best_gap = cs[0] + l - cs[cs.len() - 1] - 1;
        let mut start = cs[0];
        for w in cs.windows(2) {
            let gap = w[1] - w[0] - 1;
            if gap > best_gap {
                best_gap = gap;
                start = w[1];
            }
        }
        AxisWindow::new(lattice, (start + l - 1) % l)
    }

    #[inline]
    pub fn anchor(&self) -> u32 {
        self.anchor
    }

    #[inline]
    pub fn offset(&self, c: u32) -> u32 {
        (c + self.size - self.anchor) % self.size
    }

    #[inline]
    pub fn coord(&self, offset: u32) -> u32 {
        (self.anchor + offset) % self.size
    }
}

/// One [`AxisWindow`] per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub axes: [AxisWindow; 3],
}

impl Window {
    pub fn around(lattice: &Lattice, points: &[Coord3]) -> Self {
        Window {
            axes: Axis::ALL.map(|a| AxisWindow::around(lattice, points.iter().map(|p| p.get(a)))),
        }
    }

    #[inline]
    pub fn axis(&self, a: Axis) -> &AxisWindow {
        &self.axes[a.index()]
    }

    /// The window's anchor point, one step below the occupied box on every
    /// axis.
    pub fn anchor(&self) -> Coord3 {
        Coord3 {
            x: self.axes[0].anchor,
            y: self.axes[1].anchor,
            z: self.axes[2].anchor,
        }
    }
}

/// A requested defect transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSpec {
    /// Move a lineon of `color` along its axis with an X string of
    /// `color`-faces.
    Lineon {
        color: Color,
        from: CellId,
        to: CellId,
    },
    /// Split a lineon of `color` at `from` into its two complementary colors,
    /// each sent along its own axis: `to.0` receives the first color of
    /// [`Color::others`], `to.1` the second.
    Split {
        color: Color,
        from: CellId,
        to: (CellId, CellId),
    },
    /// Move two vertex defects sharing their `axis` coordinate to the plane
    /// `axis = target`, keeping their other coordinates.
    VertexPair {
        from: [VertexId; 2],
        axis: Axis,
        target: u32,
    },
}

/// Face indices between cell offsets `a` and `b` along a window: the faces at
/// base offsets `min+1 ..= max`.
fn string_offsets(a: u32, b: u32) -> std::ops::RangeInclusive<u32> {
    (a.min(b) + 1)..=a.max(b)
}

/// X string of `color` faces carrying a lineon from `from` to `to`.
pub fn lineon_string(
    lattice: &Lattice,
    window: &Window,
    color: Color,
    from: CellId,
    to: CellId,
) -> Result<Vec<FaceId>, CodeError> {
    let axis = color.normal();
    let (p, q) = axis.others();
    if from.0.get(p) != to.0.get(p) || from.0.get(q) != to.0.get(q) {
        return Err(CodeError::UnreachableMove(format!(
            "{color} lineon cannot travel from {} to {} (moves along {axis} only)",
            from.0, to.0
        )));
    }
    let _ = lattice;
    let w = window.axis(axis);
    let (a, b) = (w.offset(from.0.get(axis)), w.offset(to.0.get(axis)));
    Ok(string_offsets(a, b)
        .map(|t| FaceId {
            orientation: color,
            base: from.0.with(axis, w.coord(t)),
        })
        .collect())
}

/// Z on a rectangle of faces normal to `normal` at `normal = fixed`, spanning
/// vertex coordinates `a.1 .. a.2` along axis `a.0` and `b.1 .. b.2` along
/// `b.0` (window-relative, never crossing the cut). Its vertex syndrome is the
/// rectangle's four corners.
pub fn rect_membrane(
    window: &Window,
    normal: Axis,
    fixed: u32,
    a: (Axis, u32, u32),
    b: (Axis, u32, u32),
) -> Vec<FaceId> {
    let color = Color::with_normal(normal);
    let wa = window.axis(a.0);
    let wb = window.axis(b.0);
    let (a0, a1) = (wa.offset(a.1), wa.offset(a.2));
    let (b0, b1) = (wb.offset(b.1), wb.offset(b.2));
    let mut faces = Vec::with_capacity((a0.abs_diff(a1) * b0.abs_diff(b1)) as usize);
    let base = Coord3::default().with(normal, fixed);
    for i in a0.min(a1)..a0.max(a1) {
        for j in b0.min(b1)..b0.max(b1) {
            faces.push(FaceId {
                orientation: color,
                base: base.with(a.0, wa.coord(i)).with(b.0, wb.coord(j)),
            });
        }
    }
    faces
}

fn vertex_pair_faces(
    lattice: &Lattice,
    window: &Window,
    from: [VertexId; 2],
    axis: Axis,
    target: u32,
) -> Result<Vec<FaceId>, CodeError> {
    let [u, v] = from;
    if u.0.get(axis) != v.0.get(axis) || u == v {
        return Err(CodeError::UnreachableMove(format!(
            "vertex defects {} and {} do not share a distinct {axis}-plane",
            u.0, v.0
        )));
    }
    let _ = lattice;
    let level = u.0.get(axis);
    let (p, q) = axis.others();
    let mut faces = Vec::new();
    // Leg along p at q = u.q, then leg along q at p = v.p; they meet at the
    // corner (v.p, u.q) whose two defects cancel.
    if u.0.get(p) != v.0.get(p) {
        faces.extend(rect_membrane(
            window,
            q,
            u.0.get(q),
            (p, u.0.get(p), v.0.get(p)),
            (axis, level, target),
        ));
    }
    if u.0.get(q) != v.0.get(q) {
        faces.extend(rect_membrane(
            window,
            p,
            v.0.get(p),
            (q, u.0.get(q), v.0.get(q)),
            (axis, level, target),
        ));
    }
    Ok(faces)
}

/// Build and validate the operator for `spec`. The returned faces carry X for
/// lineon moves and Z for vertex moves.
pub fn move_defects(
    lattice: &Lattice,
    window: &Window,
    spec: MoveSpec,
) -> Result<Vec<FaceId>, CodeError> {
    match spec {
        MoveSpec::Lineon { color, from, to } => {
            let faces = lineon_string(lattice, window, color, from, to)?;
            let mut want: HashMap<Coord3, CellMask> = HashMap::new();
            *want.entry(from.0).or_default() ^= defect_mask(color);
            *want.entry(to.0).or_default() ^= defect_mask(color);
            check_cells(lattice, &faces, want, &spec)?;
            Ok(faces)
        }
        MoveSpec::Split { color, from, to } => {
            let (v, w) = color.others();
            let mut faces = lineon_string(lattice, window, v, from, to.0)?;
            faces.extend(lineon_string(lattice, window, w, from, to.1)?);
            let mut want: HashMap<Coord3, CellMask> = HashMap::new();
            *want.entry(from.0).or_default() ^= defect_mask(color);
            *want.entry(to.0 .0).or_default() ^= defect_mask(v);
            *want.entry(to.1 .0).or_default() ^= defect_mask(w);
            check_cells(lattice, &faces, want, &spec)?;
            Ok(faces)
        }
        MoveSpec::VertexPair { from, axis, target } => {
            let faces = vertex_pair_faces(lattice, window, from, axis, target)?;
            let mut want: Vec<VertexId> = Vec::with_capacity(4);
            if from[0].0.get(axis) != target {
                for v in from {
                    want.push(v);
                    want.push(VertexId(v.0.with(axis, target)));
                }
            }
            want.sort_unstable();
            let got = sparse_vertex_defects(lattice, &faces);
            if got != want {
                return Err(CodeError::MoveMismatch(format!("{spec:?}")));
            }
            Ok(faces)
        }
    }
}

fn check_cells(
    lattice: &Lattice,
    faces: &[FaceId],
    mut want: HashMap<Coord3, CellMask>,
    spec: &MoveSpec,
) -> Result<(), CodeError> {
    want.retain(|_, m| *m != 0);
    if sparse_cell_masks(lattice, faces) != want {
        return Err(CodeError::MoveMismatch(format!("{spec:?}")));
    }
    Ok(())
}
