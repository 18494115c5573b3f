use std::collections::BTreeMap;

use super::{CellCluster, LineonError};
use crate::code::{
    defect_mask, mask_color, move_defects, sparse_cell_masks, CellMask, MoveSpec, PauliFrame,
    Sector, Window,
};
use crate::lattice::{Axis, CellId, Coord3, FaceId, Lattice};

/// X operator whose syndrome is exactly the cluster's defects.
pub fn neutralize_lineon(
    lattice: &Lattice,
    cluster: &CellCluster,
) -> Result<PauliFrame, LineonError> {
    let faces = neutralizing_faces(lattice, cluster)?;
    let mut frame = PauliFrame::identity(*lattice);
    frame.toggle_all(Sector::X, faces);
    Ok(frame)
}

/// Faces of the neutralizing operator (possibly with repeats, which cancel).
///
/// Every defect first moves along its own axis onto the plane of its color
/// through the window anchor, then splits into its two complementary colors,
/// each of which runs to the line where that plane meets another. What
/// arrives on each line fuses into at most one defect of the line's color,
/// which then moves to the anchor, where everything annihilates.
pub fn neutralizing_faces(
    lattice: &Lattice,
    cluster: &CellCluster,
) -> Result<Vec<FaceId>, LineonError> {
    if cluster.members.is_empty() {
        return Ok(Vec::new());
    }
    let points: Vec<Coord3> = cluster.members.iter().map(|(c, _)| c.0).collect();
    let window = Window::around(lattice, &points);
    let origin = window.anchor();
    let mut faces = Vec::new();

    let mut fused: BTreeMap<Coord3, CellMask> = BTreeMap::new();
    for &(cell, color) in &cluster.members {
        let axis = color.normal();
        let on_plane = CellId(cell.0.with(axis, origin.get(axis)));
        faces.extend(move_defects(
            lattice,
            &window,
            MoveSpec::Lineon {
                color,
                from: cell,
                to: on_plane,
            },
        )?);
        let (v, w) = color.others();
        let tv = on_plane.0.with(v.normal(), origin.get(v.normal()));
        let tw = on_plane.0.with(w.normal(), origin.get(w.normal()));
        faces.extend(move_defects(
            lattice,
            &window,
            MoveSpec::Split {
                color,
                from: on_plane,
                to: (CellId(tv), CellId(tw)),
            },
        )?);
        *fused.entry(tv).or_default() ^= defect_mask(v);
        *fused.entry(tw).or_default() ^= defect_mask(w);
    }

    let mut at_origin = fused.remove(&origin).unwrap_or(0);
    for (pos, mask) in fused {
        if mask == 0 {
            continue;
        }
        let off: Vec<Axis> = Axis::ALL
            .into_iter()
            .filter(|&a| pos.get(a) != origin.get(a))
            .collect();
        let color = match (off.as_slice(), mask_color(mask)) {
            ([axis], Ok(Some(c))) if c.normal() == *axis => c,
            _ => return Err(LineonError::BadFusion { cell: pos, mask }),
        };
        faces.extend(move_defects(
            lattice,
            &window,
            MoveSpec::Lineon {
                color,
                from: CellId(pos),
                to: CellId(origin),
            },
        )?);
        at_origin ^= defect_mask(color);
    }
    if at_origin != 0 {
        return Err(LineonError::NonNeutral(format!(
            "mask {at_origin:#05b} left at the anchor {origin}"
        )));
    }

    let mut want: BTreeMap<Coord3, CellMask> = BTreeMap::new();
    for &(cell, color) in &cluster.members {
        *want.entry(cell.0).or_default() ^= defect_mask(color);
    }
    want.retain(|_, m| *m != 0);
    let got: BTreeMap<Coord3, CellMask> = sparse_cell_masks(lattice, &faces).into_iter().collect();
    if got != want {
        return Err(LineonError::NonNeutral(format!(
            "operator syndrome has {} cells, cluster has {}",
            got.len(),
            want.len()
        )));
    }
    Ok(faces)
}
