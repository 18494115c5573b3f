use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::frame::PauliFrame;
use super::CodeError;
use crate::lattice::{Axis, CellId, Color, Coord3, FaceId, Lattice, PlaneId, VertexId};

/// Bitmask of violated cell stabilizers; bit `c` set means `B_c^c = -1`.
pub type CellMask = u8;

/// Mask of the two stabilizers a defect of `color` violates.
#[inline]
pub fn defect_mask(color: Color) -> CellMask {
    0b111 ^ (1 << color.index())
}

/// Decode a cell mask: `Ok(None)` for no defect, `Ok(Some(color))` for a
/// defect with exactly two violated stabilizers, `Err(mask)` otherwise.
#[inline]
pub fn mask_color(mask: CellMask) -> Result<Option<Color>, CellMask> {
    match mask {
        0 => Ok(None),
        0b110 => Ok(Some(Color::R)),
        0b101 => Ok(Some(Color::G)),
        0b011 => Ok(Some(Color::B)),
        m => Err(m),
    }
}

/// Measured defects. Both lists are kept sorted so that index order is
/// lexicographic coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Syndrome {
    pub vertex_defects: Vec<VertexId>,
    /// Cell defects tagged with their satisfied color.
    pub cell_defects: Vec<(CellId, Color)>,
}

impl Syndrome {
    pub fn is_empty(&self) -> bool {
        self.vertex_defects.is_empty() && self.cell_defects.is_empty()
    }

    pub fn from_parts(
        mut vertex_defects: Vec<VertexId>,
        mut cell_defects: Vec<(CellId, Color)>,
    ) -> Self {
        vertex_defects.sort_unstable();
        cell_defects.sort_unstable();
        Syndrome {
            vertex_defects,
            cell_defects,
        }
    }

    /// Planes whose materialized parity is broken: primal planes with an odd
    /// vertex-defect count and dual planes of color `u` with an odd count of
    /// defects of the other two colors.
    pub fn plane_parity_violations(&self, lattice: &Lattice) -> Vec<PlaneId> {
        let l = lattice.size();
        let mut primal = vec![[0usize; 3]; l];
        for v in &self.vertex_defects {
            for axis in Axis::ALL {
                primal[v.0.get(axis) as usize][axis.index()] += 1;
            }
        }
        let mut dual = vec![[0usize; 3]; l];
        for (c, color) in &self.cell_defects {
            for axis in Axis::ALL {
                if Color::with_normal(axis) != *color {
                    dual[c.0.get(axis) as usize][axis.index()] += 1;
                }
            }
        }
        let mut bad = Vec::new();
        for axis in Axis::ALL {
            for offset in 0..l {
                if primal[offset][axis.index()] % 2 == 1 {
                    bad.push(PlaneId {
                        axis,
                        offset: offset as u32,
                        dual: false,
                    });
                }
                if dual[offset][axis.index()] % 2 == 1 {
                    bad.push(PlaneId {
                        axis,
                        offset: offset as u32,
                        dual: true,
                    });
                }
            }
        }
        bad
    }
}

/// Per-cell violation masks of an X-type face set, densely indexed by site.
fn accumulate_cell_masks(
    lattice: &Lattice,
    faces: impl Iterator<Item = FaceId>,
    masks: &mut [CellMask],
) {
    for f in faces {
        let toggle = defect_mask(f.orientation);
        for c in lattice.face_cells(f) {
            masks[lattice.site_index(c.0)] ^= toggle;
        }
    }
}

/// Measure every stabilizer against `error`.
///
/// Fails with [`CodeError::StructuralFault`] if some cell shows one or three
/// violated colors, which the relation `B^R B^G B^B = 1` forbids.
pub fn extract_syndrome(error: &PauliFrame) -> Result<Syndrome, CodeError> {
    let lattice = error.lattice();
    let vol = lattice.volume();

    let mut vertex_bits = FixedBitSet::with_capacity(vol);
    for f in error.z_faces() {
        for v in lattice.face_corners(f) {
            vertex_bits.toggle(lattice.site_index(v.0));
        }
    }
    let vertex_defects = vertex_bits
        .ones()
        .map(|i| VertexId(lattice.site_at(i)))
        .collect();

    let mut masks = vec![0 as CellMask; vol];
    accumulate_cell_masks(lattice, error.x_faces(), &mut masks);
    let mut cell_defects = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        match mask_color(m) {
            Ok(None) => {}
            Ok(Some(color)) => cell_defects.push((CellId(lattice.site_at(i)), color)),
            Err(mask) => {
                return Err(CodeError::StructuralFault {
                    cell: lattice.site_at(i),
                    mask,
                })
            }
        }
    }
    Ok(Syndrome {
        vertex_defects,
        cell_defects,
    })
}

/// Cell-mask changes produced by X on `faces`, without touching the rest of
/// the lattice. Entries with a zero net mask are dropped.
pub fn sparse_cell_masks(lattice: &Lattice, faces: &[FaceId]) -> HashMap<Coord3, CellMask> {
    let mut out: HashMap<Coord3, CellMask> = HashMap::new();
    for &f in faces {
        let toggle = defect_mask(f.orientation);
        for c in lattice.face_cells(f) {
            *out.entry(c.0).or_default() ^= toggle;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

/// Vertex defects produced by Z on `faces`, computed sparsely and sorted.
pub fn sparse_vertex_defects(lattice: &Lattice, faces: &[FaceId]) -> Vec<VertexId> {
    let mut corners: Vec<VertexId> = faces
        .iter()
        .flat_map(|&f| lattice.face_corners(f))
        .collect();
    corners.sort_unstable();
    odd_multiplicity(corners)
}

/// Keep the elements of a sorted list that occur an odd number of times.
pub(crate) fn odd_multiplicity<T: PartialEq + Copy>(sorted: Vec<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(sorted[i]);
        }
        i = j;
    }
    out
}
