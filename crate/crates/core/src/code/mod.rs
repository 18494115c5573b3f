//! Stabilizers, Pauli frames, syndromes, logical operators and validated
//! defect moves of the X-cube model.

mod frame;
mod logical;
mod moves;
mod syndrome;


pub use frame::{stabilizer_cell, stabilizer_vertex, PauliFrame, Sector};
pub use logical::{
    canonical_logicals, conjugate_logical, exhaustive_logical_failure, logical_failure,
    straight_string, LogicalOperator, StringLabel,
};
pub use moves::{lineon_string, move_defects, rect_membrane, AxisWindow, MoveSpec, Window};
pub(crate) use syndrome::odd_multiplicity;
pub use syndrome::{
    defect_mask, extract_syndrome, mask_color, sparse_cell_masks, sparse_vertex_defects, CellMask,
    Syndrome,
};

use crate::lattice::Coord3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("cell {cell} shows violation mask {mask:#05b}, which no X error can produce")]
    StructuralFault { cell: Coord3, mask: u8 },
    #[error(
        "residual is not syndrome-free ({vertex_defects} vertex, {cell_defects} cell defects)"
    )]
    ResidualSyndrome {
        vertex_defects: usize,
        cell_defects: usize,
    },
    #[error("unreachable move: {0}")]
    UnreachableMove(String),
    #[error("move produced an unexpected syndrome: {0}")]
    MoveMismatch(String),
}
