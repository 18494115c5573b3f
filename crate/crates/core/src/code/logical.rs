use std::fmt;

use fixedbitset::FixedBitSet;

use super::frame::{PauliFrame, Sector};
use super::syndrome::extract_syndrome;
use super::CodeError;
use crate::lattice::{Axis, Color, FaceId, Lattice};

/// Where a straight logical string sits: the axis it runs along, the color of
/// the faces it uses, and the two transverse coordinates (in the cyclic order
/// of [`Axis::others`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StringLabel {
    pub along: Axis,
    pub color: Color,
    pub transverse: (u32, u32),
}

impl fmt::Display for StringLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-string along {} at {:?}",
            self.color, self.along, self.transverse
        )
    }
}

#[derive(Debug, Clone)]
pub struct LogicalOperator {
    pub frame: PauliFrame,
    pub sector: Sector,
    pub label: StringLabel,
}

/// A closed straight string of `color` faces running along `along` through
/// the transverse position `transverse`.
pub fn straight_string(
    lattice: &Lattice,
    sector: Sector,
    color: Color,
    along: Axis,
    transverse: (u32, u32),
) -> LogicalOperator {
    let (a, b) = along.others();
    let start = lattice
        .coord(0, 0, 0)
        .with(a, transverse.0)
        .with(b, transverse.1);
    let faces = (0..lattice.size() as u32).map(|t| FaceId {
        orientation: color,
        base: start.with(along, t),
    });
    let mut frame = PauliFrame::identity(*lattice);
    frame.toggle_all(sector, faces);
    LogicalOperator {
        frame,
        sector,
        label: StringLabel {
            along,
            color,
            transverse,
        },
    }
}

/// The canonical anticommuting pair, `[X-type, Z-type]`.
///
/// The X string moves a red lineon once around `y` through the column
/// `x = 0, z = 0`; the Z string is a column of red faces along `z` at
/// `x = 0, y = 0`. They share exactly the red face at the origin.
pub fn canonical_logicals(lattice: &Lattice) -> Vec<LogicalOperator> {
    // Axis::Y.others() = (Z, X), Axis::Z.others() = (X, Y).
    let x_bar = straight_string(lattice, Sector::X, Color::R, Axis::Y, (0, 0));
    let z_bar = straight_string(lattice, Sector::Z, Color::R, Axis::Z, (0, 0));
    vec![x_bar, z_bar]
}

/// The canonical logical that detects failures of a residual in `sector`:
/// the Z-type string for X residuals and vice versa.
pub fn conjugate_logical(lattice: &Lattice, residual_sector: Sector) -> LogicalOperator {
    let mut pair = canonical_logicals(lattice);
    match residual_sector {
        Sector::X => pair.pop().unwrap(),
        Sector::Z => pair.swap_remove(0),
    }
}

/// Whether a syndrome-free residual `error * correction` acts nontrivially on
/// the code space, judged against the given logicals.
pub fn logical_failure(
    residual: &PauliFrame,
    logicals: &[LogicalOperator],
) -> Result<bool, CodeError> {
    ensure_clean(residual)?;
    Ok(logicals.iter().any(|l| residual.anticommutes(&l.frame)))
}

/// Like [`logical_failure`] but against every straight string operator: for
/// X residuals the `6 L^2` Z-strings, for Z residuals the `3 L^2` lineon
/// X-strings. These span all logical classes.
pub fn exhaustive_logical_failure(residual: &PauliFrame) -> Result<bool, CodeError> {
    ensure_clean(residual)?;
    let lattice = residual.lattice();
    let l = lattice.size();
    let l2 = l * l;

    // Z-strings of color c along an in-plane axis a: one parity per
    // (c, a-slot, transverse position). An X face of color c lies on exactly
    // two of them, one per in-plane axis.
    let mut zstrings = FixedBitSet::with_capacity(3 * 2 * l2);
    for f in residual.x_faces() {
        let (a, b) = f.orientation.normal().others();
        for (slot, along) in [(0, a), (1, b)] {
            let (p, q) = along.others();
            let t = f.base.get(p) as usize * l + f.base.get(q) as usize;
            zstrings.toggle((f.orientation.index() * 2 + slot) * l2 + t);
        }
    }
    if !zstrings.is_clear() {
        return Ok(true);
    }

    // Lineon X-strings of color c run along c's normal.
    let mut xstrings = FixedBitSet::with_capacity(3 * l2);
    for f in residual.z_faces() {
        let (p, q) = f.orientation.normal().others();
        let t = f.base.get(p) as usize * l + f.base.get(q) as usize;
        xstrings.toggle(f.orientation.index() * l2 + t);
    }
    Ok(!xstrings.is_clear())
}

fn ensure_clean(residual: &PauliFrame) -> Result<(), CodeError> {
    let s = extract_syndrome(residual)?;
    if s.is_empty() {
        Ok(())
    } else {
        Err(CodeError::ResidualSyndrome {
            vertex_defects: s.vertex_defects.len(),
            cell_defects: s.cell_defects.len(),
        })
    }
}
