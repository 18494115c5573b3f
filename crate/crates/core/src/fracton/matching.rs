use super::FractonError;
use crate::lattice::{Axis, Lattice, PlaneId, VertexId};
use crate::matching::{mwpm_certified, DEFAULT_NEIGHBORS};

/// Partner of every defect in the latest x-, y- and z-matchings. Entries index
/// the defect list the context was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchContext {
    partners: [Vec<usize>; 3],
    pub iteration: usize,
}

impl MatchContext {
    pub fn new(partners: [Vec<usize>; 3], iteration: usize) -> Result<Self, FractonError> {
        let ctx = MatchContext {
            partners,
            iteration,
        };
        ctx.check_involution()?;
        Ok(ctx)
    }

    #[inline]
    pub fn partner(&self, axis: Axis, i: usize) -> usize {
        self.partners[axis.index()][i]
    }

    pub fn partners(&self, axis: Axis) -> &[usize] {
        &self.partners[axis.index()]
    }

    pub fn len(&self) -> usize {
        self.partners[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Each matching pairs every defect with a distinct defect that pairs
    /// back.
    pub fn check_involution(&self) -> Result<(), FractonError> {
        let n = self.partners[0].len();
        for axis in Axis::ALL {
            let table = &self.partners[axis.index()];
            if table.len() != n {
                return Err(FractonError::ClusterInvariant(format!(
                    "{axis}-matching covers {} of {n} defects",
                    table.len()
                )));
            }
            for (i, &j) in table.iter().enumerate() {
                if j >= n || j == i || table[j] != i {
                    return Err(FractonError::ClusterInvariant(format!(
                        "{axis}-matching is not an involution at defect {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Edge weights for one axis-matching.
#[derive(Debug, Clone, Copy)]
pub enum WeightMode<'a> {
    /// Periodic Manhattan separation.
    Manhattan,
    /// Separation plus the separation of the two defects' partners in the
    /// other matchings of the given context.
    Reweighted(&'a MatchContext),
}

/// Periodic Manhattan separation of two defects.
#[inline]
pub fn sep(lattice: &Lattice, a: VertexId, b: VertexId) -> u32 {
    lattice.manhattan(a.0, b.0)
}

/// Weight of the `axis`-matching edge between defects `i` and `j`.
///
/// With `(b, c) = axis.others()` the weight is
/// `sep(i, j) + min(sep(i^b, j^b), sep(i^c, j^c))`, where `i^b` is the
/// partner of `i` in the `b`-matching. A partner term is dropped when that
/// partner is the other endpoint itself.
pub fn reweight(
    lattice: &Lattice,
    defects: &[VertexId],
    ctx: &MatchContext,
    axis: Axis,
    i: usize,
    j: usize,
) -> u32 {
    let s = sep(lattice, defects[i], defects[j]);
    let (b, c) = axis.others();
    let via = |m: Axis| {
        sep(
            lattice,
            defects[ctx.partner(m, i)],
            defects[ctx.partner(m, j)],
        )
    };
    if ctx.partner(b, i) == j {
        s + via(c)
    } else if ctx.partner(c, i) == j {
        s + via(b)
    } else {
        s + via(b).min(via(c))
    }
}

/// Indices of the defects on each plane normal to `axis`, by offset.
pub fn plane_members(lattice: &Lattice, defects: &[VertexId], axis: Axis) -> Vec<Vec<usize>> {
    let mut planes = vec![Vec::new(); lattice.size()];
    for (i, v) in defects.iter().enumerate() {
        planes[v.0.get(axis) as usize].push(i);
    }
    planes
}

/// Minimum-weight pairing of the defects on every plane normal to `axis`.
/// Returns the partner of each defect.
pub fn match_axis(
    lattice: &Lattice,
    defects: &[VertexId],
    axis: Axis,
    mode: WeightMode<'_>,
) -> Result<Vec<usize>, FractonError> {
    let mut partner = vec![usize::MAX; defects.len()];
    for (offset, members) in plane_members(lattice, defects, axis)
        .into_iter()
        .enumerate()
    {
        if members.len() % 2 == 1 {
            return Err(FractonError::SymmetryViolation {
                plane: PlaneId {
                    axis,
                    offset: offset as u32,
                    dual: false,
                },
                count: members.len(),
            });
        }
        let lower =
            |a: usize, b: usize| sep(lattice, defects[members[a]], defects[members[b]]) as i64;
        let matching = match mode {
            WeightMode::Manhattan => {
                mwpm_certified(members.len(), lower, lower, DEFAULT_NEIGHBORS)?
            }
            WeightMode::Reweighted(ctx) => mwpm_certified(
                members.len(),
                |a, b| reweight(lattice, defects, ctx, axis, members[a], members[b]) as i64,
                lower,
                DEFAULT_NEIGHBORS,
            )?,
        };
        for (a, b) in matching.pairs {
            partner[members[a]] = members[b];
            partner[members[b]] = members[a];
        }
    }
    Ok(partner)
}

/// All three axis-matchings under one weight mode.
pub fn match_all(
    lattice: &Lattice,
    defects: &[VertexId],
    mode: WeightMode<'_>,
    iteration: usize,
) -> Result<MatchContext, FractonError> {
    let partners = [
        match_axis(lattice, defects, Axis::X, mode)?,
        match_axis(lattice, defects, Axis::Y, mode)?,
        match_axis(lattice, defects, Axis::Z, mode)?,
    ];
    MatchContext::new(partners, iteration)
}
