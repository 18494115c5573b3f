use serde::{Deserialize, Serialize};

use super::weight::WaypointGrid;
use super::LineonError;
use crate::code::Syndrome;
use crate::lattice::{CellId, Color, Coord3, Lattice, PlaneId};
use crate::matching::{mwpm_certified, DEFAULT_NEIGHBORS};

/// Edge weights for the per-plane matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineonWeights {
    /// Periodic Manhattan distance in the plane.
    Manhattan,
    /// Manhattan distance plus one per turn made outside a waypoint cell.
    CornerPenalty,
}

/// How waypoints enter the matching graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaypointMode {
    /// Waypoints only waive turn penalties inside the pair weights.
    Compact,
    /// Each waypoint also contributes two twin vertices joined by a zero-weight
    /// edge, so it can either stay idle or relay exactly one route. The optimal
    /// total equals the compact one because relayed routes never beat the
    /// direct weights, which already turn for free at every waypoint.
    Twins,
}

/// The defects of one dual plane. Defects of the two colors other than the
/// plane's are conserved there and must be paired; defects of the plane's own
/// color are waypoints.
#[derive(Debug, Clone)]
pub struct PlaneProblem {
    pub plane: PlaneId,
    pub conserved: Vec<(CellId, Color)>,
    pub waypoints: Vec<CellId>,
    /// Position of each conserved defect in the syndrome's cell-defect list.
    pub defect_index: Vec<usize>,
    grid: WaypointGrid,
}

impl PlaneProblem {
    pub fn new(
        lattice: &Lattice,
        plane: PlaneId,
        conserved: Vec<(CellId, Color)>,
        waypoints: Vec<CellId>,
    ) -> Self {
        let defect_index = (0..conserved.len()).collect();
        Self::with_indices(lattice, plane, conserved, waypoints, defect_index)
    }

    fn with_indices(
        lattice: &Lattice,
        plane: PlaneId,
        conserved: Vec<(CellId, Color)>,
        waypoints: Vec<CellId>,
        defect_index: Vec<usize>,
    ) -> Self {
        debug_assert!(plane.dual);
        let (p, q) = plane.axis.others();
        let grid = WaypointGrid::new(
            lattice.size(),
            waypoints.iter().map(|c| (c.0.get(p), c.0.get(q))),
        );
        PlaneProblem {
            plane,
            conserved,
            waypoints,
            defect_index,
            grid,
        }
    }

    /// In-plane coordinates along the two axes of `plane.axis.others()`.
    #[inline]
    pub fn in_plane(&self, c: Coord3) -> (u32, u32) {
        let (p, q) = self.plane.axis.others();
        (c.get(p), c.get(q))
    }

    pub fn manhattan(&self, a: Coord3, b: Coord3) -> u32 {
        let l = self.grid.side() as u32;
        let (a, b) = (self.in_plane(a), self.in_plane(b));
        let sep = |x: u32, y: u32| {
            let d = x.abs_diff(y);
            d.min(l - d)
        };
        sep(a.0, b.0) + sep(a.1, b.1)
    }

    pub fn corner_weight(&self, a: Coord3, b: Coord3) -> u32 {
        self.grid.weight(self.in_plane(a), self.in_plane(b))
    }

    fn weight(&self, weights: LineonWeights, a: Coord3, b: Coord3) -> u32 {
        match weights {
            LineonWeights::Manhattan => self.manhattan(a, b),
            LineonWeights::CornerPenalty => self.corner_weight(a, b),
        }
    }
}

/// Cheapest path cost between `a` and `b` in the plane, with a unit penalty
/// for every turn made in a cell that holds no waypoint.
pub fn corner_penalty_weight(plane: &PlaneProblem, a: Coord3, b: Coord3) -> u32 {
    plane.corner_weight(a, b)
}

/// Split the cell defects of a syndrome over the `3L` dual planes, in the
/// order of [`Lattice::planes`].
pub fn plane_problems(lattice: &Lattice, syndrome: &Syndrome) -> Vec<PlaneProblem> {
    let l = lattice.size();
    let mut conserved = vec![Vec::new(); 3 * l];
    let mut indices = vec![Vec::new(); 3 * l];
    let mut waypoints = vec![Vec::new(); 3 * l];
    for (i, &(cell, color)) in syndrome.cell_defects.iter().enumerate() {
        for plane in dual_planes_through(cell) {
            let slot = plane.axis.index() * l + plane.offset as usize;
            if plane.color() == color {
                waypoints[slot].push(cell);
            } else {
                conserved[slot].push((cell, color));
                indices[slot].push(i);
            }
        }
    }
    lattice
        .planes(true)
        .map(|plane| {
            let slot = plane.axis.index() * l + plane.offset as usize;
            PlaneProblem::with_indices(
                lattice,
                plane,
                std::mem::take(&mut conserved[slot]),
                std::mem::take(&mut waypoints[slot]),
                std::mem::take(&mut indices[slot]),
            )
        })
        .collect()
}

fn dual_planes_through(cell: CellId) -> impl Iterator<Item = PlaneId> {
    crate::lattice::Axis::ALL
        .into_iter()
        .map(move |axis| PlaneId {
            axis,
            offset: cell.0.get(axis),
            dual: true,
        })
}

/// A pairing of two conserved defects of one plane (indices into
/// [`PlaneProblem::conserved`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePair {
    pub a: usize,
    pub b: usize,
    pub weight: u32,
    /// Waypoints relaying the route, in order from `a` to `b`. Only the twin
    /// construction records relays.
    pub via: Vec<CellId>,
}

/// Minimum-weight pairing of the conserved defects of one plane.
pub fn decode_plane(
    plane: &PlaneProblem,
    weights: LineonWeights,
    mode: WaypointMode,
) -> Result<Vec<PlanePair>, LineonError> {
    let nc = plane.conserved.len();
    if nc % 2 == 1 {
        return Err(LineonError::SymmetryViolation {
            plane: plane.plane,
            count: nc,
        });
    }
    let relays = mode == WaypointMode::Twins && weights == LineonWeights::CornerPenalty;
    let nw = if relays { plane.waypoints.len() } else { 0 };
    let cell = |i: usize| -> Coord3 {
        if i < nc {
            plane.conserved[i].0 .0
        } else {
            plane.waypoints[(i - nc) / 2].0
        }
    };
    let n = nc + 2 * nw;
    let twins = |i: usize, j: usize| i >= nc && j >= nc && (i - nc) / 2 == (j - nc) / 2;
    let weight = |i: usize, j: usize| -> i64 {
        if twins(i, j) {
            0
        } else {
            plane.weight(weights, cell(i), cell(j)) as i64
        }
    };
    let lower = |i: usize, j: usize| -> i64 {
        if twins(i, j) {
            0
        } else {
            plane.manhattan(cell(i), cell(j)) as i64
        }
    };
    let matching = mwpm_certified(n, weight, lower, DEFAULT_NEIGHBORS)?;
    let partner = matching.partners(n);

    let mut out = Vec::with_capacity(nc / 2);
    for a in 0..nc {
        let mut via = Vec::new();
        let mut total = weight(a, partner[a]);
        let mut cur = partner[a];
        while cur >= nc {
            let twin = cur - nc;
            via.push(plane.waypoints[twin / 2]);
            let sibling = nc + (twin ^ 1);
            cur = partner[sibling];
            total += weight(sibling, cur);
        }
        if a < cur {
            out.push(PlanePair {
                a,
                b: cur,
                weight: total as u32,
                via,
            });
        }
    }
    Ok(out)
}
