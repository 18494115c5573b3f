//! Decoder for X errors, whose defects are lineons living in cells.
//!
//! Each of the `3L` dual planes conserves the parity of two lineon colors.
//! Those defects are paired by minimum-weight matching, plane by plane; the
//! union of all pairings splits the defects into clusters, and every cluster
//! is annihilated by an explicit operator built from validated moves.

mod cluster;
mod neutralize;
mod plane;
mod weight;

#[cfg(test)]
mod tests;

pub use cluster::{form_clusters, CellCluster, PairEdge};
pub use neutralize::{neutralize_lineon, neutralizing_faces};
pub use plane::{
    corner_penalty_weight, decode_plane, plane_problems, LineonWeights, PlanePair, PlaneProblem,
    WaypointMode,
};
pub use weight::{turn_penalty_search, WaypointGrid};

use crate::code::{CodeError, PauliFrame, Sector, Syndrome};
use crate::lattice::{Coord3, Lattice, PlaneId};
use crate::matching::MatchingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineonError {
    #[error("symmetry violation: plane {plane:?} holds {count} conserved defects")]
    SymmetryViolation { plane: PlaneId, count: usize },
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("cluster invariant broken: {0}")]
    ClusterInvariant(String),
    #[error("cluster color counts {counts:?} differ in parity")]
    LemmaViolation { counts: [usize; 3] },
    #[error("defects fused to mask {mask:#05b} off their line at {cell}")]
    BadFusion { cell: Coord3, mask: u8 },
    #[error("non-neutral cluster: {0}")]
    NonNeutral(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineonDecoder {
    pub weights: LineonWeights,
    pub waypoints: WaypointMode,
}

impl Default for LineonDecoder {
    fn default() -> Self {
        LineonDecoder {
            weights: LineonWeights::CornerPenalty,
            waypoints: WaypointMode::Compact,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LineonDecoding {
    pub correction: PauliFrame,
    pub clusters: Vec<CellCluster>,
}

impl LineonDecoder {
    pub fn new(weights: LineonWeights) -> Self {
        LineonDecoder {
            weights,
            ..Default::default()
        }
    }

    /// All plane pairings as edges between positions in
    /// `syndrome.cell_defects`.
    pub fn pair_edges(
        &self,
        lattice: &Lattice,
        syndrome: &Syndrome,
    ) -> Result<Vec<PairEdge>, LineonError> {
        let mut edges = Vec::new();
        for problem in plane_problems(lattice, syndrome) {
            for pair in decode_plane(&problem, self.weights, self.waypoints)? {
                edges.push(PairEdge {
                    a: problem.defect_index[pair.a],
                    b: problem.defect_index[pair.b],
                    matching: problem.plane.color(),
                });
            }
        }
        Ok(edges)
    }

    /// Correct the cell defects of `syndrome`; vertex defects are ignored.
    pub fn decode(
        &self,
        lattice: &Lattice,
        syndrome: &Syndrome,
    ) -> Result<LineonDecoding, LineonError> {
        let edges = self.pair_edges(lattice, syndrome)?;
        let clusters = form_clusters(&syndrome.cell_defects, &edges);
        let mut correction = PauliFrame::identity(*lattice);
        for cluster in &clusters {
            cluster.check_pairing()?;
            cluster.check_color_parity()?;
            correction.toggle_all(Sector::X, neutralizing_faces(lattice, cluster)?);
        }
        Ok(LineonDecoding {
            correction,
            clusters,
        })
    }
}

/// X correction for the cell defects of `syndrome`.
pub fn decode_x(
    lattice: &Lattice,
    syndrome: &Syndrome,
    weights: LineonWeights,
) -> Result<PauliFrame, LineonError> {
    Ok(LineonDecoder::new(weights)
        .decode(lattice, syndrome)?
        .correction)
}
