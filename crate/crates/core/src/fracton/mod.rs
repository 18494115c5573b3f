//! Decoder for Z errors, whose defects are fractons living on vertices.
//!
//! Every primal plane conserves the parity of its vertex defects. Defects are
//! paired plane by plane in the x-, y- and z-matchings; optional further
//! rounds re-weight each matching by how far apart the defects' partners in
//! the other two matchings lie. Connected components of the final pairing are
//! lowered onto one plane and closed off with a membrane.

mod cluster;
mod matching;
mod neutralize;

#[cfg(test)]
mod tests;

pub use cluster::{form_vertex_clusters, AxisEdge, VertexCluster};
pub use matching::{match_all, match_axis, plane_members, reweight, sep, MatchContext, WeightMode};
pub use neutralize::{fill_interior, membrane_corners, neutralize_fracton, neutralizing_faces};

use crate::code::{CodeError, PauliFrame, Sector, Syndrome};
use crate::lattice::{Lattice, PlaneId};
use crate::matching::MatchingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractonError {
    #[error("symmetry violation: plane {plane:?} holds {count} vertex defects")]
    SymmetryViolation { plane: PlaneId, count: usize },
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("cluster invariant broken: {0}")]
    ClusterInvariant(String),
    #[error("non-neutral cluster: {0}")]
    NonNeutral(String),
}

/// Matching decoder with `iterations` re-weighted rounds after the initial
/// Manhattan round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FractonDecoder {
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct FractonDecoding {
    pub correction: PauliFrame,
    pub clusters: Vec<VertexCluster>,
    pub context: MatchContext,
}

impl FractonDecoder {
    pub fn new(iterations: usize) -> Self {
        FractonDecoder { iterations }
    }

    /// Final partner tables for the vertex defects of `syndrome`.
    pub fn match_defects(
        &self,
        lattice: &Lattice,
        syndrome: &Syndrome,
    ) -> Result<MatchContext, FractonError> {
        let defects = &syndrome.vertex_defects;
        let mut ctx = match_all(lattice, defects, WeightMode::Manhattan, 0)?;
        for k in 1..=self.iterations {
            ctx = match_all(lattice, defects, WeightMode::Reweighted(&ctx), k)?;
        }
        Ok(ctx)
    }

    /// Correct the vertex defects of `syndrome`; cell defects are ignored.
    pub fn decode(
        &self,
        lattice: &Lattice,
        syndrome: &Syndrome,
    ) -> Result<FractonDecoding, FractonError> {
        let context = self.match_defects(lattice, syndrome)?;
        let clusters = form_vertex_clusters(&syndrome.vertex_defects, &context);
        let mut correction = PauliFrame::identity(*lattice);
        for cluster in &clusters {
            cluster.check_pairing()?;
            correction.toggle_all(Sector::Z, neutralizing_faces(lattice, cluster)?);
        }
        Ok(FractonDecoding {
            correction,
            clusters,
            context,
        })
    }
}

/// Z correction for the vertex defects of `syndrome` after `iterations`
/// re-weighted rounds.
pub fn decode_z(
    lattice: &Lattice,
    syndrome: &Syndrome,
    iterations: usize,
) -> Result<PauliFrame, FractonError> {
    Ok(FractonDecoder::new(iterations)
        .decode(lattice, syndrome)?
        .correction)
}
