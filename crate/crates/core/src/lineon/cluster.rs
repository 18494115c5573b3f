use super::LineonError;
use crate::lattice::{CellId, Color};
use crate::union_find::UnionFind;

/// An edge of the pairing graph: two defects paired on a dual plane of color
/// `matching`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEdge {
    pub a: usize,
    pub b: usize,
    pub matching: Color,
}

/// A connected component of the union of all plane pairings. Edge endpoints
/// index `members`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCluster {
    pub members: Vec<(CellId, Color)>,
    pub edges: Vec<PairEdge>,
}

impl CellCluster {
    pub fn color_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for (_, c) in &self.members {
            counts[c.index()] += 1;
        }
        counts
    }

    /// Every member of color `u` has exactly one partner in each matching of
    /// a color other than `u`, and none in the `u`-matching.
    pub fn check_pairing(&self) -> Result<(), LineonError> {
        let mut seen = vec![[0u8; 3]; self.members.len()];
        for e in &self.edges {
            seen[e.a][e.matching.index()] += 1;
            seen[e.b][e.matching.index()] += 1;
        }
        for (i, (cell, color)) in self.members.iter().enumerate() {
            for m in Color::ALL {
                let want = if m == *color { 0 } else { 1 };
                if seen[i][m.index()] != want {
                    return Err(LineonError::ClusterInvariant(format!(
                        "{color} defect at {} has {} partners in the {m}-matching",
                        cell.0,
                        seen[i][m.index()]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The three color counts of a cluster share one parity.
    pub fn check_color_parity(&self) -> Result<(), LineonError> {
        let counts = self.color_counts();
        if counts[0] % 2 == counts[1] % 2 && counts[1] % 2 == counts[2] % 2 {
            Ok(())
        } else {
            Err(LineonError::LemmaViolation { counts })
        }
    }
}

/// Connected components of the graph on `defects` whose edges are `pairs`
/// (endpoints index `defects`). Components are ordered by their first member
/// and members keep the order of `defects`.
pub fn form_clusters(defects: &[(CellId, Color)], pairs: &[PairEdge]) -> Vec<CellCluster> {
    let n = defects.len();
    let mut uf = UnionFind::new(n);
    for e in pairs {
        uf.union(e.a, e.b);
    }
    let mut slot = vec![usize::MAX; n];
    let mut local = vec![0usize; n];
    let mut clusters: Vec<CellCluster> = Vec::new();
    for (i, &d) in defects.iter().enumerate() {
        let root = uf.find(i);
        if slot[root] == usize::MAX {
            slot[root] = clusters.len();
            clusters.push(CellCluster {
                members: Vec::new(),
                edges: Vec::new(),
            });
        }
        let c = &mut clusters[slot[root]];
        local[i] = c.members.len();
        c.members.push(d);
    }
    for e in pairs {
        let c = &mut clusters[slot[uf.find(e.a)]];
        c.edges.push(PairEdge {
            a: local[e.a],
            b: local[e.b],
            matching: e.matching,
        });
    }
    clusters
}
