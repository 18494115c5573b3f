use super::{FractonError, MatchContext};
use crate::lattice::{Axis, VertexId};
use crate::union_find::UnionFind;

/// Two defects paired in the `axis`-matching, i.e. on a plane normal to
/// `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisEdge {
    pub a: usize,
    pub b: usize,
    pub axis: Axis,
}

/// A connected component of the union of the three axis-matchings. Edge
/// endpoints index `members`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCluster {
    pub members: Vec<VertexId>,
    pub edges: Vec<AxisEdge>,
}

impl VertexCluster {
    /// Every member has exactly one partner per axis-matching, sharing that
    /// axis coordinate.
    pub fn check_pairing(&self) -> Result<(), FractonError> {
        let mut seen = vec![[0u8; 3]; self.members.len()];
        for e in &self.edges {
            let (u, v) = (self.members[e.a], self.members[e.b]);
            if e.a == e.b || u.0.get(e.axis) != v.0.get(e.axis) {
                return Err(FractonError::ClusterInvariant(format!(
                    "{}-edge joins {} and {} off a common plane",
                    e.axis, u.0, v.0
                )));
            }
            seen[e.a][e.axis.index()] += 1;
            seen[e.b][e.axis.index()] += 1;
        }
        for (i, v) in self.members.iter().enumerate() {
            for axis in Axis::ALL {
                if seen[i][axis.index()] != 1 {
                    return Err(FractonError::ClusterInvariant(format!(
                        "defect at {} has {} partners in the {axis}-matching",
                        v.0,
                        seen[i][axis.index()]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn edges_along(&self, axis: Axis) -> impl Iterator<Item = &AxisEdge> + '_ {
        self.edges.iter().filter(move |e| e.axis == axis)
    }
}

/// Connected components of the pairing graph of `ctx` over `defects`.
/// Components are ordered by their first member and members keep the order
/// of `defects`.
pub fn form_vertex_clusters(defects: &[VertexId], ctx: &MatchContext) -> Vec<VertexCluster> {
    let n = defects.len();
    let mut uf = UnionFind::new(n);
    for axis in Axis::ALL {
        for (i, &j) in ctx.partners(axis).iter().enumerate() {
            uf.union(i, j);
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut local = vec![0usize; n];
    let mut clusters: Vec<VertexCluster> = Vec::new();
    for (i, &d) in defects.iter().enumerate() {
        let root = uf.find(i);
        if slot[root] == usize::MAX {
            slot[root] = clusters.len();
            clusters.push(VertexCluster {
                members: Vec::new(),
                edges: Vec::new(),
            });
        }
        let c = &mut clusters[slot[root]];
        local[i] = c.members.len();
        c.members.push(d);
    }
    for axis in Axis::ALL {
        for (i, &j) in ctx.partners(axis).iter().enumerate() {
            if i < j {
                clusters[slot[uf.find(i)]].edges.push(AxisEdge {
                    a: local[i],
                    b: local[j],
                    axis,
                });
            }
        }
    }
    clusters
}
