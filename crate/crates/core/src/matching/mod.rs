//! Exact minimum-weight perfect matching on complete graphs.

mod blossom;
mod brute;
mod sparse;

pub use brute::{brute_force_mwpm, BRUTE_FORCE_LIMIT};
pub use sparse::{mwpm_certified, DEFAULT_NEIGHBORS};

/// Symmetric weights on the complete graph over `0..n`. The diagonal is
/// ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<i64>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            weights: vec![0; n * n],
        }
    }

    /// Build from a weight function evaluated once per unordered pair `i < j`.
    pub fn from_fn(n: usize, mut w: impl FnMut(usize, usize) -> i64) -> Self {
        let mut g = WeightedGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, w(i, j));
            }
        }
        g
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.weights[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, w: i64) {
        self.weights[i * self.n + j] = w;
        self.weights[j * self.n + i] = w;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    /// Pairs `(i, j)` with `i < j`, sorted by `i`.
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: i64,
}

impl Matching {
    /// `partner[v]` for every vertex.
    pub fn partners(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for &(i, j) in &self.pairs {
            out[i] = j;
            out[j] = i;
        }
        out
    }

    /// Whether the pairs partition `0..n`.
    pub fn is_perfect(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &(i, j) in &self.pairs {
            if i >= n || j >= n || i == j || seen[i] || seen[j] {
                return false;
            }
            seen[i] = true;
            seen[j] = true;
        }
        seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingError {
    #[error("odd vertex count {0}: no perfect matching exists")]
    OddVertexCount(usize),
    #[error("graph with {0} vertices is too large for exhaustive matching")]
    TooLarge(usize),
    #[error("negative edge weight {weight} between {i} and {j}")]
    NegativeWeight { i: usize, j: usize, weight: i64 },
}

fn validate(g: &WeightedGraph) -> Result<(), MatchingError> {
    if g.n % 2 == 1 {
        return Err(MatchingError::OddVertexCount(g.n));
    }
    for i in 0..g.n {
        for j in i + 1..g.n {
            let w = g.weight(i, j);
            if w < 0 {
                return Err(MatchingError::NegativeWeight { i, j, weight: w });
            }
        }
    }
    Ok(())
}

fn finish(g: &WeightedGraph, partner: &[usize]) -> Matching {
    let mut pairs = Vec::with_capacity(g.n / 2);
    let mut total_weight = 0;
    for (i, &j) in partner.iter().enumerate() {
        if i < j {
            pairs.push((i, j));
            total_weight += g.weight(i, j);
        }
    }
    Matching {
        pairs,
        total_weight,
    }
}

/// Minimum-weight perfect matching.
///
/// Solved as a maximum-cardinality maximum-weight matching with weights
/// `max_w + 1 - w`: every perfect matching gains the same constant, so the
/// heaviest one under the flipped weights is the lightest under the originals.
pub fn mwpm(g: &WeightedGraph) -> Result<Matching, MatchingError> {
    validate(g)?;
    let n = g.n;
    if n == 0 {
        return Ok(Matching::default());
    }
    if n == 2 {
        return Ok(finish(g, &[1, 0]));
    }
    let mut maxw = 0;
    for i in 0..n {
        for j in i + 1..n {
            maxw = maxw.max(g.weight(i, j));
        }
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, maxw + 1 - g.weight(i, j)));
        }
    }
    let mate = blossom::max_weight_matching(n, &edges, true).mate;
    assert!(
        mate.iter().all(|&m| m != blossom::UNMATCHED),
        "complete graph on an even vertex count left a vertex unmatched"
    );
    Ok(finish(g, &mate))
}

#[cfg(test)]
mod tests;
