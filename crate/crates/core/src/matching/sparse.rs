//! Exact matching on the complete graph through a sparse candidate graph.
//!
//! Each vertex keeps its nearest neighbors under a cheap lower bound on the
//! weights. The candidate graph is solved exactly; its dual solution is then
//! checked against every remaining pair. An edge with negative reduced cost is
//! added and the candidate graph re-solved. When no pair violates the duals,
//! LP duality certifies the matching as optimal for the complete graph.

use super::blossom::{max_weight_matching, UNMATCHED};
use super::{mwpm, Matching, MatchingError, WeightedGraph};

/// Candidate neighbors per vertex used by the decoders.
pub const DEFAULT_NEIGHBORS: usize = 8;

/// Minimum-weight perfect matching of the complete graph on `0..n`.
///
/// `weight(i, j)` must be symmetric and non-negative; `lower(i, j)` must never
/// exceed it. Both are queried only for `i < j`. Small graphs are solved
/// densely.
pub fn mwpm_certified(
    n: usize,
    weight: impl Fn(usize, usize) -> i64,
    lower: impl Fn(usize, usize) -> i64,
    neighbors: usize,
) -> Result<Matching, MatchingError> {
    if n % 2 == 1 {
        return Err(MatchingError::OddVertexCount(n));
    }
    let mut k = neighbors.max(1);
    if n <= 2 * k + 2 {
        return mwpm(&WeightedGraph::from_fn(n, weight));
    }

    // Exact weights are computed at most once per pair.
    let mut cache = vec![i64::MIN; n * n];
    let mut exact = |i: usize, j: usize| -> Result<i64, MatchingError> {
        let (i, j) = (i.min(j), i.max(j));
        if cache[i * n + j] == i64::MIN {
            let w = weight(i, j);
            if w < 0 {
                return Err(MatchingError::NegativeWeight { i, j, weight: w });
            }
            cache[i * n + j] = w;
        }
        Ok(cache[i * n + j])
    };
    let mut bound = vec![0i64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let b = lower(i, j);
            bound[i * n + j] = b;
            bound[j * n + i] = b;
        }
    }

    let mut candidate = vec![false; n * n];
    let mark = |candidate: &mut [bool], i: usize, j: usize| {
        candidate[i.min(j) * n + i.max(j)] = true;
    };
    let add_nearest = |candidate: &mut Vec<bool>, k: usize| {
        let mut order: Vec<(i64, usize)> = Vec::with_capacity(n);
        for i in 0..n {
            order.clear();
            order.extend((0..n).filter(|&j| j != i).map(|j| (bound[i * n + j], j)));
            let take = k.min(order.len());
            if take < order.len() {
                order.select_nth_unstable(take);
            }
            for &(_, j) in &order[..take] {
                candidate[i.min(j) * n + i.max(j)] = true;
            }
        }
    };
    add_nearest(&mut candidate, k);

    loop {
        let mut edges = Vec::new();
        let mut top = 0;
        for i in 0..n {
            for j in i + 1..n {
                if candidate[i * n + j] {
                    let w = exact(i, j)?;
                    top = top.max(w);
                    edges.push((i, j, w));
                }
            }
        }
        // Maximize sum(c - w) over maximum-cardinality matchings.
        let c = top + 1;
        for e in &mut edges {
            e.2 = c - e.2;
        }
        let sol = max_weight_matching(n, &edges, true);
        if sol.mate.iter().any(|&m| m == UNMATCHED) {
            // The candidate graph has no perfect matching; widen it.
            k *= 2;
            if k >= n - 1 {
                return mwpm(&WeightedGraph::from_fn(n, weight));
            }
            add_nearest(&mut candidate, k);
            continue;
        }

        let mut violated = false;
        for i in 0..n {
            for j in i + 1..n {
                if candidate[i * n + j] {
                    continue;
                }
                // Blossom duals only add to the reduced cost, and a lower
                // bound on w is an upper bound on c - w.
                let optimistic = sol.dualvar[i] + sol.dualvar[j] - 2 * (c - bound[i * n + j]);
                if optimistic >= 0 {
                    continue;
                }
                let w = exact(i, j)?;
                if sol.slack(i, j, c - w) < 0 {
                    mark(&mut candidate, i, j);
                    violated = true;
                }
            }
        }
        if violated {
            continue;
        }

        let mut pairs = Vec::with_capacity(n / 2);
        let mut total_weight = 0;
        for (i, &j) in sol.mate.iter().enumerate() {
            if i < j {
                pairs.push((i, j));
                total_weight += exact(i, j)?;
            }
        }
        return Ok(Matching {
            pairs,
            total_weight,
        });
    }
}
