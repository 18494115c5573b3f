use super::{finish, validate, Matching, MatchingError, WeightedGraph};

/// Largest vertex count accepted by [`brute_force_mwpm`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Exhaustive minimum-weight perfect matching, memoized over the set of
/// still-unmatched vertices. The lowest free vertex is always paired first, so
/// each of the `(n-1)!!` matchings is reachable exactly once.
pub fn brute_force_mwpm(g: &WeightedGraph) -> Result<Matching, MatchingError> {
    if g.len() > BRUTE_FORCE_LIMIT {
        return Err(MatchingError::TooLarge(g.len()));
    }
    validate(g)?;
    let n = g.len();
    let full = (1usize << n) - 1;
    // best[mask] for the vertices in `mask` still free; choice[mask] = partner
    // of the lowest free vertex.
    let mut best = vec![i64::MAX; 1 << n];
    let mut choice = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let sub = best[rest & !(1 << j)];
            if sub == i64::MAX {
                continue;
            }
            let total = sub + g.weight(i, j);
            if total < best[mask] {
                best[mask] = total;
                choice[mask] = j;
            }
        }
    }
    let mut partner = vec![usize::MAX; n];
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = choice[mask];
        partner[i] = j;
        partner[j] = i;
        mask &= !(1 << i) & !(1 << j);
    }
    Ok(finish(g, &partner))
}
