use serde::{Deserialize, Serialize};

use super::{HarnessError, PointResult};

/// Crossing of the curves of two sizes, if they cross inside the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCrossing {
    pub small: usize,
    pub large: usize,
    pub crossing: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    /// Median over the size pairs that cross.
    pub crossing: f64,
    /// Smallest and largest pairwise crossing.
    pub spread: (f64, f64),
    pub pairs: Vec<PairCrossing>,
}

/// Where the larger size's curve rises through the smaller one's.
///
/// The crossing is bracketed by the first pair of grid points where
/// `f_large - f_small` goes from negative to positive; grid points where the
/// curves coincide in between are skipped, so runs of equal rates (typically
/// both zero) never count as a crossing. If the curves coincide exactly on
/// grid points inside the bracket, their mean is returned. Otherwise each
/// curve is taken as linear across the bracket and the two lines are
/// intersected; wider fitting windows reach into the curved tails and bias
/// the intersection.
fn pair_crossing(ps: &[f64], small: &[f64], large: &[f64]) -> Option<f64> {
    let diff: Vec<f64> = small.iter().zip(large).map(|(a, b)| b - a).collect();
    let signed: Vec<usize> = (0..ps.len()).filter(|&i| diff[i] != 0.0).collect();
    let (i, j) = signed
        .windows(2)
        .map(|w| (w[0], w[1]))
        .find(|&(i, j)| diff[i] < 0.0 && diff[j] > 0.0)?;
    if j > i + 1 {
        return Some(ps[i + 1..j].iter().sum::<f64>() / (j - i - 1) as f64);
    }
    Some(ps[i] - diff[i] * (ps[j] - ps[i]) / (diff[j] - diff[i]))
}

/// Threshold from the pairwise crossings of the failure-rate curves.
pub fn estimate_threshold(points: &[PointResult]) -> Result<ThresholdEstimate, HarnessError> {
    let mut sizes: Vec<usize> = points.iter().map(|p| p.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(HarnessError::InsufficientData(format!(
            "need at least 2 sizes, got {}",
            sizes.len()
        )));
    }
    let curve = |l: usize| {
        let mut c: Vec<(f64, f64)> = points
            .iter()
            .filter(|p| p.size == l)
            .map(|p| (p.p, p.failure_rate))
            .collect();
        c.sort_by(|a, b| a.0.total_cmp(&b.0));
        c
    };
    let mut pairs = Vec::new();
    for (a, &small) in sizes.iter().enumerate() {
        for &large in &sizes[a + 1..] {
            let (cs, cl) = (curve(small), curve(large));
            let ps: Vec<f64> = cs.iter().map(|c| c.0).collect();
            if ps.len() < 3 || ps != cl.iter().map(|c| c.0).collect::<Vec<_>>() {
                return Err(HarnessError::InsufficientData(format!(
                    "sizes {small} and {large} need a shared grid of at least 3 rates"
                )));
            }
            let fs: Vec<f64> = cs.iter().map(|c| c.1).collect();
            let fl: Vec<f64> = cl.iter().map(|c| c.1).collect();
            pairs.push(PairCrossing {
                small,
                large,
                crossing: pair_crossing(&ps, &fs, &fl),
            });
        }
    }
    let mut found: Vec<f64> = pairs.iter().filter_map(|p| p.crossing).collect();
    if found.is_empty() {
        return Err(HarnessError::NoCrossing);
    }
    found.sort_by(f64::total_cmp);
    let m = found.len();
    let crossing = if m % 2 == 1 {
        found[m / 2]
    } else {
        (found[m / 2 - 1] + found[m / 2]) / 2.0
    };
    Ok(ThresholdEstimate {
        crossing,
        spread: (found[0], found[m - 1]),
        pairs,
    })
}
