/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959964;

/// Wilson score interval at 95% for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let f = failures as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (f + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z / denom * (f * (1.0 - f) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}
