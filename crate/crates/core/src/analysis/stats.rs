/// Pearson correlation between `series[..n-lag]` and `series[lag..]`.
/// Returns 0 when either window has zero variance or fewer than two points.
pub fn lag_correlation(series: &[f64], lag: usize) -> f64 {
    if lag >= series.len() || series.len() - lag < 2 {
        return 0.0;
    }
    let a = &series[..series.len() - lag];
    let b = &series[lag..];
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let (mut cov, mut var_a, mut var_b) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - mean_a, y - mean_b);
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    if var_a == 0.0 || var_b == 0.0 {
        return 0.0;
    }
    cov / (var_a * var_b).sqrt()
}

/// Largest [`lag_correlation`] over `min_lag..=max_lag`, with its lag.
pub fn max_lag_correlation(series: &[f64], min_lag: usize, max_lag: usize) -> (usize, f64) {
    (min_lag..=max_lag)
        .map(|lag| (lag, lag_correlation(series, lag)))
        .fold((min_lag, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}
