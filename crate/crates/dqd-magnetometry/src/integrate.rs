use crate::MagError;

/// Composite Simpson rule on a uniform grid with an even number of intervals.
pub fn simpson(times: &[f64], values: &[f64]) -> Result<f64, MagError> {
    let n = times.len();
    if n < 3 || n % 2 == 0 || values.len() != n {
        return Err(MagError::BadGrid(format!(
            "Simpson needs an odd number (>= 3) of samples, got {n}"
        )));
    }
    let h = (times[n - 1] - times[0]) / (n - 1) as f64;
    if times.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0)) {
        return Err(MagError::BadGrid("Simpson needs a uniform grid".into()));
    }
    let mut s = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(s * h / 3.0)
}

/// Mean over [t0, t1] by the trapezoid rule on the samples inside the window.
pub fn window_mean(times: &[f64], values: &[f64], t0: f64, t1: f64) -> Option<f64> {
    let idx: Vec<usize> = (0..times.len())
        .filter(|&i| times[i] >= t0 - 1e-9 && times[i] <= t1 + 1e-9)
        .collect();
    if idx.len() < 2 {
        return None;
    }
    let mut area = 0.0;
    for w in idx.windows(2) {
        let (a, b) = (w[0], w[1]);
        area += 0.5 * (values[a] + values[b]) * (times[b] - times[a]);
    }
    Some(area / (times[*idx.last().unwrap()] - times[idx[0]]))
}
