/// Samples with |g − 1| below this count as touching unity, not as crossing it.
pub const CROSSING_DEADBAND: f64 = 1e-6;
pub const ROOT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AboveToBelow,
    BelowToAbove,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinkEvent {
    pub t_cross: f64,
    pub direction: Direction,
    /// Right minus left one-sided slope of the accompanying series at t_cross.
    pub slope_jump: f64,
}

fn side(g: f64) -> i8 {
    if !g.is_finite() {
        return if g == f64::INFINITY { 1 } else { 0 };
    }
    if g - 1.0 > CROSSING_DEADBAND {
        1
    } else if 1.0 - g > CROSSING_DEADBAND {
        -1
    } else {
        0
    }
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo) - 1.0;
    while hi - lo > ROOT_TOL * 1e-3 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid) - 1.0;
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Cubic Lagrange interpolant through the four samples nearest [t_i, t_{i+1}].
fn local_interpolant<'a>(times: &'a [f64], values: &'a [f64], i: usize) -> impl Fn(f64) -> f64 + 'a {
    let n = times.len();
    let start = i.saturating_sub(1).min(n.saturating_sub(4));
    let idx: Vec<usize> = (start..(start + 4).min(n)).collect();
    move |t: f64| {
        idx.iter()
            .map(|&k| {
                let w: f64 = idx
                    .iter()
                    .filter(|&&m| m != k)
                    .map(|&m| (t - times[m]) / (times[k] - times[m]))
                    .product();
                w * values[k]
            })
            .sum()
    }
}

fn one_sided_slopes(times: &[f64], series: &[f64], left: usize, right: usize) -> f64 {
    let slope = |a: usize, b: usize| (series[b] - series[a]) / (times[b] - times[a]);
    let l = if left >= 1 { slope(left - 1, left) } else { f64::NAN };
    let r = if right + 1 < times.len() { slope(right, right + 1) } else { f64::NAN };
    r - l
}

/// Roots of g − 1 where g changes side of unity. Each root is bisected on
/// `exact` when given and on a local cubic interpolant otherwise. `series` is
/// the quantity whose slope discontinuity is reported (typically the discord).
pub fn find_g_crossings_with(
    times: &[f64],
    g: &[f64],
    series: &[f64],
    exact: Option<&dyn Fn(f64) -> f64>,
) -> Vec<KinkEvent> {
    let mut events = Vec::new();
    let mut last: Option<(usize, i8)> = None;
    for (i, &v) in g.iter().enumerate() {
        let s = side(v);
        if s == 0 {
            continue;
        }
        if let Some((j, prev)) = last {
            if prev != s {
                let t = match exact {
                    Some(f) => bisect(f, times[j], times[i]),
                    None if g[j..=i].iter().all(|v| v.is_finite()) => {
                        let interp = local_interpolant(times, g, j);
                        bisect(&interp, times[j], times[i])
                    }
                    None => 0.5 * (times[j] + times[i]),
                };
                events.push(KinkEvent {
                    t_cross: t,
                    direction: if prev > 0 {
                        Direction::AboveToBelow
                    } else {
                        Direction::BelowToAbove
                    },
                    slope_jump: one_sided_slopes(times, series, j, i),
                });
            }
        }
        last = Some((i, s));
    }
    events
}

pub fn find_g_crossings(ct: &crate::CorrelationTrajectory) -> Vec<KinkEvent> {
    find_g_crossings_with(&ct.times, &ct.g(), &ct.rescaled_lower(), None)
}
