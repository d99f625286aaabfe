#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremaOptions {
    /// Neighbouring samples closer than this are treated as one plateau.
    pub flat_tol: f64,
    /// Min/max pairs (or an extremum and a series end) differing by less than
    /// this are discarded as noise.
    pub min_prominence: f64,
}

impl Default for ExtremaOptions {
    fn default() -> Self {
        Self {
            flat_tol: 1e-12,
            min_prominence: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Turn {
    lo: usize,
    hi: usize,
    value: f64,
    kind: Option<ExtremumKind>,
}

/// Runs of nearly equal samples become single points.
fn plateaus(values: &[f64], flat_tol: f64) -> Vec<Turn> {
    let mut runs: Vec<Turn> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match runs.last_mut() {
            Some(r) if (v - values[r.hi]).abs() <= flat_tol => r.hi = i,
            _ => runs.push(Turn { lo: i, hi: i, value: v, kind: None }),
        }
    }
    runs
}

fn parabolic(times: &[f64], values: &[f64], i: usize) -> (f64, f64) {
    let (t0, t1, t2) = (times[i - 1], times[i], times[i + 1]);
    let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
    let d01 = (y1 - y0) / (t1 - t0);
    let d12 = (y2 - y1) / (t2 - t1);
    let curv = (d12 - d01) / (t2 - t0);
    if curv == 0.0 || !curv.is_finite() {
        return (t1, y1);
    }
    // y = y1 + d·(t − t1) + curv·(t − t1)(t − t0) in Newton form
    let d = d01 + curv * (t1 - t0);
    let dt = -d / (2.0 * curv);
    let dt = dt.clamp(t0 - t1, t2 - t1);
    (t1 + dt, y1 + d * dt + curv * dt * dt)
}

/// Interior local minima and maxima of a sampled function.
pub fn find_extrema(times: &[f64], values: &[f64], opts: &ExtremaOptions) -> Vec<Extremum> {
    if times.len() < 3 || times.len() != values.len() {
        return Vec::new();
    }
    let runs = plateaus(values, opts.flat_tol);
    // turning points with both series ends kept as anchors
    let mut pts: Vec<Turn> = Vec::new();
    for (k, r) in runs.iter().enumerate() {
        if k == 0 || k + 1 == runs.len() {
            pts.push(*r);
            continue;
        }
        let (a, b) = (runs[k - 1].value, runs[k + 1].value);
        let kind = if r.value > a && r.value > b {
            Some(ExtremumKind::Max)
        } else if r.value < a && r.value < b {
            Some(ExtremumKind::Min)
        } else {
            None
        };
        if kind.is_some() {
            pts.push(Turn { kind, ..*r });
        }
    }

    loop {
        let weakest = (0..pts.len().saturating_sub(1))
            .filter(|&k| pts[k].kind.is_some() || pts[k + 1].kind.is_some())
            .map(|k| (k, (pts[k + 1].value - pts[k].value).abs()))
            .filter(|&(_, d)| d < opts.min_prominence)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((k, _)) = weakest else { break };
        if pts[k].kind.is_some() && pts[k + 1].kind.is_some() {
            pts.drain(k..=k + 1);
        } else if pts[k].kind.is_some() {
            pts.remove(k);
        } else {
            pts.remove(k + 1);
        }
        // removal can leave two extrema of the same kind side by side
        let mut merged: Vec<Turn> = Vec::with_capacity(pts.len());
        for p in pts.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.kind.is_some() && last.kind == p.kind {
                    let keep_new = match p.kind {
                        Some(ExtremumKind::Max) => p.value > last.value,
                        _ => p.value < last.value,
                    };
                    if keep_new {
                        *last = p;
                    }
                    continue;
                }
            }
            merged.push(p);
        }
        pts = merged;
    }

    pts.iter()
        .filter_map(|p| {
            let kind = p.kind?;
            let (t, value) = if p.lo == p.hi {
                parabolic(times, values, p.lo)
            } else {
                (0.5 * (times[p.lo] + times[p.hi]), p.value)
            };
            Some(Extremum { t, value, kind })
        })
        .collect()
}
