use dqd_channel::{compute_channel_auto, ChannelOptions};
use dqd_evolution::{
    evolve, find_extrema, find_g_crossings, CorrelationTrajectory, EvolveOptions, ExtremaOptions,
    Extremum, ExtremumKind,
};
use dqd_model::{DotParameters, TwoQubitState};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::integrate::{simpson, window_mean};
use crate::MagError;

/// Concurrence at or below this counts as zero.
pub const ESD_ZERO: f64 = 1e-9;
/// Consecutive zero samples needed to call entanglement dead.
pub const ESD_RUN: usize = 5;
const INITIAL_DISCORD_MIN: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MValue {
    /// From the lower rescaled-discord bound; this is the reported M.
    pub m_lower: f64,
    pub m_upper: f64,
    pub bounds_coincide: bool,
}

fn uniform_grid(t0: f64, t1: f64, step: f64) -> Result<Vec<f64>, MagError> {
    if !(step > 0.0 && t1 > t0) {
        return Err(MagError::BadGrid(format!("[{t0}, {t1}] with step {step}")));
    }
    let n = ((t1 - t0) / step).round() as usize;
    if ((n as f64) * step - (t1 - t0)).abs() > 1e-9 * (t1 - t0) {
        return Err(MagError::BadGrid(format!("step {step} does not divide [{t0}, {t1}]")));
    }
    Ok((0..=n).map(|i| t0 + i as f64 * step).collect())
}

/// M = (1/D(0)) ∫₀^window D(t) dt over the samples of `ct` up to `window`.
pub fn m_from_trajectory(ct: &CorrelationTrajectory, window: f64) -> Result<MValue, MagError> {
    let end = ct.times.partition_point(|&t| t <= window + 1e-9);
    if ct.times.first() != Some(&0.0) || (ct.times[end - 1] - window).abs() > 1e-9 {
        return Err(MagError::BadGrid(format!("trajectory does not span [0, {window}] ns")));
    }
    let t = &ct.times[..end];
    let integral = |d: Vec<f64>| -> Result<f64, MagError> {
        if d[0] < INITIAL_DISCORD_MIN {
            return Err(MagError::ZeroInitialDiscord);
        }
        Ok(simpson(t, &d[..end])? / d[0])
    };
    let lower = integral(ct.rescaled_lower())?;
    let upper = integral(ct.rescaled_upper())?;
    Ok(MValue {
        m_lower: lower,
        m_upper: upper,
        bounds_coincide: ct.reports[..end].iter().all(|r| r.bounds.coincide),
    })
}

pub fn m_of_b(
    rho0: &TwoQubitState,
    dot: &DotParameters,
    window: f64,
    step: f64,
    channel: &ChannelOptions,
    evolve_opts: &EvolveOptions,
) -> Result<MValue, MagError> {
    let times = uniform_grid(0.0, window, step)?;
    let ch = compute_channel_auto(dot, &times, channel)?;
    m_from_trajectory(&evolve(rho0, &ch, evolve_opts)?, window)
}

/// First local minimum of g and the first local maximum after it.
pub fn g_extrema(ct: &CorrelationTrajectory) -> (Option<Extremum>, Option<Extremum>) {
    let ext = find_extrema(&ct.times, &ct.g(), &ExtremaOptions::default());
    let min = ext.iter().position(|e| e.kind == ExtremumKind::Min);
    match min {
        None => (None, None),
        Some(i) => (
            Some(ext[i]),
            ext[i + 1..].iter().find(|e| e.kind == ExtremumKind::Max).copied(),
        ),
    }
}

/// First time the concurrence is zero and stays zero for ESD_RUN samples.
pub fn esd_time(times: &[f64], concurrence: &[f64]) -> Option<f64> {
    let mut run = 0;
    for (i, &c) in concurrence.iter().enumerate() {
        if c <= ESD_ZERO {
            run += 1;
            if run == ESD_RUN {
                return Some(times[i + 1 - ESD_RUN]);
            }
        } else {
            run = 0;
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Metrics {
    pub m: bool,
    pub g_extrema: bool,
    pub kinks: bool,
    pub esd: bool,
    pub d_longtime: bool,
}

impl Default for Metrics {
    fn default() -> Self {
        Self {
            m: true,
            g_extrema: true,
            kinks: true,
            esd: true,
            d_longtime: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepSettings {
    pub metrics: Metrics,
    /// Integration window of M, ns.
    pub m_window: f64,
    /// Short grid (M, extrema, kinks, ESD): 0..short_t_max with short_step.
    pub short_t_max: f64,
    pub short_step: f64,
    /// Averaging window of the long-time discord, ns.
    pub long_from: f64,
    pub long_to: f64,
    pub long_step: f64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            metrics: Metrics::default(),
            m_window: 20.0,
            short_t_max: 60.0,
            short_step: 0.02,
            long_from: 4000.0,
            long_to: 6000.0,
            long_step: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub b: f64,
    pub m: Option<MValue>,
    pub g_min: Option<Extremum>,
    pub g_max: Option<Extremum>,
    pub kink_times: Vec<f64>,
    pub esd_time: Option<f64>,
    pub d_longtime: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// Mean rescaled discord (lower bound) over [from, to].
pub fn d_longtime(
    rho0: &TwoQubitState,
    dot: &DotParameters,
    settings: &SweepSettings,
    channel: &ChannelOptions,
    evolve_opts: &EvolveOptions,
) -> Result<f64, MagError> {
    let times = uniform_grid(settings.long_from, settings.long_to, settings.long_step)?;
    let ch = compute_channel_auto(dot, &times, channel)?;
    let ct = evolve(rho0, &ch, evolve_opts)?;
    window_mean(&ct.times, &ct.rescaled_lower(), settings.long_from, settings.long_to)
        .ok_or_else(|| MagError::BadGrid("empty long-time window".into()))
}

fn sweep_row(
    rho0: &TwoQubitState,
    dot: &DotParameters,
    settings: &SweepSettings,
    channel: &ChannelOptions,
    evolve_opts: &EvolveOptions,
) -> Result<SweepRow, MagError> {
    let mt = &settings.metrics;
    let mut row = SweepRow {
        b: dot.b_field,
        m: None,
        g_min: None,
        g_max: None,
        kink_times: Vec::new(),
        esd_time: None,
        d_longtime: None,
    };
    if mt.m || mt.g_extrema || mt.kinks || mt.esd {
        let t_max = settings.short_t_max.max(settings.m_window);
        let times = uniform_grid(0.0, t_max, settings.short_step)?;
        let ch = compute_channel_auto(dot, &times, channel)?;
        let ct = evolve(rho0, &ch, evolve_opts)?;
        if mt.m {
            row.m = Some(m_from_trajectory(&ct, settings.m_window)?);
        }
        if mt.g_extrema {
            (row.g_min, row.g_max) = g_extrema(&ct);
        }
        if mt.kinks {
            row.kink_times = find_g_crossings(&ct).iter().map(|k| k.t_cross).collect();
        }
        if mt.esd {
            row.esd_time = esd_time(&ct.times, &ct.concurrence());
        }
    }
    if mt.d_longtime {
        row.d_longtime = Some(d_longtime(rho0, dot, settings, channel, evolve_opts)?);
    }
    Ok(row)
}

/// One row per field, computed in parallel and assembled in field order.
pub fn sweep(
    rho0: &TwoQubitState,
    dot: &DotParameters,
    fields: &[f64],
    settings: &SweepSettings,
    channel: &ChannelOptions,
    evolve_opts: &EvolveOptions,
) -> Result<SweepTable, MagError> {
    if fields.is_empty() {
        return Err(MagError::EmptyFieldList);
    }
    if fields.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MagError::BadGrid("fields must be strictly increasing".into()));
    }
    let rows: Result<Vec<SweepRow>, MagError> = fields
        .par_iter()
        .map(|&b| sweep_row(rho0, &dot.with_field(b), settings, channel, evolve_opts))
        .collect();
    Ok(SweepTable { rows: rows? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn esd_needs_a_run_of_zeros() {
        let t: Vec<f64> = (0..12).map(|i| i as f64).collect();
        let c = [0.5, 0.2, 0.0, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(esd_time(&t, &c), Some(5.0));
        assert_eq!(esd_time(&t, &c[..9]), None);
        assert_eq!(esd_time(&t, &[0.0; 12]), Some(0.0));
    }

    #[test]
    fn grids_must_divide_evenly() {
        assert_eq!(uniform_grid(0.0, 20.0, 0.02).unwrap().len(), 1001);
        assert!(uniform_grid(0.0, 1.0, 0.3).is_err());
        assert!(uniform_grid(0.0, 1.0, 0.0).is_err());
    }
}
