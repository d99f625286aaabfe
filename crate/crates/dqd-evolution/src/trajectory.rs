use dqd_channel::ChannelTrajectory;
use dqd_measures::UpperPairing;
use dqd_model::linalg::C;
use dqd_model::TwoQubitState;
use rayon::prelude::*;

use crate::apply::{apply_product_channel, QubitChannel};
use crate::report::{correlation_report, CorrelationReport};
use crate::EvolutionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Frame {
    /// c → |c|: each dot's Larmor precession is removed.
    #[default]
    CoRotating,
    Lab,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvolveOptions {
    pub frame: Frame,
    pub pairing: UpperPairing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTrajectory {
    pub times: Vec<f64>,
    pub p: Vec<f64>,
    pub c: Vec<C>,
    pub states: Vec<TwoQubitState>,
    pub reports: Vec<CorrelationReport>,
}

impl CorrelationTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// g values; +∞ where only the numerator survives and NaN where g is undefined.
    pub fn g(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.g.value()).collect()
    }

    pub fn ds_lower(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.bounds.ds_lower).collect()
    }

    pub fn ds_upper(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.bounds.ds_upper).collect()
    }

    pub fn rescaled_lower(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.bounds.rescaled_lower).collect()
    }

    pub fn rescaled_upper(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.bounds.rescaled_upper).collect()
    }

    pub fn concurrence(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.concurrence).collect()
    }
}

fn frame_c(c: C, frame: Frame) -> C {
    match frame {
        Frame::CoRotating => C::new(c.norm(), 0.0),
        Frame::Lab => c,
    }
}

/// Evolves ρ₀ under Λ₁(t)⊗Λ₂(t) on the common time grid of both channels.
pub fn evolve_pair(
    rho0: &TwoQubitState,
    first: &ChannelTrajectory,
    second: &ChannelTrajectory,
    opts: &EvolveOptions,
) -> Result<CorrelationTrajectory, EvolutionError> {
    if first.times != second.times {
        return Err(EvolutionError::GridMismatch);
    }
    let n = first.len();
    let rows: Vec<Result<(TwoQubitState, CorrelationReport), EvolutionError>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let at = |ch: &ChannelTrajectory| {
                QubitChannel::new(ch.p[i], frame_c(ch.c[i], opts.frame)).map_err(|_| {
                    EvolutionError::CpAtTime {
                        index: i,
                        t: ch.times[i],
                        p: ch.p[i],
                        c_abs: ch.c[i].norm(),
                    }
                })
            };
            let state = apply_product_channel(rho0, &at(first)?, &at(second)?);
            let report = correlation_report(&state, opts.pairing)?;
            Ok((state, report))
        })
        .collect();
    let mut states = Vec::with_capacity(n);
    let mut reports = Vec::with_capacity(n);
    for row in rows {
        let (s, r) = row?;
        states.push(s);
        reports.push(r);
    }
    Ok(CorrelationTrajectory {
        times: first.times.clone(),
        p: first.p.clone(),
        c: first.c.iter().map(|&z| frame_c(z, opts.frame)).collect(),
        states,
        reports,
    })
}

/// Identical dots: the same channel acts on both qubits.
pub fn evolve(
    rho0: &TwoQubitState,
    traj: &ChannelTrajectory,
    opts: &EvolveOptions,
) -> Result<CorrelationTrajectory, EvolutionError> {
    evolve_pair(rho0, traj, traj, opts)
}

/// Divides a series by its first value.
pub fn normalized(series: &[f64]) -> Option<Vec<f64>> {
    let first = *series.first()?;
    if first == 0.0 || !first.is_finite() {
        return None;
    }
    Some(series.iter().map(|v| v / first).collect())
}
