use dqd_model::DotParameters;
use num_complex::Complex64 as C;

/// compute_channel refuses results with |c| > 1 − p + this margin.
pub const CP_ERROR_MARGIN: f64 = 1e-4;
/// verify_channel_cp tolerates this much rounding below zero.
const CP_REPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelTrajectory {
    pub times: Vec<f64>,
    /// Spin-flip probability.
    pub p: Vec<f64>,
    /// Multiplier of the single-qubit coherence ⟨↑|ρ|↓⟩.
    pub c: Vec<C>,
    pub dot: DotParameters,
    /// Times at or beyond this value carry only the slowly varying part of the average.
    pub secular_from: Option<f64>,
    /// Size of the discarded fast part at `secular_from`.
    pub secular_tail: Option<f64>,
}

impl ChannelTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The same channel seen in the frame that follows each dot's own precession:
    /// c is replaced by |c|. This is a local z-rotation, so every correlation
    /// measure is unchanged.
    pub fn co_rotating(&self) -> Self {
        Self {
            c: self.c.iter().map(|z| C::new(z.norm(), 0.0)).collect(),
            ..self.clone()
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let dp = self.p.iter().zip(&other.p).map(|(a, b)| (a - b).abs());
        let dc = self.c.iter().zip(&other.c).map(|(a, b)| (a - b).norm());
        dp.chain(dc).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpReport {
    pub passed: bool,
    /// Smallest of p, 1 − p and 1 − p − |c| over the trajectory.
    pub worst_margin: f64,
    pub worst_index: usize,
    pub worst_time: f64,
}

pub fn verify_channel_cp(traj: &ChannelTrajectory) -> CpReport {
    let mut report = CpReport {
        passed: true,
        worst_margin: f64::INFINITY,
        worst_index: 0,
        worst_time: traj.times.first().copied().unwrap_or(0.0),
    };
    for (i, (&p, z)) in traj.p.iter().zip(&traj.c).enumerate() {
        let margin = p.min(1.0 - p).min(1.0 - p - z.norm());
        if margin < report.worst_margin || margin.is_nan() {
            report.worst_margin = margin;
            report.worst_index = i;
            report.worst_time = traj.times[i];
        }
    }
    report.passed = report.worst_margin >= -CP_REPORT_TOL;
    report
}
