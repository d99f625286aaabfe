mod apply;
mod crossings;
mod extrema;
mod report;
mod trajectory;

pub use apply::{apply_channel, apply_product_channel, QubitChannel, CP_TOL};
pub use crossings::{
    find_g_crossings, find_g_crossings_with, Direction, KinkEvent, CROSSING_DEADBAND, ROOT_TOL,
};
pub use extrema::{find_extrema, ExtremaOptions, Extremum, ExtremumKind};
pub use report::{correlation_report, CorrelationReport};
pub use trajectory::{
    evolve, evolve_pair, normalized, CorrelationTrajectory, EvolveOptions, Frame,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvolutionError {
    #[error("channel (p = {p}, |c| = {c_abs}) is not completely positive")]
    NotCompletelyPositive { p: f64, c_abs: f64 },
    #[error("channel at index {index} (t = {t} ns) is not completely positive: p = {p}, |c| = {c_abs}")]
    CpAtTime { index: usize, t: f64, p: f64, c_abs: f64 },
    #[error("the two channels are sampled on different time grids")]
    GridMismatch,
    #[error(transparent)]
    Measure(#[from] dqd_measures::MeasureError),
}
