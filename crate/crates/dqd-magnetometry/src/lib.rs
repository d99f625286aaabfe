mod calibration;
mod integrate;
mod sweep;

pub use calibration::{invert_field, CalibrationCurve, FieldEstimate, Quantity};
pub use integrate::{simpson, window_mean};
pub use sweep::{
    d_longtime, esd_time, g_extrema, m_from_trajectory, m_of_b, sweep, MValue, Metrics,
    SweepRow, SweepSettings, SweepTable, ESD_RUN, ESD_ZERO,
};

impl SweepTable {
    /// Calibration curve of one column over the rows where it is defined.
    pub fn curve(&self, quantity: Quantity) -> Result<CalibrationCurve, MagError> {
        let knots = self
            .rows
            .iter()
            .filter_map(|r| {
                let v = match quantity {
                    Quantity::M => r.m.map(|m| m.m_lower),
                    Quantity::GMaxValue => r.g_max.map(|e| e.value),
                    Quantity::GMinValue => r.g_min.map(|e| e.value),
                    Quantity::DLongtime => r.d_longtime,
                };
                v.map(|v| (r.b, v))
            })
            .collect();
        CalibrationCurve::new(quantity, knots)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MagError {
    #[error(transparent)]
    Channel(#[from] dqd_channel::ChannelError),
    #[error(transparent)]
    Evolution(#[from] dqd_evolution::EvolutionError),
    #[error("initial rescaled discord is zero, M is undefined")]
    ZeroInitialDiscord,
    #[error("no magnetic field values given")]
    EmptyFieldList,
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("calibration curve for {0:?} is not monotone; combine the minimum and maximum values instead")]
    NotMonotone(Quantity),
    #[error("measured value {value} outside the calibrated range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
}
