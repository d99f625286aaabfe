use dqd_measures::{concurrence, discord_bounds, g_ratio, DiscordBounds, GRatio, UpperPairing};
use dqd_model::{
    bell_diagonal_params, purity, singlet_triplet_weights, BellDiagonalParams, StWeights,
    TwoQubitState,
};

use crate::EvolutionError;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub bounds: DiscordBounds,
    pub purity: f64,
    pub g: GRatio,
    pub concurrence: f64,
    pub st_weights: StWeights,
    pub bell_diag: Option<BellDiagonalParams>,
    pub min_eigenvalue: f64,
}

pub fn correlation_report(
    state: &TwoQubitState,
    pairing: UpperPairing,
) -> Result<CorrelationReport, EvolutionError> {
    Ok(CorrelationReport {
        bounds: discord_bounds(state, pairing)?,
        purity: purity(state),
        g: g_ratio(state),
        concurrence: concurrence(state),
        st_weights: singlet_triplet_weights(state),
        bell_diag: bell_diagonal_params(state),
        min_eigenvalue: state.min_eigenvalue(),
    })
}
