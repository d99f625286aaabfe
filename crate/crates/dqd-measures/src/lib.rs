mod bell;
mod concurrence;
mod discord;
pub mod eig3;
mod oracle;

pub use bell::{bell_diagonal_discord, g_ratio, BellDiagonalDiscord, GRatio, Regime};
pub use concurrence::concurrence;
pub use discord::{
    discord_bounds, geometric_discord_lower, geometric_discord_upper, rescaled_discord,
    DiscordBounds, UpperPairing, DEGENERACY_GAP, RESCALE,
};
pub use oracle::oracle_one_sided_discord;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("numerical domain error: {0}")]
    Domain(String),
}
