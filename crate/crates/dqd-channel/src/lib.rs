//! Single-dot decoherence channel {p(t), c(t)} for an electron spin coupled
//! uniformly to a nuclear bath at infinite temperature.
//!
//! The box-model Hamiltonian −Ω S_z + α S·J conserves S_z + J_z and splits into
//! 2×2 blocks spanned by |↑,m⟩ and |↓,m+1⟩. Each block is diagonalized in
//! closed form and the bath average runs over the total nuclear spin J and
//! polarization m.

mod block;
mod exact;
mod legendre;
mod quadrature;
mod trajectory;

pub use block::{block_amplitudes, block_amplitudes_with, BlockAmplitudes, DEGENERATE_ENERGY2};
pub use exact::{exact_sector_channel, EXACT_MAX_STATES};
pub use legendre::gauss_legendre;
pub use quadrature::{
    build_quadrature, build_quadrature_with, compute_channel, compute_channel_auto,
    compute_secular, BathQuadrature, ChannelOptions, NodeRule, MIN_QUADRATURE_NUCLEI,
};
pub use trajectory::{verify_channel_cp, ChannelTrajectory, CpReport, CP_ERROR_MARGIN};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error(transparent)]
    Model(#[from] dqd_model::ModelError),
    #[error("t_max = {t_max} ns exceeds the validity window ħN/A = {window:.1} ns")]
    BeyondValidity { t_max: f64, window: f64 },
    #[error("time grid is invalid: {0}")]
    BadGrid(String),
    #[error("time {t} ns is beyond the quadrature's design time {t_max} ns")]
    UnderResolved { t: f64, t_max: f64 },
    #[error(
        "complete positivity violated at index {index} (t = {t} ns): |c| = {c_abs:.6}, 1 − p = {one_minus_p:.6}; quadrature under-resolved"
    )]
    CpViolation {
        index: usize,
        t: f64,
        c_abs: f64,
        one_minus_p: f64,
    },
    #[error("bath of {n} nuclei is too small for Gaussian statistics (need >= {min}); use the exact sector sum")]
    SmallBath { n: f64, min: f64 },
    #[error("exact sector sum needs an integer nucleus count with at most {max} bath states, got N = {n}")]
    ExactTooLarge { n: f64, max: f64 },
}
