//! Physical parameters, two-qubit states and their Bloch-form diagnostics for a
//! pair of GaAs quantum dots coupled to independent nuclear-spin baths.

mod bloch;
mod params;
mod state;

pub mod linalg;
pub mod sample;

pub use bloch::{
    bell_diagonal_params, bloch_decompose, purity, reconstruct, singlet_triplet_weights,
    BellDiagonalParams, BlochForm, StWeights,
};
pub use params::{DotParameters, PhysicalConstants, HBAR, MU_B};
pub use state::{make_state, BasisOrdering, BellState, StateSpec, TwoQubitState};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
