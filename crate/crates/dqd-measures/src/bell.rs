use dqd_model::linalg::{kron, pauli, trace_product};
use dqd_model::TwoQubitState;

use crate::MeasureError;

const REGIME_TOL: f64 = 1e-12;
const G_ZERO: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    GLe1,
    GGe1,
    Boundary,
}

/// |Tr(σx⊗σx ρ)| / |Tr(σz⊗σz ρ)|, kept as a value even when it does not exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GRatio {
    Finite(f64),
    Infinite,
    Undefined,
}

impl GRatio {
    fn from_parts(num: f64, den: f64) -> Self {
        match (num < G_ZERO, den < G_ZERO) {
            (true, true) => GRatio::Undefined,
            (false, true) => GRatio::Infinite,
            _ => GRatio::Finite(num / den),
        }
    }

    /// +∞ for `Infinite`, NaN for `Undefined`.
    pub fn value(self) -> f64 {
        match self {
            GRatio::Finite(g) => g,
            GRatio::Infinite => f64::INFINITY,
            GRatio::Undefined => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalDiscord {
    pub ds: f64,
    pub regime: Regime,
    pub g: GRatio,
}

/// Geometric discord of diag(½−a, a, a, ½−a) with coherence b between |01⟩ and |10⟩.
pub fn bell_diagonal_discord(a: f64, b_abs: f64) -> Result<BellDiagonalDiscord, MeasureError> {
    if !(a.is_finite() && b_abs.is_finite()) || !(0.0..=0.5).contains(&a) {
        return Err(MeasureError::Domain(format!("a = {a} outside [0, 1/2]")));
    }
    let b = b_abs.abs();
    if b > a + 1e-15 {
        return Err(MeasureError::Domain(format!("|b| = {b} exceeds a = {a}")));
    }
    let num = 2.0 * b;
    let den = (1.0 - 4.0 * a).abs();
    let g = GRatio::from_parts(num, den);
    let regime = if (num - den).abs() <= REGIME_TOL {
        Regime::Boundary
    } else if num < den {
        Regime::GLe1
    } else {
        Regime::GGe1
    };
    let ds = match regime {
        Regime::GLe1 => 2.0 * b * b,
        Regime::GGe1 => (0.5 - 2.0 * a).powi(2) + b * b,
        // both branches agree here
        Regime::Boundary => 2.0 * b * b,
    };
    Ok(BellDiagonalDiscord { ds, regime, g })
}

pub fn g_ratio(state: &TwoQubitState) -> GRatio {
    let xx = kron(&pauli(0), &pauli(0));
    let zz = kron(&pauli(2), &pauli(2));
    let num = trace_product(&xx, &state.rho).re.abs();
    let den = trace_product(&zz, &state.rho).re.abs();
    GRatio::from_parts(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dqd_model::{make_state, BellState, StateSpec};

    #[test]
    fn piecewise_examples() {
        let r = bell_diagonal_discord(0.5, 0.5).unwrap();
        assert_eq!(r.regime, Regime::Boundary);
        assert_eq!(r.g, GRatio::Finite(1.0));
        assert!((r.ds - 0.5).abs() < 1e-15);

        let r = bell_diagonal_discord(0.4, 0.4).unwrap();
        assert_eq!(r.regime, Regime::GGe1);
        assert!((r.g.value() - 4.0 / 3.0).abs() < 1e-14);
        assert!((r.ds - 0.25).abs() < 1e-15);

        let r = bell_diagonal_discord(0.1, 0.0).unwrap();
        assert_eq!(r.regime, Regime::GLe1);
        assert_eq!(r.g, GRatio::Finite(0.0));
        assert_eq!(r.ds, 0.0);

        let r = bell_diagonal_discord(0.25, 0.1).unwrap();
        assert_eq!(r.g, GRatio::Infinite);
        assert_eq!(r.regime, Regime::GGe1);
        assert!((r.ds - 0.01).abs() < 1e-15);

        assert_eq!(bell_diagonal_discord(0.25, 0.0).unwrap().g, GRatio::Undefined);
    }

    #[test]
    fn rejects_non_psd() {
        assert!(bell_diagonal_discord(0.2, 0.3).is_err());
        assert!(bell_diagonal_discord(0.7, 0.0).is_err());
        assert!(bell_diagonal_discord(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn g_ratio_examples() {
        let s = make_state(&StateSpec::BellDiagonal { a: 0.4, b: 0.4 }).unwrap();
        assert!((g_ratio(&s).value() - 4.0 / 3.0).abs() < 1e-14);
        let s = make_state(&StateSpec::Bell { which: BellState::PsiMinus }).unwrap();
        assert!((g_ratio(&s).value() - 1.0).abs() < 1e-14);
        assert_eq!(g_ratio(&TwoQubitState::maximally_mixed()), GRatio::Undefined);
    }
}
