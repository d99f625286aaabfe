use dqd_model::{bloch_decompose, purity, BlochForm, TwoQubitState};
use nalgebra::{Matrix3, Vector3};

use crate::eig3::symmetric_eigen3;
use crate::MeasureError;

/// Eigenvalue gap below which the top eigenvector is treated as ambiguous.
pub const DEGENERACY_GAP: f64 = 1e-10;
const COINCIDE_TOL: f64 = 1e-9;
/// ½(1 − √3/2), the prefactor of the rescaled discord.
pub const RESCALE: f64 = 0.5 * (1.0 - 0.866_025_403_784_438_6);

/// Which side's optimal direction feeds which L matrix in the upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpperPairing {
    /// K_x with L_y and K_y with L_x.
    #[default]
    Crossed,
    /// K_x with L_x and K_y with L_y.
    Matched,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordBounds {
    pub ds_lower: f64,
    pub ds_upper: f64,
    pub rescaled_lower: f64,
    pub rescaled_upper: f64,
    pub coincide: bool,
    /// Set when a top eigenvalue of K_x or K_y was degenerate within the gap.
    pub degenerate: bool,
}

struct Side {
    trace: f64,
    top: f64,
    // eigenvectors whose eigenvalue lies within the gap of the top one
    tops: Vec<Vector3<f64>>,
}

fn side(k: &Matrix3<f64>) -> Side {
    let (vals, vecs) = symmetric_eigen3(k);
    let top = vals[2];
    let tops = (0..3)
        .rev()
        .filter(|&i| top - vals[i] < DEGENERACY_GAP)
        .map(|i| vecs.column(i).into_owned())
        .collect();
    Side {
        trace: k.trace(),
        top,
        tops,
    }
}

fn k_matrices(b: &BlochForm) -> (Matrix3<f64>, Matrix3<f64>) {
    let kx = b.x * b.x.transpose() + b.t * b.t.transpose();
    let ky = b.y * b.y.transpose() + b.t.transpose() * b.t;
    (kx, ky)
}

/// Tr L − l for L = |v⟩⟨v| + |w⟩⟨w|, the smaller nonzero eigenvalue of a rank-2 matrix.
fn residual(v: &Vector3<f64>, w: &Vector3<f64>) -> f64 {
    let l = v * v.transpose() + w * w.transpose();
    let (vals, _) = symmetric_eigen3(&l);
    (l.trace() - vals[2]).max(0.0)
}

fn lower_from(b: &BlochForm) -> f64 {
    let (kx, ky) = k_matrices(b);
    let (sx, sy) = (side(&kx), side(&ky));
    0.25 * (sx.trace - sx.top).max(sy.trace - sy.top).max(0.0)
}

/// ¼·max(Tr K_x − k_x, Tr K_y − k_y) with K_x = xxᵀ + TTᵀ and K_y = yyᵀ + TᵀT.
pub fn geometric_discord_lower(state: &TwoQubitState) -> f64 {
    lower_from(&bloch_decompose(state))
}

/// Returns the upper bound and whether a degenerate top eigenvector was met.
fn upper_from(b: &BlochForm, pairing: UpperPairing) -> (f64, bool) {
    let (kx, ky) = k_matrices(b);
    let (sx, sy) = (side(&kx), side(&ky));
    let degenerate = sx.tops.len() > 1 || sy.tops.len() > 1;
    // L_y = yyᵀ + Tᵀk̂_x k̂_xᵀ T;  L_x = xxᵀ + T k̂_y k̂_yᵀ Tᵀ
    let l_y = |kx: &Vector3<f64>| residual(&b.y, &(b.t.transpose() * kx));
    let l_x = |ky: &Vector3<f64>| residual(&b.x, &(b.t * ky));
    let best = |vs: &[Vector3<f64>], f: &dyn Fn(&Vector3<f64>) -> f64| {
        vs.iter().map(f).fold(f64::INFINITY, f64::min)
    };
    let (first, second) = match pairing {
        UpperPairing::Crossed => (
            sx.trace - sx.top + best(&sx.tops, &l_y),
            sy.trace - sy.top + best(&sy.tops, &l_x),
        ),
        UpperPairing::Matched => (
            sx.trace - sx.top + best(&sy.tops, &l_x),
            sy.trace - sy.top + best(&sx.tops, &l_y),
        ),
    };
    (0.25 * first.min(second).max(0.0), degenerate)
}

pub fn geometric_discord_upper(state: &TwoQubitState) -> f64 {
    upper_from(&bloch_decompose(state), UpperPairing::Crossed).0
}

/// ½(1 − √3/2)[1 − √(1 − D_S/(2P))], written as k·x/(1 + √(1 − x)) to keep
/// precision when D_S is small.
pub fn rescaled_discord(ds: f64, purity: f64) -> Result<f64, MeasureError> {
    if !(ds.is_finite() && purity.is_finite()) || purity <= 0.0 {
        return Err(MeasureError::Domain(format!("ds = {ds}, purity = {purity}")));
    }
    let x = ds / (2.0 * purity);
    let radicand = 1.0 - x;
    if radicand < -1e-9 {
        return Err(MeasureError::Domain(format!(
            "1 − ds/(2P) = {radicand:.3e} is negative"
        )));
    }
    let x = x.max(0.0);
    Ok(RESCALE * x / (1.0 + radicand.max(0.0).sqrt()))
}

pub fn discord_bounds(
    state: &TwoQubitState,
    pairing: UpperPairing,
) -> Result<DiscordBounds, MeasureError> {
    let b = bloch_decompose(state);
    let p = purity(state);
    let ds_lower = lower_from(&b);
    let (ds_upper, degenerate) = upper_from(&b, pairing);
    Ok(DiscordBounds {
        ds_lower,
        ds_upper,
        rescaled_lower: rescaled_discord(ds_lower, p)?,
        rescaled_upper: rescaled_discord(ds_upper, p)?,
        coincide: (ds_upper - ds_lower).abs() < COINCIDE_TOL,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dqd_model::{make_state, BellState, StateSpec};

    fn st(spec: StateSpec) -> TwoQubitState {
        make_state(&spec).unwrap()
    }

    #[test]
    fn maximally_mixed_has_no_discord() {
        let s = TwoQubitState::maximally_mixed();
        assert_eq!(geometric_discord_lower(&s), 0.0);
        assert_eq!(geometric_discord_upper(&s), 0.0);
    }

    #[test]
    fn bell_states_have_one_half() {
        for which in [
            BellState::PhiPlus,
            BellState::PhiMinus,
            BellState::PsiPlus,
            BellState::PsiMinus,
        ] {
            let s = st(StateSpec::Bell { which });
            assert!((geometric_discord_lower(&s) - 0.5).abs() < 1e-12);
            assert!((geometric_discord_upper(&s) - 0.5).abs() < 1e-12);
            let b = discord_bounds(&s, UpperPairing::Crossed).unwrap();
            assert!(b.degenerate && b.coincide);
        }
    }

    #[test]
    fn werner_one_third_is_one_eighteenth() {
        // T = −𝟙/3: K = 𝟙/9, Tr K − k = 2/9, D = 1/18
        let s = st(StateSpec::Werner { p: 1.0 / 3.0 });
        assert!((geometric_discord_lower(&s) - 1.0 / 18.0).abs() < 1e-14);
        assert!((geometric_discord_upper(&s) - 1.0 / 18.0).abs() < 1e-14);
    }

    #[test]
    fn rescaled_values() {
        assert_eq!(rescaled_discord(0.0, 0.7).unwrap(), 0.0);
        let bell = rescaled_discord(0.5, 1.0).unwrap();
        let k = 1.0 - 3f64.sqrt() / 2.0;
        assert!((bell - 0.5 * k * k).abs() < 1e-16);
        assert!((bell - 0.0089745).abs() < 1e-7);
        // Werner p = 1/3: ds = 1/18, P = 1/3, x = 1/12
        let w = rescaled_discord(1.0 / 18.0, 1.0 / 3.0).unwrap();
        let direct = 0.5 * k * (1.0 - (1.0f64 - 1.0 / 12.0).sqrt());
        assert!((w - direct).abs() < 1e-17);
        assert!((w - 2.851_843e-3).abs() < 1e-9);
    }

    #[test]
    fn rescaled_domain() {
        assert!(rescaled_discord(0.6, 0.25).is_err());
        // tiny overshoot from rounding is clamped
        let v = rescaled_discord(0.5 + 1e-12, 0.25).unwrap();
        assert!((v - RESCALE).abs() < 1e-12);
    }
}
