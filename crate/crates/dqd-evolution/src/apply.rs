use dqd_model::linalg::{c as cx, C, M4};
use dqd_model::TwoQubitState;

use crate::EvolutionError;

/// Rounding allowance on p ∈ [0, 1] and |c| ≤ 1 − p.
pub const CP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitChannel {
    pub p: f64,
    pub c: C,
}

impl QubitChannel {
    pub fn new(p: f64, c: C) -> Result<Self, EvolutionError> {
        let margin = (1.0 - p) - c.norm();
        if !(p.is_finite() && c.re.is_finite() && c.im.is_finite())
            || p < -CP_TOL
            || p > 1.0 + CP_TOL
            || margin < -CP_TOL
        {
            return Err(EvolutionError::NotCompletelyPositive { p, c_abs: c.norm() });
        }
        Ok(Self { p, c })
    }

    /// Image of |i⟩⟨j| projected on |a⟩⟨b|.
    fn entry(&self, a: usize, b: usize, i: usize, j: usize) -> C {
        let p = self.p;
        match (i == j, a == b) {
            (true, true) => cx(if a == i { 1.0 - p } else { p }, 0.0),
            (false, false) if a == i && b == j => {
                if i == 0 {
                    self.c
                } else {
                    self.c.conj()
                }
            }
            _ => cx(0.0, 0.0),
        }
    }
}

/// (Λ₁⊗Λ₂)(ρ) for single-qubit channels acting on the first and second qubit.
pub fn apply_product_channel(
    rho0: &TwoQubitState,
    first: &QubitChannel,
    second: &QubitChannel,
) -> TwoQubitState {
    let mut out = M4::zeros();
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b1 in 0..2 {
                for b2 in 0..2 {
                    let mut s = cx(0.0, 0.0);
                    for i1 in 0..2 {
                        for j1 in 0..2 {
                            let k1 = first.entry(a1, b1, i1, j1);
                            if k1 == cx(0.0, 0.0) {
                                continue;
                            }
                            for i2 in 0..2 {
                                for j2 in 0..2 {
                                    let k2 = second.entry(a2, b2, i2, j2);
                                    s += k1 * k2 * rho0.rho[(2 * i1 + i2, 2 * j1 + j2)];
                                }
                            }
                        }
                    }
                    out[(2 * a1 + a2, 2 * b1 + b2)] = s;
                }
            }
        }
    }
    TwoQubitState::new_unchecked(out, rho0.ordering)
}

/// Both dots see the same channel (identical dots).
pub fn apply_channel(rho0: &TwoQubitState, p: f64, c: C) -> Result<TwoQubitState, EvolutionError> {
    let ch = QubitChannel::new(p, c)?;
    Ok(apply_product_channel(rho0, &ch, &ch))
}
