use nalgebra::{Matrix3, Vector3};

use crate::linalg::{c, kron, pauli, trace_product, C, M2, M4};
use crate::state::TwoQubitState;

pub const FORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochForm {
    pub x: Vector3<f64>,
    pub y: Vector3<f64>,
    pub t: Matrix3<f64>,
}

pub fn bloch_decompose(state: &TwoQubitState) -> BlochForm {
    let id = M2::identity();
    let rho = &state.rho;
    let x = Vector3::from_fn(|i, _| trace_product(rho, &kron(&pauli(i), &id)).re);
    let y = Vector3::from_fn(|i, _| trace_product(rho, &kron(&id, &pauli(i))).re);
    let t = Matrix3::from_fn(|i, j| trace_product(rho, &kron(&pauli(i), &pauli(j))).re);
    BlochForm { x, y, t }
}

/// ρ = ¼(𝟙⊗𝟙 + Σ xᵢ σᵢ⊗𝟙 + Σ yᵢ 𝟙⊗σᵢ + Σ Tᵢⱼ σᵢ⊗σⱼ)
pub fn reconstruct(b: &BlochForm) -> M4 {
    let id = M2::identity();
    let mut m = M4::identity();
    for i in 0..3 {
        m += kron(&pauli(i), &id).scale(b.x[i]);
        m += kron(&id, &pauli(i)).scale(b.y[i]);
        for j in 0..3 {
            m += kron(&pauli(i), &pauli(j)).scale(b.t[(i, j)]);
        }
    }
    m.scale(0.25)
}

pub fn purity(state: &TwoQubitState) -> f64 {
    trace_product(&state.rho, &state.rho).re
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StWeights {
    pub t_minus: f64,
    pub t_zero: f64,
    pub t_plus: f64,
    pub singlet: f64,
}

impl StWeights {
    pub fn sum(&self) -> f64 {
        self.t_minus + self.t_zero + self.t_plus + self.singlet
    }
}

fn expectation(rho: &M4, v: [C; 4]) -> f64 {
    let mut s = c(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            s += v[i].conj() * rho[(i, j)] * v[j];
        }
    }
    s.re
}

/// Populations of |↓↓⟩, T₀, |↑↑⟩ and the singlet.
pub fn singlet_triplet_weights(state: &TwoQubitState) -> StWeights {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let rho = &state.rho;
    StWeights {
        t_minus: rho[(3, 3)].re,
        t_zero: expectation(rho, [z, c(h, 0.0), c(h, 0.0), z]),
        t_plus: rho[(0, 0)].re,
        singlet: expectation(rho, [z, c(h, 0.0), c(-h, 0.0), z]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalParams {
    pub a: f64,
    pub b: C,
}

/// Reads (a, b) off a state with the pattern diag(½−a, a, a, ½−a) plus a single
/// inner coherence b, in the arrangement named by the state's ordering tag.
/// Returns `None` when the state does not have that form.
pub fn bell_diagonal_params(state: &TwoQubitState) -> Option<BellDiagonalParams> {
    let perm = state.ordering.permutation();
    let r = |k: usize, l: usize| state.rho[(perm[k], perm[l])];
    for k in 0..4 {
        for l in 0..4 {
            let allowed = k == l || (k == 1 && l == 2) || (k == 2 && l == 1);
            if !allowed && r(k, l).norm() > FORM_TOL {
                return None;
            }
        }
    }
    let outer = r(0, 0).re;
    let a = r(1, 1).re;
    if (r(3, 3).re - outer).abs() > FORM_TOL
        || (r(2, 2).re - a).abs() > FORM_TOL
        || (outer + a - 0.5).abs() > FORM_TOL
    {
        return None;
    }
    Some(BellDiagonalParams { a, b: r(1, 2) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::state::{make_state, BellState, StateSpec};

    fn st(spec: StateSpec) -> TwoQubitState {
        make_state(&spec).unwrap()
    }

    #[test]
    fn maximally_mixed_has_zero_bloch_data() {
        let b = bloch_decompose(&TwoQubitState::maximally_mixed());
        assert!(b.x.norm() < 1e-15 && b.y.norm() < 1e-15 && b.t.norm() < 1e-15);
    }

    #[test]
    fn singlet_correlation_matrix() {
        let b = bloch_decompose(&st(StateSpec::Bell {
            which: BellState::PsiMinus,
        }));
        assert!((b.t - Matrix3::from_diagonal_element(-1.0)).norm() < 1e-14);
        assert!(b.x.norm() < 1e-15 && b.y.norm() < 1e-15);
    }

    #[test]
    fn werner_correlation_matrix_is_minus_p() {
        // (1−p)𝟙/4 + p|S₀⟩⟨S₀|: the identity carries no Pauli weight, the
        // singlet contributes T = −𝟙, so T = −p·𝟙 and x = y = 0.
        for p in [0.1, 1.0 / 3.0, 0.7, 1.0] {
            let b = bloch_decompose(&st(StateSpec::Werner { p }));
            assert!((b.t - Matrix3::from_diagonal_element(-p)).norm() < 1e-14);
            assert!(b.x.norm() < 1e-15 && b.y.norm() < 1e-15);
        }
    }

    #[test]
    fn reconstruction_is_identity() {
        let s = st(StateSpec::PhaseFamily { gamma: 0.9 });
        assert!(max_abs_diff(&reconstruct(&bloch_decompose(&s)), &s.rho) < 1e-12);
    }

    #[test]
    fn purity_values() {
        let bell = st(StateSpec::Bell {
            which: BellState::PhiPlus,
        });
        assert!((purity(&bell) - 1.0).abs() < 1e-14);
        assert!((purity(&TwoQubitState::maximally_mixed()) - 0.25).abs() < 1e-15);
        let (a, b) = (0.37, -0.21);
        let s = st(StateSpec::BellDiagonal { a, b });
        let closed = 2.0 * ((0.5 - a) * (0.5 - a) + a * a) + 2.0 * b * b;
        assert!((purity(&s) - closed).abs() < 1e-14);
    }

    #[test]
    fn triplet_weights() {
        let w = singlet_triplet_weights(&st(StateSpec::Bell {
            which: BellState::PsiMinus,
        }));
        assert!((w.singlet - 1.0).abs() < 1e-14);
        assert!(w.t_minus.abs() + w.t_zero.abs() + w.t_plus.abs() < 1e-14);
        let (a, b) = (0.35, 0.1);
        let w = singlet_triplet_weights(&st(StateSpec::BellDiagonal { a, b }));
        let expect = [0.5 - a, a + b, 0.5 - a, a - b];
        let got = [w.t_minus, w.t_zero, w.t_plus, w.singlet];
        for (g, e) in got.iter().zip(expect) {
            assert!((g - e).abs() < 1e-14);
        }
    }

    #[test]
    fn bell_diagonal_readout() {
        let p = bell_diagonal_params(&st(StateSpec::Bell {
            which: BellState::PhiPlus,
        }))
        .unwrap();
        assert!((p.a - 0.5).abs() < 1e-14 && (p.b - c(0.5, 0.0)).norm() < 1e-14);
        let p = bell_diagonal_params(&st(StateSpec::Bell {
            which: BellState::PsiMinus,
        }))
        .unwrap();
        assert!((p.a - 0.5).abs() < 1e-14 && (p.b - c(-0.5, 0.0)).norm() < 1e-14);
        let p = bell_diagonal_params(&TwoQubitState::maximally_mixed()).unwrap();
        assert!((p.a - 0.25).abs() < 1e-15 && p.b.norm() < 1e-15);
        let p = bell_diagonal_params(&st(StateSpec::Werner { p: 1.0 / 3.0 })).unwrap();
        assert!((p.a - 1.0 / 3.0).abs() < 1e-14 && (p.b.re + 1.0 / 6.0).abs() < 1e-14);
        assert!(bell_diagonal_params(&st(StateSpec::PhaseFamily {
            gamma: std::f64::consts::FRAC_PI_2
        }))
        .is_none());
    }
}
