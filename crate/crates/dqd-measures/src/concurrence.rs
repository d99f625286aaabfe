use dqd_model::linalg::{hermitian_eigenvalues, kron, pauli, M4};
use dqd_model::TwoQubitState;
use nalgebra::SymmetricEigen;

fn psd_sqrt(m: &M4) -> M4 {
    let h = (m + m.adjoint()) * dqd_model::linalg::c(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let root = eig.eigenvalues.map(|l| dqd_model::linalg::c(l.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * M4::from_diagonal(&root) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence from the spectrum of √ρ ρ̃ √ρ with ρ̃ = (σy⊗σy)ρ*(σy⊗σy).
pub fn concurrence(state: &TwoQubitState) -> f64 {
    let yy = kron(&pauli(1), &pauli(1));
    let tilde = &yy * state.rho.conjugate() * &yy;
    let s = psd_sqrt(&state.rho);
    let r = &s * tilde * &s;
    let mut l = hermitian_eigenvalues(&r).map(|v| v.max(0.0).sqrt());
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dqd_model::{make_state, BellState, StateSpec};

    #[test]
    fn examples() {
        for which in [BellState::PhiPlus, BellState::PsiMinus] {
            let s = make_state(&StateSpec::Bell { which }).unwrap();
            assert!((concurrence(&s) - 1.0).abs() < 1e-7);
        }
        let w = make_state(&StateSpec::Werner { p: 1.0 / 3.0 }).unwrap();
        assert!(concurrence(&w) < 1e-7);
        let x = make_state(&StateSpec::BellDiagonal { a: 0.4, b: 0.4 }).unwrap();
        assert!((concurrence(&x) - 0.6).abs() < 1e-7);
        assert_eq!(concurrence(&TwoQubitState::maximally_mixed()), 0.0);
    }

    #[test]
    fn x_state_closed_form() {
        for &(a, b) in &[(0.3, 0.25), (0.45, -0.2), (0.2, 0.1), (0.5, 0.1)] {
            let s = make_state(&StateSpec::BellDiagonal { a, b }).unwrap();
            let expect = 2.0 * (f64::abs(b) - (0.5 - a)).max(0.0);
            assert!((concurrence(&s) - expect).abs() < 1e-7, "a={a} b={b}");
        }
    }
}
