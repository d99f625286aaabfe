//! Random states for property checks and sampling studies.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, C, M2, M4};
use crate::state::{BasisOrdering, TwoQubitState};

fn gaussian(rng: &mut impl Rng) -> C {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Hilbert–Schmidt distributed mixed state: G G† / Tr(G G†) with complex Gaussian G.
pub fn random_mixed_state(rng: &mut impl Rng) -> TwoQubitState {
    let g = M4::from_fn(|_, _| gaussian(rng));
    let rho = g * g.adjoint();
    let tr = rho.trace().re;
    TwoQubitState::new_unchecked(hermitize(rho.unscale(tr)), BasisOrdering::Computational)
}

/// Haar-random pure state.
pub fn random_pure_state(rng: &mut impl Rng) -> TwoQubitState {
    let v: Vec<C> = (0..4).map(|_| gaussian(rng)).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let rho = M4::from_fn(|i, j| v[i] * v[j].conj() / (n * n));
    TwoQubitState::new_unchecked(hermitize(rho), BasisOrdering::Computational)
}

/// Haar-random single-qubit unitary.
pub fn random_unitary2(rng: &mut impl Rng) -> M2 {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    M2::new(a, -b.conj() * phase, b, a.conj() * phase)
}

fn hermitize(m: M4) -> M4 {
    (m + m.adjoint()).scale(0.5)
}

fn random_weights(rng: &mut impl Rng) -> [f64; 4] {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>());
    let tr: f64 = w.iter().sum();
    w.map(|v| v / tr)
}

/// X-shaped state: random diagonal, random complex |00⟩⟨11| and |01⟩⟨10|
/// coherences inside their positivity limits.
pub fn random_x_state(rng: &mut impl Rng) -> TwoQubitState {
    let d = random_weights(rng);
    let mut rho = M4::from_diagonal(&nalgebra::Vector4::from(d.map(|v| c(v, 0.0))));
    let outer = (d[0] * d[3]).sqrt() * rng.gen::<f64>();
    let inner = (d[1] * d[2]).sqrt() * rng.gen::<f64>();
    let tau = std::f64::consts::TAU;
    rho[(0, 3)] = C::from_polar(outer, rng.gen_range(0.0..tau));
    rho[(3, 0)] = rho[(0, 3)].conj();
    rho[(1, 2)] = C::from_polar(inner, rng.gen_range(0.0..tau));
    rho[(2, 1)] = rho[(1, 2)].conj();
    TwoQubitState::new_unchecked(rho, BasisOrdering::Computational)
}

/// Random mixture of the four Bell states.
pub fn random_bell_diagonal_state(rng: &mut impl Rng) -> TwoQubitState {
    let [p0, p1, p2, p3] = random_weights(rng);
    let mut rho = M4::zeros();
    // Φ± live on {00, 11}, Ψ± on {01, 10}
    for (i, j, plus, minus) in [(0, 3, p0, p1), (1, 2, p2, p3)] {
        rho[(i, i)] = c((plus + minus) / 2.0, 0.0);
        rho[(j, j)] = c((plus + minus) / 2.0, 0.0);
        rho[(i, j)] = c((plus - minus) / 2.0, 0.0);
        rho[(j, i)] = c((plus - minus) / 2.0, 0.0);
    }
    TwoQubitState::new_unchecked(rho, BasisOrdering::Computational)
}

/// ½(ρ + ρ̃) with ρ̃ = (σy⊗σy)ρ*(σy⊗σy): same correlation matrix, no local Bloch vectors.
pub fn without_local_vectors(state: &TwoQubitState) -> TwoQubitState {
    let yy = crate::linalg::kron(&crate::linalg::pauli(1), &crate::linalg::pauli(1));
    let flipped = &yy * state.rho.conjugate() * &yy;
    TwoQubitState::new_unchecked(hermitize((state.rho + flipped).scale(0.5)), state.ordering)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch_decompose;
    use crate::state::PSD_TOL;
    use nalgebra::Matrix3;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn samples_are_valid_states() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            random_mixed_state(&mut rng).validate(PSD_TOL).unwrap();
            random_pure_state(&mut rng).validate(PSD_TOL).unwrap();
            let u = random_unitary2(&mut rng);
            assert!((u * u.adjoint() - M2::identity()).norm() < 1e-14);
        }
    }

    #[test]
    fn samplers_give_valid_states_of_the_right_shape() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let x = random_x_state(&mut rng);
            x.validate(1e-12).unwrap();
            for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
                assert_eq!(x.rho[(i, j)], c(0.0, 0.0));
            }
            let bd = random_bell_diagonal_state(&mut rng);
            bd.validate(1e-12).unwrap();
            let b = bloch_decompose(&bd);
            assert!(b.x.norm() < 1e-15 && (b.t - Matrix3::from_diagonal(&b.t.diagonal())).norm() < 1e-15);
            let s = without_local_vectors(&random_mixed_state(&mut rng));
            s.validate(1e-12).unwrap();
            assert!(bloch_decompose(&s).y.norm() < 1e-14);
        }
    }
}
