use dqd_model::linalg::{c, pauli, M2, M4};
use dqd_model::TwoQubitState;

fn projector(theta: f64, phi: f64, sign: f64) -> M2 {
    let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
    let mut p = M2::identity();
    for (k, nk) in n.iter().enumerate() {
        p += pauli(k) * c(sign * nk, 0.0);
    }
    p * c(0.5, 0.0)
}

fn lift(p: &M2) -> M4 {
    p.kronecker(&M2::identity())
}

/// ‖ρ − Σ_± (P_±⊗𝟙) ρ (P_±⊗𝟙)‖²_HS for a projective measurement on the first qubit.
fn pinching_distance(rho: &M4, theta: f64, phi: f64) -> f64 {
    let mut pinched = M4::zeros();
    for sign in [1.0, -1.0] {
        let p = lift(&projector(theta, phi, sign));
        pinched += &p * rho * &p;
    }
    (rho - pinched).iter().map(|z| z.norm_sqr()).sum()
}

/// Brute-force one-sided geometric discord: coarse (θ, φ) grid then a shrinking
/// pattern search around the best grid point.
pub fn oracle_one_sided_discord(state: &TwoQubitState, grid_resolution: usize) -> f64 {
    let n = grid_resolution.max(4);
    let pi = std::f64::consts::PI;
    let f = |th: f64, ph: f64| pinching_distance(&state.rho, th, ph);
    let (mut th, mut ph) = (0.0, 0.0);
    let mut best = f(th, ph);
    for i in 0..=n {
        let t = pi * i as f64 / n as f64;
        for j in 0..2 * n {
            let p = pi * j as f64 / n as f64;
            let v = f(t, p);
            if v < best {
                (best, th, ph) = (v, t, p);
            }
        }
    }
    let mut step = pi / n as f64;
    while step > 1e-9 {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = f(th + dt, ph + dp);
            if v < best {
                (best, th, ph) = (v, th + dt, ph + dp);
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use dqd_model::{make_state, BellState, StateSpec};

    #[test]
    fn examples() {
        assert!(oracle_one_sided_discord(&TwoQubitState::maximally_mixed(), 16) < 1e-15);
        let s = make_state(&StateSpec::Bell { which: BellState::PhiPlus }).unwrap();
        assert!((oracle_one_sided_discord(&s, 16) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn classical_state_is_zero() {
        // ½(|0⟩⟨0|⊗|+⟩⟨+| + |1⟩⟨1|⊗𝟙/2) has zero discord on the first qubit
        let mut rho = M4::zeros();
        rho[(0, 0)] = c(0.25, 0.0);
        rho[(0, 1)] = c(0.25, 0.0);
        rho[(1, 0)] = c(0.25, 0.0);
        rho[(1, 1)] = c(0.25, 0.0);
        rho[(2, 2)] = c(0.25, 0.0);
        rho[(3, 3)] = c(0.25, 0.0);
        let s = TwoQubitState::new(rho, dqd_model::BasisOrdering::Computational).unwrap();
        assert!(oracle_one_sided_discord(&s, 16) < 1e-14);
    }
}
