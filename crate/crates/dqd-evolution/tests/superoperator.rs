use dqd_evolution::{apply_channel, apply_product_channel, QubitChannel};
use dqd_model::linalg::{c, max_abs_diff, C, M2, M4};
use dqd_model::sample::random_mixed_state;
use dqd_model::TwoQubitState;
use nalgebra::{SMatrix, SVector};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Super = SMatrix<C, 16, 16>;

fn lambda(p: f64, k: C, x: &M2) -> M2 {
    M2::new(
        x[(0, 0)] * (1.0 - p) + x[(1, 1)] * p,
        x[(0, 1)] * k,
        x[(1, 0)] * k.conj(),
        x[(0, 0)] * p + x[(1, 1)] * (1.0 - p),
    )
}

fn unit(i: usize, j: usize) -> M2 {
    let mut m = M2::zeros();
    m[(i, j)] = c(1.0, 0.0);
    m
}

/// Choi matrix Σ |i⟩⟨j| ⊗ Λ(|i⟩⟨j|).
fn choi(p: f64, k: C) -> M4 {
    let mut j = M4::zeros();
    for i in 0..2 {
        for l in 0..2 {
            let img = lambda(p, k, &unit(i, l));
            for a in 0..2 {
                for b in 0..2 {
                    j[(2 * i + a, 2 * l + b)] = img[(a, b)];
                }
            }
        }
    }
    j
}

/// Two-qubit superoperator on vec(ρ) with index (row·4 + col), read off the
/// Choi matrices by reshuffling: S₁[(a,b),(i,j)] = J[(i,a),(j,b)].
fn superoperator(j1: &M4, j2: &M4) -> Super {
    let s1 = |j: &M4, a: usize, b: usize, i: usize, l: usize| j[(2 * i + a, 2 * l + b)];
    Super::from_fn(|out, inp| {
        let (r, col) = (out / 4, out % 4);
        let (ri, ci) = (inp / 4, inp % 4);
        let (a1, a2, b1, b2) = (r / 2, r % 2, col / 2, col % 2);
        let (i1, i2, l1, l2) = (ri / 2, ri % 2, ci / 2, ci % 2);
        s1(j1, a1, b1, i1, l1) * s1(j2, a2, b2, i2, l2)
    })
}

fn via_superoperator(rho: &M4, s: &Super) -> M4 {
    let v = SVector::<C, 16>::from_fn(|k, _| rho[(k / 4, k % 4)]);
    let w = s * v;
    M4::from_fn(|r, col| w[4 * r + col])
}

fn random_cp(rng: &mut StdRng) -> (f64, C) {
    let p: f64 = rng.gen_range(0.0..=1.0);
    let r = (1.0 - p) * rng.gen::<f64>().sqrt();
    (p, C::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU)))
}

#[test]
fn matches_choi_superoperator() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..1000 {
        let s = random_mixed_state(&mut rng);
        let (p1, k1) = random_cp(&mut rng);
        let (p2, k2) = random_cp(&mut rng);
        let sup = superoperator(&choi(p1, k1), &choi(p2, k2));
        let expect = via_superoperator(&s.rho, &sup);
        let got = apply_product_channel(
            &s,
            &QubitChannel::new(p1, k1).unwrap(),
            &QubitChannel::new(p2, k2).unwrap(),
        );
        assert!(max_abs_diff(&got.rho, &expect) < 1e-12);
    }
}

#[test]
fn choi_positivity_is_the_cp_condition() {
    // Choi spectrum {p, p, 1−p+|c|, 1−p−|c|}
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..500 {
        let p: f64 = rng.gen_range(0.0..=1.0);
        let k = C::from_polar(rng.gen_range(0.0..1.2), rng.gen_range(0.0..6.3));
        let min_eig = dqd_model::linalg::hermitian_eigenvalues(&choi(p, k))[0];
        let cp = k.norm() <= 1.0 - p;
        assert!((min_eig - p.min(1.0 - p - k.norm())).abs() < 1e-12);
        assert_eq!(
            QubitChannel::new(p, k).is_ok(),
            cp || (k.norm() - (1.0 - p)) < dqd_evolution::CP_TOL
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn output_is_a_valid_state(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = random_mixed_state(&mut rng);
        let (p, k) = random_cp(&mut rng);
        let out = apply_channel(&s, p, k).unwrap();
        let checked = TwoQubitState::new(out.rho, out.ordering);
        prop_assert!(checked.is_ok(), "{:?}", checked.err());
    }
}
