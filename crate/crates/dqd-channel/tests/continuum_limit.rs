// The Gaussian-bath quadrature against exact sector sums for baths small
// enough to enumerate. The gap is a finite-N effect and must shrink with N.

use dqd_channel::{build_quadrature, compute_channel, exact_sector_channel};
use dqd_model::DotParameters;

// Field in units of the hyperfine spread: Ω = r·α·σ.
fn gap(n: f64, r: f64) -> f64 {
    let base = DotParameters {
        n_nuclei: n,
        i_nuclear: 0.5,
        ..DotParameters::default()
    };
    let b = r * base.alpha() * base.sigma2().sqrt()
        / (base.constants.g_factor * base.constants.mu_b);
    let dot = base.with_field(b);
    let t_max = dot.validity_window();
    let times: Vec<f64> = (0..=40).map(|k| t_max * k as f64 / 40.0).collect();
    let exact = exact_sector_channel(&dot, &times).unwrap();
    let quad = build_quadrature(&dot, t_max).unwrap();
    let cont = compute_channel(&dot, &times, &quad).unwrap();
    exact.max_abs_diff(&cont)
}

#[test]
fn quadrature_approaches_exact_sums() {
    for r in [0.0, 1.0, 30.0] {
        let small = gap(400.0, r);
        let large = gap(6400.0, r);
        assert!(large < 1e-3, "r={r}: gap {large:.3e} at N=6400");
        assert!(large < 0.5 * small, "r={r}: gap {small:.3e} -> {large:.3e}");
    }
}
