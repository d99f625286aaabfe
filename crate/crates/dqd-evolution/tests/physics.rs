use dqd_channel::{compute_channel_auto, ChannelOptions, ChannelTrajectory};
use dqd_evolution::{
    evolve, find_extrema, find_g_crossings, normalized, CorrelationTrajectory, Direction,
    EvolveOptions, ExtremaOptions, Frame,
};
use dqd_measures::{bell_diagonal_discord, Regime};
use dqd_model::{make_state, BellState, DotParameters, StateSpec};

fn grid(t_max: f64, dt: f64) -> Vec<f64> {
    let n = (t_max / dt).round() as usize;
    (0..=n).map(|i| i as f64 * dt).collect()
}

fn channel(b: f64, times: &[f64]) -> ChannelTrajectory {
    let dot = DotParameters::default().with_field(b);
    compute_channel_auto(&dot, times, &ChannelOptions::default()).unwrap()
}

fn run(spec: StateSpec, ch: &ChannelTrajectory) -> CorrelationTrajectory {
    evolve(&make_state(&spec).unwrap(), ch, &EvolveOptions::default()).unwrap()
}

const SINGLET: StateSpec = StateSpec::Bell { which: BellState::PsiMinus };

#[test]
fn bell_states_stay_bell_diagonal_with_predicted_g() {
    let times = grid(20.0, 0.1);
    for b in [0.0, 0.011, 0.0165, 1.0] {
        let ch = channel(b, &times);
        for which in [BellState::PsiMinus, BellState::PhiPlus] {
            let ct = run(StateSpec::Bell { which }, &ch);
            for (i, r) in ct.reports.iter().enumerate() {
                assert!(r.bell_diag.is_some(), "B={b} t={}", ct.times[i]);
                let (p, c) = (ch.p[i], ch.c[i].norm());
                let expect = c * c / (1.0 - 2.0 * p).powi(2);
                assert!((r.g.value() - expect).abs() < 1e-10);
                assert!(r.g.value() <= 1.0 + 1e-6);
                let conc = (c * c - 2.0 * p * (1.0 - p)).max(0.0);
                assert!((r.concurrence - conc).abs() < 1e-7);
                assert!(r.bounds.coincide);
            }
            assert!(find_g_crossings(&ct).is_empty());
        }
    }
}

#[test]
fn zero_field_singlet_keeps_werner_form() {
    let times = grid(50.0, 0.05);
    let ct = run(SINGLET, &channel(0.0, &times));
    for r in &ct.reports {
        assert!((r.g.value() - 1.0).abs() < 1e-6);
        let w = r.st_weights;
        assert!((w.t_minus - w.t_zero).abs() < 1e-6 && (w.t_plus - w.t_zero).abs() < 1e-6);
    }
    assert!(find_extrema(&ct.times, &ct.g(), &ExtremaOptions::default()).is_empty());
}

#[test]
fn positive_field_pushes_g_below_one() {
    let times = grid(20.0, 0.02);
    let ct = run(SINGLET, &channel(0.0165, &times));
    for (t, g) in ct.times.iter().zip(ct.g()).skip(1) {
        assert!(g < 1.0, "t={t} g={g}");
    }
}

#[test]
fn werner_weight_drops_out_of_g() {
    let times = grid(20.0, 0.05);
    let ch = channel(0.0015, &times);
    let reference = run(StateSpec::Werner { p: 1.0 }, &ch).g();
    for p in [0.1, 1.0 / 3.0] {
        let g = run(StateSpec::Werner { p }, &ch).g();
        for (a, b) in g.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn lab_frame_gives_the_same_correlations() {
    let times = grid(20.0, 0.25);
    let ch = channel(0.0165, &times);
    let init = make_state(&StateSpec::PhaseFamily { gamma: 1.1 }).unwrap();
    let co = evolve(&init, &ch, &EvolveOptions::default()).unwrap();
    let lab = evolve(&init, &ch, &EvolveOptions { frame: Frame::Lab, ..Default::default() }).unwrap();
    for (a, b) in co.reports.iter().zip(&lab.reports) {
        assert!((a.bounds.ds_lower - b.bounds.ds_lower).abs() < 1e-10);
        assert!((a.bounds.ds_upper - b.bounds.ds_upper).abs() < 1e-10);
        assert!((a.concurrence - b.concurrence).abs() < 1e-7);
    }
}

#[test]
fn kink_at_high_field_matches_regime_switch() {
    let times = grid(20.0, 0.02);
    let ch = channel(0.1, &times);
    let ct = run(StateSpec::BellDiagonal { a: 0.4, b: 0.4 }, &ch);
    let kinks = find_g_crossings(&ct);
    assert_eq!(kinks.len(), 1);
    assert_eq!(kinks[0].direction, Direction::AboveToBelow);
    assert!((kinks[0].t_cross - 4.67).abs() < 0.2, "{}", kinks[0].t_cross);
    assert!(kinks[0].slope_jump.abs() > 1e-5);

    // the regime reported by the closed form flips between the same samples
    let regimes: Vec<Regime> = ct
        .reports
        .iter()
        .map(|r| {
            let bd = r.bell_diag.unwrap();
            bell_diagonal_discord(bd.a, bd.b.norm()).unwrap().regime
        })
        .collect();
    let switch = regimes.windows(2).position(|w| w[0] == Regime::GGe1 && w[1] == Regime::GLe1).unwrap();
    assert!(ct.times[switch] < kinks[0].t_cross && kinks[0].t_cross < ct.times[switch + 1]);

    // normalizing the discord leaves the kink and extrema times in place
    let d = ct.rescaled_lower();
    let dn = normalized(&d).unwrap();
    let opts = ExtremaOptions::default();
    let e1: Vec<f64> = find_extrema(&ct.times, &d, &opts).iter().map(|e| e.t).collect();
    let scaled = ExtremaOptions { min_prominence: opts.min_prominence / d[0], ..opts };
    let e2: Vec<f64> = find_extrema(&ct.times, &dn, &scaled).iter().map(|e| e.t).collect();
    assert_eq!(e1.len(), e2.len());
    for (a, b) in e1.iter().zip(&e2) {
        assert!((a - b).abs() < 1e-9);
    }
    let k2 = dqd_evolution::find_g_crossings_with(&ct.times, &ct.g(), &dn, None);
    assert_eq!(k2[0].t_cross, kinks[0].t_cross);
}

#[test]
fn evolution_is_deterministic_across_thread_counts() {
    let times = grid(20.0, 0.1);
    let ch = channel(0.011, &times);
    let init = make_state(&StateSpec::PhaseFamily { gamma: 2.0 }).unwrap();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| evolve(&init, &ch, &EvolveOptions::default()).unwrap());
    let b = four.install(|| evolve(&init, &ch, &EvolveOptions::default()).unwrap());
    assert_eq!(a, b);
}
