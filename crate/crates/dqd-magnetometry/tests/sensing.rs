use dqd_channel::{ChannelOptions, ChannelTrajectory};
use dqd_evolution::{evolve, EvolveOptions};
use dqd_magnetometry::{
    d_longtime, esd_time, m_from_trajectory, m_of_b, sweep, MagError, Metrics, Quantity,
    SweepSettings,
};
use dqd_model::{make_state, BellState, DotParameters, StateSpec, TwoQubitState};
use num_complex::Complex64;

fn state(spec: StateSpec) -> TwoQubitState {
    make_state(&spec).unwrap()
}

fn defaults() -> (DotParameters, ChannelOptions, EvolveOptions) {
    (DotParameters::default(), ChannelOptions::default(), EvolveOptions::default())
}

#[test]
fn frozen_discord_integrates_to_window_length() {
    let times: Vec<f64> = (0..=1000).map(|i| i as f64 * 0.02).collect();
    let n = times.len();
    let identity = ChannelTrajectory {
        times,
        p: vec![0.0; n],
        c: vec![Complex64::new(1.0, 0.0); n],
        dot: DotParameters::default(),
        secular_from: None,
        secular_tail: None,
    };
    let ct = evolve(&state(StateSpec::Werner { p: 0.33 }), &identity, &EvolveOptions::default()).unwrap();
    let m = m_from_trajectory(&ct, 20.0).unwrap();
    assert!((m.m_lower - 20.0).abs() < 1e-12 && (m.m_upper - 20.0).abs() < 1e-12);

    let product = state(StateSpec::PhaseFamily { gamma: 0.0 });
    let ct = evolve(&product, &identity, &EvolveOptions::default()).unwrap();
    assert_eq!(m_from_trajectory(&ct, 20.0), Err(MagError::ZeroInitialDiscord));
}

#[test]
fn m_integral_converges_and_grows_with_field() {
    let (dot, ch, ev) = defaults();
    let werner = state(StateSpec::Werner { p: 0.33 });
    let coarse = m_of_b(&werner, &dot.with_field(0.011), 20.0, 0.02, &ch, &ev).unwrap();
    let fine = m_of_b(&werner, &dot.with_field(0.011), 20.0, 0.01, &ch, &ev).unwrap();
    assert!((coarse.m_lower - fine.m_lower).abs() < 1e-4 * fine.m_lower);
    assert!(coarse.bounds_coincide);

    let settings = SweepSettings {
        metrics: Metrics { m: true, g_extrema: false, kinks: false, esd: false, d_longtime: false },
        short_t_max: 20.0,
        ..Default::default()
    };
    let fields = [0.0, 0.02, 0.04, 0.06, 0.08, 0.1];
    let table = sweep(&werner, &dot, &fields, &settings, &ch, &ev).unwrap();
    let m: Vec<f64> = table.rows.iter().map(|r| r.m.unwrap().m_lower).collect();
    assert!(m.windows(2).all(|w| w[1] > w[0]), "{m:?}");
    assert!(table.curve(Quantity::M).unwrap().monotone);
}

#[test]
fn low_field_g_extrema() {
    let (dot, ch, ev) = defaults();
    let settings = SweepSettings {
        metrics: Metrics { m: false, g_extrema: true, kinks: true, esd: false, d_longtime: false },
        ..Default::default()
    };
    let singlet = state(StateSpec::Bell { which: BellState::PsiMinus });
    let table = sweep(&singlet, &dot, &[0.0, 0.0005, 0.0015, 0.005], &settings, &ch, &ev).unwrap();
    assert!(table.rows[0].g_min.is_none() && table.rows[0].g_max.is_none());
    let mut last_max = f64::INFINITY;
    for row in &table.rows[1..] {
        let (lo, hi) = (row.g_min.unwrap(), row.g_max.unwrap());
        assert!(lo.value > 0.0 && lo.value < 1.0);
        assert!(hi.t > lo.t && hi.value > lo.value);
        assert!(hi.value < last_max);
        last_max = hi.value;
        assert!(row.kink_times.is_empty());
    }

    let werner = |p| {
        sweep(&state(StateSpec::Werner { p }), &dot, &[0.0015], &settings, &ch, &ev).unwrap().rows[0].clone()
    };
    let (a, b) = (werner(0.1), werner(1.0));
    for (x, y) in [(a.g_min.unwrap(), b.g_min.unwrap()), (a.g_max.unwrap(), b.g_max.unwrap())] {
        assert!((x.t - y.t).abs() < 1e-10 && (x.value - y.value).abs() < 1e-10);
    }
}

#[test]
fn entanglement_sudden_death() {
    let (dot, ch, ev) = defaults();
    let settings = SweepSettings {
        metrics: Metrics { m: false, g_extrema: false, kinks: false, esd: true, d_longtime: false },
        short_t_max: 20.0,
        ..Default::default()
    };
    let separable = sweep(&state(StateSpec::Werner { p: 0.2 }), &dot, &[0.011], &settings, &ch, &ev).unwrap();
    assert_eq!(separable.rows[0].esd_time, Some(0.0));
    let bell = state(StateSpec::Bell { which: BellState::PsiMinus });
    let high = sweep(&bell, &dot, &[5.0], &settings, &ch, &ev).unwrap();
    assert!(high.rows[0].esd_time.is_none());
    assert_eq!(esd_time(&[0.0, 1.0], &[1.0, 0.0]), None);
}

#[test]
fn long_time_discord_separates_zero_and_low_field() {
    let (dot, ch, ev) = defaults();
    let singlet = state(StateSpec::Bell { which: BellState::PsiMinus });
    let settings = SweepSettings { long_step: 20.0, ..Default::default() };
    let d0 = d_longtime(&singlet, &dot, &settings, &ch, &ev).unwrap();
    let d3 = d_longtime(&singlet, &dot.with_field(0.003), &settings, &ch, &ev).unwrap();
    assert!((d0 - d3).abs() / d0.max(d3) > 0.05, "{d0} vs {d3}");
}

#[test]
fn sweep_rows_do_not_depend_on_worker_count() {
    let (dot, ch, ev) = defaults();
    let settings = SweepSettings { short_t_max: 20.0, ..Default::default() };
    let init = state(StateSpec::Werner { p: 0.7 });
    let fields = [0.0, 0.001, 0.011, 0.1];
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep(&init, &dot, &fields, &settings, &ch, &ev).unwrap())
    };
    assert_eq!(run(1), run(3));
    assert!(matches!(
        sweep(&init, &dot, &[], &settings, &ch, &ev),
        Err(MagError::EmptyFieldList)
    ));
}
