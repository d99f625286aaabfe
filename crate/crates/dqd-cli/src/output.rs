use dqd_evolution::{normalized, CorrelationTrajectory, KinkEvent};
use dqd_magnetometry::SweepTable;
use dqd_measures::GRatio;

use crate::config::RunConfig;
use crate::CliError;

pub const TRAJECTORY_COLUMNS: [&str; 18] = [
    "t_ns", "p", "c_re", "c_im", "a", "b_re", "b_im", "purity", "ds_lo", "ds_hi", "d_lo", "d_hi",
    "g", "concurrence", "wTm1", "wT0", "wTp1", "wS0",
];

pub const SWEEP_COLUMNS: [&str; 9] = [
    "B_T", "M", "g_min_t", "g_min_val", "g_max_t", "g_max_val", "kink_times", "esd_t", "d_longtime",
];

fn num(v: f64) -> String {
    format!("{v}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn run_header(command: &str, config: &RunConfig) -> String {
    let fields: Vec<String> = config
        .fields
        .iter()
        .map(|b| format!("{b} T ({} mT)", b * 1e3))
        .collect();
    format!(
        "# dqd {} {command}\n# fields: {}\n# config: {}\n",
        env!("CARGO_PKG_VERSION"),
        fields.join(", "),
        config.to_json()
    )
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn trajectory_csv(
    ct: &CorrelationTrajectory,
    normalize: bool,
    kinks: &[KinkEvent],
) -> Result<String, CliError> {
    let (mut d_lo, mut d_hi) = (ct.rescaled_lower(), ct.rescaled_upper());
    if normalize {
        d_lo = normalized(&d_lo).ok_or_else(|| {
            CliError::Numerical("cannot normalize: initial rescaled discord is zero".into())
        })?;
        d_hi = normalized(&d_hi).ok_or_else(|| {
            CliError::Numerical("cannot normalize: initial rescaled discord is zero".into())
        })?;
    }
    let rows = (0..ct.len())
        .map(|i| {
            let r = &ct.reports[i];
            let (a, b_re, b_im) = match r.bell_diag {
                Some(bd) => (num(bd.a), num(bd.b.re), num(bd.b.im)),
                None => Default::default(),
            };
            let g = match r.g {
                GRatio::Finite(g) => num(g),
                GRatio::Infinite => "inf".into(),
                GRatio::Undefined => String::new(),
            };
            let w = r.st_weights;
            vec![
                num(ct.times[i]),
                num(ct.p[i]),
                num(ct.c[i].re),
                num(ct.c[i].im),
                a,
                b_re,
                b_im,
                num(r.purity),
                num(r.bounds.ds_lower),
                num(r.bounds.ds_upper),
                num(d_lo[i]),
                num(d_hi[i]),
                g,
                num(r.concurrence),
                num(w.t_minus),
                num(w.t_zero),
                num(w.t_plus),
                num(w.singlet),
            ]
        })
        .collect();
    let mut text = csv_text(&TRAJECTORY_COLUMNS, rows)?;
    let times: Vec<String> = kinks.iter().map(|k| num(k.t_cross)).collect();
    text.push_str(&format!("# kinks_ns: {}\n", times.join(";")));
    Ok(text)
}

pub fn sweep_csv(table: &SweepTable) -> Result<String, CliError> {
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let kinks: Vec<String> = r.kink_times.iter().map(|&t| num(t)).collect();
            vec![
                num(r.b),
                opt(r.m.map(|m| m.m_lower)),
                opt(r.g_min.map(|e| e.t)),
                opt(r.g_min.map(|e| e.value)),
                opt(r.g_max.map(|e| e.t)),
                opt(r.g_max.map(|e| e.value)),
                kinks.join(";"),
                opt(r.esd_time),
                opt(r.d_longtime),
            ]
        })
        .collect();
    csv_text(&SWEEP_COLUMNS, rows)
}
