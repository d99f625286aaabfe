use dqd_channel::compute_channel_auto;
use dqd_evolution::{evolve, find_g_crossings};
use dqd_magnetometry::sweep;
use dqd_model::make_state;

use crate::config::RunConfig;
use crate::output::{run_header, sweep_csv, trajectory_csv};
use crate::verify::{Verifier, CRITERIA};
use crate::CliError;

/// Trajectory CSV for the single field in the config.
pub fn cmd_evolve(config: &RunConfig) -> Result<String, CliError> {
    let [b] = config.fields[..] else {
        return Err(CliError::Usage(format!(
            "evolve takes exactly one field, got {}",
            config.fields.len()
        )));
    };
    let rho0 = make_state(&config.state)?;
    let times = config.grid.times()?;
    let dot = config.dot.with_field(b);
    let ch = compute_channel_auto(&dot, &times, &config.quadrature.options())?;
    let ct = evolve(&rho0, &ch, &config.evolve_options())?;
    let kinks = find_g_crossings(&ct);
    Ok(run_header("evolve", config) + &trajectory_csv(&ct, config.normalize, &kinks)?)
}

pub fn cmd_sweep(config: &RunConfig) -> Result<String, CliError> {
    if config.fields.is_empty() {
        return Err(CliError::Usage("sweep needs at least one field".into()));
    }
    let rho0 = make_state(&config.state)?;
    let table = sweep(
        &rho0,
        &config.dot,
        &config.fields,
        &config.sweep,
        &config.quadrature.options(),
        &config.evolve_options(),
    )?;
    Ok(run_header("sweep", config) + &sweep_csv(&table)?)
}

/// Runs the selected acceptance criteria (all when `only` is empty) and
/// returns one line per criterion plus whether every one passed.
pub fn cmd_verify(config: &RunConfig, only: &[u8]) -> (String, bool) {
    let v = Verifier::new(config.dot, config.quadrature.options());
    let ids: Vec<u8> = if only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    let mut text = String::new();
    let mut all = true;
    for id in ids {
        let r = v.run(id);
        all &= r.passed;
        text += &format!("{r}\n");
    }
    (text, all)
}
