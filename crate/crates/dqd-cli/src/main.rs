use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dqd_cli::config::{FrameChoice, PairingChoice, RunConfig};
use dqd_cli::parse::{parse_fields, parse_state};
use dqd_cli::run::{cmd_evolve, cmd_sweep, cmd_verify};
use dqd_cli::CliError;
use dqd_magnetometry::Metrics;

const THREADS_VAR: &str = "DQD_THREADS";

#[derive(Parser)]
#[command(name = "dqd", version, about = "Hyperfine decoherence of two-qubit correlations in double quantum dots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation trajectory at one field
    Evolve(Common),
    /// Field sweep of the magnetometry metrics
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, value_delimiter = ',')]
        metric: Vec<MetricArg>,
    },
    /// Run the acceptance checks
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated criterion numbers
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON config; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    state: Option<String>,
    /// Field in tesla: a value, a comma list, or lo:hi:step
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_enum)]
    pairing: Option<PairingArg>,
    #[arg(long, value_enum)]
    frame: Option<FrameArg>,
    /// Multiplies every quadrature node count
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    Crossed,
    Matched,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameArg {
    CoRotating,
    Lab,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MetricArg {
    #[value(name = "M")]
    M,
    GExtrema,
    Kinks,
    Esd,
    DLongtime,
    All,
}

fn build_config(c: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &c.config {
        Some(path) => RunConfig::from_json(
            &std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        )?,
        None => RunConfig::default(),
    };
    if let Some(s) = &c.state {
        cfg.state = parse_state(s)?;
    }
    if let Some(b) = &c.b {
        cfg.fields = parse_fields(b)?;
    }
    if let Some(t) = c.tmax {
        cfg.grid.t_max = t;
    }
    if let Some(s) = c.step {
        cfg.grid.step = s;
    }
    if let Some(o) = &c.out {
        cfg.output = Some(o.clone());
    }
    if c.normalize {
        cfg.normalize = true;
    }
    if let Some(p) = c.pairing {
        cfg.pairing = match p {
            PairingArg::Crossed => PairingChoice::Crossed,
            PairingArg::Matched => PairingChoice::Matched,
        };
    }
    if let Some(f) = c.frame {
        cfg.frame = match f {
            FrameArg::CoRotating => FrameChoice::CoRotating,
            FrameArg::Lab => FrameChoice::Lab,
        };
    }
    if let Some(s) = c.scale {
        if !(s >= 1.0) {
            return Err(CliError::Usage(format!("--scale must be at least 1, got {s}")));
        }
        cfg.quadrature.scale = s;
    }
    Ok(cfg)
}

fn select_metrics(metric: &[MetricArg]) -> Option<Metrics> {
    if metric.is_empty() {
        return None;
    }
    let all = metric.contains(&MetricArg::All);
    let on = |m| all || metric.contains(&m);
    Some(Metrics {
        m: on(MetricArg::M),
        g_extrema: on(MetricArg::GExtrema),
        kinks: on(MetricArg::Kinks),
        esd: on(MetricArg::Esd),
        d_longtime: on(MetricArg::DLongtime),
    })
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Evolve(common) => {
            let cfg = build_config(&common)?;
            emit(&cfg, &cmd_evolve(&cfg)?)?;
        }
        Command::Sweep { common, metric } => {
            let mut cfg = build_config(&common)?;
            if let Some(m) = select_metrics(&metric) {
                cfg.sweep.metrics = m;
            }
            emit(&cfg, &cmd_sweep(&cfg)?)?;
        }
        Command::Verify { common, only } => {
            let cfg = build_config(&common)?;
            let (text, passed) = cmd_verify(&cfg, &only);
            emit(&cfg, &text)?;
            if !passed {
                return Ok(ExitCode::from(4));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    if let Ok(n) = std::env::var(THREADS_VAR) {
        let threads = n.parse::<usize>().unwrap_or(0);
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let record = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{record}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
