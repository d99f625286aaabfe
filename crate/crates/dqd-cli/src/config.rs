use std::path::PathBuf;

use dqd_channel::{ChannelOptions, NodeRule};
use dqd_evolution::{EvolveOptions, Frame};
use dqd_magnetometry::SweepSettings;
use dqd_measures::UpperPairing;
use dqd_model::{BellState, DotParameters, StateSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TimeGrid {
    pub t_max: f64,
    pub step: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self { t_max: 20.0, step: 0.02 }
    }
}

impl TimeGrid {
    pub fn times(&self) -> Result<Vec<f64>, CliError> {
        if !(self.step > 0.0 && self.t_max > 0.0) {
            return Err(CliError::Usage(format!(
                "time grid needs positive t_max and step, got {} and {}",
                self.t_max, self.step
            )));
        }
        let n = (self.t_max / self.step).round() as usize;
        if ((n as f64) * self.step - self.t_max).abs() > 1e-9 * self.t_max {
            return Err(CliError::Usage(format!(
                "step {} does not divide t_max {}",
                self.step, self.t_max
            )));
        }
        Ok((0..=n).map(|i| i as f64 * self.step).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureOverrides {
    /// Multiplies every node count.
    pub scale: f64,
    /// Times beyond this use the secular part only, ns.
    pub t_full: f64,
    pub secular_nodes: usize,
}

impl Default for QuadratureOverrides {
    fn default() -> Self {
        let d = ChannelOptions::default();
        Self {
            scale: d.rule.scale,
            t_full: d.t_full,
            secular_nodes: d.secular_nodes,
        }
    }
}

impl QuadratureOverrides {
    pub fn options(&self) -> ChannelOptions {
        ChannelOptions {
            rule: NodeRule {
                scale: self.scale,
                ..NodeRule::default()
            },
            t_full: self.t_full,
            secular_nodes: self.secular_nodes,
            ..ChannelOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingChoice {
    #[default]
    Crossed,
    Matched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameChoice {
    #[default]
    CoRotating,
    Lab,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub dot: DotParameters,
    pub state: StateSpec,
    /// Fields in tesla.
    pub fields: Vec<f64>,
    pub grid: TimeGrid,
    pub quadrature: QuadratureOverrides,
    pub output: Option<PathBuf>,
    /// Divide the rescaled discord columns by their t = 0 value.
    pub normalize: bool,
    pub pairing: PairingChoice,
    pub frame: FrameChoice,
    pub sweep: SweepSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dot: DotParameters::default(),
            state: StateSpec::Bell {
                which: BellState::PsiMinus,
            },
            fields: vec![0.0],
            grid: TimeGrid::default(),
            quadrature: QuadratureOverrides::default(),
            output: None,
            normalize: false,
            pairing: PairingChoice::default(),
            frame: FrameChoice::default(),
            sweep: SweepSettings::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn evolve_options(&self) -> EvolveOptions {
        EvolveOptions {
            frame: match self.frame {
                FrameChoice::CoRotating => Frame::CoRotating,
                FrameChoice::Lab => Frame::Lab,
            },
            pairing: match self.pairing {
                PairingChoice::Crossed => UpperPairing::Crossed,
                PairingChoice::Matched => UpperPairing::Matched,
            },
        }
    }
}
