use serde::{Deserialize, Serialize};

use crate::{invalid, ModelError};

/// Reduced Planck constant in μeV·ns.
pub const HBAR: f64 = 0.6582119569;
/// Bohr magneton in μeV/T.
pub const MU_B: f64 = 57.883818;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mu_b: f64,
    pub g_factor: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: HBAR,
            mu_b: MU_B,
            g_factor: 0.44,
        }
    }
}

impl PhysicalConstants {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [("hbar", self.hbar), ("mu_b", self.mu_b), ("g_factor", self.g_factor)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("must be finite and positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DotParameters {
    /// Total hyperfine coupling A in μeV.
    pub a_total: f64,
    pub n_nuclei: f64,
    pub i_nuclear: f64,
    /// External field in tesla; the sign is kept, only |g| enters.
    pub b_field: f64,
    pub constants: PhysicalConstants,
}

impl Default for DotParameters {
    fn default() -> Self {
        Self {
            a_total: 83.0,
            n_nuclei: 1.5e6,
            i_nuclear: 1.5,
            b_field: 0.0,
            constants: PhysicalConstants::default(),
        }
    }
}

impl DotParameters {
    pub fn with_field(self, b_field: f64) -> Self {
        Self { b_field, ..self }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.constants.validate()?;
        if !(self.a_total.is_finite() && self.a_total > 0.0) {
            return Err(invalid("a_total", format!("must be positive, got {}", self.a_total)));
        }
        if !(self.n_nuclei.is_finite() && self.n_nuclei >= 1.0) {
            return Err(invalid("n_nuclei", format!("must be >= 1, got {}", self.n_nuclei)));
        }
        let two_i = 2.0 * self.i_nuclear;
        if !(two_i >= 1.0 && (two_i - two_i.round()).abs() < 1e-12) {
            return Err(invalid(
                "i_nuclear",
                format!("must be a positive half-integer, got {}", self.i_nuclear),
            ));
        }
        if !self.b_field.is_finite() {
            return Err(invalid("b_field", "must be finite"));
        }
        Ok(())
    }

    /// Per-nucleus coupling α = A/N in μeV.
    pub fn alpha(&self) -> f64 {
        self.a_total / self.n_nuclei
    }

    /// Variance of each Cartesian component of the total nuclear spin at infinite temperature.
    pub fn sigma2(&self) -> f64 {
        self.n_nuclei * self.i_nuclear * (self.i_nuclear + 1.0) / 3.0
    }

    /// Electron Zeeman splitting |g| μ_B B in μeV (signed with B).
    pub fn zeeman(&self) -> f64 {
        self.constants.g_factor * self.constants.mu_b * self.b_field
    }

    /// Time up to which the frozen-coupling box model is trusted, ħN/A in ns.
    pub fn validity_window(&self) -> f64 {
        self.constants.hbar * self.n_nuclei / self.a_total
    }

    /// High-field Gaussian dephasing time ħ√(6/(I(I+1)))·√N/A in ns.
    pub fn t2_star(&self) -> f64 {
        let i = self.i_nuclear;
        self.constants.hbar * (6.0 / (i * (i + 1.0))).sqrt() * self.n_nuclei.sqrt() / self.a_total
    }
}
