use serde::{Deserialize, Serialize};

use crate::linalg::{c, hermitian_eigenvalues, C, M4};
use crate::{invalid, ModelError};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Which arrangement of the X-shaped Bell-diagonal pattern a state follows.
///
/// `Psi` puts the inner coherence between |↑↓⟩ and |↓↑⟩ (this is the plain
/// computational order), `Phi` puts it between |↑↑⟩ and |↓↓⟩. Matrices are
/// always stored in the computational basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisOrdering {
    Computational,
    Psi,
    Phi,
}

impl BasisOrdering {
    /// Permutation taking the computational index to the ordering's index.
    pub fn permutation(self) -> [usize; 4] {
        match self {
            BasisOrdering::Computational | BasisOrdering::Psi => [0, 1, 2, 3],
            // (↑↓, ↑↑, ↓↓, ↓↑)
            BasisOrdering::Phi => [1, 0, 3, 2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSpec {
    Bell { which: BellState },
    /// (1−p)·𝟙/4 + p·|S₀⟩⟨S₀|
    Werner { p: f64 },
    /// √a|00⟩ + √b e^{iα}|10⟩ + √b e^{iβ}|01⟩ − √a e^{i(α+β)}|11⟩ with a + b = ½
    EntFamily { a: f64, b: f64, alpha: f64, beta: f64 },
    /// ½(|00⟩ + |10⟩ + |01⟩ + e^{iγ}|11⟩)
    PhaseFamily { gamma: f64 },
    /// diag(½−a, a, a, ½−a) with real coherence b between |01⟩ and |10⟩
    BellDiagonal { a: f64, b: f64 },
    /// Row-major entries as [re, im] pairs in the computational basis.
    Raw { matrix: [[[f64; 2]; 4]; 4] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    pub rho: M4,
    pub ordering: BasisOrdering,
}

impl TwoQubitState {
    pub fn new(rho: M4, ordering: BasisOrdering) -> Result<Self, ModelError> {
        let s = Self { rho, ordering };
        s.validate(PSD_TOL)?;
        Ok(s)
    }

    pub fn new_unchecked(rho: M4, ordering: BasisOrdering) -> Self {
        Self { rho, ordering }
    }

    pub fn maximally_mixed() -> Self {
        Self::new_unchecked(M4::identity().scale(0.25), BasisOrdering::Computational)
    }

    pub fn from_pure(psi: [C; 4], ordering: BasisOrdering) -> Result<Self, ModelError> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > TRACE_TOL {
            return Err(ModelError::InvalidState(format!("state vector norm² = {norm2}")));
        }
        let rho = M4::from_fn(|i, j| psi[i] * psi[j].conj());
        Ok(Self::new_unchecked(rho, ordering))
    }

    pub fn trace(&self) -> C {
        self.rho.trace()
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.rho)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Checks Hermiticity, unit trace and positivity down to `-psd_tol`.
    pub fn validate(&self, psd_tol: f64) -> Result<(), ModelError> {
        if self.rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(ModelError::InvalidState("non-finite entry".into()));
        }
        let herm = (self.rho - self.rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > HERMITIAN_TOL {
            return Err(ModelError::InvalidState(format!(
                "not Hermitian (max |ρ−ρ†| = {herm:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(ModelError::InvalidState(format!("trace {tr} differs from 1")));
        }
        let lmin = self.min_eigenvalue();
        if lmin < -psd_tol {
            return Err(ModelError::InvalidState(format!(
                "negative eigenvalue {lmin:.3e}"
            )));
        }
        Ok(())
    }
}

fn bell_vector(which: BellState) -> ([C; 4], BasisOrdering) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    match which {
        BellState::PhiPlus => ([c(h, 0.0), z, z, c(h, 0.0)], BasisOrdering::Phi),
        BellState::PhiMinus => ([c(h, 0.0), z, z, c(-h, 0.0)], BasisOrdering::Phi),
        BellState::PsiPlus => ([z, c(h, 0.0), c(h, 0.0), z], BasisOrdering::Psi),
        BellState::PsiMinus => ([z, c(h, 0.0), c(-h, 0.0), z], BasisOrdering::Psi),
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, "must be finite"))
    }
}

pub fn make_state(spec: &StateSpec) -> Result<TwoQubitState, ModelError> {
    match *spec {
        StateSpec::Bell { which } => {
            let (psi, ordering) = bell_vector(which);
            TwoQubitState::from_pure(psi, ordering)
        }
        StateSpec::Werner { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid("p", format!("Werner weight must lie in [0, 1], got {p}")));
            }
            let singlet = make_state(&StateSpec::Bell {
                which: BellState::PsiMinus,
            })?;
            let rho = M4::identity().scale(0.25 * (1.0 - p)) + singlet.rho.scale(p);
            Ok(TwoQubitState::new_unchecked(rho, BasisOrdering::Psi))
        }
        StateSpec::EntFamily { a, b, alpha, beta } => {
            check_finite("alpha", alpha)?;
            check_finite("beta", beta)?;
            if !(a >= 0.0 && b >= 0.0) {
                return Err(invalid("a,b", format!("must be nonnegative, got a={a}, b={b}")));
            }
            if (a + b - 0.5).abs() > 1e-12 {
                return Err(invalid("a,b", format!("a + b must equal 1/2, got {}", a + b)));
            }
            let (sa, sb) = (a.sqrt(), b.sqrt());
            let psi = [
                c(sa, 0.0),
                C::from_polar(sb, beta),
                C::from_polar(sb, alpha),
                -C::from_polar(sa, alpha + beta),
            ];
            let n = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            TwoQubitState::from_pure(psi.map(|z| z / n), BasisOrdering::Computational)
        }
        StateSpec::PhaseFamily { gamma } => {
            check_finite("gamma", gamma)?;
            let psi = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), C::from_polar(0.5, gamma)];
            TwoQubitState::from_pure(psi, BasisOrdering::Computational)
        }
        StateSpec::BellDiagonal { a, b } => {
            check_finite("b", b)?;
            if !(0.0..=0.5).contains(&a) {
                return Err(invalid("a", format!("must lie in [0, 1/2], got {a}")));
            }
            if b.abs() > a + 1e-15 {
                return Err(invalid("b", format!("|b| = {} exceeds a = {a} (not PSD)", b.abs())));
            }
            let mut rho = M4::zeros();
            rho[(0, 0)] = c(0.5 - a, 0.0);
            rho[(3, 3)] = c(0.5 - a, 0.0);
            rho[(1, 1)] = c(a, 0.0);
            rho[(2, 2)] = c(a, 0.0);
            rho[(1, 2)] = c(b, 0.0);
            rho[(2, 1)] = c(b, 0.0);
            Ok(TwoQubitState::new_unchecked(rho, BasisOrdering::Psi))
        }
        StateSpec::Raw { matrix } => {
            let rho = M4::from_fn(|i, j| c(matrix[i][j][0], matrix[i][j][1]));
            TwoQubitState::new(rho, BasisOrdering::Computational)
        }
    }
}
