use dqd_model::HBAR;
use num_complex::Complex64 as C;

/// Below this value of δ² + V² (μeV²) a block is treated as degenerate.
pub const DEGENERATE_ENERGY2: f64 = 1e-30;

/// Propagator elements of one |↑,m⟩, |↓,m+1⟩ block with the common phase of
/// the block's mean energy removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockAmplitudes {
    /// ⟨↑,m|U|↑,m⟩
    pub a_amp: C,
    /// ⟨↓,m+1|U|↓,m+1⟩
    pub d_amp: C,
    /// |⟨↓,m+1|U|↑,m⟩|²
    pub f_prob: f64,
}

pub fn block_amplitudes(delta: f64, v: f64, t: f64) -> BlockAmplitudes {
    block_amplitudes_with(HBAR, delta, v, t)
}

pub fn block_amplitudes_with(hbar: f64, delta: f64, v: f64, t: f64) -> BlockAmplitudes {
    assert!(delta.is_finite() && v.is_finite(), "block energies must be finite");
    assert!(t >= 0.0, "time must be nonnegative");
    let e2 = delta * delta + v * v;
    if e2 < DEGENERATE_ENERGY2 {
        return BlockAmplitudes {
            a_amp: C::new(1.0, 0.0),
            d_amp: C::new(1.0, 0.0),
            f_prob: 0.0,
        };
    }
    let e = e2.sqrt();
    let (s, c) = (e * t / hbar).sin_cos();
    let ct = delta / e;
    BlockAmplitudes {
        a_amp: C::new(c, -ct * s),
        d_amp: C::new(c, ct * s),
        f_prob: v * v / e2 * s * s,
    }
}
