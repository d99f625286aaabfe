use dqd_model::DotParameters;
use num_complex::Complex64 as C;
use rayon::prelude::*;

use crate::block::block_amplitudes_with;
use crate::trajectory::ChannelTrajectory;
use crate::ChannelError;

/// Largest total nuclear spin N·I accepted by the exact sector sum.
pub const EXACT_MAX_STATES: f64 = 4000.0;

/// Probability of each total J_z = M for N spins I at infinite temperature,
/// indexed by M + N·I.
fn polarization_distribution(n: usize, two_i: usize) -> Vec<f64> {
    let per = two_i + 1;
    let mut dist = vec![1.0];
    for _ in 0..n {
        let mut next = vec![0.0; dist.len() + two_i];
        for (k, &p) in dist.iter().enumerate() {
            for slot in &mut next[k..k + per] {
                *slot += p / per as f64;
            }
        }
        dist = next;
    }
    dist
}

/// Channel of a finite bath summed exactly over total-spin sectors. Each
/// multiplet of total spin j appears with weight P(J_z = j) − P(J_z = j + 1)
/// per state; the lone states |↑,j⟩ and |↓,−j⟩ are the V = 0 edge blocks.
pub fn exact_sector_channel(
    dot: &DotParameters,
    times: &[f64],
) -> Result<ChannelTrajectory, ChannelError> {
    dot.validate()?;
    let n = dot.n_nuclei;
    if n.fract() != 0.0 || n * dot.i_nuclear > EXACT_MAX_STATES {
        return Err(ChannelError::ExactTooLarge {
            n,
            max: EXACT_MAX_STATES,
        });
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(ChannelError::BadGrid("times must be finite and nonnegative".into()));
    }
    let two_i = (2.0 * dot.i_nuclear).round() as usize;
    let n = n as usize;
    let two_max = n * two_i;
    let dist = polarization_distribution(n, two_i);
    // dist index of M is M + N·I, i.e. (2M + 2NI)/2
    let prob = |two_m: i64| -> f64 {
        let k = (two_m + two_max as i64) / 2;
        if k < 0 || k as usize >= dist.len() {
            0.0
        } else {
            dist[k as usize]
        }
    };
    let mut sectors = Vec::new();
    let mut two_j = (two_max % 2) as i64;
    while two_j <= two_max as i64 {
        let w = prob(two_j) - prob(two_j + 2);
        // sectors far in the tail carry no weight at double precision
        if w * (two_j + 1) as f64 > 1e-18 {
            sectors.push((two_j as f64 / 2.0, w));
        }
        two_j += 2;
    }

    let alpha = dot.alpha();
    let omega = dot.zeeman();
    let hbar = dot.constants.hbar;
    let coupling = |j: f64, m: f64| 0.5 * alpha * (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt();
    let detuning = |m: f64| 0.5 * (-omega + alpha * (m + 0.5));

    let pc: Vec<(f64, C)> = times
        .par_iter()
        .map(|&t| {
            let (mut p_ket, mut p_bra) = (0.0, 0.0);
            let mut c = C::new(0.0, 0.0);
            for &(j, w) in &sectors {
                let steps = (2.0 * j).round() as usize;
                for k in 0..=steps {
                    let m = -j + k as f64;
                    let ket = block_amplitudes_with(hbar, detuning(m), coupling(j, m), t);
                    let bra = block_amplitudes_with(hbar, detuning(m - 1.0), coupling(j, m - 1.0), t);
                    p_ket += w * ket.f_prob;
                    p_bra += w * bra.f_prob;
                    c += w * ket.a_amp * bra.d_amp.conj();
                }
            }
            (0.5 * (p_ket + p_bra), c)
        })
        .collect();
    let (p, c) = pc.into_iter().unzip();
    Ok(ChannelTrajectory {
        times: times.to_vec(),
        p,
        c,
        dot: *dot,
        secular_from: None,
        secular_tail: None,
    })
}
