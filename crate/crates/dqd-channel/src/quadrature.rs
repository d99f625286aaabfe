use dqd_model::DotParameters;
use num_complex::Complex64 as C;
use rayon::prelude::*;

use crate::block::DEGENERATE_ENERGY2;
use crate::legendre::gauss_legendre;
use crate::trajectory::{ChannelTrajectory, CP_ERROR_MARGIN};
use crate::ChannelError;

/// Smallest bath treated with the large-N (Gaussian) statistics.
pub const MIN_QUADRATURE_NUCLEI: f64 = 100.0;
/// The J axis is cut at this many standard deviations.
const J_CUTOFF_SIGMAS: f64 = 9.0;
const TIME_SLACK: f64 = 1e-9;

/// Node-count rule. With k = 9σαt/(2ħ) the largest phase swept along the J
/// axis, the u axis sweeps up to 2k; each axis gets its phase plus a fixed
/// head room, never less than the floors below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeRule {
    pub scale: f64,
    pub min_j: usize,
    pub min_u: usize,
}

impl Default for NodeRule {
    fn default() -> Self {
        Self {
            scale: 1.0,
            min_j: 64,
            min_u: 257,
        }
    }
}

impl NodeRule {
    pub fn counts(&self, dot: &DotParameters, t_max: f64) -> (usize, usize) {
        let hbar = dot.constants.hbar;
        let sigma = dot.sigma2().sqrt();
        let alpha = dot.alpha();
        let k = J_CUTOFF_SIGMAS * sigma * alpha * t_max / (2.0 * hbar);
        let nyquist_m = 8.0 * sigma * alpha * t_max / (2.0 * std::f64::consts::PI * hbar);
        let base_j = (self.min_j as f64).max(k + 48.0);
        let base_u = (self.min_u as f64).max(nyquist_m).max(2.0 * k + 48.0);
        (
            (self.scale * base_j).ceil() as usize,
            (self.scale * base_u).ceil() as usize,
        )
    }
}

/// Product rule over the bath. J = j + ½ carries the Maxwell density
/// J² exp(−J²/2σ²) on [0, 9σ]; at fixed J the polarization m = J·u is uniform
/// with u ∈ [−1, 1]. Weights on each axis sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BathQuadrature {
    pub j_nodes: Vec<f64>,
    pub j_weights: Vec<f64>,
    pub u_nodes: Vec<f64>,
    pub u_weights: Vec<f64>,
    pub t_max: f64,
}

impl BathQuadrature {
    pub fn len(&self) -> usize {
        self.j_nodes.len() * self.u_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_bath(dot: &DotParameters, t_max: f64) -> Result<(), ChannelError> {
    dot.validate()?;
    if dot.n_nuclei < MIN_QUADRATURE_NUCLEI {
        return Err(ChannelError::SmallBath {
            n: dot.n_nuclei,
            min: MIN_QUADRATURE_NUCLEI,
        });
    }
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(ChannelError::BadGrid(format!("t_max = {t_max}")));
    }
    let window = dot.validity_window();
    if t_max > window * (1.0 + TIME_SLACK) {
        return Err(ChannelError::BeyondValidity { t_max, window });
    }
    Ok(())
}

pub fn build_quadrature(dot: &DotParameters, t_max: f64) -> Result<BathQuadrature, ChannelError> {
    build_quadrature_with(dot, t_max, NodeRule::default())
}

pub fn build_quadrature_with(
    dot: &DotParameters,
    t_max: f64,
    rule: NodeRule,
) -> Result<BathQuadrature, ChannelError> {
    check_bath(dot, t_max)?;
    let (n_j, n_u) = rule.counts(dot, t_max);
    Ok(product_rule(dot, n_j, n_u, t_max))
}

fn product_rule(dot: &DotParameters, n_j: usize, n_u: usize, t_max: f64) -> BathQuadrature {
    let sigma2 = dot.sigma2();
    let j_max = J_CUTOFF_SIGMAS * sigma2.sqrt();
    let (x, w) = gauss_legendre(n_j);
    let j_nodes: Vec<f64> = x.iter().map(|x| 0.5 * (x + 1.0) * j_max).collect();
    let mut j_weights: Vec<f64> = j_nodes
        .iter()
        .zip(&w)
        .map(|(j, w)| w * j * j * (-j * j / (2.0 * sigma2)).exp())
        .collect();
    let total: f64 = j_weights.iter().sum();
    j_weights.iter_mut().for_each(|w| *w /= total);

    let (u_nodes, w) = gauss_legendre(n_u);
    let u_weights = w.iter().map(|w| 0.5 * w).collect();
    BathQuadrature {
        j_nodes,
        j_weights,
        u_nodes,
        u_weights,
        t_max,
    }
}

/// Per-node data of the ket block (m) and the bra block (m − 1).
#[derive(Debug, Clone, Copy)]
struct Node {
    w: f64,
    // ket: angular frequency E/ħ, δ/E and V²/E²
    e: f64,
    ct: f64,
    s2: f64,
    // bra
    e_b: f64,
    ct_b: f64,
    s2_b: f64,
}

fn block(delta: f64, v2: f64, hbar: f64) -> (f64, f64, f64) {
    let e2 = delta * delta + v2;
    if e2 < DEGENERATE_ENERGY2 {
        return (0.0, 1.0, 0.0);
    }
    let e = e2.sqrt();
    (e / hbar, delta / e, v2 / e2)
}

fn nodes(dot: &DotParameters, quad: &BathQuadrature) -> Vec<Node> {
    let alpha = dot.alpha();
    let omega = dot.zeeman();
    let hbar = dot.constants.hbar;
    let q = 0.25 * alpha * alpha;
    let mut out = Vec::with_capacity(quad.len());
    for (&jj, &wj) in quad.j_nodes.iter().zip(&quad.j_weights) {
        for (&u, &wu) in quad.u_nodes.iter().zip(&quad.u_weights) {
            let m = jj * u;
            // ket block |↑,m⟩,|↓,m+1⟩; Q = j(j+1) − m(m+1) = J² − (m+½)²
            let delta = 0.5 * (-omega + alpha * (m + 0.5));
            let v2 = q * (jj * jj - (m + 0.5) * (m + 0.5)).max(0.0);
            // bra block |↑,m−1⟩,|↓,m⟩; Q = J² − (m−½)²
            let delta_b = 0.5 * (-omega + alpha * (m - 0.5));
            let v2_b = q * (jj * jj - (m - 0.5) * (m - 0.5)).max(0.0);
            let (e, ct, s2) = block(delta, v2, hbar);
            let (e_b, ct_b, s2_b) = block(delta_b, v2_b, hbar);
            out.push(Node {
                w: wj * wu,
                e,
                ct,
                s2,
                e_b,
                ct_b,
                s2_b,
            });
        }
    }
    out
}

// p = ½(E[f_ket] + E[f_bra]); c = E[A_ket · conj(D_bra)]
fn full_average(nodes: &[Node], t: f64) -> (f64, C) {
    let (mut p, mut re, mut im) = (0.0, 0.0, 0.0);
    for n in nodes {
        let (sx, cx) = (n.e * t).sin_cos();
        let (sy, cy) = (n.e_b * t).sin_cos();
        p += n.w * (n.s2 * sx * sx + n.s2_b * sy * sy);
        re += n.w * (cx * cy - n.ct * n.ct_b * sx * sy);
        im -= n.w * (cx * n.ct_b * sy + n.ct * sx * cy);
    }
    (0.5 * p, C::new(re, im))
}

// Only the terms oscillating at the difference frequency of the two blocks.
fn secular_average(nodes: &[Node], t: f64) -> (f64, C) {
    let (mut p, mut re, mut im) = (0.0, 0.0, 0.0);
    for n in nodes {
        let (s, c) = ((n.e - n.e_b) * t).sin_cos();
        p += n.w * (n.s2 + n.s2_b);
        re += n.w * (1.0 - n.ct * n.ct_b) * c;
        im += n.w * (n.ct_b - n.ct) * s;
    }
    (0.25 * p, C::new(0.5 * re, 0.5 * im))
}

fn check_grid(times: &[f64]) -> Result<(), ChannelError> {
    if times.is_empty() {
        return Err(ChannelError::BadGrid("empty time grid".into()));
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(ChannelError::BadGrid("times must be finite and nonnegative".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ChannelError::BadGrid("times must be strictly increasing".into()));
    }
    Ok(())
}

fn check_cp(times: &[f64], p: &[f64], c: &[C]) -> Result<(), ChannelError> {
    for (i, ((&t, &p), z)) in times.iter().zip(p).zip(c).enumerate() {
        if !(-CP_ERROR_MARGIN..=1.0 + CP_ERROR_MARGIN).contains(&p)
            || z.norm() > 1.0 - p + CP_ERROR_MARGIN
            || !z.norm().is_finite()
        {
            return Err(ChannelError::CpViolation {
                index: i,
                t,
                c_abs: z.norm(),
                one_minus_p: 1.0 - p,
            });
        }
    }
    Ok(())
}

fn evaluate(
    nodes: &[Node],
    times: &[f64],
    kernel: fn(&[Node], f64) -> (f64, C),
) -> (Vec<f64>, Vec<C>) {
    let pc: Vec<(f64, C)> = times.par_iter().map(|&t| kernel(nodes, t)).collect();
    pc.into_iter().unzip()
}

/// Full average on one quadrature. Each time point is an independent
/// fixed-order sum, so results do not depend on the worker count.
pub fn compute_channel(
    dot: &DotParameters,
    times: &[f64],
    quad: &BathQuadrature,
) -> Result<ChannelTrajectory, ChannelError> {
    dot.validate()?;
    check_grid(times)?;
    let t_last = *times.last().unwrap();
    if t_last > quad.t_max * (1.0 + TIME_SLACK) {
        return Err(ChannelError::UnderResolved {
            t: t_last,
            t_max: quad.t_max,
        });
    }
    let (p, c) = evaluate(&nodes(dot, quad), times, full_average);
    check_cp(times, &p, &c)?;
    Ok(ChannelTrajectory {
        times: times.to_vec(),
        p,
        c,
        dot: *dot,
        secular_from: None,
        secular_tail: None,
    })
}

/// Secular part only: drops the terms at the sum frequency of the ket and bra
/// blocks, which average out after a few hundred ns.
pub fn compute_secular(
    dot: &DotParameters,
    times: &[f64],
    quad: &BathQuadrature,
) -> Result<ChannelTrajectory, ChannelError> {
    dot.validate()?;
    check_grid(times)?;
    let (p, c) = evaluate(&nodes(dot, quad), times, secular_average);
    Ok(ChannelTrajectory {
        times: times.to_vec(),
        p,
        c,
        dot: *dot,
        secular_from: times.first().copied(),
        secular_tail: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelOptions {
    pub rule: NodeRule,
    /// Quadratures are built for design times base_time·2^k.
    pub base_time: f64,
    /// Beyond this time only the secular part is evaluated.
    pub t_full: f64,
    /// Nodes per axis for the secular part.
    pub secular_nodes: usize,
}

impl Default for ChannelOptions {
    fn default() -> Self {
        Self {
            rule: NodeRule::default(),
            base_time: 20.0,
            t_full: 1000.0,
            secular_nodes: 512,
        }
    }
}

/// Channel on an arbitrary grid inside the validity window. Times up to
/// `t_full` are grouped by doubling design times so short times never pay for
/// the node count of long ones; later times use the secular part, and the
/// size of the dropped fast part at `t_full` is recorded.
pub fn compute_channel_auto(
    dot: &DotParameters,
    times: &[f64],
    opts: &ChannelOptions,
) -> Result<ChannelTrajectory, ChannelError> {
    check_grid(times)?;
    let t_last = *times.last().unwrap();
    check_bath(dot, t_last)?;
    let window = dot.validity_window();

    let split = times.partition_point(|&t| t <= opts.t_full);
    let mut p = Vec::with_capacity(times.len());
    let mut c = Vec::with_capacity(times.len());
    let mut start = 0;
    while start < split {
        let mut design = opts.base_time.max(f64::MIN_POSITIVE);
        while design < times[start] {
            design *= 2.0;
        }
        let design = design.min(window);
        let end = start + times[start..split].partition_point(|&t| t <= design);
        let quad = build_quadrature_with(dot, design, opts.rule)?;
        let (pp, cc) = evaluate(&nodes(dot, &quad), &times[start..end], full_average);
        p.extend(pp);
        c.extend(cc);
        start = end;
    }

    let mut secular_from = None;
    let mut secular_tail = None;
    if split < times.len() {
        let n = ((opts.secular_nodes as f64) * opts.rule.scale).ceil() as usize;
        let sec = nodes(dot, &product_rule(dot, n, n, t_last));
        let (pp, cc) = evaluate(&sec, &times[split..], secular_average);
        p.extend(pp);
        c.extend(cc);

        let t_ref = opts.t_full.min(window);
        let quad = build_quadrature_with(dot, t_ref, opts.rule)?;
        let (pf, cf) = full_average(&nodes(dot, &quad), t_ref);
        let (ps, cs) = secular_average(&sec, t_ref);
        secular_from = Some(times[split]);
        secular_tail = Some((pf - ps).abs().max((cf - cs).norm()));
    }

    check_cp(times, &p, &c)?;
    Ok(ChannelTrajectory {
        times: times.to_vec(),
        p,
        c,
        dot: *dot,
        secular_from,
        secular_tail,
    })
}
