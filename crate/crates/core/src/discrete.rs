//! Discrete-time Grover search with a noisy phase oracle.
//!
//! The fast path evolves the two amplitudes on `{|1>, |2>}`; the full
//! state-vector path is kept as an independent reference for verification.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::NoiseSpec;
use crate::spinor::{bloch_unchecked, polar_angles, ComplexPair, Unitary2};

/// Largest library the full state-vector reference accepts.
pub const FULL_VECTOR_CAP: usize = 1 << 14;

/// Trials reduced per parallel batch; a constant so results never depend on
/// the thread count.
const BATCH: usize = 256;

/// A library of `N = 2^n_bits` items with one marked item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchInstance {
    pub n_bits: u32,
    pub marked_index: usize,
}

impl SearchInstance {
    pub fn new(n_bits: u32, marked_index: usize) -> Result<Self> {
        if !(2..=62).contains(&n_bits) {
            return Err(Error::InvalidParameter(format!(
                "n_bits must lie in [2, 62], got {n_bits}"
            )));
        }
        let inst = Self {
            n_bits,
            marked_index,
        };
        if marked_index >= inst.size() {
            return Err(Error::InvalidParameter(format!(
                "marked index {marked_index} outside library of size {}",
                inst.size()
            )));
        }
        Ok(inst)
    }

    pub fn with_bits(n_bits: u32) -> Result<Self> {
        Self::new(n_bits, 0)
    }

    pub fn size(&self) -> usize {
        1usize << self.n_bits
    }

    pub fn size_f64(&self) -> f64 {
        (self.n_bits as f64).exp2()
    }

    /// Noiseless quarter-period `round(pi sqrt(N) / 4)`.
    pub fn grover_iterations(&self) -> usize {
        (PI * self.size_f64().sqrt() / 4.0).round() as usize
    }
}

/// Where a trajectory starts.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    /// The uniform superposition `|eta>`.
    #[default]
    Uniform,
    /// Pure state at polar angle `theta` on the `phi = 0` meridian.
    Meridian { theta: f64 },
}

impl InitialState {
    pub fn state(&self, size: f64) -> ComplexPair {
        match *self {
            InitialState::Uniform => ComplexPair::uniform(size),
            InitialState::Meridian { theta } => ComplexPair::on_meridian(theta),
        }
    }
}

/// Ideal iterate `[[1 - 2/N, 2 sqrt(N-1)/N], [-2 sqrt(N-1)/N, 1 - 2/N]]`.
pub fn noiseless_iterate(size: f64) -> Unitary2 {
    let c = 1.0 - 2.0 / size;
    let s = 2.0 * (size - 1.0).sqrt() / size;
    Unitary2::new([
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ])
}

/// Oracle `I + (e^{i(pi+eps)} - 1)|1><1|` on the subspace.
pub fn noisy_oracle(eps: f64) -> Unitary2 {
    let phase = -Complex64::from_polar(1.0, eps);
    Unitary2::new([
        [phase, Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ])
}

/// Reflection `2|eta><eta| - I` about the uniform superposition.
pub fn diffusion(size: f64) -> Unitary2 {
    let s = 2.0 * (size - 1.0).sqrt() / size;
    Unitary2::new([
        [Complex64::new(2.0 / size - 1.0, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(1.0 - 2.0 / size, 0.0)],
    ])
}

/// One noisy Grover step `(2|eta><eta| - I) O_eps`.
pub fn noisy_iterate(size: f64, eps: f64) -> Unitary2 {
    diffusion(size) * noisy_oracle(eps)
}

/// Success probability `P(t) = |a1(t)|^2` for `t = 0..=T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub success_prob: Vec<f64>,
    pub final_state: ComplexPair,
}

/// Evolve `initial` through one iterate per supplied error.
pub fn evolve(size: f64, initial: ComplexPair, errors: impl IntoIterator<Item = f64>) -> Trajectory {
    let mut state = initial;
    let mut success_prob = vec![state.marked_probability()];
    for eps in errors {
        state = noisy_iterate(size, eps).apply(&state);
        success_prob.push(state.marked_probability());
    }
    Trajectory {
        success_prob,
        final_state: state,
    }
}

/// Noisy search from `|eta>` with errors drawn from stream `stream_id`.
pub fn run_trajectory(
    inst: &SearchInstance,
    spec: &NoiseSpec,
    iterations: usize,
    stream_id: u64,
) -> Trajectory {
    let size = inst.size_f64();
    evolve(
        size,
        ComplexPair::uniform(size),
        spec.stream(stream_id).take(iterations),
    )
}

/// Brute-force simulation of all `N` amplitudes.
pub fn full_vector_reference(
    inst: &SearchInstance,
    eps_sequence: &[f64],
    iterations: usize,
) -> Result<Trajectory> {
    let size = inst.size();
    if size > FULL_VECTOR_CAP {
        return Err(Error::VerificationCap {
            size,
            cap: FULL_VECTOR_CAP,
        });
    }
    if eps_sequence.len() < iterations {
        return Err(Error::InvalidParameter(format!(
            "{iterations} iterations need as many errors, got {}",
            eps_sequence.len()
        )));
    }
    let marked = inst.marked_index;
    let inv = 1.0 / size as f64;
    let mut amps = vec![Complex64::new(inv.sqrt(), 0.0); size];
    let mut success_prob = Vec::with_capacity(iterations + 1);
    success_prob.push(amps[marked].norm_sqr());
    for &eps in &eps_sequence[..iterations] {
        amps[marked] *= -Complex64::from_polar(1.0, eps);
        let mean = amps.iter().sum::<Complex64>() * inv;
        for a in amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
        success_prob.push(amps[marked].norm_sqr());
    }
    let unmarked: Complex64 = amps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != marked)
        .map(|(_, a)| *a)
        .sum();
    Ok(Trajectory {
        success_prob,
        final_state: ComplexPair::new(amps[marked], unmarked / ((size - 1) as f64).sqrt()),
    })
}

/// Accumulates the azimuth so that it never jumps by `2 pi`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Unwrapper {
    last: f64,
    total: f64,
}

impl Unwrapper {
    pub(crate) fn new(phi: f64) -> Self {
        Self {
            last: phi,
            total: phi,
        }
    }

    pub(crate) fn push(&mut self, phi: f64) -> f64 {
        let mut d = phi - self.last;
        if d > PI {
            d -= TAU;
        } else if d <= -PI {
            d += TAU;
        }
        self.last = phi;
        self.total += d;
        self.total
    }
}

/// Per-iteration record of one trial: `P`, `theta` and unwrapped `phi`.
#[derive(Debug, Clone)]
pub(crate) struct PathRecord {
    pub p: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
}

fn polar_of(state: &ComplexPair) -> (f64, f64) {
    polar_angles(&bloch_unchecked(state)).unwrap_or((0.0, 0.0))
}

pub(crate) fn record_path(
    size: f64,
    initial: ComplexPair,
    errors: impl IntoIterator<Item = f64>,
    capacity: usize,
) -> PathRecord {
    let mut state = initial;
    let (theta0, phi0) = polar_of(&state);
    let mut unwrap = Unwrapper::new(phi0);
    let mut rec = PathRecord {
        p: Vec::with_capacity(capacity + 1),
        theta: Vec::with_capacity(capacity + 1),
        phi: Vec::with_capacity(capacity + 1),
    };
    rec.p.push(state.marked_probability());
    rec.theta.push(theta0);
    rec.phi.push(phi0);
    for eps in errors {
        state = noisy_iterate(size, eps).apply(&state);
        let (theta, phi) = polar_of(&state);
        rec.p.push(state.marked_probability());
        rec.theta.push(theta);
        rec.phi.push(unwrap.push(phi));
    }
    rec
}

/// Running mean and sum of squared deviations, updated in a fixed order.
#[derive(Debug, Clone)]
pub(crate) struct Welford {
    count: f64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Welford {
    pub(crate) fn new(len: usize) -> Self {
        Self {
            count: 0.0,
            mean: vec![0.0; len],
            m2: vec![0.0; len],
        }
    }

    pub(crate) fn push(&mut self, xs: &[f64]) {
        self.count += 1.0;
        for ((m, s), &x) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(xs) {
            let d = x - *m;
            *m += d / self.count;
            *s += d * (x - *m);
        }
    }

    pub(crate) fn mean(&self) -> Vec<f64> {
        self.mean.clone()
    }

    /// Population standard deviation about the mean.
    pub(crate) fn std(&self) -> Vec<f64> {
        self.m2.iter().map(|s| (s / self.count).sqrt()).collect()
    }

    /// Standard error of the mean from the sample standard deviation.
    pub(crate) fn stderr(&self) -> Vec<f64> {
        if self.count < 2.0 {
            return vec![0.0; self.m2.len()];
        }
        let n = self.count;
        self.m2.iter().map(|s| (s / (n - 1.0) / n).sqrt()).collect()
    }
}

/// How the "maximal success probability" of an ensemble is read off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakMode {
    /// Maximum over `t` of the ensemble-mean curve.
    #[default]
    MeanCurve,
    /// Mean over trials of each trial's own maximum over `t`.
    PerTrial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub t: Option<usize>,
    pub mean: f64,
    pub stderr: f64,
}

/// Monte Carlo moments of the distribution over the Bloch sphere.
///
/// `theta_rms` is the spread of `theta` about `theta_mean`; `phi_rms` is the
/// root mean square of the unwrapped azimuth about zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub trials: usize,
    pub mean_p: Vec<f64>,
    pub stderr_p: Vec<f64>,
    pub phi_rms: Vec<f64>,
    pub theta_mean: Vec<f64>,
    pub theta_rms: Vec<f64>,
    pub per_trial_max_mean: f64,
    pub per_trial_max_stderr: f64,
}

impl EnsembleStats {
    pub fn iterations(&self) -> usize {
        self.mean_p.len() - 1
    }

    pub fn peak(&self, mode: PeakMode) -> Peak {
        match mode {
            PeakMode::MeanCurve => {
                let (t, &mean) = self
                    .mean_p
                    .iter()
                    .enumerate()
                    .fold((0, &f64::NEG_INFINITY), |best, cur| {
                        if cur.1 > best.1 {
                            cur
                        } else {
                            best
                        }
                    });
                Peak {
                    t: Some(t),
                    mean,
                    stderr: self.stderr_p[t],
                }
            }
            PeakMode::PerTrial => Peak {
                t: None,
                mean: self.per_trial_max_mean,
                stderr: self.per_trial_max_stderr,
            },
        }
    }
}

/// Ensemble of `trials` runs from `|eta>`; trial `k` draws from stream `k`.
pub fn monte_carlo(
    inst: &SearchInstance,
    spec: &NoiseSpec,
    iterations: usize,
    trials: usize,
) -> Result<EnsembleStats> {
    monte_carlo_from(inst, spec, iterations, trials, InitialState::Uniform)
}

pub fn monte_carlo_from(
    inst: &SearchInstance,
    spec: &NoiseSpec,
    iterations: usize,
    trials: usize,
    initial: InitialState,
) -> Result<EnsembleStats> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let size = inst.size_f64();
    let start = initial.state(size);
    let len = iterations + 1;
    let mut p = Welford::new(len);
    let mut theta = Welford::new(len);
    let mut phi_sq = Welford::new(len);
    let mut peak = Welford::new(1);

    for_each_trial_ordered(
        trials,
        |k| record_path(size, start, spec.stream(k as u64).take(iterations), iterations),
        |rec| {
            p.push(&rec.p);
            theta.push(&rec.theta);
            let sq: Vec<f64> = rec.phi.iter().map(|x| x * x).collect();
            phi_sq.push(&sq);
            let max = rec.p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            peak.push(&[max]);
        },
    );

    Ok(EnsembleStats {
        trials,
        mean_p: p.mean(),
        stderr_p: p.stderr(),
        phi_rms: phi_sq.mean().into_iter().map(f64::sqrt).collect(),
        theta_mean: theta.mean(),
        theta_rms: theta.std(),
        per_trial_max_mean: peak.mean()[0],
        per_trial_max_stderr: peak.stderr()[0],
    })
}

/// Runs `work` for trials `0..trials` in parallel batches and hands the
/// results to `reduce` strictly in trial order.
pub(crate) fn for_each_trial_ordered<T, W, R>(trials: usize, work: W, mut reduce: R)
where
    T: Send,
    W: Fn(usize) -> T + Sync,
    R: FnMut(T),
{
    let mut next = 0;
    while next < trials {
        let end = (next + BATCH).min(trials);
        let batch: Vec<T> = (next..end).into_par_iter().map(&work).collect();
        batch.into_iter().for_each(&mut reduce);
        next = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::axis_angle_decompose;
    use approx::assert_abs_diff_eq;

    /// The G matrix exactly as printed, used only to cross-check the
    /// construction from its definition.
    fn printed_iterate(size: f64, eps: f64) -> Unitary2 {
        let ph = Complex64::from_polar(1.0, PI + eps);
        let s = 2.0 * (size - 1.0).sqrt() / size;
        Unitary2::new([
            [(-1.0 + 2.0 / size) * ph, Complex64::new(s, 0.0)],
            [s * ph, Complex64::new(1.0 - 2.0 / size, 0.0)],
        ])
    }

    #[test]
    fn noiseless_iterate_at_four() {
        let g = noiseless_iterate(4.0);
        let h = 3f64.sqrt() / 2.0;
        assert_abs_diff_eq!(g.m[0][0].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(g.m[0][1].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(g.m[1][0].re, -h, epsilon = 1e-15);
        assert_abs_diff_eq!(g.m[1][1].re, 0.5, epsilon = 1e-15);
        for size in [4.0, 16.0, 1000.0, 1e9] {
            assert_abs_diff_eq!(noiseless_iterate(size).det().re, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn one_step_at_four_finds_marked_item() {
        let s = noiseless_iterate(4.0).apply(&ComplexPair::uniform(4.0));
        assert_abs_diff_eq!(s.marked_probability(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn noisy_iterate_reduces_exactly_at_zero_error() {
        for size in [4.0, 64.0, 1e6] {
            assert_eq!(noisy_iterate(size, 0.0), noiseless_iterate(size));
        }
    }

    #[test]
    fn noisy_iterate_matches_printed_matrix() {
        let g = noisy_iterate(100.0, 0.3);
        let expected = (-1.0 + 2.0 / 100.0) * Complex64::from_polar(1.0, PI + 0.3);
        assert!((g.m[0][0] - expected).norm() < 1e-12);
        for (size, eps) in [(4.0, 0.0), (100.0, 0.3), (4096.0, -1.2), (1e7, 2.5)] {
            assert!(noisy_iterate(size, eps).max_abs_diff(&printed_iterate(size, eps)) < 1e-12);
            assert!(noisy_iterate(size, eps).unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn noiseless_grover_angle_at_four() {
        let aa = axis_angle_decompose(&noiseless_iterate(4.0)).unwrap();
        assert_abs_diff_eq!(aa.phi, 2.0 * PI / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(aa.axis[1], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(aa.alpha, 0.0, epsilon = 1e-15);
        assert!(aa.to_unitary().max_abs_diff(&noiseless_iterate(4.0)) < 1e-12);
    }

    #[test]
    fn noisy_decomposition_matches_component_equations() {
        let (size, eps) = (100.0f64, 0.1f64);
        let aa = axis_angle_decompose(&noisy_iterate(size, eps)).unwrap();
        let c0 = 1.0 - 2.0 / size;
        let s0 = 2.0 * (size - 1.0).sqrt() / size;
        let half = 0.5 * aa.phi;
        assert_abs_diff_eq!(half.cos(), c0 * (0.5 * eps).cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(half.sin() * aa.axis[0], s0 * (0.5 * eps).sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(half.sin() * aa.axis[1], -s0 * (0.5 * eps).cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(half.sin() * aa.axis[2], -c0 * (0.5 * eps).sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(aa.alpha, 0.5 * eps, epsilon = 1e-12);
    }

    #[test]
    fn trajectory_starts_at_one_over_n() {
        let inst = SearchInstance::with_bits(7).unwrap();
        let tr = run_trajectory(&inst, &NoiseSpec::gaussian(0.2, 3), 0, 0);
        assert_eq!(tr.success_prob.len(), 1);
        assert_abs_diff_eq!(tr.success_prob[0], 1.0 / 128.0, epsilon = 1e-12);
    }

    #[test]
    fn noiseless_search_at_1024() {
        let inst = SearchInstance::with_bits(10).unwrap();
        assert_eq!(inst.grover_iterations(), 25);
        let tr = run_trajectory(&inst, &NoiseSpec::noiseless(), 25, 0);
        assert!(tr.success_prob[25] >= 1.0 - 1.0 / 1024.0);
    }

    #[test]
    fn full_vector_small_cases() {
        let inst = SearchInstance::with_bits(2).unwrap();
        let tr = full_vector_reference(&inst, &[0.0], 1).unwrap();
        assert_abs_diff_eq!(tr.success_prob[1], 1.0, epsilon = 1e-15);
        let big = SearchInstance::with_bits(15).unwrap();
        assert!(matches!(
            full_vector_reference(&big, &[], 0),
            Err(Error::VerificationCap { .. })
        ));
    }

    #[test]
    fn full_vector_matches_subspace_at_1024() {
        let inst = SearchInstance::with_bits(10).unwrap();
        let spec = NoiseSpec::gaussian(0.3, 77);
        let errors = crate::noise::sample_stream(&spec, 5, 100);
        let fast = run_trajectory(&inst, &spec, 100, 5);
        let slow = full_vector_reference(&inst, &errors, 100).unwrap();
        for (a, b) in fast.success_prob.iter().zip(&slow.success_prob) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((fast.final_state.a1 - slow.final_state.a1).norm() < 1e-10);
        assert!((fast.final_state.a2 - slow.final_state.a2).norm() < 1e-10);
    }

    #[test]
    fn marked_index_does_not_matter() {
        let errors = crate::noise::sample_stream(&NoiseSpec::gaussian(0.4, 1), 0, 40);
        let base = full_vector_reference(&SearchInstance::new(6, 0).unwrap(), &errors, 40).unwrap();
        for marked in [1, 17, 63] {
            let other =
                full_vector_reference(&SearchInstance::new(6, marked).unwrap(), &errors, 40).unwrap();
            for (a, b) in base.success_prob.iter().zip(&other.success_prob) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn noiseless_ensemble_has_no_spread() {
        let inst = SearchInstance::with_bits(8).unwrap();
        let stats = monte_carlo(&inst, &NoiseSpec::noiseless(), 12, 20).unwrap();
        assert!(stats.stderr_p.iter().all(|&s| s == 0.0));
        assert!(stats.phi_rms.iter().all(|&s| s < 1e-12), "{:?}", stats.phi_rms);
    }

    #[test]
    fn crossing_the_pole_flips_the_meridian() {
        // The 13th noiseless step at N = 256 overshoots theta = pi.
        let inst = SearchInstance::with_bits(8).unwrap();
        let stats = monte_carlo(&inst, &NoiseSpec::noiseless(), 13, 1).unwrap();
        assert!((stats.phi_rms[13] - std::f64::consts::PI).abs() < 1e-9);
        assert!(stats.theta_mean[13] < stats.theta_mean[12]);
        assert!(monte_carlo(&inst, &NoiseSpec::noiseless(), 13, 0).is_err());
    }

    #[test]
    fn norm_survives_long_runs() {
        let tr = evolve(
            1024.0,
            ComplexPair::uniform(1024.0),
            NoiseSpec::gaussian(0.5, 8).stream(0).take(100_000),
        );
        assert!((tr.final_state.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn unwrapper_follows_full_turns() {
        let mut u = Unwrapper::new(0.0);
        let mut last = 0.0;
        for k in 1..=40 {
            let true_phi = 0.4 * k as f64;
            last = u.push(true_phi.rem_euclid(TAU));
            assert_abs_diff_eq!(last, true_phi, epsilon = 1e-12);
        }
        assert!(last > TAU);
    }

    #[test]
    fn peak_modes() {
        let inst = SearchInstance::with_bits(8).unwrap();
        let stats = monte_carlo(&inst, &NoiseSpec::gaussian(0.1, 2), 13, 50).unwrap();
        let curve = stats.peak(PeakMode::MeanCurve);
        let per_trial = stats.peak(PeakMode::PerTrial);
        assert!(per_trial.mean >= curve.mean);
        assert!(curve.t.is_some());
    }
}
