//! First-order polar-coordinate dynamics of the noisy iterate on the Bloch
//! sphere, and harnesses that compare them with the exact simulator.
//!
//! `theta` is measured from `|2>` (north pole) and `phi` from the meridian of
//! the initial state. `phi` is kept unwrapped.

use std::f64::consts::PI;

use serde::Serialize;

use crate::discrete::{
    for_each_trial_ordered, record_path, InitialState, SearchInstance, Welford,
};
use crate::error::{Error, Result};
use crate::harness::fit::{fit_line, ScalingFit};
use crate::noise::NoiseSpec;
use crate::spinor::{polar_angles, to_bloch};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarPoint {
    pub theta: f64,
    pub phi: f64,
}

impl PolarPoint {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Azimuth reduced to `[0, 2 pi)`.
    pub fn wrapped_phi(&self) -> f64 {
        self.phi.rem_euclid(2.0 * PI)
    }
}

/// Result of one map application. `out_of_validity` marks steps taken too
/// close to a pole for the expansion to hold, including clamped ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapStep {
    pub point: PolarPoint,
    pub out_of_validity: bool,
}

/// Combined first-order update of one noisy iterate:
/// `phi <- phi - sin(phi) cot(theta) 4/sqrt(N) + eps`,
/// `theta <- theta + cos(phi) 4/sqrt(N)`.
pub fn grover_map(p: PolarPoint, eps: f64, size: f64) -> MapStep {
    let step = 4.0 / size.sqrt();
    let (sin_t, cos_t) = p.theta.sin_cos();
    let (sin_p, cos_p) = p.phi.sin_cos();
    let near_pole = sin_t <= 1.0 / size;
    let phi = p.phi - sin_p * (cos_t / sin_t) * step + eps;
    let raw = p.theta + cos_p * step;
    let lo = 1.0 / size;
    let hi = PI - 1.0 / size;
    let theta = raw.clamp(lo, hi);
    MapStep {
        point: PolarPoint { theta, phi },
        out_of_validity: near_pole || theta != raw,
    }
}

/// The small-`phi` limit: `phi <- phi + eps`, `theta <- theta + 4/sqrt(N)`.
pub fn small_phi_map(p: PolarPoint, eps: f64, size: f64) -> PolarPoint {
    PolarPoint {
        theta: (p.theta + 4.0 / size.sqrt()).clamp(0.0, PI),
        phi: p.phi + eps,
    }
}

/// `P = (1 - cos theta) / 2` with the marked item at `theta = pi`.
pub fn success_from_theta(theta: f64) -> f64 {
    0.5 * (1.0 - theta.cos())
}

/// Polar angle beyond which the success probability exceeds `p_star`.
pub fn threshold_theta(p_star: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_star) {
        return Err(Error::InvalidParameter(format!(
            "probability {p_star} outside [0, 1]"
        )));
    }
    Ok((1.0 - 2.0 * p_star).clamp(-1.0, 1.0).acos())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    #[default]
    Full,
    SmallPhi,
}

/// Path of the approximate map driven by an error stream.
pub fn map_path(
    start: PolarPoint,
    size: f64,
    kind: MapKind,
    errors: impl IntoIterator<Item = f64>,
) -> (Vec<PolarPoint>, usize) {
    let mut p = start;
    let mut flagged = 0;
    let mut path = vec![p];
    for eps in errors {
        p = match kind {
            MapKind::Full => {
                let step = grover_map(p, eps, size);
                flagged += step.out_of_validity as usize;
                step.point
            }
            MapKind::SmallPhi => small_phi_map(p, eps, size),
        };
        path.push(p);
    }
    (path, flagged)
}

/// Per-iteration differences between exact and approximate ensembles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub theta_mean_exact: Vec<f64>,
    pub theta_mean_map: Vec<f64>,
    pub phi_rms_exact: Vec<f64>,
    pub phi_rms_map: Vec<f64>,
    /// Map steps flagged as outside the expansion's validity, over all trials.
    pub flagged_steps: usize,
}

impl DiscrepancyReport {
    pub fn theta_diff(&self) -> Vec<f64> {
        self.theta_mean_exact
            .iter()
            .zip(&self.theta_mean_map)
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn phi_rms_diff(&self) -> Vec<f64> {
        self.phi_rms_exact
            .iter()
            .zip(&self.phi_rms_map)
            .map(|(a, b)| a - b)
            .collect()
    }
}

fn start_point(size: f64, initial: InitialState) -> Result<PolarPoint> {
    let (theta, _) = polar_angles(&to_bloch(&initial.state(size))?)?;
    Ok(PolarPoint::new(theta, 0.0))
}

/// Runs exact and approximate ensembles on identical error streams.
pub fn compare_with_exact(
    inst: &SearchInstance,
    spec: &NoiseSpec,
    iterations: usize,
    trials: usize,
    initial: InitialState,
    kind: MapKind,
) -> Result<DiscrepancyReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let size = inst.size_f64();
    let start_state = initial.state(size);
    let start = start_point(size, initial)?;
    let len = iterations + 1;
    let (mut th_x, mut ph_x) = (Welford::new(len), Welford::new(len));
    let (mut th_m, mut ph_m) = (Welford::new(len), Welford::new(len));
    let mut flagged_steps = 0;

    for_each_trial_ordered(
        trials,
        |k| {
            let stream = spec.stream(k as u64);
            let exact = record_path(size, start_state, stream.clone().take(iterations), iterations);
            let (path, flagged) = map_path(start, size, kind, stream.take(iterations));
            (exact, path, flagged)
        },
        |(exact, path, flagged)| {
            th_x.push(&exact.theta);
            ph_x.push(&exact.phi.iter().map(|x| x * x).collect::<Vec<_>>());
            th_m.push(&path.iter().map(|p| p.theta).collect::<Vec<_>>());
            ph_m.push(&path.iter().map(|p| p.phi * p.phi).collect::<Vec<_>>());
            flagged_steps += flagged;
        },
    );

    let rms = |w: &Welford| w.mean().into_iter().map(f64::sqrt).collect::<Vec<_>>();
    Ok(DiscrepancyReport {
        theta_mean_exact: th_x.mean(),
        theta_mean_map: th_m.mean(),
        phi_rms_exact: rms(&ph_x),
        phi_rms_map: rms(&ph_m),
        flagged_steps,
    })
}

/// Which dynamics drive a diffusion measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dynamics {
    Exact,
    Map(MapKind),
}

/// RMS over trials of `theta(start + s) - theta(start)` for `s = 0..=horizon`.
pub fn theta_increment_rms(
    inst: &SearchInstance,
    spec: &NoiseSpec,
    initial: InitialState,
    start: usize,
    horizon: usize,
    trials: usize,
    dynamics: Dynamics,
) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let size = inst.size_f64();
    let total = start + horizon;
    let start_state = initial.state(size);
    let start_pt = start_point(size, initial)?;
    let mut sq = Welford::new(horizon + 1);

    for_each_trial_ordered(
        trials,
        |k| {
            let errors = spec.stream(k as u64).take(total);
            let theta: Vec<f64> = match dynamics {
                Dynamics::Exact => record_path(size, start_state, errors, total).theta,
                Dynamics::Map(kind) => map_path(start_pt, size, kind, errors)
                    .0
                    .into_iter()
                    .map(|p| p.theta)
                    .collect(),
            };
            let base = theta[start];
            theta[start..]
                .iter()
                .map(|t| (t - base) * (t - base))
                .collect::<Vec<f64>>()
        },
        |incr| sq.push(&incr),
    );
    Ok(sq.mean().into_iter().map(f64::sqrt).collect())
}

/// Log-log slope of an increment profile over `s` in `[s_lo, s_hi]`,
/// sampled at `points` logarithmically spaced lags.
pub fn diffusion_exponent(profile: &[f64], s_lo: usize, s_hi: usize, points: usize) -> Result<ScalingFit> {
    if s_lo == 0 || s_hi <= s_lo || s_hi >= profile.len() || points < 2 {
        return Err(Error::DegenerateGrid(format!(
            "lag window [{s_lo}, {s_hi}] with {points} points over a profile of {}",
            profile.len()
        )));
    }
    let ratio = (s_hi as f64 / s_lo as f64).ln();
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for i in 0..points {
        let s = (s_lo as f64 * (ratio * i as f64 / (points - 1) as f64).exp()).round() as usize;
        xs.push((s as f64).ln());
        ys.push(profile[s].ln());
    }
    fit_line(&xs, &ys)
}
