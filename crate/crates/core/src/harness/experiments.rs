//! The reported experiments as pure functions of an [`ExperimentConfig`].

use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::continuous::{self, ContinuousParams, System};
use crate::discrete::{monte_carlo, monte_carlo_from, InitialState, Peak, PeakMode, SearchInstance};
use crate::error::{Error, Result};
use crate::harness::bisect::{bisect, Monotone};
use crate::harness::config::{ExperimentConfig, ExperimentKind};
use crate::harness::fit::{fit_line, ScalingFit};
use crate::harness::output::{emit_outputs, Artifact, Cell, ExperimentManifest, Table};
use crate::harness::svg::{Plot, Series};
use crate::noise::{eps_for_size, NoiseSpec, ScalingLaw};

/// Search interval of the calibration, in `log10 eps_rms`.
pub const LOG10_EPS_RANGE: (f64, f64) = (-3.0, 0.0);

const PRESCAN_POINTS: usize = 7;

fn size_of(n_bits: u32) -> f64 {
    (n_bits as f64).exp2()
}

/// Ensemble peak success over the standard `round(pi sqrt(N)/4)` iterations.
pub fn max_success(n_bits: u32, spec: &NoiseSpec, trials: usize, mode: PeakMode) -> Result<Peak> {
    let inst = SearchInstance::with_bits(n_bits)?;
    let stats = monte_carlo(&inst, spec, inst.grover_iterations(), trials)?;
    Ok(stats.peak(mode))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Row {
    pub eps_rms: f64,
    pub n_bits: u32,
    pub mean_max_p: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Curve {
    pub eps_rms: f64,
    /// Non-increasing in `N` up to 3 combined standard errors.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Result {
    pub rows: Vec<Fig2Row>,
    pub curves: Vec<Fig2Curve>,
}

fn within_3_sigma(lower: &Fig2Row, upper: &Fig2Row) -> bool {
    upper.mean_max_p <= lower.mean_max_p + 3.0 * lower.stderr.hypot(upper.stderr)
}

impl Fig2Result {
    pub fn curve(&self, eps_rms: f64) -> Vec<&Fig2Row> {
        self.rows.iter().filter(|r| r.eps_rms == eps_rms).collect()
    }

    /// Pairs `(larger eps, smaller eps, n_bits)` where the noisier curve
    /// lies more than 3 sigma above the quieter one.
    pub fn ordering_violations(&self) -> Vec<(f64, f64, u32)> {
        let mut out = Vec::new();
        for a in &self.rows {
            for b in &self.rows {
                if a.n_bits == b.n_bits && a.eps_rms > b.eps_rms && !within_3_sigma(b, a) {
                    out.push((a.eps_rms, b.eps_rms, a.n_bits));
                }
            }
        }
        out
    }

    /// First `n_bits` at which a curve drops to or below `level`.
    pub fn crossing(&self, eps_rms: f64, level: f64) -> Option<u32> {
        self.curve(eps_rms).into_iter().find(|r| r.mean_max_p <= level).map(|r| r.n_bits)
    }
}

/// Mean peak success against `N` for each error magnitude.
pub fn fig2_sweep(cfg: &ExperimentConfig) -> Result<Fig2Result> {
    let mut eps_grid = cfg.eps_rms.clone();
    if cfg.noiseless_control && !eps_grid.contains(&0.0) {
        eps_grid.insert(0, 0.0);
    }
    let mut rows = Vec::new();
    let mut curves = Vec::new();
    for &eps in &eps_grid {
        let spec = cfg.noise_spec(eps);
        let curve: Vec<Fig2Row> = cfg
            .n_bits
            .iter()
            .map(|&n| {
                let peak = max_success(n, &spec, cfg.trials, cfg.peak_mode)?;
                Ok(Fig2Row {
                    eps_rms: eps,
                    n_bits: n,
                    mean_max_p: peak.mean,
                    stderr: peak.stderr,
                })
            })
            .collect::<Result<_>>()?;
        let monotone = curve.windows(2).all(|w| within_3_sigma(&w[0], &w[1]));
        curves.push(Fig2Curve { eps_rms: eps, monotone });
        rows.extend(curve);
    }
    Ok(Fig2Result { rows, curves })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsEstimate {
    pub n_bits: u32,
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub eps_mid: f64,
    pub p_achieved: f64,
    pub trials: usize,
    /// Coarse `(eps_rms, peak success)` scan taken before bisecting.
    pub prescan: Vec<(f64, f64)>,
    /// Whether the scan decreases in `eps_rms`.
    pub monotone: bool,
}

/// Error magnitude at which the ensemble peak success falls to `p_target`.
///
/// Bisects `log10 eps_rms` over [`LOG10_EPS_RANGE`] until the bracket is
/// narrower than `tol`. Every evaluation reuses the same error streams, so
/// the objective is a deterministic, smooth function of `eps_rms`.
pub fn find_eps_for_target(
    n_bits: u32,
    p_target: f64,
    trials: usize,
    tol: f64,
    noise: &NoiseSpec,
    mode: PeakMode,
) -> Result<EpsEstimate> {
    let noiseless = max_success(n_bits, &noise.with_eps(0.0), 1, mode)?.mean;
    if !(p_target < noiseless) {
        return Err(Error::Unreachable {
            p_star: p_target,
            supremum: noiseless,
        });
    }
    let objective = |log_eps: f64| -> Result<f64> {
        Ok(max_success(n_bits, &noise.with_eps(10f64.powf(log_eps)), trials, mode)?.mean)
    };
    let (lo, hi) = LOG10_EPS_RANGE;
    let prescan = (0..PRESCAN_POINTS)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (PRESCAN_POINTS - 1) as f64;
            Ok((10f64.powf(x), objective(x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = prescan.windows(2).all(|w| w[1].1 <= w[0].1);

    let mut failure = None;
    let br = bisect(
        |x| match objective(x) {
            Ok(p) => p,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        p_target,
        tol,
        Monotone::Decreasing,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let br = br.map_err(|e| match e {
        Error::NonBracketing { f_lo, f_hi, target, .. } => Error::NonBracketing {
            lo: 10f64.powf(lo),
            hi: 10f64.powf(hi),
            f_lo,
            f_hi,
            target,
        },
        other => other,
    })?;
    let mid = br.mid();
    Ok(EpsEstimate {
        n_bits,
        eps_lo: 10f64.powf(br.lo),
        eps_hi: 10f64.powf(br.hi),
        eps_mid: 10f64.powf(mid),
        p_achieved: objective(mid)?,
        trials,
        prescan,
        monotone,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig3Fit {
    /// Slope of `log2 N` against `-log2 eps_rms`.
    pub fit: ScalingFit,
    /// `eps_rms ~ N^(-delta)` with `delta = 1/slope`.
    pub delta: f64,
}

/// Regresses `log2 N` on `-log2 eps_rms`; needs at least four sizes.
pub fn scaling_fit_from_eps(n_bits: &[u32], eps: &[f64]) -> Result<Fig3Fit> {
    if n_bits.len() < 4 {
        return Err(Error::DegenerateGrid(format!(
            "scaling fit needs at least 4 library sizes, got {}",
            n_bits.len()
        )));
    }
    let x: Vec<f64> = eps.iter().map(|e| -e.log2()).collect();
    let y: Vec<f64> = n_bits.iter().map(|&n| n as f64).collect();
    let fit = fit_line(&x, &y)?;
    let delta = 1.0 / fit.slope;
    Ok(Fig3Fit { fit, delta })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig3Result {
    pub estimates: Vec<EpsEstimate>,
    pub fit: Fig3Fit,
}

/// Calibrates `eps_rms` at every size and fits the scaling exponent.
pub fn fig3_fit(cfg: &ExperimentConfig) -> Result<Fig3Result> {
    if cfg.n_bits.len() < 4 {
        return Err(Error::DegenerateGrid("fig3 needs at least 4 library sizes".into()));
    }
    let noise = cfg.noise_spec(0.0);
    let estimates = cfg
        .n_bits
        .iter()
        .map(|&n| find_eps_for_target(n, cfg.p_target, cfg.trials, cfg.tolerance, &noise, cfg.peak_mode))
        .collect::<Result<Vec<_>>>()?;
    let eps: Vec<f64> = estimates.iter().map(|e| e.eps_mid).collect();
    let fit = scaling_fit_from_eps(&cfg.n_bits, &eps)?;
    Ok(Fig3Result { estimates, fit })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig4Row {
    pub delta: f64,
    pub size: f64,
    pub t_prime: f64,
    pub log_n_t_prime: f64,
}

/// Continuous first-passage time for one `(delta, N)` point.
pub fn fig4_point(delta: f64, size: f64, alpha: f64, p_star: f64) -> Result<Fig4Row> {
    let p = ContinuousParams::from_scaling(size, delta, alpha)?;
    let t_prime = continuous::find_min_time(&p, p_star)?;
    Ok(Fig4Row {
        delta,
        size,
        t_prime,
        log_n_t_prime: t_prime.ln() / size.ln(),
    })
}

/// `log_N t'` over the `(delta, N)` grid with `Gamma = alpha N^(-2 delta)`.
pub fn fig4_sweep(cfg: &ExperimentConfig) -> Result<Vec<Fig4Row>> {
    let grid: Vec<(f64, f64)> = cfg
        .deltas
        .iter()
        .flat_map(|&d| cfg.n_bits.iter().map(move |&n| (d, size_of(n))))
        .collect();
    grid.par_iter()
        .map(|&(d, size)| fig4_point(d, size, cfg.alpha, cfg.p_target))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityPoint {
    pub n_bits: u32,
    pub eps_rms: f64,
    pub t_opt: usize,
    pub p_opt: f64,
    pub cost: f64,
}

/// Run length minimising the expected total cost `t / P(t)` of repeating a
/// length-`t` run until it succeeds.
///
/// `t` is scanned over `[1, min(pi sqrt(N)/4, 3/eps_rms^2)]`.
pub fn complexity_estimate(n_bits: u32, noise: &NoiseSpec, trials: usize) -> Result<ComplexityPoint> {
    let eps = noise.eps_rms;
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps_rms = {eps} must be positive")));
    }
    let inst = SearchInstance::with_bits(n_bits)?;
    let size = inst.size_f64();
    // The nudge keeps bounds such as 3/0.1^2 = 299.99999999999994 at 300.
    let t_max = ((PI * size.sqrt() / 4.0).min(3.0 / (eps * eps)) * (1.0 + 1e-12)).floor().max(1.0) as usize;
    let stats = monte_carlo(&inst, noise, t_max, trials)?;
    let (t_opt, cost) = (1..=t_max)
        .map(|t| (t, t as f64 / stats.mean_p[t]))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    Ok(ComplexityPoint {
        n_bits,
        eps_rms: eps,
        t_opt,
        p_opt: stats.mean_p[t_opt],
        cost,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityResult {
    pub points: Vec<ComplexityPoint>,
    /// Slope of `ln cost` against `ln N`.
    pub fit: ScalingFit,
}

/// `eps_rms` used at each size: fixed, or rescaled along `N^(-delta)`.
pub fn eps_schedule(cfg: &ExperimentConfig) -> Result<Vec<f64>> {
    let eps0 = *cfg
        .eps_rms
        .first()
        .ok_or_else(|| Error::Config("eps_rms grid is empty".into()))?;
    match cfg.schedule_delta {
        None => Ok(vec![eps0; cfg.n_bits.len()]),
        Some(delta) => {
            let law = ScalingLaw::anchored(delta, eps0, size_of(cfg.n_bits[0]))?;
            Ok(cfg.n_bits.iter().map(|&n| eps_for_size(&law, size_of(n))).collect())
        }
    }
}

pub fn complexity_sweep(cfg: &ExperimentConfig) -> Result<ComplexityResult> {
    let eps = eps_schedule(cfg)?;
    let points = cfg
        .n_bits
        .iter()
        .zip(&eps)
        .map(|(&n, &e)| complexity_estimate(n, &cfg.noise_spec(e), cfg.trials))
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = points.iter().map(|p| size_of(p.n_bits).ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.cost.ln()).collect();
    let fit = fit_line(&x, &y)?;
    Ok(ComplexityResult { points, fit })
}

/// Per-step ensemble moments of a single discrete configuration.
pub fn run_discrete(cfg: &ExperimentConfig) -> Result<Table> {
    let n_bits = cfg.n_bits[0];
    let eps = *cfg
        .eps_rms
        .first()
        .ok_or_else(|| Error::Config("eps_rms grid is empty".into()))?;
    let inst = SearchInstance::with_bits(n_bits)?;
    let iterations = cfg.iterations.unwrap_or_else(|| inst.grover_iterations());
    let initial = match cfg.initial_theta {
        Some(theta) => InitialState::Meridian { theta },
        None => InitialState::Uniform,
    };
    let stats = monte_carlo_from(&inst, &cfg.noise_spec(eps), iterations, cfg.trials, initial)?;
    let mut table = Table::new(&["t", "mean_p", "stderr_p", "theta_mean", "theta_rms", "phi_rms"]);
    for t in 0..=iterations {
        table.push(vec![
            Cell::from(t),
            Cell::from(stats.mean_p[t]),
            Cell::from(stats.stderr_p[t]),
            Cell::from(stats.theta_mean[t]),
            Cell::from(stats.theta_rms[t]),
            Cell::from(stats.phi_rms[t]),
        ]);
    }
    Ok(table)
}

/// Rows kept per continuous trajectory.
const CONTINUOUS_SAMPLES: usize = 400;

/// Integrated and closed-form trajectories plus `t'` for each `Gamma`.
pub fn run_continuous(cfg: &ExperimentConfig) -> Result<(Table, Table)> {
    let size = size_of(cfg.n_bits[0]);
    let t_end = cfg.t_end.unwrap_or(PI * size.sqrt());
    let mut traj = Table::new(&["gamma", "t", "nx", "ny", "nz", "p_integrated", "p_closed_form"]);
    let mut times = Table::new(&["gamma", "regime", "t_prime"]);
    for &gamma in &cfg.gammas {
        let p = ContinuousParams::new(size, gamma)?;
        let dt = continuous::max_step(&p) / 4.0;
        let tr = continuous::integrate(&p, t_end, dt, System::Full)?;
        let stride = (tr.times.len() / CONTINUOUS_SAMPLES).max(1);
        for (i, (t, s)) in tr.times.iter().zip(&tr.states).enumerate() {
            if i % stride != 0 && i + 1 != tr.times.len() {
                continue;
            }
            traj.push(vec![
                Cell::from(gamma),
                Cell::from(*t),
                Cell::from(s.nx),
                Cell::from(s.ny),
                Cell::from(s.nz),
                Cell::from(continuous::success_prob_ct(s.nz)?),
                Cell::from(continuous::success_prob_ct(continuous::closed_form_nz(*t, &p))?),
            ]);
        }
        let regime = match p.regime() {
            continuous::Regime::Underdamped => 0usize,
            continuous::Regime::Critical => 1,
            continuous::Regime::Overdamped => 2,
        };
        let t_prime = match continuous::find_min_time(&p, cfg.p_target) {
            Ok(t) => t,
            Err(Error::Unreachable { .. }) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        times.push(vec![Cell::from(gamma), Cell::from(regime), Cell::from(t_prime)]);
    }
    Ok((traj, times))
}

fn series_by<T>(rows: &[T], key: impl Fn(&T) -> f64, label: impl Fn(f64) -> String, point: impl Fn(&T) -> (f64, f64)) -> Vec<Series> {
    let mut keys: Vec<f64> = Vec::new();
    for r in rows {
        let k = key(r);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|k| Series {
            label: label(k),
            points: rows.iter().filter(|r| key(r) == k).map(&point).collect(),
        })
        .collect()
}

/// Runs the experiment named by `cfg.kind` and returns its tables.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<Artifact>> {
    cfg.validate()?;
    let art = |stem: &str, table: Table, plot: Option<Plot>| Artifact {
        stem: stem.to_string(),
        table,
        plot,
    };
    match cfg.kind {
        ExperimentKind::Fig2 | ExperimentKind::CustomSweep => {
            let res = fig2_sweep(cfg)?;
            let mut table = Table::new(&["eps_rms", "n_bits", "mean_max_p", "stderr"]);
            for r in &res.rows {
                table.push(vec![
                    Cell::from(r.eps_rms),
                    Cell::from(r.n_bits),
                    Cell::from(r.mean_max_p),
                    Cell::from(r.stderr),
                ]);
            }
            let plot = Plot {
                title: "Mean maximal success probability".into(),
                x_label: "N".into(),
                y_label: "<P>".into(),
                log_x: true,
                log_y: false,
                series: series_by(
                    &res.rows,
                    |r| r.eps_rms,
                    |e| format!("eps_rms = {e:.4}"),
                    |r| (size_of(r.n_bits), r.mean_max_p),
                ),
            };
            Ok(vec![art(cfg.kind.name(), table, Some(plot))])
        }
        ExperimentKind::Fig3 => {
            let res = fig3_fit(cfg)?;
            let mut table = Table::new(&["n_bits", "eps_lo", "eps_hi", "eps_mid", "p_achieved", "trials"]);
            for e in &res.estimates {
                table.push(vec![
                    Cell::from(e.n_bits),
                    Cell::from(e.eps_lo),
                    Cell::from(e.eps_hi),
                    Cell::from(e.eps_mid),
                    Cell::from(e.p_achieved),
                    Cell::from(e.trials),
                ]);
            }
            let mut fit = Table::new(&["slope", "intercept", "r_squared", "delta"]);
            fit.push(vec![
                Cell::from(res.fit.fit.slope),
                Cell::from(res.fit.fit.intercept),
                Cell::from(res.fit.fit.r_squared),
                Cell::from(res.fit.delta),
            ]);
            let measured: Vec<(f64, f64)> = res
                .estimates
                .iter()
                .map(|e| (-e.eps_mid.log2(), e.n_bits as f64))
                .collect();
            let line = measured
                .iter()
                .map(|&(x, _)| (x, res.fit.fit.slope * x + res.fit.fit.intercept))
                .collect();
            let plot = Plot {
                title: format!("Error tolerated at P = {}", cfg.p_target),
                x_label: "-log2 eps_rms".into(),
                y_label: "log2 N".into(),
                series: vec![
                    Series {
                        label: "calibrated".into(),
                        points: measured,
                    },
                    Series {
                        label: format!("slope {:.3}", res.fit.fit.slope),
                        points: line,
                    },
                ],
                ..Default::default()
            };
            Ok(vec![art("fig3", table, Some(plot)), art("fig3_fit", fit, None)])
        }
        ExperimentKind::Fig4 => {
            let rows = fig4_sweep(cfg)?;
            let mut table = Table::new(&["delta", "N", "t_prime", "log_N_t_prime"]);
            for r in &rows {
                table.push(vec![
                    Cell::from(r.delta),
                    Cell::from(r.size),
                    Cell::from(r.t_prime),
                    Cell::from(r.log_n_t_prime),
                ]);
            }
            let plot = Plot {
                title: "Continuous search time exponent".into(),
                x_label: "delta".into(),
                y_label: "log_N t'".into(),
                series: series_by(
                    &rows,
                    |r| r.size,
                    |n| format!("N = 2^{}", n.log2().round()),
                    |r| (r.delta, r.log_n_t_prime),
                ),
                ..Default::default()
            };
            Ok(vec![art("fig4", table, Some(plot))])
        }
        ExperimentKind::Complexity => {
            let res = complexity_sweep(cfg)?;
            let mut table = Table::new(&["n_bits", "eps_rms", "t_opt", "p_opt", "cost"]);
            for p in &res.points {
                table.push(vec![
                    Cell::from(p.n_bits),
                    Cell::from(p.eps_rms),
                    Cell::from(p.t_opt),
                    Cell::from(p.p_opt),
                    Cell::from(p.cost),
                ]);
            }
            let plot = Plot {
                title: format!("Expected cost, exponent {:.3}", res.fit.slope),
                x_label: "N".into(),
                y_label: "t/P(t)".into(),
                log_x: true,
                log_y: true,
                series: vec![Series {
                    label: "cost".into(),
                    points: res.points.iter().map(|p| (size_of(p.n_bits), p.cost)).collect(),
                }],
            };
            Ok(vec![art("complexity", table, Some(plot))])
        }
        ExperimentKind::RunDiscrete => {
            let table = run_discrete(cfg)?;
            let t = table.column("t").unwrap_or_default();
            let p = table.column("mean_p").unwrap_or_default();
            let plot = Plot {
                title: "Ensemble success probability".into(),
                x_label: "t".into(),
                y_label: "<P(t)>".into(),
                series: vec![Series {
                    label: "mean".into(),
                    points: t.into_iter().zip(p).collect(),
                }],
                ..Default::default()
            };
            Ok(vec![art("discrete", table, Some(plot))])
        }
        ExperimentKind::RunContinuous => {
            let (traj, times) = run_continuous(cfg)?;
            let g = traj.column("gamma").unwrap_or_default();
            let t = traj.column("t").unwrap_or_default();
            let p = traj.column("p_integrated").unwrap_or_default();
            let rows: Vec<(f64, f64, f64)> = g.into_iter().zip(t).zip(p).map(|((g, t), p)| (g, t, p)).collect();
            let plot = Plot {
                title: "Dephased continuous search".into(),
                x_label: "t".into(),
                y_label: "P(t)".into(),
                series: series_by(&rows, |r| r.0, |g| format!("Gamma = {g:.3e}"), |r| (r.1, r.2)),
                ..Default::default()
            };
            Ok(vec![art("continuous", traj, Some(plot)), art("continuous_t_prime", times, None)])
        }
    }
}

/// Runs `cfg`, writes every artifact and the manifest into `out_dir`.
pub fn execute(cfg: &ExperimentConfig, out_dir: &Path) -> Result<ExperimentManifest> {
    let started = Instant::now();
    let artifacts = run_experiment(cfg)?;
    let config = serde_json::to_value(cfg).expect("config is always serializable");
    let mut manifest = ExperimentManifest::new(cfg.kind.name(), cfg.base_seed, cfg.trials, config);
    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    emit_outputs(out_dir, &artifacts, &mut manifest)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_power_laws() {
        let n: Vec<u32> = (8..=16).collect();
        let quarter: Vec<f64> = n.iter().map(|&b| size_of(b).powf(-0.25)).collect();
        let f = scaling_fit_from_eps(&n, &quarter).unwrap();
        assert!((f.fit.slope - 4.0).abs() < 1e-12);
        assert!((f.fit.r_squared - 1.0).abs() < 1e-12);
        assert!((f.delta - 0.25).abs() < 1e-12);
        let half: Vec<f64> = n.iter().map(|&b| size_of(b).powf(-0.5)).collect();
        assert!((scaling_fit_from_eps(&n, &half).unwrap().fit.slope - 2.0).abs() < 1e-12);
        assert!(matches!(
            scaling_fit_from_eps(&n[..3], &quarter[..3]),
            Err(Error::DegenerateGrid(_))
        ));
    }

    #[test]
    fn schedule_is_anchored() {
        let mut cfg = ExperimentConfig::defaults(ExperimentKind::Complexity);
        assert!(eps_schedule(&cfg).unwrap().iter().all(|&e| e == 0.1));
        cfg.schedule_delta = Some(0.25);
        let eps = eps_schedule(&cfg).unwrap();
        assert!((eps[0] - 0.1).abs() < 1e-15);
        assert!((eps[4] - 0.1 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn complexity_needs_noise() {
        assert!(complexity_estimate(10, &NoiseSpec::noiseless(), 10).is_err());
    }

    #[test]
    fn fig4_point_matches_closed_form_time() {
        let r = fig4_point(0.5, 2f64.powi(20), 1.0, 0.25).unwrap();
        let p = ContinuousParams::from_scaling(2f64.powi(20), 0.5, 1.0).unwrap();
        assert_eq!(r.t_prime, continuous::find_min_time(&p, 0.25).unwrap());
        assert!((r.log_n_t_prime - r.t_prime.ln() / (20.0 * 2f64.ln())).abs() < 1e-15);
    }
}
