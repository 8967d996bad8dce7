//! Experiment configuration.
//!
//! A config file is a TOML document whose keys mirror [`ExperimentConfig`];
//! any key it omits keeps the default for the chosen experiment.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::discrete::PeakMode;
use crate::error::{Error, Result};
use crate::noise::{NoiseFamily, NoiseSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Fig2,
    Fig3,
    Fig4,
    CustomSweep,
    RunDiscrete,
    RunContinuous,
    Complexity,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::Fig2,
        ExperimentKind::Fig3,
        ExperimentKind::Fig4,
        ExperimentKind::CustomSweep,
        ExperimentKind::RunDiscrete,
        ExperimentKind::RunContinuous,
        ExperimentKind::Complexity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Fig2 => "fig2",
            ExperimentKind::Fig3 => "fig3",
            ExperimentKind::Fig4 => "fig4",
            ExperimentKind::CustomSweep => "custom-sweep",
            ExperimentKind::RunDiscrete => "run-discrete",
            ExperimentKind::RunContinuous => "run-continuous",
            ExperimentKind::Complexity => "complexity",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

/// Error magnitudes of the Fig. 2 curves, `10^(-0.5)` down to `10^(-1.75)`.
pub fn fig2_default_eps() -> Vec<f64> {
    [-0.5, -0.75, -1.0, -1.25, -1.5, -1.75]
        .iter()
        .map(|e: &f64| 10f64.powf(*e))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Library sizes as `log2 N`.
    pub n_bits: Vec<u32>,
    pub eps_rms: Vec<f64>,
    /// Exponents of `Gamma = alpha N^(-2 delta)`.
    pub deltas: Vec<f64>,
    pub alpha: f64,
    /// Dephasing rates for single continuous runs.
    pub gammas: Vec<f64>,
    pub trials: usize,
    /// Success threshold: 1/2 for calibration, 1/4 for continuous `t'`.
    pub p_target: f64,
    /// Bisection stop width in `log10 eps_rms`.
    pub tolerance: f64,
    pub noise: NoiseFamily,
    pub peak_mode: PeakMode,
    pub base_seed: u64,
    /// Discrete run length; `round(pi sqrt(N)/4)` when absent.
    pub iterations: Option<usize>,
    /// Continuous run length; `pi sqrt(N)` when absent.
    pub t_end: Option<f64>,
    /// If set, `eps_rms[0]` at `n_bits[0]` is rescaled as `N^(-delta)`.
    pub schedule_delta: Option<f64>,
    /// Starting polar angle for discrete runs; `|eta>` when absent.
    pub initial_theta: Option<f64>,
    /// Prepend an `eps_rms = 0` control curve to Fig. 2 style sweeps.
    pub noiseless_control: bool,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let base = Self {
            kind,
            n_bits: (8..=20).collect(),
            eps_rms: fig2_default_eps(),
            deltas: (0..=20).map(|i| i as f64 * 0.025).collect(),
            alpha: 1.0,
            gammas: Vec::new(),
            trials: 100,
            p_target: 0.5,
            tolerance: 1e-3,
            noise: NoiseFamily::Gaussian,
            peak_mode: PeakMode::MeanCurve,
            base_seed: 20_240_601,
            iterations: None,
            t_end: None,
            schedule_delta: None,
            initial_theta: None,
            noiseless_control: true,
            out_dir: PathBuf::from("out").join(kind.name()),
        };
        match kind {
            ExperimentKind::Fig2 | ExperimentKind::CustomSweep => Self {
                noiseless_control: kind == ExperimentKind::Fig2,
                ..base
            },
            ExperimentKind::Fig3 => Self {
                n_bits: (8..=16).collect(),
                ..base
            },
            ExperimentKind::Fig4 => Self {
                n_bits: vec![10, 15, 20, 25, 30],
                p_target: 0.25,
                ..base
            },
            ExperimentKind::RunDiscrete => Self {
                n_bits: vec![12],
                eps_rms: vec![0.1],
                ..base
            },
            ExperimentKind::RunContinuous => Self {
                n_bits: vec![20],
                gammas: vec![0.0, 1e-3, 3.90625e-3, 1e-2],
                p_target: 0.25,
                ..base
            },
            ExperimentKind::Complexity => Self {
                n_bits: (10..=18).collect(),
                eps_rms: vec![0.1],
                ..base
            },
        }
    }

    /// Defaults for `kind` overridden by the keys present in `text`.
    pub fn from_toml_str(kind: ExperimentKind, text: &str) -> Result<Self> {
        let overrides: toml::Table = text.parse().map_err(|e| Error::Config(format!("{e}")))?;
        let mut merged = toml::Table::try_from(Self::defaults(kind)).map_err(|e| Error::Config(format!("{e}")))?;
        for (k, v) in overrides {
            merged.insert(k, v);
        }
        let cfg: Self = merged.try_into().map_err(|e: toml::de::Error| Error::Config(format!("{e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(kind: ExperimentKind, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(kind, &text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn noise_spec(&self, eps_rms: f64) -> NoiseSpec {
        NoiseSpec {
            family: self.noise,
            eps_rms,
            base_seed: self.base_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_bits.is_empty() {
            return bad("n_bits grid is empty".into());
        }
        if let Some(&n) = self.n_bits.iter().find(|&&n| !(2..=62).contains(&n)) {
            return bad(format!("n_bits = {n} outside 2..=62"));
        }
        if self.eps_rms.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return bad("eps_rms values must be finite and >= 0".into());
        }
        if self.gammas.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return bad("gammas must be finite and >= 0".into());
        }
        if !(self.p_target > 0.0 && self.p_target < 1.0) {
            return bad(format!("p_target = {} outside (0, 1)", self.p_target));
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive".into());
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad("alpha must be positive".into());
        }
        match self.kind {
            ExperimentKind::Fig2 | ExperimentKind::CustomSweep | ExperimentKind::RunDiscrete if self.eps_rms.is_empty() => {
                bad("eps_rms grid is empty".into())
            }
            ExperimentKind::Complexity if self.eps_rms.first().is_none_or(|&e| e <= 0.0) => {
                bad("complexity needs a positive eps_rms".into())
            }
            ExperimentKind::Fig3 if self.n_bits.len() < 4 => bad("fig3 needs at least 4 library sizes".into()),
            ExperimentKind::Fig4 if self.deltas.is_empty() => bad("deltas grid is empty".into()),
            ExperimentKind::Fig4 if self.deltas.iter().any(|d| !(0.0..=0.5).contains(d)) => {
                bad("deltas must lie in [0, 0.5]".into())
            }
            ExperimentKind::RunContinuous if self.gammas.is_empty() => bad("gammas grid is empty".into()),
            _ => Ok(()),
        }
    }
}
