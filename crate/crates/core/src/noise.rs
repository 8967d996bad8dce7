//! Oracle phase-error streams and the size-scaling of their magnitude.
//!
//! Every stream is a deterministic function of `(base_seed, stream_id)`: the
//! base seed keys a ChaCha8 generator and the stream id selects one of its
//! 2^64 independent streams, so trials can be sampled on any thread in any
//! order. The draw index is the position within the stream.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseFamily {
    /// Zero-mean normal with standard deviation `eps_rms`.
    Gaussian,
    /// Uniform on `[-sqrt(3) eps_rms, sqrt(3) eps_rms]`.
    Uniform,
    /// The same phase `eps_rms` on every oracle call.
    ConstantPhase,
}

impl fmt::Display for NoiseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseFamily::Gaussian => "gaussian",
            NoiseFamily::Uniform => "uniform",
            NoiseFamily::ConstantPhase => "constant-phase",
        })
    }
}

impl FromStr for NoiseFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(NoiseFamily::Gaussian),
            "uniform" => Ok(NoiseFamily::Uniform),
            "constant-phase" | "constant" => Ok(NoiseFamily::ConstantPhase),
            other => Err(Error::Config(format!("unknown noise family `{other}`"))),
        }
    }
}

/// Distribution family, RMS magnitude and seed of an oracle error source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub family: NoiseFamily,
    pub eps_rms: f64,
    pub base_seed: u64,
}

impl NoiseSpec {
    pub fn gaussian(eps_rms: f64, base_seed: u64) -> Self {
        Self {
            family: NoiseFamily::Gaussian,
            eps_rms,
            base_seed,
        }
    }

    pub fn noiseless() -> Self {
        Self::gaussian(0.0, 0)
    }

    pub fn with_eps(self, eps_rms: f64) -> Self {
        Self { eps_rms, ..self }
    }

    /// Infinite error stream for one trial.
    pub fn stream(&self, stream_id: u64) -> NoiseStream {
        let mut rng = ChaCha8Rng::seed_from_u64(self.base_seed);
        rng.set_stream(stream_id);
        NoiseStream { spec: *self, rng }
    }
}

/// Iterator over the phase errors of one stream.
#[derive(Debug, Clone)]
pub struct NoiseStream {
    spec: NoiseSpec,
    rng: ChaCha8Rng,
}

impl Iterator for NoiseStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let eps = self.spec.eps_rms;
        Some(match self.spec.family {
            NoiseFamily::Gaussian => {
                let z: f64 = self.rng.sample(StandardNormal);
                eps * z
            }
            NoiseFamily::Uniform => {
                let u: f64 = self.rng.random_range(-1.0..1.0);
                3f64.sqrt() * eps * u
            }
            NoiseFamily::ConstantPhase => eps,
        })
    }
}

/// First `count` errors of stream `stream_id`.
pub fn sample_stream(spec: &NoiseSpec, stream_id: u64, count: usize) -> Vec<f64> {
    spec.stream(stream_id).take(count).collect()
}

/// `eps_rms(N) = prefactor * N^(-delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingLaw {
    pub delta: f64,
    pub prefactor: f64,
}

impl ScalingLaw {
    pub fn new(delta: f64, prefactor: f64) -> Result<Self> {
        if !(prefactor > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scaling law needs a positive prefactor and finite exponent (got {prefactor}, {delta})"
            )));
        }
        Ok(Self { delta, prefactor })
    }

    /// Law that passes through `eps_rms` at library size `size`.
    pub fn anchored(delta: f64, eps_rms: f64, size: f64) -> Result<Self> {
        Self::new(delta, eps_rms * size.powf(delta))
    }
}

pub fn eps_for_size(law: &ScalingLaw, size: f64) -> f64 {
    law.prefactor * size.powf(-law.delta)
}

/// Markovian dephasing rate `Gamma = eps_rms^2 / (2 pi)`.
pub fn gamma_from_eps(eps_rms: f64) -> f64 {
    eps_rms * eps_rms / (2.0 * PI)
}
