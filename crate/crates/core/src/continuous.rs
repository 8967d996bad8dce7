//! Continuous-time search under a fluctuating oracle term.
//!
//! The fluctuation is never sampled: its Markovian average enters as a
//! dephasing rate `Gamma` in the Bloch equations for the density matrix
//! `rho = I/2 + n.sigma/2`. Here `n_z = +1` is the marked item and the
//! success probability is `(1 + n_z) / 2`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::bisect::{bisect, Monotone};

/// Slack allowed on `|n_z| <= 1` before a value is rejected.
const NZ_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Underdamped,
    Critical,
    Overdamped,
}

/// Library size `N` and dephasing rate `Gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousParams {
    pub size: f64,
    pub gamma: f64,
}

impl ContinuousParams {
    pub fn new(size: f64, gamma: f64) -> Result<Self> {
        if !(size >= 2.0) || !size.is_finite() {
            return Err(Error::InvalidParameter(format!("library size {size} must be >= 2")));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("dephasing rate {gamma} must be >= 0")));
        }
        Ok(Self { size, gamma })
    }

    /// `Gamma = alpha N^(-2 delta)`.
    pub fn from_scaling(size: f64, delta: f64, alpha: f64) -> Result<Self> {
        Self::new(size, alpha * size.powf(-2.0 * delta))
    }

    /// Coupling `2/sqrt(N)` of the reduced equations.
    pub fn coupling(&self) -> f64 {
        2.0 / self.size.sqrt()
    }

    /// `Gamma` at the underdamped/overdamped boundary, `4/sqrt(N)`.
    pub fn critical_gamma(&self) -> f64 {
        4.0 / self.size.sqrt()
    }

    pub fn regime(&self) -> Regime {
        let crit = self.critical_gamma();
        if self.gamma < crit {
            Regime::Underdamped
        } else if self.gamma > crit {
            Regime::Overdamped
        } else {
            Regime::Critical
        }
    }

    /// Initial marked-state projection `-1 + 2/N`.
    pub fn initial_nz(&self) -> f64 {
        -1.0 + 2.0 / self.size
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasedBlochState {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl DephasedBlochState {
    pub fn norm(&self) -> f64 {
        (self.nx * self.nx + self.ny * self.ny + self.nz * self.nz).sqrt()
    }

    /// The initial `|eta><eta|`: `n = (2 sqrt(N-1)/N, 0, -1 + 2/N)`.
    pub fn initial(p: &ContinuousParams, system: System) -> Self {
        let nx = match system {
            System::Full => 2.0 * (p.size - 1.0).sqrt() / p.size,
            System::Reduced => 0.0,
        };
        Self {
            nx,
            ny: 0.0,
            nz: p.initial_nz(),
        }
    }

    fn to_array(self) -> [f64; 3] {
        [self.nx, self.ny, self.nz]
    }

    fn from_array(a: [f64; 3]) -> Self {
        Self {
            nx: a[0],
            ny: a[1],
            nz: a[2],
        }
    }
}

/// The three dephased Bloch equations, with every finite-`N` factor.
pub fn bloch_rhs_full(s: &DephasedBlochState, p: &ContinuousParams) -> [f64; 3] {
    let n = p.size;
    let drive = 2.0 / n.sqrt() * (1.0 - 1.0 / n).sqrt();
    [
        2.0 / n * s.ny - p.gamma * s.nx,
        drive * s.nz - 2.0 / n * s.nx - p.gamma * s.ny,
        -drive * s.ny,
    ]
}

/// Large-`N` reduction on `(n_y, n_z)`.
pub fn bloch_rhs_reduced(s: &DephasedBlochState, p: &ContinuousParams) -> [f64; 2] {
    let a = p.coupling();
    [a * s.nz - p.gamma * s.ny, -a * s.ny]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum System {
    #[default]
    Full,
    Reduced,
}

fn derivative(s: [f64; 3], p: &ContinuousParams, system: System) -> [f64; 3] {
    let st = DephasedBlochState::from_array(s);
    match system {
        System::Full => bloch_rhs_full(&st, p),
        System::Reduced => {
            let [dy, dz] = bloch_rhs_reduced(&st, p);
            [0.0, dy, dz]
        }
    }
}

fn rk4_step<F: Fn([f64; 3]) -> [f64; 3]>(f: &F, y: [f64; 3], h: f64) -> [f64; 3] {
    let axpy = |a: [f64; 3], k: [f64; 3], c: f64| [a[0] + c * k[0], a[1] + c * k[1], a[2] + c * k[2]];
    let k1 = f(y);
    let k2 = f(axpy(y, k1, 0.5 * h));
    let k3 = f(axpy(y, k2, 0.5 * h));
    let k4 = f(axpy(y, k3, h));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Largest step `integrate` accepts: `min(sqrt(N)/2, 1/Gamma) / 20`.
pub fn max_step(p: &ContinuousParams) -> f64 {
    let mut scale = 0.5 * p.size.sqrt();
    if p.gamma > 0.0 {
        scale = scale.min(1.0 / p.gamma);
    }
    scale / 20.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<DephasedBlochState>,
}

impl BlochTrajectory {
    pub fn last(&self) -> DephasedBlochState {
        *self.states.last().expect("trajectory always holds the initial state")
    }
}

/// Classical fixed-step RK4 from the `|eta>` initial condition to `t_end`.
///
/// The step is shrunk to `t_end / ceil(t_end / dt)` so the last sample lands
/// exactly on `t_end`.
pub fn integrate(p: &ContinuousParams, t_end: f64, dt: f64, system: System) -> Result<BlochTrajectory> {
    let limit = max_step(p);
    if !(dt > 0.0) || dt > limit {
        return Err(Error::StepSize { dt, limit });
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidParameter(format!("end time {t_end} must be >= 0")));
    }
    let steps = (t_end / dt - 1e-9).ceil().max(0.0) as usize;
    let h = if steps == 0 { 0.0 } else { t_end / steps as f64 };
    let f = |y: [f64; 3]| derivative(y, p, system);

    let mut y = DephasedBlochState::initial(p, system).to_array();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(DephasedBlochState::from_array(y));
    for k in 1..=steps {
        y = rk4_step(&f, y, h);
        times.push(k as f64 * h);
        states.push(DephasedBlochState::from_array(y));
    }
    Ok(BlochTrajectory { times, states })
}

/// `sin(x)/x`, continuous at zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `sinh(x)/x`, continuous at zero.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Solution `(n_y, n_z)` of the reduced equations from `n_y(0) = 0`,
/// `n_z(0) = -1 + 2/N`.
///
/// With `k = Gamma/2` and `w^2 = 4/N - k^2`:
/// `n_z = n_z(0) e^{-kt} [cos(wt) + k sin(wt)/w]` and
/// `n_y = n_z(0) (2/sqrt(N)) e^{-kt} sin(wt)/w`, continued analytically
/// through `w = 0` and to imaginary `w`.
pub fn closed_form(t: f64, p: &ContinuousParams) -> (f64, f64) {
    let nz0 = p.initial_nz();
    let a = p.coupling();
    let k = 0.5 * p.gamma;
    let w2 = 4.0 / p.size - k * k;

    if w2 >= 0.0 {
        let w = w2.sqrt();
        let damp = (-k * t).exp();
        let sin_over_w = t * sinc(w * t);
        return (
            nz0 * a * damp * sin_over_w,
            nz0 * damp * ((w * t).cos() + k * sin_over_w),
        );
    }

    let w = (-w2).sqrt();
    if w * t < 1.0 {
        let damp = (-k * t).exp();
        let sinh_over_w = t * sinhc(w * t);
        return (
            nz0 * a * damp * sinh_over_w,
            nz0 * damp * ((w * t).cosh() + k * sinh_over_w),
        );
    }
    // Separate the slow and fast modes; k - w is formed without cancellation.
    let slow = (4.0 / p.size) / (k + w);
    let fast = k + w;
    let (es, ef) = ((-slow * t).exp(), (-fast * t).exp());
    let ny = nz0 * a * (es - ef) / (2.0 * w);
    let nz = nz0 * 0.5 * ((1.0 + k / w) * es + (1.0 - k / w) * ef);
    (ny, nz)
}

pub fn closed_form_nz(t: f64, p: &ContinuousParams) -> f64 {
    closed_form(t, p).1
}

/// `P = (1 + n_z) / 2`.
pub fn success_prob_ct(nz: f64) -> Result<f64> {
    if !(nz.abs() <= 1.0 + NZ_SLACK) {
        return Err(Error::InvalidParameter(format!("n_z = {nz} outside [-1, 1]")));
    }
    Ok((0.5 * (1.0 + nz)).clamp(0.0, 1.0))
}

fn success_at(t: f64, p: &ContinuousParams) -> f64 {
    (0.5 * (1.0 + closed_form_nz(t, p))).clamp(0.0, 1.0)
}

/// Relative (to `sqrt(N)`) bracket width at which `find_min_time` stops.
pub const MIN_TIME_TOLERANCE: f64 = 1e-9;

/// First time at which `P(t) >= p_star`.
///
/// `P` rises monotonically up to its first maximum (`t = pi/w` when
/// underdamped, never otherwise), so the first crossing is bracketed on that
/// window and refined by bisection.
pub fn find_min_time(p: &ContinuousParams, p_star: f64) -> Result<f64> {
    let floor = 1.0 / p.size;
    if !(p_star > floor && p_star < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "target probability {p_star} outside (1/N, 1)"
        )));
    }
    let tol = MIN_TIME_TOLERANCE * p.size.sqrt();
    let w2 = 4.0 / p.size - 0.25 * p.gamma * p.gamma;

    let hi = if w2 > 0.0 {
        let t_peak = PI / w2.sqrt();
        let supremum = success_at(t_peak, p);
        if supremum < p_star {
            return Err(Error::Unreachable { p_star, supremum });
        }
        t_peak
    } else {
        if p_star >= 0.5 {
            return Err(Error::Unreachable {
                p_star,
                supremum: 0.5,
            });
        }
        let mut hi = 0.5 * p.size.sqrt();
        while success_at(hi, p) < p_star {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::Unreachable {
                    p_star,
                    supremum: 0.5,
                });
            }
        }
        hi
    };

    let br = bisect(|t| success_at(t, p), 0.0, hi, p_star, tol, Monotone::Increasing)?;
    Ok(br.mid())
}

/// Underdamped landmark `2 pi / sqrt(16/N - Gamma^2)`.
pub fn regime_a_time(p: &ContinuousParams) -> Result<f64> {
    if p.regime() != Regime::Underdamped {
        return Err(Error::WrongRegime {
            gamma: p.gamma,
            size: p.size,
            regime: "underdamped",
        });
    }
    Ok(2.0 * PI / (16.0 / p.size - p.gamma * p.gamma).sqrt())
}

/// Overdamped quarter-success time `N Gamma ln 2 / 4`.
pub fn regime_b_time(p: &ContinuousParams) -> Result<f64> {
    if p.regime() != Regime::Overdamped {
        return Err(Error::WrongRegime {
            gamma: p.gamma,
            size: p.size,
            regime: "overdamped",
        });
    }
    Ok(p.size * p.gamma * LN_2 / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(size: f64, gamma: f64) -> ContinuousParams {
        ContinuousParams::new(size, gamma).unwrap()
    }

    #[test]
    fn rhs_at_south_pole() {
        let n = 1e6;
        let p = params(n, 0.0);
        let d = bloch_rhs_full(&DephasedBlochState { nx: 0.0, ny: 0.0, nz: -1.0 }, &p);
        assert_eq!(d[0], 0.0);
        assert_abs_diff_eq!(d[1], -(2.0 / n.sqrt()) * (1.0 - 1.0 / n).sqrt(), epsilon = 1e-18);
        assert_eq!(d[2], 0.0);
    }

    #[test]
    fn origin_is_fixed() {
        let p = params(1e4, 0.03);
        let o = DephasedBlochState { nx: 0.0, ny: 0.0, nz: 0.0 };
        assert_eq!(bloch_rhs_full(&o, &p), [0.0; 3]);
        assert_eq!(bloch_rhs_reduced(&o, &p), [0.0; 2]);
    }

    #[test]
    fn regime_classification() {
        let n: f64 = 1e6;
        assert_eq!(params(n, 0.001).regime(), Regime::Underdamped);
        assert_eq!(params(n, 0.004).regime(), Regime::Critical);
        assert_eq!(params(n, 0.01).regime(), Regime::Overdamped);
    }

    #[test]
    fn step_size_enforced() {
        let p = params(1e6, 0.01);
        assert_abs_diff_eq!(max_step(&p), 5.0, epsilon = 1e-12);
        assert!(matches!(integrate(&p, 10.0, 5.1, System::Full), Err(Error::StepSize { .. })));
        assert!(matches!(integrate(&p, 10.0, 0.0, System::Full), Err(Error::StepSize { .. })));
        let tr = integrate(&p, 10.0, 3.0, System::Full).unwrap();
        assert_eq!(tr.times.len(), 5);
        assert_eq!(*tr.times.last().unwrap(), 10.0);
    }

    #[test]
    fn closed_form_initial_value_and_quarter_turn() {
        let n = 1e6;
        let p = params(n, 0.0);
        assert_eq!(closed_form_nz(0.0, &p), -1.0 + 2.0 / n);
        let t = PI * n.sqrt() / 6.0;
        assert_abs_diff_eq!(closed_form_nz(t, &p), -0.5 * (1.0 - 2.0 / n), epsilon = 1e-12);
        assert_abs_diff_eq!(closed_form_nz(t, &p), -0.499999, epsilon = 1e-7);
    }

    #[test]
    fn closed_form_at_regime_a_landmark() {
        let n: f64 = 1e6;
        for gamma in [0.0, 1e-4, 1e-3, 3e-3, 3.9e-3] {
            let p = params(n, gamma);
            let t = regime_a_time(&p).unwrap();
            let expected = 0.5
                + 0.5 * (1.0 - 2.0 / n) * (-PI * gamma / (16.0 / n - gamma * gamma).sqrt()).exp();
            let got = success_prob_ct(closed_form_nz(t, &p)).unwrap();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn closed_form_continuous_through_critical() {
        let n: f64 = 1e6;
        let crit = 4.0 / n.sqrt();
        for t in [10.0, 500.0, 3000.0, 20000.0] {
            let below = closed_form(t, &params(n, crit * (1.0 - 1e-10)));
            let at = closed_form(t, &params(n, crit));
            let above = closed_form(t, &params(n, crit * (1.0 + 1e-10)));
            assert_abs_diff_eq!(below.1, at.1, epsilon = 1e-9);
            assert_abs_diff_eq!(above.1, at.1, epsilon = 1e-9);
            assert_abs_diff_eq!(below.0, above.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn success_prob_examples() {
        assert_eq!(success_prob_ct(-1.0).unwrap(), 0.0);
        assert_eq!(success_prob_ct(1.0).unwrap(), 1.0);
        let n = 4096.0;
        assert_abs_diff_eq!(success_prob_ct(-1.0 + 2.0 / n).unwrap(), 1.0 / n, epsilon = 1e-15);
        assert!(success_prob_ct(1.1).is_err());
        assert!(success_prob_ct(f64::NAN).is_err());
    }

    #[test]
    fn noiseless_min_time() {
        let n: f64 = 1e6;
        let t = find_min_time(&params(n, 0.0), 0.25).unwrap();
        let exact = (1.0f64 / (2.0 * (1.0 - 2.0 / n))).acos() * n.sqrt() / 2.0;
        assert_abs_diff_eq!(t, exact, epsilon = 1e-6 * n.sqrt());
        assert_abs_diff_eq!(t, 523.60, epsilon = 0.01);
    }

    #[test]
    fn unreachable_targets() {
        let n = 1e6;
        assert!(matches!(
            find_min_time(&params(n, 0.01), 0.6),
            Err(Error::Unreachable { .. })
        ));
        // Strong underdamping still overshoots 1/2 but not 0.99.
        assert!(matches!(
            find_min_time(&params(n, 3.9e-3), 0.99),
            Err(Error::Unreachable { .. })
        ));
        assert!(find_min_time(&params(n, 0.0), 1.0 / n).is_err());
    }

    #[test]
    fn regime_formulas() {
        let n = 1e6;
        assert_abs_diff_eq!(regime_a_time(&params(n, 1e-3)).unwrap(), 1622.3115, epsilon = 1e-3);
        assert_abs_diff_eq!(regime_b_time(&params(n, 1e-2)).unwrap(), 1732.8680, epsilon = 1e-3);
        assert!(regime_a_time(&params(n, 1e-2)).is_err());
        assert!(regime_b_time(&params(n, 1e-3)).is_err());
        assert!(regime_a_time(&params(n, 4e-3)).is_err());
        assert_abs_diff_eq!(
            regime_a_time(&params(n, 1e-12)).unwrap(),
            PI * n.sqrt() / 2.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ContinuousParams::new(1.0, 0.0).is_err());
        assert!(ContinuousParams::new(100.0, -1.0).is_err());
        assert!(ContinuousParams::new(100.0, f64::NAN).is_err());
    }
}
