//! Bracketing bisection for monotone scalar responses.

use crate::error::{Error, Result};

const MAX_HALVINGS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Which way the response moves as the argument increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Narrows `[lo, hi]` around the crossing `f(x) = target` until the bracket
/// is narrower than `tol`.
///
/// On return `lo` lies on the side where `f` has not yet crossed the target
/// and `hi` on the side where it has (in the direction of `shape`).
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, target: f64, tol: f64, shape: Monotone) -> Result<Bracket>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) || !(hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "bisection needs lo < hi and tol > 0 (got [{lo}, {hi}], tol {tol})"
        )));
    }
    // Normalise to "g crosses from below to at-or-above zero".
    let sign = match shape {
        Monotone::Increasing => 1.0,
        Monotone::Decreasing => -1.0,
    };
    let mut g = |x: f64| sign * (f(x) - target);
    let (g_lo, g_hi) = (g(lo), g(hi));
    if !(g_lo < 0.0 && g_hi >= 0.0) {
        return Err(Error::NonBracketing {
            lo,
            hi,
            f_lo: target + sign * g_lo,
            f_hi: target + sign * g_hi,
            target,
        });
    }
    let mut br = Bracket { lo, hi };
    for _ in 0..MAX_HALVINGS {
        if br.width() < tol {
            break;
        }
        let mid = br.mid();
        if mid <= br.lo || mid >= br.hi {
            break;
        }
        if g(mid) >= 0.0 {
            br.hi = mid;
        } else {
            br.lo = mid;
        }
    }
    Ok(br)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_planted_crossing() {
        // Logistic response with a known crossing at x0.
        let x0 = -1.2345;
        let f = |x: f64| 1.0 / (1.0 + (4.0 * (x - x0)).exp());
        let br = bisect(f, -3.0, 0.0, 0.5, 1e-6, Monotone::Decreasing).unwrap();
        assert!(br.width() < 1e-6);
        assert!((br.mid() - x0).abs() < 1e-6);
        assert!(br.lo <= x0 && x0 <= br.hi);
    }

    #[test]
    fn increasing_sqrt() {
        let br = bisect(|x| x * x, 0.0, 2.0, 2.0, 1e-12, Monotone::Increasing).unwrap();
        assert!((br.mid() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn reports_non_bracketing_endpoints() {
        match bisect(|x| x, 1.0, 2.0, 5.0, 1e-3, Monotone::Increasing) {
            Err(Error::NonBracketing { f_lo, f_hi, .. }) => {
                assert_eq!((f_lo, f_hi), (1.0, 2.0));
            }
            other => panic!("expected NonBracketing, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(bisect(|x| x, 2.0, 1.0, 1.5, 1e-3, Monotone::Increasing).is_err());
        assert!(bisect(|x| x, 1.0, 2.0, 1.5, 0.0, Monotone::Increasing).is_err());
    }
}
