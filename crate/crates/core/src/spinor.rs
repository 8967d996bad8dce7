//! Two-level linear algebra on the Grover subspace.
//!
//! States live on the basis `{|1>, |2>}` where `|1>` is the marked item and
//! `|2>` the normalized superposition of every unmarked item. Operators are
//! 2x2 complex matrices in that basis, row-major.
//!
//! The Bloch map places `|2>` at the north pole and `|1>` at the south pole,
//! so the success probability of a pure state is `(1 - n_z) / 2`.

use std::f64::consts::{PI, TAU};
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Accepted deviation of `|a1|^2 + |a2|^2` from one at API boundaries.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Accepted `max |U^dag U - I|` before a matrix is treated as non-unitary.
pub const UNITARY_TOLERANCE: f64 = 1e-9;

/// Amplitude pair `(a1, a2)` on `|1>` (marked) and `|2>` (unmarked superposition).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub a1: Complex64,
    pub a2: Complex64,
}

impl ComplexPair {
    pub const fn new(a1: Complex64, a2: Complex64) -> Self {
        Self { a1, a2 }
    }

    /// The uniform superposition `|eta>` of an `size`-item library.
    pub fn uniform(size: f64) -> Self {
        Self {
            a1: Complex64::new((1.0 / size).sqrt(), 0.0),
            a2: Complex64::new(((size - 1.0) / size).sqrt(), 0.0),
        }
    }

    /// Pure state on the `phi = 0` meridian at polar angle `theta`.
    pub fn on_meridian(theta: f64) -> Self {
        let half = 0.5 * theta;
        Self {
            a1: Complex64::new(half.sin(), 0.0),
            a2: Complex64::new(half.cos(), 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr()
    }

    /// Probability of measuring the marked item.
    pub fn marked_probability(&self) -> f64 {
        self.a1.norm_sqr()
    }
}

/// A 2x2 complex matrix, intended to be unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    pub m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    /// `R_n(phi) = cos(phi/2) I - i sin(phi/2) n.sigma`.
    pub fn rotation(axis: [f64; 3], phi: f64) -> Self {
        let (s, c) = (0.5 * phi).sin_cos();
        let [nx, ny, nz] = axis;
        Self::new([
            [Complex64::new(c, -s * nz), Complex64::new(-s * ny, -s * nx)],
            [Complex64::new(s * ny, -s * nx), Complex64::new(c, s * nz)],
        ])
    }

    pub fn rot_y(phi: f64) -> Self {
        Self::rotation([0.0, 1.0, 0.0], phi)
    }

    pub fn rot_z(phi: f64) -> Self {
        Self::rotation([0.0, 0.0, 1.0], phi)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = self.m;
        Self::new([[k * m[0][0], k * m[0][1]], [k * m[1][0], k * m[1][1]]])
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, s: &ComplexPair) -> ComplexPair {
        let m = &self.m;
        ComplexPair {
            a1: m[0][0] * s.a1 + m[0][1] * s.a2,
            a2: m[1][0] * s.a1 + m[1][1] * s.a2,
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Unitary2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    /// `max |U^dag U - I|` over entries.
    pub fn unitarity_residual(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Unitary2::new(out)
    }
}

/// `U = exp(i alpha) R_axis(phi)` in canonical form.
///
/// Canonical means `sin(phi/2) >= 0` (the sign lives in the axis),
/// `phi` in `[0, 2 pi)`, `alpha` in `(-pi/2, pi/2]` and, for the identity,
/// the axis `(0, 0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    pub phi: f64,
    pub axis: [f64; 3],
    pub alpha: f64,
}

impl AxisAngle {
    pub fn to_unitary(&self) -> Unitary2 {
        Unitary2::rotation(self.axis, self.phi).scale(Complex64::from_polar(1.0, self.alpha))
    }
}

/// Real Bloch vector of a (possibly mixed) two-level state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl BlochVector {
    pub const fn new(nx: f64, ny: f64, nz: f64) -> Self {
        Self { nx, ny, nz }
    }

    pub fn norm(&self) -> f64 {
        (self.nx * self.nx + self.ny * self.ny + self.nz * self.nz).sqrt()
    }
}

/// Pure-state Bloch vector with `|2>` at the north pole.
pub fn to_bloch(state: &ComplexPair) -> Result<BlochVector> {
    let norm_sq = state.norm_sqr();
    if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Unnormalized { norm_sq });
    }
    Ok(bloch_unchecked(state))
}

pub(crate) fn bloch_unchecked(state: &ComplexPair) -> BlochVector {
    let cross = state.a2.conj() * state.a1;
    BlochVector {
        nx: 2.0 * cross.re,
        ny: 2.0 * cross.im,
        nz: state.a2.norm_sqr() - state.a1.norm_sqr(),
    }
}

/// Polar angle `theta` in `[0, pi]` from the north pole and azimuth `phi` in
/// `[0, 2 pi)`, measured from the `+x` meridian.
pub fn polar_angles(v: &BlochVector) -> Result<(f64, f64)> {
    let r = v.norm();
    if r == 0.0 || !r.is_finite() {
        return Err(Error::ZeroVector);
    }
    let theta = (v.nz / r).clamp(-1.0, 1.0).acos();
    let mut phi = v.ny.atan2(v.nx);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi = 0.0;
    }
    Ok((theta, phi))
}

/// Axis-angle form of a single-qubit unitary.
pub fn axis_angle_decompose(u: &Unitary2) -> Result<AxisAngle> {
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOLERANCE || !residual.is_finite() {
        return Err(Error::NonUnitary { residual });
    }

    // det U = exp(2 i alpha); arg in (-pi, pi] puts alpha in (-pi/2, pi/2].
    let alpha = 0.5 * u.det().arg();
    let m = u.scale(Complex64::from_polar(1.0, -alpha)).m;

    let c = 0.5 * (m[0][0] + m[1][1]).re;
    let sx = -0.5 * (m[0][1] + m[1][0]).im;
    let sy = 0.5 * (m[1][0] - m[0][1]).re;
    let sz = -0.5 * (m[0][0] - m[1][1]).im;
    let s = (sx * sx + sy * sy + sz * sz).sqrt();

    if s < 1e-15 {
        if c >= 0.0 {
            return Ok(AxisAngle {
                phi: 0.0,
                axis: [0.0, 0.0, 1.0],
                alpha,
            });
        }
        // -I: R_n(2 pi) for any n, reported as the identity with alpha shifted by pi.
        let shifted = if alpha > 0.0 { alpha - PI } else { alpha + PI };
        return Ok(AxisAngle {
            phi: 0.0,
            axis: [0.0, 0.0, 1.0],
            alpha: shifted,
        });
    }

    Ok(AxisAngle {
        phi: 2.0 * s.atan2(c),
        axis: [sx / s, sy / s, sz / s],
        alpha,
    })
}

/// Distance between the phase-stripped noisy iterate and the factored
/// approximation `R_z(-eps) R_y(-4/sqrt(N))`.
///
/// The exact operator is `exp(i eps/2) R_y(-Theta) R_z(-eps)`, so the residual
/// collects the commutator term `O(eps/sqrt(N))` and the small-angle error of
/// `Theta` against `4/sqrt(N)`.
pub fn bch_factorization_error(size: f64, eps: f64) -> f64 {
    let g = crate::discrete::noisy_iterate(size, eps);
    let stripped = g.scale(Complex64::from_polar(1.0, -0.5 * eps));
    let factored = Unitary2::rot_z(-eps) * Unitary2::rot_y(-4.0 / size.sqrt());
    stripped.max_abs_diff(&factored)
}
