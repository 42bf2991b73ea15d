//! Partition of eigenvalue arguments into the double-root points and the two
//! families of open arcs between them.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cis, C64};

/// Distance within which an angle counts as one of the four double-root points.
pub const K1_TOL: f64 = 1e-12;

/// The four arguments `pi/4, 3pi/4, 5pi/4, 7pi/4`.
pub const K1_POINTS: [f64; 4] = [FRAC_PI_4, 3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4];

/// Where `theta` sits relative to the Hadamard characteristic roots at `lambda = e^{i theta}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ThetaRegion {
    /// The double-root points; measures are quadratic polynomials in `x`.
    K1,
    /// `[0, pi/4) u (3pi/4, 5pi/4) u (7pi/4, 2pi)`; both roots on the unit circle.
    K2,
    /// The remaining open arcs; one root inside and one outside the unit circle.
    K3,
}

impl ThetaRegion {
    pub fn label(self) -> &'static str {
        match self {
            ThetaRegion::K1 => "K1",
            ThetaRegion::K2 => "K2",
            ThetaRegion::K3 => "K3",
        }
    }
}

impl fmt::Display for ThetaRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Reduce an angle to `[0, 2pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Index into [`K1_POINTS`] when `theta` is one of them.
pub fn k1_index(theta: f64) -> Option<usize> {
    let t = normalize_angle(theta);
    K1_POINTS.iter().position(|p| (t - p).abs() <= K1_TOL)
}

pub fn theta_region(theta: f64) -> ThetaRegion {
    if k1_index(theta).is_some() {
        return ThetaRegion::K1;
    }
    let t = normalize_angle(theta);
    let quarter = (t / FRAC_PI_4).floor() as i64;
    match quarter {
        0 | 3 | 4 | 7 => ThetaRegion::K2,
        _ => ThetaRegion::K3,
    }
}

pub(crate) fn require(theta: f64, wanted: ThetaRegion) -> Result<()> {
    let found = theta_region(theta);
    if found != wanted {
        return Err(Error::RegionMismatch {
            theta,
            found,
            required: wanted.label(),
        });
    }
    Ok(())
}

pub(crate) fn forbid_k1(theta: f64) -> Result<()> {
    let found = theta_region(theta);
    if found == ThetaRegion::K1 {
        return Err(Error::RegionMismatch {
            theta,
            found,
            required: "K2 or K3",
        });
    }
    Ok(())
}

/// The four eigenvalues at which the rotation coin `[[c, s], [s, -c]]`
/// (`c = cos zeta`, `s = sin zeta`) has a double characteristic root.
pub fn double_root_eigenvalues(zeta: f64) -> Result<[C64; 4]> {
    let (s, c) = zeta.sin_cos();
    if c.abs() < 1e-12 || s.abs() < 1e-12 {
        return Err(Error::DegenerateCoin);
    }
    // sin(eta) uses |cs| so eta stays in (0, pi) for every quadrant of zeta.
    let eta = (2.0 * (c * s).abs()).atan2(-(c * c - s * s));
    let half = eta / 2.0;
    Ok([cis(half), cis(PI - half), cis(PI + half), cis(TAU - half)])
}
