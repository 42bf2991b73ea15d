//! Exact periodicity of bounded measures.
//!
//! On the unimodular arcs `mu(x)` is a constant plus `Re(e^{i x xi} W)`, so it
//! repeats with period `m` exactly when `m xi` is a multiple of `2 pi`. A
//! floating `xi` needs an explicit policy: candidates come from the
//! continued-fraction convergents of `xi / 2 pi`, a candidate `q` is accepted
//! only when the analytic shift deviation `2 |W| |e^{i q xi} - 1| / |Lambda+ - Lambda-|^2`
//! is negligible, and short periods are then confirmed by transfer iteration.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::field::InitialVector;
use crate::linalg::cis;
use crate::rational::{convergents, Fraction};
use crate::transfer::transfer_eigenfunction;

use super::hadamard::{root_gap_sqr, w_values, xi_angle, WValues};
use super::region::{normalize_angle, require, ThetaRegion};

pub const MAX_DENOMINATOR: i64 = 1_000_000;
/// Acceptance of a convergent as a candidate.
pub const RATIO_TOL: f64 = 1e-9;
/// Largest tolerated analytic shift deviation, relative to `max(1, |phi|^2)`.
pub const SHIFT_TOL: f64 = 1e-10;
/// `|W2|, |W4|` below this multiple of `|phi|^2` mean a constant measure.
pub const FLAT_TOL: f64 = 1e-12;
/// Numerical confirmation runs when the test window stays below this many sites.
pub const CONFIRM_LIMIT: i64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PeriodVerdict {
    /// Smallest positive period.
    Finite { m_min: i64 },
    /// No period up to the denominator cap. `best` is the closest convergent
    /// of `xi / 2 pi` that was tried.
    Aperiodic { best: Option<Fraction> },
    /// The oscillating part vanishes and the measure is constant.
    UniformPeriodOne,
}

impl PeriodVerdict {
    pub fn period(&self) -> Option<i64> {
        match self {
            PeriodVerdict::Finite { m_min } => Some(*m_min),
            PeriodVerdict::UniformPeriodOne => Some(1),
            PeriodVerdict::Aperiodic { .. } => None,
        }
    }
}

fn is_flat(w: &WValues) -> bool {
    let floor = FLAT_TOL * w.norm_sqr;
    w.w2.norm() <= floor && w.w4.norm() <= floor
}

/// `max_x |mu(x + m) - mu(x)|` bound implied by the W values.
pub fn shift_deviation(w: &WValues, xi: f64, m: i64) -> f64 {
    let rotate = (cis(m as f64 * xi) - 1.0).norm();
    2.0 * w.w2.norm().max(w.w4.norm()) * rotate / root_gap_sqr(w.theta)
}

pub fn period_of(theta: f64, phi: InitialVector) -> Result<PeriodVerdict> {
    require(theta, ThetaRegion::K2)?;
    let t = normalize_angle(theta);
    if t.sin().abs() <= 1e-12 {
        return Ok(PeriodVerdict::UniformPeriodOne);
    }
    let w = w_values(phi, t)?;
    if is_flat(&w) {
        return Ok(PeriodVerdict::UniformPeriodOne);
    }
    let xi = xi_angle(t)?;
    let ratio = xi / TAU;
    let limit = SHIFT_TOL * w.norm_sqr.max(1.0);
    let mut best = None;
    for f in convergents(ratio, MAX_DENOMINATOR) {
        best = Some(f);
        if (ratio - f.value()).abs() >= RATIO_TOL {
            continue;
        }
        if shift_deviation(&w, xi, f.q) <= limit {
            confirm(t, phi, f.q)?;
            return Ok(PeriodVerdict::Finite { m_min: f.q });
        }
    }
    Ok(PeriodVerdict::Aperiodic { best })
}

/// Check `mu(x + m) = mu(x)` on `[-4m, 4m]` by transfer iteration.
fn confirm(theta: f64, phi: InitialVector, m: i64) -> Result<()> {
    let reach = 4 * m;
    if 2 * (reach + m) + 1 > CONFIRM_LIMIT {
        return Ok(());
    }
    let field = transfer_eigenfunction(&CoinMatrix::hadamard(), cis(theta), phi, -reach, reach + m)?;
    let mu = field.measure();
    let deviation = (-reach..=reach)
        .map(|x| {
            let (a, b) = (mu.get(x).expect("in window"), mu.get(x + m).expect("in window"));
            (a - b).abs() / a.max(1.0)
        })
        .fold(0.0, f64::max);
    if deviation > 1e-8 {
        return Err(Error::CrossValidation {
            class: "periodic",
            deviation,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_6, PI};

    use super::*;
    use crate::linalg::{C64, ONE, ZERO};

    #[test]
    fn period_four_at_pi_over_6() {
        let v = period_of(FRAC_PI_6, InitialVector::new(ONE, ZERO).unwrap()).unwrap();
        assert_eq!(v, PeriodVerdict::Finite { m_min: 4 });
    }

    #[test]
    fn uniform_at_zero_and_pi() {
        let phi = InitialVector::new(C64::new(0.3, 1.0), C64::new(-2.0, 0.5)).unwrap();
        assert_eq!(period_of(0.0, phi).unwrap(), PeriodVerdict::UniformPeriodOne);
        assert_eq!(period_of(PI, phi).unwrap(), PeriodVerdict::UniformPeriodOne);
    }

    #[test]
    fn generic_theta_is_aperiodic() {
        let phi = InitialVector::new(ONE, ZERO).unwrap();
        match period_of(0.1, phi).unwrap() {
            PeriodVerdict::Aperiodic { best } => assert!(best.unwrap().q > 1000),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_rational_xi() {
        // cos xi = 1 - 2 cos 2 theta = -1/2 gives xi/2pi = 1/3 or 2/3.
        let theta = 0.5 * (0.75f64).acos();
        let v = period_of(theta, InitialVector::new(ONE, ZERO).unwrap()).unwrap();
        assert_eq!(v, PeriodVerdict::Finite { m_min: 3 });
    }

    #[test]
    fn rejects_other_regions() {
        let phi = InitialVector::new(ONE, ZERO).unwrap();
        assert!(matches!(period_of(PI / 2.0, phi), Err(Error::RegionMismatch { .. })));
    }
}
