//! Measures at the double-root points, which are quadratic polynomials in `x`.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::Serialize;

use crate::error::Result;
use crate::field::InitialVector;

use super::region::{k1_index, require, ThetaRegion};

/// `mu(x) = a x^2 + b x + c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QpCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QpCoefficients {
    pub fn eval(&self, x: i64) -> f64 {
        let x = x as f64;
        (self.a * x + self.b) * x + self.c
    }
}

/// `sin 2 theta` at a double-root point, exactly `+1` or `-1`.
fn sin_two_theta(theta: f64) -> f64 {
    match k1_index(theta) {
        Some(0) | Some(2) => 1.0,
        _ => -1.0,
    }
}

pub fn qp_coefficients(phi: InitialVector, theta: f64) -> Result<QpCoefficients> {
    require(theta, ThetaRegion::K1)?;
    let cross = phi.phi1 * phi.phi2.conj();
    let (n1, n2) = (phi.phi1.norm_sqr(), phi.phi2.norm_sqr());
    let c = n1 + n2;
    // a >= (|phi1| - |phi2|)^2 analytically; clip rounding below zero.
    let a = (c - 2.0 * sin_two_theta(theta) * cross.im).max(0.0);
    let b = n1 - n2 - 2.0 * cross.re;
    Ok(QpCoefficients { a, b, c })
}

/// Whether `phi` yields a constant measure at the double-root point `theta`:
/// equal moduli and `arg phi1 - arg phi2` equal to `pi/2` or `3pi/2` depending
/// on the sign of `sin 2 theta`.
pub fn uniform_condition(phi: InitialVector, theta: f64) -> Result<bool> {
    require(theta, ThetaRegion::K1)?;
    let (m1, m2) = (phi.phi1.norm(), phi.phi2.norm());
    if m1 == 0.0 || m2 == 0.0 {
        return Ok(false);
    }
    if (m1 - m2).abs() > 1e-10 * m1.max(m2) {
        return Ok(false);
    }
    let target = if sin_two_theta(theta) > 0.0 {
        FRAC_PI_2
    } else {
        3.0 * FRAC_PI_2
    };
    let diff = (phi.phi1.arg() - phi.phi2.arg() - target).rem_euclid(TAU);
    Ok(diff.min(TAU - diff) <= 1e-10)
}
