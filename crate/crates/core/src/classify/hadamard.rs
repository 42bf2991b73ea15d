//! Characteristic roots of the Hadamard walk on a fixed branch, and the
//! quantities that describe bounded and exponential measures.
//!
//! With `lambda = e^{i theta}`, `f = lambda^2 - 1` and `g^2 = lambda^4 + 1`,
//! the right roots are `Lambda+- = (f +- g) / (sqrt 2 lambda)` and the left
//! roots are `Gamma+- = -Lambda+-`. The branch of `g` is fixed per arc so the
//! sign tables below hold; the principal root would swap labels on some arcs.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2, TAU};

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::field::InitialVector;
use crate::linalg::{cis, C64, I, ONE};
use crate::transfer::boundary_values;

use super::region::{forbid_k1, normalize_angle, require, theta_region, ThetaRegion};

/// Multiplier `g / (sqrt|2 cos 2 theta| lambda)`, one of `+-1, +-i`.
fn branch_factor(t: f64) -> C64 {
    match theta_region(t) {
        ThetaRegion::K3 => {
            if (FRAC_PI_4 < t && t < FRAC_PI_2) || (3.0 * FRAC_PI_2..7.0 * FRAC_PI_4).contains(&t) {
                I
            } else {
                -I
            }
        }
        _ => {
            if t <= PI {
                ONE
            } else {
                -ONE
            }
        }
    }
}

/// `sqrt(lambda^4 + 1)` on the fixed branch.
pub fn g_branch(theta: f64) -> C64 {
    let t = normalize_angle(theta);
    let r = (2.0 * (2.0 * t).cos()).abs().sqrt();
    branch_factor(t) * r * cis(t)
}

/// `(Lambda+, Lambda-)` on the fixed branch.
pub fn hadamard_roots(theta: f64) -> (C64, C64) {
    let lambda = cis(theta);
    let f = lambda * lambda - 1.0;
    let g = g_branch(theta);
    let d = SQRT_2 * lambda;
    ((f + g) / d, (f - g) / d)
}

/// Real and imaginary parts of `z = conj(f) g`, from the closed piecewise
/// expressions.
pub fn z_components(theta: f64) -> Result<(f64, f64)> {
    forbid_k1(theta)?;
    let t = normalize_angle(theta);
    let c2 = (2.0 * t).cos();
    let s = t.sin();
    Ok(match theta_region(t) {
        ThetaRegion::K2 => {
            let v = 2.0 * s * (2.0 * c2).sqrt();
            if t <= PI {
                (0.0, -v)
            } else {
                (0.0, v)
            }
        }
        _ => {
            let v = 2.0 * s * (-2.0 * c2).sqrt();
            if branch_factor(t) == I {
                (v, 0.0)
            } else {
                (-v, 0.0)
            }
        }
    })
}

/// `(|Lambda+|^2, |Lambda-|^2)` from the closed piecewise expressions.
pub fn lambda_moduli(theta: f64) -> (f64, f64) {
    let t = normalize_angle(theta);
    if theta_region(t) != ThetaRegion::K3 {
        return (1.0, 1.0);
    }
    let c2 = (2.0 * t).cos();
    let base = 1.0 - 2.0 * c2;
    let s = 2.0 * t.sin() * (-2.0 * c2).sqrt();
    if branch_factor(t) == I {
        (base + s, base - s)
    } else {
        (base - s, base + s)
    }
}

/// `|Lambda+ - Lambda-|^2 = 4 |cos 2 theta|`.
pub fn root_gap_sqr(theta: f64) -> f64 {
    4.0 * (2.0 * theta).cos().abs()
}

/// Angle `xi` in `(0, 2 pi)` with `e^{i xi} = Lambda+ conj(Lambda-)` on the
/// arcs where both roots are unimodular.
pub fn xi_angle(theta: f64) -> Result<f64> {
    require(theta, ThetaRegion::K2)?;
    let t = normalize_angle(theta);
    if t.sin().abs() <= 1e-12 {
        return Err(Error::DegenerateTheta { theta });
    }
    let c2 = (2.0 * t).cos();
    let cos_xi = 1.0 - 2.0 * c2;
    let sin_xi = -2.0 * (2.0 * c2).sqrt() * t.sin();
    let xi1 = sin_xi.atan2(cos_xi).rem_euclid(TAU);
    Ok(if t < PI { xi1 } else { TAU - xi1 })
}

/// Per-`phi` data for the measure off the double-root points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WValues {
    pub theta: f64,
    pub region: ThetaRegion,
    pub norm_sqr: f64,
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    /// Right half-line coefficients.
    pub h: [C64; 4],
    /// Left half-line coefficients.
    pub k: [C64; 4],
    pub w1: f64,
    pub w2: C64,
    pub w3: f64,
    pub w4: C64,
    pub w5: f64,
    pub w6: f64,
}

pub fn w_values(phi: InitialVector, theta: f64) -> Result<WValues> {
    forbid_k1(theta)?;
    let t = normalize_angle(theta);
    let lambda = cis(t);
    let (lp, lm) = hadamard_roots(t);
    let (gp, gm) = (-lp, -lm);
    let (plus, minus) = boundary_values(&CoinMatrix::hadamard(), lambda, phi)?;
    let (p1, p2) = (phi.phi1, phi.phi2);
    let h = [plus.l - lm * p1, plus.l - lp * p1, plus.r - lm * p2, plus.r - lp * p2];
    let k = [
        minus.l - gm * p1,
        minus.l - gp * p1,
        minus.r - gm * p2,
        minus.r - gp * p2,
    ];
    let sq = |v: &[C64; 4]| v.iter().map(|c| c.norm_sqr()).sum::<f64>();
    Ok(WValues {
        theta: t,
        region: theta_region(t),
        norm_sqr: phi.norm_sqr(),
        lambda_plus: lp,
        lambda_minus: lm,
        h,
        k,
        w1: sq(&h),
        w2: h[0] * h[1].conj() + h[2] * h[3].conj(),
        w3: sq(&k),
        w4: k[0] * k[1].conj() + k[2] * k[3].conj(),
        w5: h[0].norm_sqr() + h[2].norm_sqr(),
        w6: h[1].norm_sqr() + h[3].norm_sqr(),
    })
}

impl WValues {
    /// Left half-line analogues of `w5` and `w6`.
    pub fn left_weights(&self) -> (f64, f64) {
        (
            self.k[0].norm_sqr() + self.k[2].norm_sqr(),
            self.k[1].norm_sqr() + self.k[3].norm_sqr(),
        )
    }

    /// Measure at site `x` assembled from the W values.
    pub fn measure_at(&self, x: i64) -> f64 {
        if x == 0 {
            return self.norm_sqr;
        }
        let gap = root_gap_sqr(self.theta);
        let n = x.unsigned_abs() as i32;
        let (w_sum, w_cross) = if x > 0 { (self.w1, self.w2) } else { (self.w3, self.w4) };
        match self.region {
            ThetaRegion::K3 => {
                let (rp, rm) = (self.lambda_plus.norm_sqr(), self.lambda_minus.norm_sqr());
                let (a, b) = if x > 0 { (self.w5, self.w6) } else { self.left_weights() };
                (rp.powi(n) * a + rm.powi(n) * b - 2.0 * w_cross.re) / gap
            }
            _ => {
                let phase = (self.lambda_plus * self.lambda_minus.conj()).powi(n);
                (w_sum - 2.0 * (phase * w_cross).re) / gap
            }
        }
    }

    /// Upper bound `(W + 2|W'|) / |Lambda+ - Lambda-|^2` for the unimodular case,
    /// taken over both half-lines.
    pub fn bounded_envelope(&self) -> f64 {
        let gap = root_gap_sqr(self.theta);
        ((self.w1 + 2.0 * self.w2.norm()) / gap)
            .max((self.w3 + 2.0 * self.w4.norm()) / gap)
            .max(self.norm_sqr)
    }

    /// Per-site growth factors of the measure toward `+inf` and `-inf`. Weights
    /// below `1e-12` of the total are treated as exactly zero, so an initial
    /// vector aligned with the decaying root reports decay.
    pub fn growth_factors(&self) -> (f64, f64) {
        let (rp, rm) = (self.lambda_plus.norm_sqr(), self.lambda_minus.norm_sqr());
        let pick = |a: f64, b: f64| {
            let floor = 1e-12 * (a + b).max(f64::MIN_POSITIVE);
            match (a > floor, b > floor) {
                (true, true) => rp.max(rm),
                (true, false) => rp,
                (false, true) => rm,
                (false, false) => 1.0,
            }
        };
        let (ka, kb) = self.left_weights();
        (pick(self.w5, self.w6), pick(ka, kb))
    }
}

/// Growth data for the split-modulus arcs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpRates {
    /// `|Lambda+|^2`.
    pub r_plus: f64,
    /// `|Lambda-|^2`.
    pub r_minus: f64,
    /// Dominant per-site factor toward `+inf` for a generic initial vector.
    pub toward_pos: f64,
    /// Dominant per-site factor toward `-inf` for a generic initial vector.
    pub toward_neg: f64,
}

pub fn exp_rates(theta: f64) -> Result<ExpRates> {
    require(theta, ThetaRegion::K3)?;
    let (r_plus, r_minus) = lambda_moduli(theta);
    if !((r_plus * r_minus - 1.0).abs() <= 1e-10) {
        return Err(Error::Invariant(format!(
            "root moduli product {} differs from 1",
            r_plus * r_minus
        )));
    }
    // The left roots are the negated right roots, so both sides share the same factor.
    let dominant = r_plus.max(r_minus);
    Ok(ExpRates {
        r_plus,
        r_minus,
        toward_pos: dominant,
        toward_neg: dominant,
    })
}
