//! Classification of Hadamard-walk stationary measures by eigenvalue argument.
//!
//! Every `theta` and initial vector yields exactly one of: a quadratic
//! polynomial, a constant, a bounded oscillation, or exponential growth. Each
//! verdict is checked against the measure produced by transfer iteration
//! before it is returned.

mod hadamard;
mod period;
mod quadratic;
mod region;

pub use hadamard::{
    exp_rates, g_branch, hadamard_roots, lambda_moduli, root_gap_sqr, w_values, xi_angle, z_components, ExpRates,
    WValues,
};
pub use period::{period_of, shift_deviation, PeriodVerdict, MAX_DENOMINATOR};
pub use quadratic::{qp_coefficients, uniform_condition, QpCoefficients};
pub use region::{double_root_eigenvalues, k1_index, normalize_angle, theta_region, ThetaRegion, K1_POINTS, K1_TOL};

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::field::{InitialVector, Measure};
use crate::linalg::{cis, C64};
use crate::transfer::transfer_eigenfunction;

/// Half-width of the window used to cross-check a verdict.
pub const CHECK_HALF_WIDTH: i64 = 40;
/// Relative tolerance of that cross-check.
pub const CHECK_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StationaryClass {
    /// `mu(x) = a x^2 + b x + c` with `a > 0`.
    QuadraticPolynomial { a: f64, b: f64, c: f64 },
    /// Constant measure.
    Uniform { level: f64 },
    /// Bounded, non-constant measure oscillating with phase step `xi`.
    BoundedOscillatory {
        xi: f64,
        w1: f64,
        w2: C64,
        w3: f64,
        w4: C64,
        period: PeriodVerdict,
    },
    /// Measure growing (or, for special initial vectors, decaying) geometrically.
    Exponential {
        /// `|Lambda+|^2`.
        r_plus: f64,
        /// `|Lambda-|^2`.
        r_minus: f64,
        /// Per-site factor of this particular measure toward `+inf`.
        growth_pos: f64,
        /// Per-site factor of this particular measure toward `-inf`.
        growth_neg: f64,
    },
}

impl StationaryClass {
    pub fn name(&self) -> &'static str {
        match self {
            StationaryClass::QuadraticPolynomial { .. } => "quadratic",
            StationaryClass::Uniform { .. } => "uniform",
            StationaryClass::BoundedOscillatory { .. } => "bounded",
            StationaryClass::Exponential { .. } => "exponential",
        }
    }
}

/// A verdict with the cross-check that backs it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub theta: f64,
    pub region: ThetaRegion,
    pub class: StationaryClass,
    /// Largest relative deviation between predicted and iterated measure.
    pub check_deviation: f64,
}

pub fn classify(theta: f64, phi: InitialVector) -> Result<StationaryClass> {
    Ok(classify_checked(theta, phi)?.class)
}

pub fn classify_checked(theta: f64, phi: InitialVector) -> Result<Classification> {
    let t = normalize_angle(theta);
    let region = theta_region(t);
    let norm = phi.norm_sqr();
    let (class, predict): (StationaryClass, Box<dyn Fn(i64) -> f64>) = match region {
        ThetaRegion::K1 => {
            let q = qp_coefficients(phi, t)?;
            if uniform_condition(phi, t)? || q.a <= 1e-12 * q.c {
                if q.b.abs() > 1e-8 * q.c {
                    return Err(Error::Invariant(format!(
                        "vanishing quadratic term with linear term {}",
                        q.b
                    )));
                }
                (StationaryClass::Uniform { level: q.c }, Box::new(move |_| q.c))
            } else {
                (
                    StationaryClass::QuadraticPolynomial { a: q.a, b: q.b, c: q.c },
                    Box::new(move |x| q.eval(x)),
                )
            }
        }
        ThetaRegion::K2 => {
            let period = period_of(t, phi)?;
            if period == PeriodVerdict::UniformPeriodOne {
                (StationaryClass::Uniform { level: norm }, Box::new(move |_| norm))
            } else {
                let w = w_values(phi, t)?;
                (
                    StationaryClass::BoundedOscillatory {
                        xi: xi_angle(t)?,
                        w1: w.w1,
                        w2: w.w2,
                        w3: w.w3,
                        w4: w.w4,
                        period,
                    },
                    Box::new(move |x| w.measure_at(x)),
                )
            }
        }
        ThetaRegion::K3 => {
            let w = w_values(phi, t)?;
            let (growth_pos, growth_neg) = w.growth_factors();
            let (rp, rm) = (w.lambda_plus.norm_sqr(), w.lambda_minus.norm_sqr());
            (
                StationaryClass::Exponential {
                    r_plus: rp,
                    r_minus: rm,
                    growth_pos,
                    growth_neg,
                },
                Box::new(move |x| w.measure_at(x)),
            )
        }
    };

    let field = transfer_eigenfunction(
        &CoinMatrix::hadamard(),
        cis(t),
        phi,
        -CHECK_HALF_WIDTH,
        CHECK_HALF_WIDTH,
    )?;
    let check_deviation = compare(&class, &field.measure(), norm, predict.as_ref());
    if !(check_deviation <= CHECK_TOL) {
        return Err(Error::CrossValidation {
            class: class.name(),
            deviation: check_deviation,
        });
    }
    Ok(Classification {
        theta: t,
        region,
        class,
        check_deviation,
    })
}

/// Largest `|mu(x) - predicted(x)| / max(|phi|^2, predicted(x))`. A half-line
/// on which an exponential measure decays is skipped: iteration there is
/// swamped by the growing mode long before the window edge.
fn compare(class: &StationaryClass, mu: &Measure, norm: f64, predict: &dyn Fn(i64) -> f64) -> f64 {
    let (skip_pos, skip_neg) = match class {
        StationaryClass::Exponential {
            growth_pos, growth_neg, ..
        } => (*growth_pos < 1.0, *growth_neg < 1.0),
        _ => (false, false),
    };
    mu.iter()
        .filter(|(x, _)| !((*x > 0 && skip_pos) || (*x < 0 && skip_neg)))
        .map(|(x, m)| {
            let p = predict(x);
            (m - p).abs() / p.abs().max(norm)
        })
        .fold(0.0, f64::max)
}
