//! Transfer matrices and eigenfunctions built by site-to-site iteration.
//!
//! Along a solution of `U Psi = lambda Psi` the spinor at `x` determines its
//! neighbours: `Psi(x) = T+ Psi(x-1)` and `Psi(x) = T- Psi(x+1)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::field::{InitialVector, Spinor, SpinorField};
use crate::linalg::{Mat2, C64, I, ONE};

/// Tolerance on `|lambda| = 1` and on `T+ T- = I`.
pub const TRANSFER_TOL: f64 = 1e-12;

/// Largest `|x|` a single eigenfunction call will generate.
pub const MAX_EXTENT: i64 = 1_000_000;

/// Entries below this modulus count as zero for the corner check.
const CORNER_EPS: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferPair {
    pub t_plus: Mat2,
    pub t_minus: Mat2,
    pub lambda: C64,
}

impl TransferPair {
    /// `max(|T+ T- - I|, |T- T+ - I|)` entrywise.
    pub fn inverse_defect(&self) -> f64 {
        let a = (self.t_plus * self.t_minus).max_abs_diff(&Mat2::identity());
        let b = (self.t_minus * self.t_plus).max_abs_diff(&Mat2::identity());
        a.max(b)
    }
}

pub(crate) fn check_lambda(lambda: C64) -> Result<()> {
    let modulus = lambda.norm();
    if !((modulus - 1.0).abs() <= TRANSFER_TOL) {
        return Err(Error::NotOnUnitCircle { modulus });
    }
    Ok(())
}

pub(crate) fn check_corner(coin: &CoinMatrix) -> Result<()> {
    if coin.c11().norm() <= CORNER_EPS || coin.c22().norm() <= CORNER_EPS {
        return Err(Error::ZeroCornerEntry);
    }
    Ok(())
}

pub fn build_transfer(coin: &CoinMatrix, lambda: C64) -> Result<TransferPair> {
    check_corner(coin)?;
    check_lambda(lambda)?;
    let [[c11, c12], [c21, c22]] = coin.matrix().m;
    let l2 = lambda * lambda;
    let t_plus = Mat2::new(
        (l2 - c12 * c21) / (c11 * lambda),
        -c12 * c22 / (c11 * lambda),
        c21 / lambda,
        c22 / lambda,
    );
    let t_minus = Mat2::new(
        c11 / lambda,
        c12 / lambda,
        -c11 * c21 / (c22 * lambda),
        (l2 - c12 * c21) / (c22 * lambda),
    );
    let pair = TransferPair {
        t_plus,
        t_minus,
        lambda,
    };
    let deviation = pair.inverse_defect();
    let scale = t_plus.max_abs() * t_minus.max_abs();
    if !(deviation <= TRANSFER_TOL * scale.max(1.0)) {
        return Err(Error::InverseMismatch { deviation });
    }
    Ok(pair)
}

/// `(Psi(1), Psi(-1))` written out entrywise rather than as matrix products.
pub fn boundary_values(coin: &CoinMatrix, lambda: C64, phi: InitialVector) -> Result<(Spinor, Spinor)> {
    check_corner(coin)?;
    check_lambda(lambda)?;
    let [[c11, c12], [c21, c22]] = coin.matrix().m;
    let (p1, p2) = (phi.phi1, phi.phi2);
    let l2 = lambda * lambda;
    let right_sum = c21 * p1 + c22 * p2;
    let left_sum = c11 * p1 + c12 * p2;
    let plus = Spinor::new((p1 * l2 - c12 * right_sum) / (c11 * lambda), right_sum / lambda);
    let minus = Spinor::new(left_sum / lambda, (p2 * l2 - c21 * left_sum) / (c22 * lambda));
    Ok((plus, minus))
}

fn check_extent(xmin: i64, xmax: i64) -> Result<()> {
    if xmin > 0 || xmax < 0 {
        return Err(Error::WindowMissingOrigin { xmin, xmax });
    }
    for extent in [xmin, xmax] {
        if extent.abs() > MAX_EXTENT {
            return Err(Error::WindowTooLarge {
                extent,
                cap: MAX_EXTENT,
            });
        }
    }
    Ok(())
}

/// Eigenfunction on `[xmin, xmax]` by repeated application of `T+` to the
/// right of the origin and `T-` to the left.
pub fn transfer_eigenfunction(
    coin: &CoinMatrix,
    lambda: C64,
    phi: InitialVector,
    xmin: i64,
    xmax: i64,
) -> Result<SpinorField> {
    check_extent(xmin, xmax)?;
    let pair = build_transfer(coin, lambda)?;
    let mut values = vec![Spinor::zero(); (xmax - xmin + 1) as usize];
    let origin = (-xmin) as usize;
    values[origin] = phi.as_spinor();

    let mut cur = phi.as_spinor();
    for x in 1..=xmax {
        cur = pair.t_plus * cur;
        if !cur.is_finite() {
            return Err(Error::Overflow { site: x });
        }
        values[origin + x as usize] = cur;
    }
    cur = phi.as_spinor();
    for x in 1..=-xmin {
        cur = pair.t_minus * cur;
        if !cur.is_finite() {
            return Err(Error::Overflow { site: -x });
        }
        values[origin - x as usize] = cur;
    }
    SpinorField::new(xmin, values)
}

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `(sigma + tau i) / sqrt 2`, the Hadamard eigenvalue carried by the
/// piecewise eigenfunction of [`signed_eigenfunction`].
pub fn signed_eigenvalue(sigma: Sign, tau: Sign) -> C64 {
    C64::new(sigma.value(), tau.value()) * FRAC_1_SQRT_2
}

/// `(s i)^n` for `s = +-1`, exact via `n mod 4`.
fn signed_i_pow(s: f64, n: u64) -> C64 {
    let base = match n % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    };
    if s < 0.0 && n % 2 == 1 {
        -base
    } else {
        base
    }
}

/// Hadamard eigenfunction with `Psi(0) = (sigma tau i phi2, phi2)` whose
/// values differ from site to site only by powers of `tau i sgn x`.
///
/// The result is checked against one walk step before it is returned.
pub fn signed_eigenfunction(sigma: Sign, tau: Sign, phi2: C64, xmin: i64, xmax: i64) -> Result<SpinorField> {
    if phi2 == C64::new(0.0, 0.0) {
        return Err(Error::ZeroInput);
    }
    check_extent(xmin, xmax)?;
    let st = sigma.value() * tau.value();
    let phi1 = I * st * phi2;
    let field = SpinorField::from_fn(xmin, xmax, |x| {
        let n = x.unsigned_abs();
        let power = signed_i_pow(tau.value() * x.signum() as f64, n);
        match x.signum() {
            1 => Spinor::new(phi1, -I * st * phi1).scale(power),
            -1 => Spinor::new(I * st * phi2, phi2).scale(power),
            _ => Spinor::new(phi1, phi2),
        }
    })?;
    if field.len() >= 3 {
        let residual =
            crate::evolution::eigen_residual(&CoinMatrix::hadamard(), signed_eigenvalue(sigma, tau), &field)?;
        let bound = 1e-12 * phi2.norm().max(1.0);
        if !(residual <= bound) {
            return Err(Error::Invariant(format!(
                "piecewise eigenfunction residual {residual:.3e} exceeds {bound:.1e}"
            )));
        }
    }
    Ok(field)
}
