//! One step of the walk on a finite window, and the brute-force check that a
//! candidate eigenfunction really produces a time-invariant measure.
//!
//! Each step reads `Psi(x-1)` and `Psi(x+1)`, so the window loses one site at
//! each end instead of being padded with zeros.

use serde::Serialize;

use crate::coin::CoinMatrix;
use crate::error::{Error, Result};
use crate::field::{InitialVector, Measure, Spinor, SpinorField};
use crate::linalg::C64;
use crate::transfer::{check_lambda, transfer_eigenfunction};

/// `Psi'(x) = P Psi(x+1) + Q Psi(x-1)` on `[xmin+1, xmax-1]`.
pub fn step(coin: &CoinMatrix, field: &SpinorField) -> Result<SpinorField> {
    if field.len() < 3 {
        return Err(Error::WindowTooSmall {
            len: field.len(),
            required: 3,
        });
    }
    let [[c11, c12], [c21, c22]] = coin.matrix().m;
    let v = field.values();
    let next = v
        .windows(3)
        .map(|w| {
            let (left, right) = (w[0], w[2]);
            Spinor::new(c11 * right.l + c12 * right.r, c21 * left.l + c22 * left.r)
        })
        .collect();
    SpinorField::new(field.xmin() + 1, next)
}

/// The initial field followed by `steps` successive images.
pub fn evolve(coin: &CoinMatrix, field: &SpinorField, steps: usize) -> Result<Vec<SpinorField>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(field.clone());
    for _ in 0..steps {
        let next = step(coin, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Largest `|(U Psi)(x) - lambda Psi(x)|` over interior sites, each scaled by
/// `max(1, |Psi(x-1)|, |Psi(x)|, |Psi(x+1)|)` so growing fields are judged
/// relative to their size.
pub fn eigen_residual(coin: &CoinMatrix, lambda: C64, field: &SpinorField) -> Result<f64> {
    let stepped = step(coin, field)?;
    let v = field.values();
    let worst = stepped
        .values()
        .iter()
        .zip(v.windows(3))
        .map(|(u, w)| {
            let scale = w.iter().map(Spinor::max_abs).fold(1.0, f64::max);
            (*u - w[1].scale(lambda)).max_abs() / scale
        })
        .fold(0.0, f64::max);
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StationarityReport {
    /// Window on which every step was compared.
    pub window: (i64, i64),
    /// `max_x |mu_k(x) - mu_0(x)| / max(1, mu_0(x))` for `k = 1..=n_steps`.
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub eigen_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Evolve `field` for `n_steps` and compare each measure with the initial one
/// on the sites that survive all steps.
pub fn verify_field(
    coin: &CoinMatrix,
    lambda: C64,
    field: &SpinorField,
    n_steps: usize,
    tol: f64,
) -> Result<StationarityReport> {
    let required = 2 * n_steps + 1;
    if field.len() < required.max(3) {
        return Err(Error::WindowTooSmall {
            len: field.len(),
            required: required.max(3),
        });
    }
    let lo = field.xmin() + n_steps as i64;
    let hi = field.xmax() - n_steps as i64;
    let mu0: Measure = field.measure();
    let history = evolve(coin, field, n_steps)?;
    let deviations: Vec<f64> = history[1..]
        .iter()
        .map(|f| {
            let mu = f.measure();
            (lo..=hi)
                .map(|x| {
                    let a = mu0.get(x).expect("interior site");
                    let b = mu.get(x).expect("interior site");
                    (b - a).abs() / a.max(1.0)
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    let eigen_residual = eigen_residual(coin, lambda, field)?;
    let passed = max_deviation <= tol && eigen_residual <= tol;
    Ok(StationarityReport {
        window: (lo, hi),
        deviations,
        max_deviation,
        eigen_residual,
        tol,
        passed,
    })
}

/// Build the eigenfunction on `[-l, l]` by transfer iteration and run
/// [`verify_field`] on it.
pub fn verify_stationary(
    coin: &CoinMatrix,
    lambda: C64,
    phi: InitialVector,
    l: i64,
    n_steps: usize,
    tol: f64,
) -> Result<StationarityReport> {
    check_lambda(lambda)?;
    if l <= n_steps as i64 + 2 {
        return Err(Error::WindowTooSmall {
            len: (2 * l.max(0) + 1) as usize,
            required: 2 * (n_steps + 3) + 1,
        });
    }
    let field = transfer_eigenfunction(coin, lambda, phi, -l, l)?;
    verify_field(coin, lambda, &field, n_steps, tol)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use proptest::prelude::*;

    use super::*;
    use crate::linalg::{cis, ONE, ZERO};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_fixes_constant_field() {
        let f = SpinorField::constant(-2, 2, Spinor::new(ONE, ONE)).unwrap();
        let g = step(&CoinMatrix::identity(), &f).unwrap();
        assert_eq!((g.xmin(), g.xmax()), (-1, 1));
        assert!(g.values().iter().all(|v| *v == Spinor::new(ONE, ONE)));
    }

    #[test]
    fn first_hadamard_step() {
        let f = SpinorField::delta(-2, 2, Spinor::new(ONE, ZERO)).unwrap();
        let g = step(&CoinMatrix::hadamard(), &f).unwrap();
        let s = c(FRAC_1_SQRT_2, 0.0);
        assert_eq!((g.xmin(), g.xmax()), (-1, 1));
        assert!((g.get(-1).unwrap() - Spinor::new(s, ZERO)).max_abs() < 1e-15);
        assert_eq!(g.get(0).unwrap(), Spinor::zero());
        assert!((g.get(1).unwrap() - Spinor::new(ZERO, s)).max_abs() < 1e-15);
    }

    #[test]
    fn zero_field_stays_zero() {
        let f = SpinorField::zeros(-4, 4).unwrap();
        assert!(step(&CoinMatrix::rotation(0.7), &f).unwrap().is_zero());
    }

    #[test]
    fn step_needs_three_sites() {
        let f = SpinorField::zeros(-1, 0).unwrap();
        assert!(matches!(
            step(&CoinMatrix::hadamard(), &f),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn stationary_at_pi_over_6() {
        let phi = InitialVector::new(ONE, ZERO).unwrap();
        let r = verify_stationary(&CoinMatrix::hadamard(), cis(PI / 6.0), phi, 64, 10, 1e-10).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.deviations.len(), 10);
        assert_eq!(r.window, (-54, 54));
    }

    #[test]
    fn identity_stationary_at_one() {
        let phi = InitialVector::new(ONE, ONE).unwrap();
        let r = verify_stationary(&CoinMatrix::identity(), ONE, phi, 16, 5, 1e-10).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_deviation, 0.0);
    }

    #[test]
    fn perturbation_is_detected() {
        let coin = CoinMatrix::hadamard();
        let lambda = cis(PI / 6.0);
        let phi = InitialVector::new(ONE, ZERO).unwrap();
        let mut f = transfer_eigenfunction(&coin, lambda, phi, -64, 64).unwrap();
        let v = f.get(3).unwrap();
        f.set(3, v + Spinor::new(c(1e-3, 0.0), ZERO));
        let r = verify_field(&coin, lambda, &f, 10, 1e-10).unwrap();
        assert!(!r.passed);
        assert!(r.eigen_residual >= 1e-4);
    }

    #[test]
    fn verify_needs_room() {
        let phi = InitialVector::new(ONE, ZERO).unwrap();
        assert!(matches!(
            verify_stationary(&CoinMatrix::hadamard(), ONE, phi, 12, 10, 1e-10),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    fn arb_c64() -> impl Strategy<Value = C64> {
        (-2.0..2.0, -2.0..2.0).prop_map(|(a, b)| C64::new(a, b))
    }

    proptest! {
        #[test]
        fn step_conserves_interior_norm(
            zeta in 0.0..(2.0 * PI),
            vals in prop::collection::vec((arb_c64(), arb_c64()), 1..20),
        ) {
            // Support strictly inside the window, so nothing leaves through the edges.
            let n = vals.len() as i64;
            let f = SpinorField::from_fn(-2, n + 1, |x| {
                if (0..n).contains(&x) {
                    let (l, r) = vals[x as usize];
                    Spinor::new(l, r)
                } else {
                    Spinor::zero()
                }
            }).unwrap();
            let g = step(&CoinMatrix::rotation(zeta), &f).unwrap();
            let before = f.measure().total();
            let after = g.measure().total();
            prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
        }
    }
}
