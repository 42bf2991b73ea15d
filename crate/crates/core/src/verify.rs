//! Self-check suite: reproduces the known measure classes and cross-checks
//! every formula against independent computations.
//!
//! Each check reports the worst deviation it saw next to the tolerance it was
//! judged against. A global tolerance override replaces every per-check
//! tolerance, which is how deliberately impossible thresholds are probed.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    classify, hadamard_roots, lambda_moduli, qp_coefficients, theta_region, uniform_condition, z_components,
    PeriodVerdict, StationaryClass, ThetaRegion, K1_POINTS,
};
use crate::closed_form::{char_roots, ClosedForm, FormulaCase};
use crate::coin::CoinMatrix;
use crate::error::Result;
use crate::evolution::{eigen_residual, verify_stationary};
use crate::field::InitialVector;
use crate::linalg::{cis, C64};
use crate::spectrum::spectrum_arcs_with;
use crate::sweep::Execution;
use crate::transfer::{build_transfer, signed_eigenfunction, signed_eigenvalue, transfer_eigenfunction, Sign};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub theta_grid: usize,
    pub phi_samples: usize,
    /// Replaces every per-check tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            theta_grid: 360,
            phi_samples: 5,
            tol: None,
            seed: 0x5eed,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed.
    pub measured: f64,
    pub tol: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// Uniform random initial vector with components in the unit square.
pub fn random_phi(rng: &mut impl Rng) -> InitialVector {
    loop {
        let mut c = || C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let (a, b) = (c(), c());
        if a.norm_sqr() + b.norm_sqr() > 1e-6 {
            return InitialVector::new(a, b).expect("nonzero");
        }
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| TAU * i as f64 / n as f64).collect()
}

struct Ctx<'a> {
    cfg: &'a VerifyConfig,
    rng: ChaCha8Rng,
}

impl Ctx<'_> {
    fn tol(&self, default: f64) -> f64 {
        self.cfg.tol.unwrap_or(default)
    }

    fn phis(&mut self, n: usize) -> Vec<InitialVector> {
        (0..n).map(|_| random_phi(&mut self.rng)).collect()
    }
}

fn result(id: u32, name: &'static str, measured: f64, tol: f64, extra_ok: bool, detail: String) -> CheckResult {
    CheckResult {
        id,
        name,
        passed: extra_ok && measured <= tol,
        measured,
        tol,
        detail,
    }
}

fn check_period(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-10);
    let phi = InitialVector::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))?;
    let class = classify(FRAC_PI_6, phi)?;
    let verdict_ok = matches!(
        class,
        StationaryClass::BoundedOscillatory {
            period: PeriodVerdict::Finite { m_min: 4 },
            ..
        }
    );
    let mu = transfer_eigenfunction(&CoinMatrix::hadamard(), cis(FRAC_PI_6), phi, 0, 44)?.measure();
    let shift = |m: i64| {
        (1..=40)
            .map(|x| (mu.get(x + m).expect("window") - mu.get(x).expect("window")).abs())
            .fold(0.0, f64::max)
    };
    let dev4 = shift(4);
    let smaller = (1..=3).map(shift).fold(f64::INFINITY, f64::min);
    Ok(result(
        1,
        "period reproduction",
        dev4,
        tol,
        verdict_ok && smaller >= 1e-3,
        format!("verdict {class:?}; smallest deviation for m < 4 is {smaller:.3e}"),
    ))
}

fn check_uniform(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-10);
    let phis = ctx.phis(ctx.cfg.phi_samples);
    let mut worst: f64 = 0.0;
    for theta in [0.0, PI] {
        for &phi in &phis {
            let mu = transfer_eigenfunction(&CoinMatrix::hadamard(), cis(theta), phi, -40, 40)?.measure();
            let level = phi.norm_sqr();
            worst = worst.max(mu.values().iter().map(|v| (v - level).abs()).fold(0.0, f64::max));
        }
    }
    Ok(result(
        2,
        "uniform reproduction",
        worst,
        tol,
        true,
        format!("{} vectors at theta = 0, pi", phis.len()),
    ))
}

fn uniform_sample(ctx: &mut Ctx, theta: f64, member: bool) -> InitialVector {
    let p2 = random_phi(&mut ctx.rng).phi2;
    let p2 = if p2.norm() < 1e-3 { C64::new(1.0, 0.0) } else { p2 };
    let target = if uniform_target_is_quarter(theta) {
        FRAC_PI_2
    } else {
        3.0 * FRAC_PI_2
    };
    let (mut scale, mut phase) = (1.0, 0.0);
    if !member {
        if ctx.rng.random_bool(0.5) {
            scale = ctx.rng.random_range(1.05..2.0);
        } else {
            phase = ctx.rng.random_range(0.05..TAU - 0.05);
        }
    }
    InitialVector::new(p2 * cis(target + phase) * scale, p2).expect("nonzero")
}

fn uniform_target_is_quarter(theta: f64) -> bool {
    (theta - K1_POINTS[0]).abs() < 1e-9 || (theta - K1_POINTS[2]).abs() < 1e-9
}

fn check_quadratic(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-9);
    let mut worst: f64 = 0.0;
    let phis = ctx.phis(20);
    for theta in K1_POINTS {
        for &phi in &phis {
            let q = qp_coefficients(phi, theta)?;
            let mu = transfer_eigenfunction(&CoinMatrix::hadamard(), cis(theta), phi, -20, 20)?.measure();
            for (x, v) in mu.iter() {
                worst = worst.max((v - q.eval(x)).abs());
            }
        }
    }
    let mut mismatches = 0;
    for i in 0..40 {
        let theta = K1_POINTS[i % 4];
        let member = i < 20;
        let phi = uniform_sample(ctx, theta, member);
        let q = qp_coefficients(phi, theta)?;
        let a_zero = q.a <= 1e-12 * q.c;
        if a_zero != member || uniform_condition(phi, theta)? != member {
            mismatches += 1;
        }
    }
    Ok(result(
        3,
        "quadratic reproduction",
        worst,
        tol,
        mismatches == 0,
        format!("{mismatches} membership mismatches in 40 samples"),
    ))
}

fn check_exponential(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-3);
    let mut worst: f64 = 0.0;
    let thetas = [PI / 3.0, FRAC_PI_2, 0.9, 4.0, 5.0];
    let xs: Vec<f64> = (10..=40).map(|x| x as f64).collect();
    for theta in thetas.into_iter().filter(|t| theta_region(*t) == ThetaRegion::K3) {
        let phi = random_phi(&mut ctx.rng);
        let mu = transfer_eigenfunction(&CoinMatrix::hadamard(), cis(theta), phi, -40, 40)?.measure();
        let (a, b) = lambda_moduli(theta);
        let expect = a.max(b).ln();
        for sign in [1, -1] {
            let ys: Vec<f64> = (10..=40).map(|x| mu.get(sign * x).expect("window").ln()).collect();
            worst = worst.max((fit_slope(&xs, &ys) - expect).abs() / expect);
        }
    }
    Ok(result(
        4,
        "exponential reproduction",
        worst,
        tol,
        true,
        "relative slope error, both directions".into(),
    ))
}

fn check_root_formulas(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-10);
    let thetas: Vec<f64> = grid(ctx.cfg.theta_grid * 10)
        .into_iter()
        .filter(|t| theta_region(*t) != ThetaRegion::K1)
        .collect();
    let rows = ctx.cfg.execution.try_map(&thetas, |&t| {
        let lambda = cis(t);
        let roots = char_roots(&CoinMatrix::hadamard(), lambda)?;
        let mut direct = [roots.lambda_plus.norm_sqr(), roots.lambda_minus.norm_sqr()];
        let (mp, mm) = lambda_moduli(t);
        let mut closed = [mp, mm];
        direct.sort_by(f64::total_cmp);
        closed.sort_by(f64::total_cmp);
        let (lp, lm) = hadamard_roots(t);
        let labelled = (lp.norm_sqr() - mp).abs().max((lm.norm_sqr() - mm).abs());
        let moduli = (direct[0] - closed[0])
            .abs()
            .max((direct[1] - closed[1]).abs())
            .max(labelled);
        let z = (lambda * lambda - 1.0).conj() * crate::classify::g_branch(t);
        let (re, im) = z_components(t)?;
        let zdev = (z.re - re).abs().max((z.im - im).abs());
        let unit = if theta_region(t) == ThetaRegion::K2 {
            (roots.lambda_plus.norm() - 1.0)
                .abs()
                .max((roots.lambda_minus.norm() - 1.0).abs())
        } else {
            0.0
        };
        Ok((moduli.max(zdev), unit))
    })?;
    let worst = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let unit = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let unit_tol = ctx.tol(1e-12);
    Ok(result(
        5,
        "root formula cross-check",
        worst,
        tol,
        unit <= unit_tol,
        format!("{} angles; worst unimodularity defect on K2 {unit:.3e}", thetas.len()),
    ))
}

fn check_closed_form(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-10);
    let phis = ctx.phis(ctx.cfg.phi_samples);
    let thetas = grid(ctx.cfg.theta_grid);
    let rows = ctx.cfg.execution.try_map(&thetas, |&t| {
        let lambda = cis(t);
        let mut worst: f64 = 0.0;
        let mut case_ok = true;
        for &phi in &phis {
            let cf = ClosedForm::new(&CoinMatrix::hadamard(), lambda, phi)?;
            let want = if theta_region(t) == ThetaRegion::K1 {
                FormulaCase::DoubleRoot
            } else {
                FormulaCase::DistinctRoots
            };
            case_ok &= cf.case() == want;
            let field = transfer_eigenfunction(&CoinMatrix::hadamard(), lambda, phi, -30, 30)?;
            for (x, v) in field.iter() {
                let d = (cf.at(x) - v).max_abs() / v.max_abs().max(1.0);
                worst = worst.max(d);
            }
        }
        Ok((worst, case_ok))
    })?;
    let worst = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let cases = rows.iter().all(|r| r.1);
    Ok(result(
        6,
        "closed form vs transfer",
        worst,
        tol,
        cases,
        format!(
            "{} angles x {} vectors; formula case selection ok: {cases}",
            thetas.len(),
            phis.len()
        ),
    ))
}

fn check_stationarity(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-10);
    let samples: Vec<(f64, InitialVector)> = (0..100)
        .map(|_| (ctx.rng.random_range(0.0..TAU), random_phi(&mut ctx.rng)))
        .collect();
    let reports = ctx.cfg.execution.try_map(&samples, |&(t, phi)| {
        verify_stationary(&CoinMatrix::hadamard(), cis(t), phi, 64, 10, tol)
    })?;
    let worst = reports
        .iter()
        .map(|r| r.max_deviation.max(r.eigen_residual))
        .fold(0.0, f64::max);
    let failures = reports.iter().filter(|r| !r.passed).count();
    Ok(result(
        7,
        "stationarity oracle",
        worst,
        tol,
        failures == 0,
        format!("{failures} of 100 random pairs failed"),
    ))
}

fn check_spectrum(ctx: &mut Ctx) -> Result<CheckResult> {
    let n = 4096;
    let tol = ctx.tol(3.0 * TAU / n as f64);
    let arcs = spectrum_arcs_with(&CoinMatrix::hadamard(), n, ctx.cfg.execution)?;
    let expect = [
        (0.0, FRAC_PI_4),
        (3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4),
        (7.0 * FRAC_PI_4, TAU),
    ];
    let shape_ok = arcs.len() == expect.len();
    let worst = arcs
        .iter()
        .zip(expect)
        .map(|(a, (lo, hi))| (a.lo - lo).abs().max((a.hi - hi).abs()))
        .fold(if shape_ok { 0.0 } else { f64::INFINITY }, f64::max);
    let step = TAU / n as f64;
    let gaps = [(FRAC_PI_4, 3.0 * FRAC_PI_4), (5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4)];
    let gaps_empty = arcs
        .iter()
        .all(|a| gaps.iter().all(|(lo, hi)| a.hi <= lo + step || a.lo >= hi - step));
    Ok(result(
        8,
        "spectrum identity",
        worst,
        tol,
        gaps_empty,
        format!("{} arcs; gaps empty: {gaps_empty}", arcs.len()),
    ))
}

fn check_transfer_pair(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-12);
    let fine = grid(ctx.cfg.theta_grid * 10);
    let inverse = ctx
        .cfg
        .execution
        .try_map(&fine, |&t| {
            Ok(build_transfer(&CoinMatrix::hadamard(), cis(t))?.inverse_defect())
        })?
        .into_iter()
        .fold(0.0, f64::max);
    let mut unitary_wrong = Vec::new();
    for t in grid(ctx.cfg.theta_grid) {
        let defect = build_transfer(&CoinMatrix::hadamard(), cis(t))?
            .t_plus
            .unitarity_defect();
        let expected_unitary = t == 0.0 || (t - PI).abs() < 1e-12;
        let ok = if expected_unitary {
            defect <= tol
        } else {
            defect >= 1e-3
        };
        if !ok {
            unitary_wrong.push(t);
        }
    }
    Ok(result(
        9,
        "transfer pair inverse",
        inverse,
        tol,
        unitary_wrong.is_empty(),
        format!("unitarity pattern violated at {} angles", unitary_wrong.len()),
    ))
}

fn check_signed(ctx: &mut Ctx) -> Result<CheckResult> {
    let tol = ctx.tol(1e-12);
    let mut worst: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for sigma in Sign::ALL {
        for tau in Sign::ALL {
            let phi2 = random_phi(&mut ctx.rng).phi2;
            let phi2 = if phi2.norm() < 1e-3 { C64::new(1.0, 0.0) } else { phi2 };
            let f = signed_eigenfunction(sigma, tau, phi2, -40, 40)?;
            worst = worst.max(eigen_residual(
                &CoinMatrix::hadamard(),
                signed_eigenvalue(sigma, tau),
                &f,
            )?);
            let mu = f.measure();
            spread = spread.max((mu.max() - mu.min()) / mu.max());
        }
    }
    Ok(result(
        10,
        "piecewise eigenfunction",
        worst,
        tol,
        spread <= 1e-12,
        format!("largest relative spread of the measure {spread:.3e}"),
    ))
}

type Check = fn(&mut Ctx) -> Result<CheckResult>;

const CHECKS: [(u32, &str, Check); 10] = [
    (1, "period reproduction", check_period),
    (2, "uniform reproduction", check_uniform),
    (3, "quadratic reproduction", check_quadratic),
    (4, "exponential reproduction", check_exponential),
    (5, "root formula cross-check", check_root_formulas),
    (6, "closed form vs transfer", check_closed_form),
    (7, "stationarity oracle", check_stationarity),
    (8, "spectrum identity", check_spectrum),
    (9, "transfer pair inverse", check_transfer_pair),
    (10, "piecewise eigenfunction", check_signed),
];

/// Run every check in order. Library errors inside a check are reported as
/// failures of that check rather than aborting the run.
pub fn run_checks(cfg: &VerifyConfig) -> VerifyReport {
    let mut ctx = Ctx {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
    };
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .map(|(id, name, check)| {
            check(&mut ctx).unwrap_or_else(|e| CheckResult {
                id: *id,
                name,
                passed: false,
                measured: f64::NAN,
                tol: cfg.tol.unwrap_or(f64::NAN),
                detail: format!("error: {e}"),
            })
        })
        .collect();
    VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
