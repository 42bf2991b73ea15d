//! `qwalk`: command-line access to the stationary-measure toolkit.
//!
//! Exit status: 0 success, 1 a verification failed, 2 bad usage, 3 a value was
//! well formed but outside the domain of the computation.

mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_core::classify::period_of;
use qwalk_core::spectrum::{dispersion, spectrum_arcs_with};
use qwalk_core::transfer::MAX_EXTENT;
use qwalk_core::verify::{run_checks, VerifyConfig};
use qwalk_core::{
    build_transfer, char_roots, cis, classify_checked, evolve, root_type, transfer_eigenfunction, verify_field,
    verify_stationary, CoinMatrix, Execution, Mat2, PeriodVerdict, SpinorField, StationaryClass,
};
use serde_json::{json, Map, Value};

use output::{complex, emit, json_text, num, Csv, Format};
use parse::{coin_arg, init_arg, phi_arg, theta_arg, CoinSpec, Init, PhiSpec, ValueError};

#[derive(Parser, Debug)]
#[command(
    name = "qwalk",
    version,
    about = "Stationary measures of two-state quantum walks on the line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve an initial field and print the measure after each step.
    Evolve(EvolveArgs),
    /// Classify the stationary measure of the Hadamard walk at e^{i theta}.
    Classify(PointArgs),
    /// Smallest period of a bounded stationary measure.
    Period(PointArgs),
    /// Spectrum of the walk on the circle, as arcs or as the raw dispersion.
    Spectrum(SpectrumArgs),
    /// Run the built-in numerical self-checks.
    Verify(VerifyArgs),
    /// The transfer matrices at e^{i theta}.
    Transfer(CoinPointArgs),
    /// Roots of the characteristic equation at e^{i theta}.
    Roots(CoinPointArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    /// hadamard, identity, rotation:<angle> or c11,c12,c21,c22.
    #[arg(long, default_value = "hadamard", value_parser = coin_arg)]
    coin: CoinSpec,
    /// delta:a,b, const:a,b or eigen:<angle>:a,b.
    #[arg(long, value_parser = init_arg)]
    init: Init,
    /// Half-width L of the window [-L, L].
    #[arg(long, default_value_t = 32)]
    window: i64,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Stationarity tolerance reported for eigen initial conditions.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Eigenvalue angle: decimal or a multiple of pi such as 2*pi/3.
    #[arg(long, value_parser = theta_arg, allow_hyphen_values = true)]
    theta: f64,
    /// Initial vector a,b with complex entries.
    #[arg(long, default_value = "1,0", value_parser = phi_arg, allow_hyphen_values = true)]
    phi: PhiSpec,
    /// Tolerance of the stationarity oracle.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CoinPointArgs {
    #[arg(long, default_value = "hadamard", value_parser = coin_arg)]
    coin: CoinSpec,
    #[arg(long, value_parser = theta_arg, allow_hyphen_values = true)]
    theta: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Table {
    Arcs,
    Dispersion,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long, default_value = "hadamard", value_parser = coin_arg)]
    coin: CoinSpec,
    /// Number of momentum samples.
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Table::Arcs)]
    table: Table,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 360)]
    theta_grid: usize,
    #[arg(long, default_value_t = 5)]
    phi_samples: usize,
    /// Override every per-check tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Domain(ValueError),
    Verify(String),
    Io(std::io::Error),
}

impl From<ValueError> for Failure {
    fn from(e: ValueError) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(), Failure>;

/// Attribute a library error to the flag that caused it.
fn blame(flag: &'static str) -> impl FnOnce(qwalk_core::Error) -> Failure {
    move |e| Failure::Domain(ValueError::new(flag, e.to_string()))
}

fn positive(v: f64, flag: &'static str) -> Result<f64, ValueError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ValueError::new(flag, format!("must be a positive number, got {v}")))
    }
}

fn write(text: String, common: &Common) -> Outcome {
    emit(&text, common.out.as_deref()).map_err(Failure::Io)
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn initial_field(coin: &CoinMatrix, init: Init, l: i64) -> Result<SpinorField, Failure> {
    match init {
        Init::Delta(p) => SpinorField::delta(-l, l, p.build("init")?.as_spinor()).map_err(blame("window")),
        Init::Constant(p) => SpinorField::constant(-l, l, p.build("init")?.as_spinor()).map_err(blame("window")),
        Init::Eigen { theta, phi } => {
            transfer_eigenfunction(coin, cis(theta), phi.build("init")?, -l, l).map_err(blame("init"))
        }
    }
}

fn run_evolve(a: EvolveArgs) -> Outcome {
    let coin = a.coin.build()?;
    if a.window < 1 || a.window > MAX_EXTENT {
        return Err(ValueError::new("window", format!("must lie in [1, {MAX_EXTENT}], got {}", a.window)).into());
    }
    if a.steps as i64 > a.window {
        return Err(ValueError::new(
            "steps",
            format!("{} steps would consume the window of half-width {}", a.steps, a.window),
        )
        .into());
    }
    let tol = positive(a.tol, "tol")?;
    let field = initial_field(&coin, a.init, a.window)?;
    let history = evolve(&coin, &field, a.steps).map_err(blame("steps"))?;
    let stationarity = match a.init.lambda() {
        Some(lambda) if a.steps >= 1 => {
            Some(verify_field(&coin, lambda, &field, a.steps, tol).map_err(blame("steps"))?)
        }
        _ => None,
    };
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut csv = Csv::new(&["step", "x", "mu_l", "mu_r", "mu"]);
            for (k, f) in history.iter().enumerate() {
                for (x, v) in f.iter() {
                    let (l, r) = (v.l.norm_sqr(), v.r.norm_sqr());
                    csv.row([k.to_string(), x.to_string(), num(l), num(r), num(l + r)]);
                }
            }
            csv.into_string()
        }
        Format::Json => {
            let steps: Vec<Value> = history
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    json!({
                        "step": k,
                        "xmin": f.xmin(),
                        "xmax": f.xmax(),
                        "mu": f.measure().values(),
                    })
                })
                .collect();
            json_text(&json!({
                "window": [-a.window, a.window],
                "steps": steps,
                "stationarity": stationarity,
            }))
        }
    };
    write(text, &a.common)
}

/// `{"name": ..., fields...}` for a class, with complex values split out.
fn class_fields(class: &StationaryClass, map: &mut Map<String, Value>) {
    map.insert("class".into(), json!(class.name()));
    match *class {
        StationaryClass::QuadraticPolynomial { a, b, c } => {
            map.insert("a".into(), json!(a));
            map.insert("b".into(), json!(b));
            map.insert("c".into(), json!(c));
        }
        StationaryClass::Uniform { level } => {
            map.insert("level".into(), json!(level));
            map.insert("period".into(), json!(1));
        }
        StationaryClass::BoundedOscillatory {
            xi,
            w1,
            w2,
            w3,
            w4,
            period,
        } => {
            map.insert("xi".into(), json!(xi));
            map.insert("w1".into(), json!(w1));
            map.insert("w2".into(), complex(w2));
            map.insert("w3".into(), json!(w3));
            map.insert("w4".into(), complex(w4));
            map.insert("period".into(), json!(period.period()));
            map.insert("period_verdict".into(), json!(period));
        }
        StationaryClass::Exponential {
            r_plus,
            r_minus,
            growth_pos,
            growth_neg,
        } => {
            map.insert("r_plus".into(), json!(r_plus));
            map.insert("r_minus".into(), json!(r_minus));
            map.insert("growth_pos".into(), json!(growth_pos));
            map.insert("growth_neg".into(), json!(growth_neg));
        }
    }
}

fn run_classify(a: PointArgs) -> Outcome {
    let phi = a.phi.build("phi")?;
    let tol = positive(a.tol, "tol")?;
    let c = classify_checked(a.theta, phi).map_err(blame("theta"))?;
    let report = verify_stationary(&CoinMatrix::hadamard(), cis(a.theta), phi, 64, 10, tol).map_err(blame("theta"))?;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut map = Map::new();
            map.insert("theta".into(), json!(a.theta));
            map.insert("region".into(), json!(c.region));
            class_fields(&c.class, &mut map);
            map.insert("check_deviation".into(), json!(c.check_deviation));
            map.insert(
                "oracle".into(),
                json!({
                    "eigen_residual": report.eigen_residual,
                    "stationarity_max_dev": report.max_deviation,
                    "passed": report.passed,
                }),
            );
            json_text(&Value::Object(map))
        }
        Format::Csv => {
            let period = match c.class {
                StationaryClass::BoundedOscillatory { period, .. } => period.period(),
                StationaryClass::Uniform { .. } => Some(1),
                _ => None,
            };
            let mut csv = Csv::new(&[
                "theta",
                "region",
                "class",
                "period",
                "check_deviation",
                "eigen_residual",
                "stationarity_max_dev",
            ]);
            csv.row([
                num(a.theta),
                c.region.label().to_string(),
                c.class.name().to_string(),
                period.map(|p| p.to_string()).unwrap_or_default(),
                num(c.check_deviation),
                num(report.eigen_residual),
                num(report.max_deviation),
            ]);
            csv.into_string()
        }
    };
    write(text, &a.common)
}

fn run_period(a: PointArgs) -> Outcome {
    let phi = a.phi.build("phi")?;
    let verdict = period_of(a.theta, phi).map_err(blame("theta"))?;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = json!(verdict);
            let map = v.as_object_mut().expect("verdict serialises as an object");
            map.insert("theta".into(), json!(a.theta));
            map.insert("period".into(), json!(verdict.period()));
            json_text(&v)
        }
        Format::Csv => {
            let kind = match verdict {
                PeriodVerdict::Finite { .. } => "finite",
                PeriodVerdict::Aperiodic { .. } => "aperiodic",
                PeriodVerdict::UniformPeriodOne => "uniform_period_one",
            };
            let mut csv = Csv::new(&["theta", "verdict", "period"]);
            csv.row([
                num(a.theta),
                kind.to_string(),
                verdict.period().map(|p| p.to_string()).unwrap_or_default(),
            ]);
            csv.into_string()
        }
    };
    write(text, &a.common)
}

fn run_spectrum(a: SpectrumArgs) -> Outcome {
    let coin = a.coin.build()?;
    let exec = exec(a.sequential);
    let format = a.common.format.unwrap_or(Format::Csv);
    let text = match a.table {
        Table::Arcs => {
            let arcs = spectrum_arcs_with(&coin, a.grid, exec).map_err(blame("grid"))?;
            match format {
                Format::Json => json_text(&json!({ "grid": a.grid, "arcs": arcs })),
                Format::Csv => {
                    let mut csv = Csv::new(&["lo", "hi", "width"]);
                    for arc in &arcs {
                        csv.row([num(arc.lo), num(arc.hi), num(arc.width())]);
                    }
                    csv.into_string()
                }
            }
        }
        Table::Dispersion => {
            let rows = dispersion(&coin, a.grid, exec).map_err(blame("grid"))?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|s| json!({ "k": s.k, "lambda1": complex(s.lambda1), "lambda2": complex(s.lambda2) }))
                        .collect();
                    json_text(&json!({ "grid": a.grid, "dispersion": rows }))
                }
                Format::Csv => {
                    let mut csv = Csv::new(&["k", "arg1", "arg2", "re1", "im1", "re2", "im2"]);
                    for s in &rows {
                        let arg = |z: qwalk_core::C64| z.arg().rem_euclid(std::f64::consts::TAU);
                        csv.row([
                            num(s.k),
                            num(arg(s.lambda1)),
                            num(arg(s.lambda2)),
                            num(s.lambda1.re),
                            num(s.lambda1.im),
                            num(s.lambda2.re),
                            num(s.lambda2.im),
                        ]);
                    }
                    csv.into_string()
                }
            }
        }
    };
    write(text, &a.common)
}

fn run_verify(a: VerifyArgs) -> Outcome {
    if a.theta_grid < 8 {
        return Err(ValueError::new("theta-grid", format!("needs at least 8 points, got {}", a.theta_grid)).into());
    }
    if a.phi_samples == 0 {
        return Err(ValueError::new("phi-samples", "needs at least one sample").into());
    }
    let tol = a.tol.map(|t| positive(t, "tol")).transpose()?;
    let cfg = VerifyConfig {
        theta_grid: a.theta_grid,
        phi_samples: a.phi_samples,
        tol,
        seed: a.seed,
        execution: exec(a.sequential),
    };
    let report = run_checks(&cfg);
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(&json!(report)),
        Format::Csv => {
            let mut csv = Csv::new(&["id", "name", "passed", "measured", "tol", "detail"]);
            for c in &report.checks {
                csv.row([
                    c.id.to_string(),
                    c.name.to_string(),
                    c.passed.to_string(),
                    num(c.measured),
                    num(c.tol),
                    c.detail.clone(),
                ]);
            }
            csv.into_string()
        }
    };
    write(text, &a.common)?;
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id.to_string())
            .collect();
        Err(Failure::Verify(format!("checks failed: {}", failed.join(", "))))
    }
}

fn matrix_json(m: &Mat2) -> Value {
    json!(m
        .m
        .iter()
        .map(|row| row.iter().map(|z| complex(*z)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn run_transfer(a: CoinPointArgs) -> Outcome {
    let coin = a.coin.build()?;
    let pair = build_transfer(&coin, cis(a.theta)).map_err(blame("coin"))?;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "theta": a.theta,
            "t_plus": matrix_json(&pair.t_plus),
            "t_minus": matrix_json(&pair.t_minus),
            "inverse_defect": pair.inverse_defect(),
            "t_plus_unitarity_defect": pair.t_plus.unitarity_defect(),
        })),
        Format::Csv => {
            let mut csv = Csv::new(&["matrix", "row", "col", "re", "im"]);
            for (name, m) in [("t_plus", &pair.t_plus), ("t_minus", &pair.t_minus)] {
                for (r, row) in m.m.iter().enumerate() {
                    for (c, z) in row.iter().enumerate() {
                        csv.row([name.to_string(), r.to_string(), c.to_string(), num(z.re), num(z.im)]);
                    }
                }
            }
            csv.into_string()
        }
    };
    write(text, &a.common)
}

fn run_roots(a: CoinPointArgs) -> Outcome {
    let coin = a.coin.build()?;
    let roots = char_roots(&coin, cis(a.theta)).map_err(blame("coin"))?;
    let kind = root_type(&roots);
    let named = [
        ("lambda_plus", roots.lambda_plus),
        ("lambda_minus", roots.lambda_minus),
        ("gamma_plus", roots.gamma_plus),
        ("gamma_minus", roots.gamma_minus),
    ];
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut map = Map::new();
            map.insert("theta".into(), json!(a.theta));
            map.insert("kind".into(), json!(kind.kind));
            for (name, z) in named {
                map.insert(name.into(), complex(z));
            }
            map.insert("moduli".into(), json!([kind.moduli.0, kind.moduli.1]));
            map.insert("discriminant".into(), complex(roots.discriminant));
            map.insert("polynomial_residual".into(), json!(roots.polynomial_residual(&coin)));
            json_text(&Value::Object(map))
        }
        Format::Csv => {
            let mut csv = Csv::new(&["root", "re", "im", "modulus"]);
            for (name, z) in named {
                csv.row([name.to_string(), num(z.re), num(z.im), num(z.norm())]);
            }
            csv.into_string()
        }
    };
    write(text, &a.common)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evolve(a) => run_evolve(a),
        Command::Classify(a) => run_classify(a),
        Command::Period(a) => run_period(a),
        Command::Spectrum(a) => run_spectrum(a),
        Command::Verify(a) => run_verify(a),
        Command::Transfer(a) => run_transfer(a),
        Command::Roots(a) => run_roots(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("qwalk: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("qwalk: --out: {e}");
            ExitCode::from(3)
        }
    }
}
