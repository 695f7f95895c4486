//! `chwave`: wave-length scans, period scans, exact critical-period
//! certificates and wave profiles from the command line.

mod export;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use chwave_core::certificates::certify::{certify_report, parse_theta};
use chwave_core::model::{bifurcation_values, classify_regime, derive_coefficients, theta, ChParams};
use chwave_core::period::{
    boundary_periods, critical_period_with, energy_grid, period_constants, sample_grid, shape_from_values,
    wavelength_curve_with,
};
use chwave_core::planar::normalize;
use chwave_core::profile::{profile_with_tol, residual_check};
use chwave_core::quadrature::QuadOptions;
use chwave_core::{Error, Execution};

use export::{Output, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "chwave", version, about = "Smooth periodic traveling waves of the Camassa-Holm equation")]
struct Cli {
    /// Write the result here instead of stdout. A JSON sidecar goes next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Relative tolerance for quadrature and ODE integration.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients, θ, bifurcation window and wave-length regime.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
    },
    /// Period function T(h) and T′(h) of the normalized system.
    PeriodScan {
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Spacing ratio of the geometric energy grid.
        #[arg(long, default_value_t = 1.05)]
        ratio: f64,
    },
    /// Wave length against wave height.
    LambdaScan {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 1.05)]
        ratio: f64,
    },
    /// Exact certificate for the number of critical periods at rational θ.
    Certify {
        /// θ as "p/q", an integer or a finite decimal.
        #[arg(long)]
        theta: String,
    },
    /// One wave length of the profile φ(s) at wave height a.
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
    },
}

enum Failure {
    Input(String),
    Inconclusive,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateParameters
            | Error::NoCenter
            | Error::OutOfAnnulus { .. }
            | Error::OutOfRange { .. }
            | Error::NoSmoothPeriodicTws
            | Error::Domain(_)
            | Error::TooFewSamples(_) => Failure::Input(e.to_string()),
            Error::Inconclusive(_) => Failure::Inconclusive,
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// Honour CHWAVE_THREADS. Returns the execution policy to use.
fn configure_threads() -> Result<Execution, Failure> {
    let Ok(v) = std::env::var("CHWAVE_THREADS") else {
        return Ok(Execution::default());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| input(format!("CHWAVE_THREADS must be a positive integer, got {v:?}")))?;
    if n == 1 {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Other(e.to_string()))?;
    Ok(Execution::default())
}

fn check_grid(n: usize, ratio: f64) -> Run {
    if n < 2 {
        return Err(input(format!("n must be at least 2, got {n}")));
    }
    if !(ratio > 1.0 && ratio.is_finite()) {
        return Err(input(format!("ratio must exceed 1, got {ratio}")));
    }
    Ok(())
}

fn params(c: f64, kappa: f64, r: f64) -> Result<ChParams, Failure> {
    let p = ChParams::new(c, kappa, r);
    if !p.is_finite() {
        return Err(input("parameters must be finite"));
    }
    Ok(p)
}

#[derive(Serialize)]
struct ClassifyReport {
    c: f64,
    kappa: f64,
    r: f64,
    alpha: f64,
    beta: f64,
    theta: Option<f64>,
    window: chwave_core::model::BifurcationWindow,
    regime: &'static str,
}

fn run(cli: Cli) -> Run {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(input(format!("--tol must be positive, got {}", cli.tol)));
    }
    let exec = configure_threads()?;
    let out = Output::new(cli.out.clone(), cli.format);
    let quad = QuadOptions::with_rel_tol(cli.tol);
    match cli.cmd {
        Command::Classify { c, kappa, r } => {
            let p = params(c, kappa, r)?;
            let window = bifurcation_values(c, kappa)?;
            let co = derive_coefficients(&p);
            let rep = ClassifyReport {
                c,
                kappa,
                r,
                alpha: co.alpha,
                beta: co.beta,
                theta: theta(&co).ok(),
                window,
                regime: classify_regime(&p).as_str(),
            };
            out.record(&rep)?;
        }
        Command::PeriodScan { theta, n, ratio } => {
            if !(theta > 0.0 && theta.is_finite()) {
                return Err(input(format!("theta must be positive, got {theta}")));
            }
            check_grid(n, ratio)?;
            let grid = energy_grid(theta, n, ratio)?;
            let rows = sample_grid(&grid, 1.0, &quad, exec);
            let b = boundary_periods(theta);
            let meta = json!({
                "theta": theta,
                "n": n,
                "ratio": ratio,
                "tol": cli.tol,
                "T0": b.t0,
                "T1": b.t1,
                "period_constants": period_constants(theta),
                "critical_period": critical_period_with(theta, &quad, exec)?,
            });
            let mut t = Table::new(&["h", "a", "T", "Tprime"]);
            for s in &rows {
                t.push(&[s.h, s.a, s.t, s.t_prime]);
            }
            out.table(&t, &meta)?;
        }
        Command::LambdaScan { c, kappa, r, n, ratio } => {
            let p = params(c, kappa, r)?;
            check_grid(n, ratio)?;
            let rows = wavelength_curve_with(&p, n, ratio, &quad, exec)?;
            let sys = normalize(&derive_coefficients(&p))?;
            let lambdas: Vec<f64> = rows.iter().map(|s| s.t).collect();
            let meta = json!({
                "c": c,
                "kappa": kappa,
                "r": r,
                "theta": sys.theta,
                "n": n,
                "ratio": ratio,
                "tol": cli.tol,
                "regime": classify_regime(&p).as_str(),
                "observed_regime": shape_from_values(&lambdas).regime().as_str(),
            });
            let mut t = Table::new(&["a", "lambda"]);
            for s in &rows {
                t.push(&[s.a, s.t]);
            }
            out.table(&t, &meta)?;
        }
        Command::Certify { theta } => {
            let q = parse_theta(&theta)?;
            let rep = certify_report(&q)?;
            out.record(&rep)?;
            if !rep.conclusive {
                return Err(Failure::Inconclusive);
            }
        }
        Command::Profile { c, kappa, r, a, n } => {
            let p = params(c, kappa, r)?;
            if n < 5 {
                return Err(input(format!("n must be at least 5, got {n}")));
            }
            let wp = profile_with_tol(&p, a, n, cli.tol)?;
            let residual = residual_check(&wp, &p)?;
            let meta = json!({
                "c": c,
                "kappa": kappa,
                "r": r,
                "a": a,
                "n": n,
                "wave_length": wp.wave_length,
                "wave_height": wp.wave_height,
                "residual": residual,
                "crest": wp.crest,
                "trough": wp.trough,
            });
            let mut t = Table::new(&["s", "phi"]);
            for &(s, phi) in &wp.samples {
                t.push(&[s, phi]);
            }
            out.table(&t, &meta)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive) => {
            eprintln!("certificate inconclusive");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
