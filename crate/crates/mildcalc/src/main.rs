use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use mildcalc::core::gsp::spectral_autocorr_deviation;
use mildcalc::core::mild::poisson_check;
use mildcalc::core::{
    autocorrelation, dual_window, frame_bounds, gaussian, make_grid, simulate, spectral_process,
    stft, wss_deviation, CovarianceSpec, FiniteSignal, GaborSystem, GridModel,
};
use mildcalc::ensemble::{write_autocorrelation, write_ensemble};
use mildcalc::figure1::{figure1, Figure1Config};
use mildcalc::formats::{read_signal, write_json, write_signal, write_stft, Format, GridMeta};
use mildcalc::verify::{self, random_covariance, smooth_symbol, SUITES};
use mildcalc::{Error, Result};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mildcalc", version, about = "Finite time-frequency analysis on the grid Z_N, N = L^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run invariant checks and print a JSON report.
    Verify {
        #[arg(long, default_value = "all", value_parser = suite_parser())]
        suite: String,
        #[arg(long = "L", default_value_t = 16)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the four periodization/sampling spectrograms.
    Figure1 {
        #[arg(long = "L", default_value_t = 32)]
        l: usize,
        /// Output directory.
        #[arg(long, default_value = "figure1")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Pgm)]
        format: Format,
        /// `gaussian` or a signal CSV.
        #[arg(long, default_value = "gaussian")]
        window: String,
        /// Defaults to N/4.
        #[arg(long)]
        periodize_stride: Option<usize>,
        #[arg(long, default_value_t = 4)]
        sample_stride: usize,
        /// Physical time shift of the Gaussian.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        shift_t: f64,
        /// Physical frequency shift of the Gaussian.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        shift_s: f64,
    },
    /// STFT of a signal CSV.
    Stft {
        input: PathBuf,
        /// `gaussian` or a signal CSV.
        #[arg(long, default_value = "gaussian")]
        window: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Pgm)]
        format: Format,
    },
    /// Canonical dual window of a Gabor system.
    GaborDual {
        #[arg(long = "L", default_value_t = 16)]
        l: usize,
        /// `gaussian` or a signal CSV.
        #[arg(long, default_value = "gaussian")]
        window: String,
        /// Time stride; defaults to L/2.
        #[arg(long)]
        a: Option<usize>,
        /// Frequency stride; defaults to L.
        #[arg(long)]
        b: Option<usize>,
        /// Signal CSV for the dual window.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare integer-point sums of a signal and its Fourier transform.
    Poisson {
        /// Signal CSV; the Gaussian when omitted.
        input: Option<PathBuf>,
        #[arg(long = "L", default_value_t = 16)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a Gaussian stochastic process and check its spectral process.
    GspDemo {
        #[arg(long = "L", default_value_t = 8)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1024)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Kind::White)]
        kind: Kind,
        /// Directory for ensembles and autocorrelation CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    White,
    Stationary,
    General,
}

fn suite_parser() -> PossibleValuesParser {
    PossibleValuesParser::new(std::iter::once("all").chain(SUITES))
}

const POISSON_TOLERANCE: f64 = 1e-12;
const SPECTRAL_TOLERANCE: f64 = 1e-10;

fn load_window(spec: &str, grid: GridModel) -> Result<FiniteSignal> {
    if spec == "gaussian" {
        return Ok(gaussian(&grid));
    }
    let w = read_signal(Path::new(spec))?;
    if w.grid() != &grid {
        return Err(Error::Config(format!(
            "window {spec} has N = {}, expected {}",
            w.grid().n(),
            grid.n()
        )));
    }
    Ok(w)
}

fn emit(value: &impl Serialize, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => write_json(p, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GaborDualReport {
    grid: GridMeta,
    window: String,
    a: usize,
    b: usize,
    redundancy: f64,
    frame_bounds: mildcalc::core::FrameBounds,
    dual: mildcalc::core::DualReport,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct PoissonReport {
    grid: GridMeta,
    input: String,
    check: mildcalc::core::mild::PoissonCheck,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct GspReport {
    grid: GridMeta,
    kind: &'static str,
    #[serde(rename = "M")]
    m: usize,
    seed: u64,
    spectral_identity_deviation: f64,
    tolerance: f64,
    wss: mildcalc::core::WssDeviation,
    estimate_error: f64,
    passed: bool,
    files: Vec<PathBuf>,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { suite, l, seed, out } => {
            let report = verify::run(&suite, l, seed)?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {}/{}: measured {:e}, tolerance {:e}", c.suite, c.name, c.measured, c.tolerance);
            }
            emit(&report, out.as_deref())?;
            Ok(report.all_passed())
        }
        Command::Figure1 {
            l,
            out,
            format,
            window,
            periodize_stride,
            sample_stride,
            shift_t,
            shift_s,
        } => {
            let grid = make_grid(l)?;
            let cfg = Figure1Config {
                l,
                periodize_stride,
                sample_stride,
                shift: (shift_t, shift_s),
                window: Some(load_window(&window, grid)?),
            };
            let fig = figure1(&cfg)?;
            let report = fig.write(&out, format, &window)?;
            emit(&report, None)?;
            Ok(report.passed)
        }
        Command::Stft {
            input,
            window,
            out,
            format,
        } => {
            let f = read_signal(&input)?;
            let g = load_window(&window, *f.grid())?;
            let side = write_stft(&out, &stft(&f, &g)?, format, &window)?;
            emit(&side, None)?;
            Ok(true)
        }
        Command::GaborDual { l, window, a, b, out } => {
            let grid = make_grid(l)?;
            let g = load_window(&window, grid)?;
            let mut sys = GaborSystem::new(g, a.unwrap_or(l / 2), b.unwrap_or(l))?;
            let bounds = frame_bounds(&sys);
            let dual = dual_window(&mut sys)?;
            if let Some(p) = &out {
                write_signal(p, sys.dual().expect("dual computed"))?;
            }
            emit(
                &GaborDualReport {
                    grid: GridMeta::from(&grid),
                    window,
                    a: sys.a(),
                    b: sys.b(),
                    redundancy: sys.redundancy(),
                    frame_bounds: bounds,
                    dual,
                    out,
                },
                None,
            )?;
            Ok(true)
        }
        Command::Poisson { input, l, out } => {
            let (f, name) = match &input {
                Some(p) => (read_signal(p)?, p.display().to_string()),
                None => (gaussian(&make_grid(l)?), "gaussian".to_string()),
            };
            let check = poisson_check(&f);
            let tolerance = POISSON_TOLERANCE * check.time_sum.norm().max(1.0);
            let passed = check.deviation < tolerance;
            emit(
                &PoissonReport {
                    grid: GridMeta::from(f.grid()),
                    input: name,
                    check,
                    tolerance,
                    passed,
                },
                out.as_deref(),
            )?;
            Ok(passed)
        }
        Command::GspDemo { l, seed, m, kind, out } => {
            let grid = make_grid(l)?;
            if m == 0 {
                return Err(Error::Config("--m must be positive".into()));
            }
            let spec = match kind {
                Kind::White => CovarianceSpec::white(grid, 1.0)?,
                Kind::Stationary => CovarianceSpec::stationary(smooth_symbol(grid))?,
                Kind::General => CovarianceSpec::general(grid, random_covariance(grid, seed))?,
            };
            let e = simulate(&spec, m, seed)?;
            let spectral = spectral_process(&e);
            let deviation = spectral_autocorr_deviation(&e, &spectral)?;
            let a = autocorrelation(&e);
            let estimate_error = a.frobenius_diff(&spec.exact_covariance())?;
            let mut files = Vec::new();
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir).map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
                let paths = [
                    dir.join("ensemble.bin"),
                    dir.join("spectral.bin"),
                    dir.join("autocorrelation.csv"),
                ];
                write_ensemble(&paths[0], &e)?;
                write_ensemble(&paths[1], &spectral)?;
                write_autocorrelation(&paths[2], &a)?;
                files.extend(paths);
            }
            let passed = deviation < SPECTRAL_TOLERANCE;
            emit(
                &GspReport {
                    grid: GridMeta::from(&grid),
                    kind: spec.kind().name(),
                    m,
                    seed,
                    spectral_identity_deviation: deviation,
                    tolerance: SPECTRAL_TOLERANCE,
                    wss: wss_deviation(&a),
                    estimate_error,
                    passed,
                    files,
                },
                None,
            )?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            eprintln!("\n{}", Cli::command().render_usage());
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                eprintln!("\n{}", Cli::command().render_usage());
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
