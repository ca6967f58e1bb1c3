//! Command-line front end: spectrogram export, frame diagnostics, theta
//! reports and the full identity-verification matrix.
//!
//! Exit codes: 0 success (including negative verdicts), 1 tolerance failure,
//! 2 I/O or configuration error, 3 invalid mathematical input, 4 convergence
//! or truncation error.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use gabortorus::config::{LatticeSpec, ModelSpec, RunConfig, WindowSpec};
use gabortorus::gabor::{frame_operator, frame_report, figa_residual, janssen_operator, GaborSystem};
use gabortorus::nctorus::integrated_rep;
use gabortorus::phase_space::{ModelOrder, Signal, TFPoint};
use gabortorus::theta::{
    functional_equation_residual, invertibility_sweep, quantum_theta, theta_report,
    twist_invariance_residual, PositivityTag, SiegelMatrix, DENSITY_SWEEP,
};
use gabortorus::transforms::stft;
use gabortorus::verify;
use gabortorus::Error;

#[derive(Parser)]
#[command(name = "gabortorus", version, about = "Time-frequency transforms, Gabor frames and twisted-convolution algebra")]
struct Cli {
    /// JSON run configuration (defaults apply when omitted)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for generated files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Force sequential execution so repeated runs are byte-identical
    #[arg(long, global = true)]
    deterministic: bool,
    /// Seed for synthesized inputs and randomized residual probes
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a short-time Fourier transform and write it as CSV + PGM
    Spectrogram,
    /// Frame bounds, adjoint-lattice operator expansion and interchange residuals (JSON)
    Framecheck,
    /// Theta element report with functional-equation residual and density sweep (JSON)
    Theta,
    /// Run every verification criterion and print a pass/fail matrix
    VerifyAll,
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        CliError { code, msg: msg.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(2, e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => 2,
            Error::InsufficientRadius(_)
            | Error::LatticeApproximation(_)
            | Error::ConvergenceNotCertified(_)
            | Error::Numerical(_) => 4,
            _ => 3,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let config = load_config(cli.config.as_deref())?;
    fs::create_dir_all(&cli.out)?;
    match cli.command {
        Command::Spectrogram => cmd_spectrogram(&config, &cli.out, cli.seed),
        Command::Framecheck => cmd_framecheck(&config, &cli.out, cli.seed),
        Command::Theta => cmd_theta(&config, &cli.out),
        Command::VerifyAll => cmd_verify_all(cli.seed),
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::new(2, format!("config {}: {e}", p.display())))
        }
    }
}

/// Read a signal from CSV ("index,re,im" on finite models, "t,re,im" on the
/// sampled grid). Unlisted samples stay zero.
fn read_signal_csv(path: &Path, model: ModelOrder) -> Result<Signal, CliError> {
    let text = fs::read_to_string(path)?;
    let n = model.grid_len();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let grid = model.grid();
    let bad = |line: usize, why: &str| {
        CliError::new(2, format!("signal {}:{}: {why}", path.display(), line + 1))
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.chars().any(|c| c.is_alphabetic())) {
            continue; // header or blank
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(bad(i, "expected three comma-separated fields"));
        }
        let re: f64 = parts[1].trim().parse().map_err(|_| bad(i, "bad real part"))?;
        let im: f64 = parts[2].trim().parse().map_err(|_| bad(i, "bad imaginary part"))?;
        let idx = if model.is_finite() {
            let idx: usize = parts[0].trim().parse().map_err(|_| bad(i, "bad sample index"))?;
            if idx >= n {
                return Err(bad(i, "sample index out of range"));
            }
            idx
        } else {
            let t: f64 = parts[0].trim().parse().map_err(|_| bad(i, "bad sample time"))?;
            let step = grid[1] - grid[0];
            let j = ((t - grid[0]) / step).round();
            if j < 0.0 || j as usize >= n || (t - (grid[0] + j * step)).abs() > 1e-9 * (1.0 + t.abs()) {
                return Err(bad(i, "sample time is off the grid"));
            }
            j as usize
        };
        values[idx] = Complex64::new(re, im);
    }
    Ok(Signal::new(model, values)?)
}

fn resolve_window(spec: &WindowSpec, model: &ModelOrder) -> Result<Signal, CliError> {
    let g = match spec {
        WindowSpec::File { path } => read_signal_csv(Path::new(path), *model)?,
        other => other.build(model)?,
    };
    if g.norm() == 0.0 {
        return Err(Error::DegenerateWindow.into());
    }
    Ok(g)
}

fn random_signal(model: ModelOrder, rng: &mut ChaCha8Rng) -> Signal {
    let values = (0..model.grid_len())
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    Signal::new(model, values).expect("length matches model")
}

fn cmd_spectrogram(config: &RunConfig, out: &Path, seed: u64) -> Result<u8, CliError> {
    let model = config
        .model
        .clone()
        .unwrap_or_else(ModelSpec::default_continuum)
        .to_model()?;
    let g = resolve_window(&config.window, &model)?;
    let f = match &config.signal {
        Some(path) => read_signal_csv(Path::new(path), model)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_signal(model, &mut rng)
        }
    };
    let matrix = stft(&f, &g)?;
    let csv = fs::File::create(out.join("spectrogram.csv"))?;
    matrix.write_csv(std::io::BufWriter::new(csv))?;
    let pgm = fs::File::create(out.join("spectrogram.pgm"))?;
    matrix.write_pgm(std::io::BufWriter::new(pgm))?;
    println!("wrote {} and spectrogram.pgm", out.join("spectrogram.csv").display());
    Ok(0)
}

fn cmd_framecheck(config: &RunConfig, out: &Path, seed: u64) -> Result<u8, CliError> {
    let lattice = match &config.lattice {
        Some(spec) => spec.to_lattice()?,
        None => LatticeSpec { model: ModelSpec::Finite { len: 12 }, a: 2.0, b: 2.0 }.to_lattice()?,
    };
    if !lattice.model.is_finite() {
        return Err(Error::Unsupported("framecheck requires a finite model".into()).into());
    }
    let atom = resolve_window(&config.window, &lattice.model)?;
    let sys = GaborSystem::new(atom.clone(), lattice.clone())?;
    let mut report = frame_report(&sys, &format!("{:?}", config.window))?;

    // Residual of the adjoint-lattice expansion of the frame operator,
    // measured on a seeded random signal.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_signal(lattice.model, &mut rng);
    let janssen = janssen_operator(&sys, &sys.atom, None)?;
    let direct = frame_operator(&sys, &f)?;
    let expanded = integrated_rep(&janssen.coeffs, &f)?;
    let janssen_residual = direct.sub(&expanded)?.norm() / f.norm();

    // Interchange identity residual on two more random signals.
    let f2 = random_signal(lattice.model, &mut rng);
    let figa = figa_residual(&f, &f2, &atom, &atom, &lattice, None)?;

    let obj = report.as_object_mut().expect("frame report is an object");
    obj.insert("janssen_residual".into(), serde_json::json!(janssen_residual));
    obj.insert("figa_residual".into(), serde_json::json!(figa));
    obj.insert("tolerance".into(), serde_json::json!(config.tolerance));
    obj.insert("seed".into(), serde_json::json!(seed));

    let path = out.join("framecheck.json");
    fs::write(&path, serde_json::to_string_pretty(&report).expect("serializable") + "\n")?;
    println!("wrote {}", path.display());
    if janssen_residual <= config.tolerance && figa <= config.tolerance {
        Ok(0)
    } else {
        eprintln!(
            "residuals exceed tolerance {}: janssen {janssen_residual:.3e}, interchange {figa:.3e}",
            config.tolerance
        );
        Ok(1)
    }
}

fn cmd_theta(config: &RunConfig, out: &Path) -> Result<u8, CliError> {
    let decay = config.decay.unwrap_or(PI);
    let t = SiegelMatrix::scalar(Complex64::new(decay, 0.0), PositivityTag::Decay)?;
    let d = match &config.lattice {
        Some(spec) => spec.to_lattice()?,
        None => LatticeSpec { model: ModelSpec::default_continuum(), a: 0.8, b: 0.8 }.to_lattice()?,
    };
    let theta = quantum_theta(&t, &d, config.radius)?;
    let residual = functional_equation_residual(&t, &d, &TFPoint::cont(0.0, 0.0), config.radius)?;
    let sweep = match &config.sweep {
        Some(densities) => invertibility_sweep(144, densities)?,
        None => invertibility_sweep(144, &DENSITY_SWEEP)?,
    };

    let mut report = theta_report(&theta, residual);
    let obj = report.as_object_mut().expect("theta report is an object");
    obj.insert("twist_residual".into(), serde_json::json!(twist_invariance_residual(&theta)));
    obj.insert("invertibility_sweep".into(), serde_json::json!(sweep));
    obj.insert("tolerance".into(), serde_json::json!(config.tolerance));

    let path = out.join("theta.json");
    fs::write(&path, serde_json::to_string_pretty(&report).expect("serializable") + "\n")?;
    println!("wrote {}", path.display());
    Ok(0)
}

fn cmd_verify_all(seed: u64) -> Result<u8, CliError> {
    let results = verify::run_all(seed)?;
    let mut all = true;
    for r in &results {
        println!("[{}] {} — {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        all &= r.passed;
    }
    println!(
        "{}/{} criteria passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    Ok(if all { 0 } else { 1 })
}
