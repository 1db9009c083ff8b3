//! Command-line front end: profiles, existence sweeps, spectra, instability
//! runs and stability certificates, written as JSON and CSV.
//!
//! Exit codes: 0 success, 2 inadmissible parameters, 3 numerical failure,
//! 1 for I/O problems.

mod commands;
mod manifest;
mod output;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sg_tadpole::profiles::Branch;
use sg_tadpole::{Error, Params};

use manifest::{Command, GridOverrides, KChoice, RunManifest, TestOperator};

/// One entry of a `--sweep` file: graph parameters, optionally with their own branch.
#[derive(Clone, Copy, Debug, serde::Deserialize)]
struct SweepPoint {
    #[serde(flatten)]
    params: Params,
    branch: Option<Branch>,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_inadmissible() => 2,
            CliError::Core(_) => 3,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e @ Error::InadmissibleStrength { .. }) => {
                write!(f, "{e} (strength gate Z < 2/(pi c2) of the existence case table)")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "sg-tadpole", version, about = "Sine-Gordon kink states on a tadpole graph")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Loop and tail profiles as CSV, with k, a, energy and case label.
    Profile(RunArgs),
    /// Sweep of a(k) and H(k) over the branch window and the solved roots.
    Exists(RunArgs),
    /// Direct and splitting spectra of the linearization.
    Spectrum(RunArgs),
    /// Instability experiment seeded with the ground mode.
    Evolve(RunArgs),
    /// Full pipeline ending in a stability verdict.
    Certify(RunArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// JSON file with `loop_half_length`, `c1`, `c2`, `z`.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Rerun a saved manifest; other flags are ignored.
    #[arg(long, conflicts_with_all = ["params", "sweep"])]
    manifest: Option<PathBuf>,
    /// Modulus: `auto` solves H(k) = Z.
    #[arg(long, default_value = "auto")]
    k: KChoice,
    #[arg(long, default_value = "above-pi", value_parser = parse_branch)]
    branch: Branch,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Grid spacing; default 1e-3·min(L, c2).
    #[arg(long = "grid-h")]
    grid_h: Option<f64>,
    /// Tail truncation; default 40·c2.
    #[arg(long = "grid-R")]
    grid_r: Option<f64>,
    /// JSON array of parameter sets, certified concurrently (certify only).
    #[arg(long)]
    sweep: Option<PathBuf>,
    /// Rows of the existence sweep.
    #[arg(long, default_value_t = 1001)]
    samples: usize,
    /// Seed amplitude of instability runs.
    #[arg(long, default_value_t = 1e-4)]
    amplitude: f64,
    /// Let certify run the evolution check.
    #[arg(long)]
    evolve: bool,
    #[arg(long, hide = true, value_enum)]
    test_operator: Option<TestOperator>,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_params(path: &Path) -> Result<Params, CliError> {
    let p: Params = read_json(path)?;
    p.validate()?;
    Ok(p)
}

impl RunArgs {
    fn manifest(&self, command: Command, params: Params, output_dir: PathBuf) -> RunManifest {
        RunManifest {
            command,
            params,
            branch: self.branch,
            k: self.k,
            grid: GridOverrides {
                h: self.grid_h,
                radius: self.grid_r,
            },
            output_dir,
            samples: self.samples,
            amplitude: self.amplitude,
            evolve: self.evolve,
            test_operator: self.test_operator,
        }
    }
}

/// Runs one invocation and returns the directory written.
fn run(command: Command, args: &RunArgs) -> Result<PathBuf, CliError> {
    if let Some(path) = &args.manifest {
        let mut m: RunManifest = read_json(path)?;
        m.command = command;
        commands::run(&m)?;
        return Ok(m.output_dir);
    }
    if let Some(path) = &args.sweep {
        if command != Command::Certify {
            return Err(CliError::Usage("--sweep is only available for certify".into()));
        }
        certify_sweep(args, &read_json::<Vec<SweepPoint>>(path)?)?;
        return Ok(args.out.clone());
    }
    let path = args
        .params
        .as_ref()
        .ok_or_else(|| CliError::Usage("--params <file> is required".into()))?;
    commands::run(&args.manifest(command, read_params(path)?, args.out.clone()))?;
    Ok(args.out.clone())
}

/// Certifies each parameter set in its own subdirectory, concurrently.
fn certify_sweep(args: &RunArgs, points: &[SweepPoint]) -> Result<(), CliError> {
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let results: Vec<Result<(), CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut m = args.manifest(Command::Certify, p.params, args.out.join(format!("point-{i:03}")));
                m.branch = p.branch.unwrap_or(args.branch);
                scope.spawn(move || {
                    m.params.validate()?;
                    commands::run(&m)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Core(Error::Numerical("worker panicked".into())))))
            .collect()
    });
    let rows: Vec<_> = points
        .iter()
        .zip(&results)
        .enumerate()
        .map(|(i, (p, r))| {
            json!({
                "index": i,
                "directory": format!("point-{i:03}"),
                "params": p.params,
                "branch": p.branch.unwrap_or(args.branch),
                "exit_code": r.as_ref().map_or_else(|e| e.exit_code(), |_| 0),
                "error": r.as_ref().err().map(|e| e.to_string()),
            })
        })
        .collect();
    output::write_json(
        &args.out.join("sweep.json"),
        &json!({"points": rows, "metadata": output::metadata(None, None, None)}),
    )?;
    match results.into_iter().filter_map(Result::err).max_by_key(|e| e.exit_code()) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        Sub::Profile(a) => (Command::Profile, a),
        Sub::Exists(a) => (Command::Exists, a),
        Sub::Spectrum(a) => (Command::Spectrum, a),
        Sub::Evolve(a) => (Command::Evolve, a),
        Sub::Certify(a) => (Command::Certify, a),
    };
    match run(command, args) {
        Ok(dir) => {
            println!("wrote {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
