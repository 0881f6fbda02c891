//! Scene evaluation, reports and figures for the `minkplane` command.

pub mod commands;
pub mod report;
pub mod scene;
pub mod suite;
pub mod svg;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;

pub use commands::Tolerances;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed scene JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Solver(#[from] minkplane::Error),

    #[error("{failed} of {total} property checks failed")]
    SuiteFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Json { .. } | CliError::Validation(_) => 2,
            CliError::Solver(minkplane::Error::NotConverged { .. }) => 3,
            CliError::Solver(_) => 2,
            CliError::SuiteFailed { .. } => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Antinorm,
    Isoperimetrix,
    RadonCheck,
    RadonConstruct,
    Radonize,
    Triangle,
    Bisectors,
    Fermat,
    IsoReport,
    Zenodorus,
    Girth,
    Angles,
    Projections,
    Convexity,
    Proptest,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "minkplane", version, about = "Minkowski planes: antinorms, Radon curves, isoperimetry")]
pub struct Args {
    pub command: Command,

    /// Scene file (JSON).
    #[arg(long)]
    pub scene: Option<PathBuf>,

    /// Master seed for randomized scans; overrides the scene's `options.seed`.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Report file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Figure file.
    #[arg(long)]
    pub svg: Option<PathBuf>,

    /// Tolerance override `name=value`, repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,

    /// Property suite for `proptest`: `all` or one invariant name.
    #[arg(long, default_value = "all")]
    pub suite: String,

    /// Trials per invariant for `proptest`.
    #[arg(long)]
    pub trials: Option<usize>,
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("tolerance override {s:?} is not NAME=VALUE")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("tolerance {k:?}: {v:?} is not a number")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// What a run produced: the report text and the figure, if any.
pub struct Output {
    pub report: String,
    pub svg: Option<String>,
    pub failure: Option<CliError>,
}

pub fn execute(args: &Args) -> Result<Output, CliError> {
    let overrides = parse_overrides(&args.tol)?;
    if args.command == Command::Proptest {
        let scene = args.scene.as_deref().map(scene::Scene::load).transpose()?;
        let seed = args.seed.or(scene.as_ref().and_then(|s| s.options.seed)).unwrap_or(0);
        let trials = args.trials.or(scene.as_ref().and_then(|s| s.options.trials));
        let (report, failed) = suite::run(&args.suite, seed, trials)?;
        let failure = (failed > 0).then(|| CliError::SuiteFailed { failed, total: report.checks.len() });
        return Ok(Output { report: report.to_json(), svg: None, failure });
    }
    let path = args
        .scene
        .as_deref()
        .ok_or_else(|| CliError::Validation(format!("{} needs --scene", args.command.name())))?;
    let scene = scene::Scene::load(path)?;
    let mut tol = Tolerances::default();
    tol.apply(&scene.options.tol)?;
    tol.apply(&overrides)?;
    let seed = args.seed.or(scene.options.seed).unwrap_or(0);
    let ctx = commands::Context::new(scene, seed, tol)?;
    let (report, figure) = commands::dispatch(args.command, &ctx)?;
    Ok(Output { report: report.to_json(), svg: Some(figure.render()), failure: None })
}

/// Runs the command, writes its files and returns the exit code.
pub fn run(args: &Args) -> i32 {
    let out = match execute(args) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, &out.report).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{}", out.report);
            Ok(())
        }
    };
    let written = written.and_then(|_| match (&args.svg, &out.svg) {
        (Some(path), Some(svg)) => std::fs::write(path, svg).map_err(|e| format!("cannot write {}: {e}", path.display())),
        (Some(_), None) => {
            eprintln!("note: {} draws no figure", args.command.name());
            Ok(())
        }
        _ => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    match out.failure {
        Some(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
