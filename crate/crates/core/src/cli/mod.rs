//! Command-line front end.
//!
//! Exit codes: 0 success, 2 argument errors, 3 evaluation errors, 4 failed
//! verification suites, 5 solver errors. The JSON report goes to `--json
//! FILE` or stdout; tabular data goes to `--csv FILE`. Files are written
//! atomically.

mod eval;
pub mod report;
mod solve;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::catalog::{self, Shape};
use crate::curve::ParametricCurve;
use crate::expr::{load_definition, parse_str, ShapeKind};
use crate::surface::ParametricSurface;
use report::{nums, write_atomic, Csv, ErrorInfo, Num, Report, ShapeDescriptor};

pub const EXIT_ARGS: i32 = 2;
pub const EXIT_EVAL: i32 = 3;
pub const EXIT_SUITE: i32 = 4;
pub const EXIT_SOLVER: i32 = 5;

/// Environment variable overriding the default pass/fail tolerance.
pub const TOL_ENV: &str = "DIFFGEO_TOL";

#[derive(Debug, Parser)]
#[command(name = "diffgeo", version, about = "Differential geometry of parametric curves and surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate quantities at points or on a grid.
    Eval(EvalArgs),
    /// Run the identity residual suites at random points.
    Verify(VerifyArgs),
    /// Trace a geodesic from a start point (direction and length, or target).
    Geodesic(GeodesicArgs),
    /// Parallel-transport a tangent vector along a path or loop.
    Transport(TransportArgs),
    /// Gauss-Bonnet terms for a boundary loop or a closed surface.
    GaussBonnet(GaussBonnetArgs),
    /// Rebuild a curve from curvature and torsion functions of arc length.
    Reconstruct(ReconstructArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    /// Catalog shape name.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub shape: Option<String>,
    /// Definition file (.pc curve or .ps surface).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Parameter override `key=value` (repeatable); file shapes take their `const` names.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Write tabular output (trajectories, samples) here.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Pass/fail tolerance for checks (overrides DIFFGEO_TOL and the documented defaults).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Point such as `u=0.3,v=0.4`, `t=0` or `0.3,0.4` (repeatable).
    #[arg(long, value_name = "POINT")]
    pub at: Vec<String>,
    /// Grid `NxM` over a surface domain or `N` over a curve domain.
    #[arg(long, conflicts_with = "at")]
    pub grid: Option<String>,
    /// frenet | forms | curvatures | shape-class | asymptotic | principal, or a single quantity name.
    #[arg(long, value_delimiter = ',')]
    pub quantity: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Restrict to these suites (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Seed of the random sample points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random sample points.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GeodesicArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Start point such as `u=0,v=0`
    #[arg(long, value_name = "POINT")]
    pub from: String,
    /// Target point; solves the boundary value problem.
    #[arg(long, value_name = "POINT", conflicts_with_all = ["dir", "length"])]
    pub to: Option<String>,
    /// Initial direction in parameter components `du,dv`.
    #[arg(long, requires = "length")]
    pub dir: Option<String>,
    /// Arc length to integrate.
    #[arg(long, requires = "dir")]
    pub length: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TransportArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Path `u(t), v(t)` as two expressions in `t`.
    #[arg(long, conflicts_with = "loop_file", requires = "t_range")]
    pub path: Option<String>,
    /// Parameter interval `a,b` of `--path`.
    #[arg(long)]
    pub t_range: Option<String>,
    /// Boundary loop file (.loop).
    #[arg(long = "loop", value_name = "FILE", required_unless_present = "path")]
    pub loop_file: Option<PathBuf>,
    /// Initial vector components `A1,A2`.
    #[arg(long, default_value = "1,0")]
    pub vector: String,
    /// Enclosed region rectangle `u0,u1,v0,v1` (repeatable) for the holonomy check.
    #[arg(long)]
    pub region: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GaussBonnetArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Boundary loop file (.loop).
    #[arg(long = "loop", value_name = "FILE", conflicts_with = "global", required_unless_present = "global")]
    pub loop_file: Option<PathBuf>,
    /// Integrate K over the whole closed surface.
    #[arg(long)]
    pub global: bool,
    /// Euler characteristic (defaults to the catalog value).
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReconstructArgs {
    /// Curvature as an expression in `s`.
    #[arg(long)]
    pub kappa: String,
    /// Torsion as an expression in `s`.
    #[arg(long)]
    pub tau: String,
    /// Length to integrate.
    #[arg(long)]
    pub length: String,
    /// Number of output intervals.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub point: Option<Vec<f64>>,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
            point: None,
        }
    }

    pub fn args(message: impl Into<String>) -> Self {
        CliError::new(EXIT_ARGS, message)
    }
}

/// Result of a command: the report, optional table, and exit code.
pub struct Outcome {
    pub report: Report,
    pub csv: Option<Csv>,
    pub code: i32,
}

/// A shape resolved from the catalog or a definition file.
pub struct Loaded {
    pub shape: Shape,
    pub descriptor: ShapeDescriptor,
    /// Parameter names used by `--at` (`t`, or `u`, `v`, or the file's names).
    pub names: Vec<String>,
}

fn split_pairs(params: &[String]) -> Result<Vec<(String, String)>, CliError> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::args(format!("--param expects key=value, got {p:?}")))
        })
        .collect()
}

pub fn eval_number(text: &str) -> Result<f64, CliError> {
    let x = parse_str(text.trim())
        .and_then(|e| e.eval_constant())
        .map_err(|e| CliError::args(format!("{text:?}: {e}")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::args(format!("{text:?} is not finite")))
    }
}

pub fn eval_list(text: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(CliError::args(format!("expected {n} comma-separated values, got {text:?}")));
    }
    parts.iter().map(|p| eval_number(p)).collect()
}

/// Parses `u=0.3,v=0.4` (any order) or positional `0.3,0.4`.
pub fn parse_point(text: &str, names: &[String]) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != names.len() {
        return Err(CliError::args(format!(
            "point {text:?} needs {} coordinate(s) ({})",
            names.len(),
            names.join(", ")
        )));
    }
    if parts.iter().all(|p| !p.contains('=')) {
        return parts.iter().map(|p| eval_number(p)).collect();
    }
    let mut out = vec![None; names.len()];
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::args(format!("mixed named and positional coordinates in {text:?}")))?;
        let i = names
            .iter()
            .position(|n| n == k.trim())
            .ok_or_else(|| CliError::args(format!("unknown coordinate {:?}; expected {}", k.trim(), names.join(", "))))?;
        if out[i].replace(eval_number(v)?).is_some() {
            return Err(CliError::args(format!("coordinate {} given twice", names[i])));
        }
    }
    Ok(out.into_iter().map(|x| x.expect("all coordinates assigned")).collect())
}

pub fn load_shape(a: &ShapeArgs) -> Result<Loaded, CliError> {
    let pairs = split_pairs(&a.params)?;
    if let Some(name) = &a.shape {
        let shape = catalog::make(name, &pairs).map_err(|e| CliError::args(e.to_string()))?;
        let (params, texts) = catalog::resolved(name, &pairs).map_err(|e| CliError::args(e.to_string()))?;
        let names: Vec<String> = match shape.kind() {
            ShapeKind::Curve => vec!["t".into()],
            ShapeKind::Surface => vec!["u".into(), "v".into()],
        };
        let descriptor = ShapeDescriptor {
            source: "catalog".into(),
            name: name.clone(),
            kind: kind_name(shape.kind()).into(),
            params: params.into_iter().map(|(k, v)| (k, Num(v))).collect(),
            text_params: texts,
            domain: domain_of(&shape),
        };
        return Ok(Loaded {
            shape,
            descriptor,
            names,
        });
    }
    let path = a.file.as_ref().ok_or_else(|| CliError::args("either --shape or --file is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::args(format!("{}: {e}", path.display())))?;
    let mut def = load_definition(&text).map_err(|e| CliError::args(format!("{}: {e}", path.display())))?;
    if !pairs.is_empty() {
        let numeric = pairs
            .iter()
            .map(|(k, v)| Ok((k.clone(), eval_number(v)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        def = def.with_consts(&numeric).map_err(|e| CliError::args(format!("--param: {e}")))?;
    }
    let shape = Shape::from_definition(&def);
    let descriptor = ShapeDescriptor {
        source: "file".into(),
        name: def.name.clone(),
        kind: kind_name(def.kind).into(),
        params: def.consts.iter().map(|(k, v)| (k.clone(), Num(*v))).collect(),
        text_params: Default::default(),
        domain: domain_of(&shape),
    };
    Ok(Loaded {
        shape,
        descriptor,
        names: def.params.iter().map(|p| p.name.clone()).collect(),
    })
}

fn kind_name(k: ShapeKind) -> &'static str {
    match k {
        ShapeKind::Curve => "curve",
        ShapeKind::Surface => "surface",
    }
}

fn domain_of(shape: &Shape) -> Vec<Num> {
    match shape {
        Shape::Curve(c) => {
            let (a, b) = c.domain();
            nums(&[a, b])
        }
        Shape::Surface(s) => {
            let d = s.domain();
            nums(&[d.u0, d.u1, d.v0, d.v1])
        }
    }
}

/// `--tol`, else `DIFFGEO_TOL`, else the documented default.
pub fn tolerance(flag: Option<f64>, default: f64) -> Result<f64, CliError> {
    let t = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::args(format!("{TOL_ENV}={s:?} is not a number")))?,
            Err(_) => default,
        },
    };
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CliError::args(format!("tolerance must be positive, got {t}")))
    }
}

/// Whether a `--tol` flag or the environment override is in effect.
pub fn tolerance_overridden(flag: Option<f64>) -> bool {
    flag.is_some() || std::env::var_os(TOL_ENV).is_some()
}

/// The invocation without output paths, for the report echo.
fn echo(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--json" || a == "--csv" {
            skip = true;
            continue;
        }
        if a.starts_with("--json=") || a.starts_with("--csv=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn output_args(c: &Command) -> &OutputArgs {
    match c {
        Command::Eval(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Geodesic(a) => &a.out,
        Command::Transport(a) => &a.out,
        Command::GaussBonnet(a) => &a.out,
        Command::Reconstruct(a) => &a.out,
    }
}

/// Runs one command and returns its report; nothing is written.
pub fn execute(command: &Command, echo: Vec<String>) -> Result<Outcome, CliError> {
    let mut report = Report::new(echo);
    let (csv, code) = match command {
        Command::Eval(a) => (None, eval::run(a, &mut report)?),
        Command::Verify(a) => (None, verify::run(a, &mut report)?),
        Command::Geodesic(a) => solve::geodesic(a, &mut report)?,
        Command::Transport(a) => solve::transport(a, &mut report)?,
        Command::GaussBonnet(a) => (None, solve::gauss_bonnet(a, &mut report)?),
        Command::Reconstruct(a) => solve::reconstruct(a, &mut report)?,
    };
    Ok(Outcome { report, csv, code })
}

fn emit(out: &OutputArgs, report: &Report, csv: Option<&Csv>) -> Result<(), CliError> {
    let io = |p: &PathBuf, e: std::io::Error| CliError::new(EXIT_ARGS, format!("{}: {e}", p.display()));
    if let (Some(path), Some(table)) = (&out.csv, csv) {
        write_atomic(path, &table.to_text()).map_err(|e| io(path, e))?;
    }
    match &out.json {
        Some(path) => write_atomic(path, &report.to_json()).map_err(|e| io(path, e))?,
        None => print!("{}", report.to_json()),
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command, writes
/// its outputs and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let text: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let out = output_args(&cli.command).clone();
    let code = match execute(&cli.command, echo(&text)) {
        Ok(o) => match emit(&out, &o.report, o.csv.as_ref()) {
            Ok(()) => o.code,
            Err(e) => {
                eprintln!("error: {}", e.message);
                e.code
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            if e.code != EXIT_ARGS {
                let mut r = Report::new(echo(&text));
                r.status = "error".into();
                r.error = Some(ErrorInfo {
                    exit_code: e.code,
                    message: e.message.clone(),
                    point: e.point.as_deref().map(nums),
                });
                if let Err(w) = emit(&OutputArgs { csv: None, ..out }, &r, None) {
                    eprintln!("error: {}", w.message);
                }
            }
            e.code
        }
    };
    eprintln!("diffgeo: finished in {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
    code
}
