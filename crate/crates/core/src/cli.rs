//! Command-line front end. Every command prints CSV (header line first) or a
//! JSON document; see the README for the column layouts.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::{simulate_forward, ForwardParams, Precision, ReversedChain};
use crate::error::Error;
use crate::experiments::{
    acda_probability, averaged_paths, convergence_experiment, default_precision, korsunov_constant,
    slope_convergence_with, ACDA_EXACT_MAX_N, DEFAULT_STARTS,
};
use crate::fields::{field_line_ode, FieldLine, LineMode, OdeGrid};
use crate::rng::path_seed;
use crate::triangle::{triangle_row, triangle_value, TriangleKind};
use crate::VERSION;

/// Version of the JSON document layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "pascal-fields",
    version,
    about = "Pascal-type triangles, reversed chains and field lines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print row n of a triangle, or the single entry T(n, k).
    Triangle(TriangleArgs),
    /// Sample trajectories of the reversed chain from (m, ell), or of the forward process.
    Simulate(SimulateArgs),
    /// Sample the field line through (1, 1/(1 + lambda)).
    Fieldline(FieldlineArgs),
    /// Compare p1(m, ell) with the limit slope for each m.
    Slope(SlopeArgs),
    /// Sup distance of reversed-chain paths to the field line, with exceedance of m^-eta.
    Converge(ConvergeArgs),
    /// Mean normalized trajectories from several starting ratios.
    Average(AverageArgs),
    /// Admissible completion-curve probability and the limiting constant c_k.
    Acda(AcdaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Pascal,
    Stirling2,
    Stirling1,
    Euler,
}

impl From<KindArg> for TriangleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Pascal => TriangleKind::Pascal,
            KindArg::Stirling2 => TriangleKind::Stirling2,
            KindArg::Stirling1 => TriangleKind::Stirling1,
            KindArg::Euler => TriangleKind::Euler,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TriangleArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    m: usize,
    /// Start level of the reversed chain.
    #[arg(long, required_unless_present = "forward", conflicts_with = "forward")]
    ell: Option<usize>,
    /// Run the forward process instead.
    #[arg(long)]
    forward: bool,
    /// Forward parameter: p (pascal), N (stirling2) or theta (stirling1).
    #[arg(long, requires = "forward")]
    param: Option<f64>,
    #[arg(long, default_value_t = 1)]
    paths: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct FieldlineArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    lambda: f64,
    /// Number of evenly spaced points on [0, 1].
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Integrate the ODE even when a closed form exists.
    #[arg(long)]
    ode: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SlopeArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    lambda: f64,
    /// Comma-separated horizons.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    m: Vec<usize>,
    /// Exact big-integer rows (default for pascal only).
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ConvergeArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 0.25)]
    eta: f64,
    #[arg(long, default_value_t = 200)]
    paths: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct AverageArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    m: usize,
    /// Comma-separated start ratios ell/m.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    t: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    paths: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct AcdaArgs {
    /// Alphabet size k >= 2.
    #[arg(long)]
    letters: usize,
    #[arg(long)]
    n: usize,
    /// Require the exact rational value.
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    output: OutputArgs,
}

/// A rendered artifact: CSV rows or a JSON document.
enum Artifact {
    Csv {
        header: &'static str,
        rows: Vec<String>,
    },
    Json(Value),
}

impl Artifact {
    fn render(&self) -> String {
        match self {
            Artifact::Csv { header, rows } => {
                let mut s = String::with_capacity(rows.len() * 16);
                s.push_str(header);
                s.push('\n');
                for r in rows {
                    s.push_str(r);
                    s.push('\n');
                }
                s
            }
            Artifact::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn envelope<T: Serialize>(
    command: &str,
    kind: Option<TriangleKind>,
    params: Value,
    seed: Option<u64>,
    result: T,
) -> Artifact {
    Artifact::Json(json!({
        "schema_version": SCHEMA_VERSION,
        "version": VERSION,
        "command": command,
        "kind": kind,
        "params": params,
        "seed": seed,
        "result": result,
    }))
}

/// Runs the CLI on `argv` (program name first) and returns the exit code:
/// 0 on success, 2 on usage errors, 1 on domain or I/O errors.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", usage_error(&e, &argv));
                    2
                }
            };
        }
    };
    let (format, out) = match &cli.command {
        Command::Triangle(a) => (a.output.format, a.output.out.clone()),
        Command::Simulate(a) => (a.output.format, a.output.out.clone()),
        Command::Fieldline(a) => (a.output.format, a.output.out.clone()),
        Command::Slope(a) => (a.output.format, a.output.out.clone()),
        Command::Converge(a) => (a.output.format, a.output.out.clone()),
        Command::Average(a) => (a.output.format, a.output.out.clone()),
        Command::Acda(a) => (a.output.format, a.output.out.clone()),
    };
    let artifact = match execute(cli.command, format) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let text = artifact.render();
    let written = match out {
        Some(path) => File::create(&path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => stdout.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// First line of the clap diagnostic followed by the usage of the
/// subcommand it concerns.
fn usage_error(e: &clap::Error, argv: &[std::ffi::OsString]) -> String {
    let rendered = e.render().to_string();
    let line = rendered
        .lines()
        .next()
        .unwrap_or("error: invalid arguments");
    let mut cmd = Cli::command();
    cmd.build();
    let usage = argv
        .get(1)
        .and_then(|name| name.to_str())
        .and_then(|name| cmd.find_subcommand_mut(name))
        .map(|sub| sub.render_usage())
        .unwrap_or_else(|| Cli::command().render_usage());
    format!("{line}\n\n{usage}\n\nFor more information, try '--help'.\n")
}

/// Entry point for the binary.
pub fn main_with_io() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: Command, format: Format) -> crate::Result<Artifact> {
    match command {
        Command::Triangle(a) => triangle(a, format),
        Command::Simulate(a) => simulate(a, format),
        Command::Fieldline(a) => fieldline(a, format),
        Command::Slope(a) => slope(a, format),
        Command::Converge(a) => converge(a, format),
        Command::Average(a) => average(a, format),
        Command::Acda(a) => acda(a, format),
    }
}

fn triangle(a: TriangleArgs, format: Format) -> crate::Result<Artifact> {
    let kind = a.kind.into();
    let entries: Vec<(usize, String)> = match a.k {
        Some(k) => vec![(k, triangle_value(kind, a.n, k)?.to_string())],
        None => triangle_row(kind, a.n)
            .into_iter()
            .enumerate()
            .map(|(k, v)| (k, v.to_string()))
            .collect(),
    };
    Ok(match format {
        Format::Csv => Artifact::Csv {
            header: "n,k,value",
            rows: entries
                .iter()
                .map(|(k, v)| format!("{},{k},{v}", a.n))
                .collect(),
        },
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|(k, v)| json!({"n": a.n, "k": k, "value": v}))
                .collect();
            envelope(
                "triangle",
                Some(kind),
                json!({"n": a.n, "k": a.k}),
                None,
                rows,
            )
        }
    })
}

fn forward_params(kind: TriangleKind, param: Option<f64>) -> crate::Result<ForwardParams> {
    let missing = || {
        Error::InvalidParameter(format!(
            "--param is required for the forward {kind} process"
        ))
    };
    match kind {
        TriangleKind::Pascal => ForwardParams::pascal(param.ok_or_else(missing)?),
        TriangleKind::Stirling2 => {
            let n = param.ok_or_else(missing)?;
            if !(n >= 1.0 && n.fract() == 0.0 && n <= u64::MAX as f64) {
                return Err(Error::InvalidParameter(format!(
                    "coupon count must be a positive integer, got {n}"
                )));
            }
            ForwardParams::coupons(n as u64)
        }
        TriangleKind::Stirling1 => ForwardParams::restaurant(param.ok_or_else(missing)?),
        TriangleKind::Euler => match param {
            None => Ok(ForwardParams::descents()),
            Some(_) => Err(Error::InvalidParameter(
                "the descent process takes no --param".into(),
            )),
        },
    }
}

fn simulate(a: SimulateArgs, format: Format) -> crate::Result<Artifact> {
    let kind: TriangleKind = a.kind.into();
    if a.paths == 0 {
        return Err(Error::InvalidParameter("--paths must be at least 1".into()));
    }
    if a.m == 0 {
        return Err(Error::InvalidParameter("--m must be at least 1".into()));
    }
    let paths = if a.forward {
        let params = forward_params(kind, a.param)?;
        (0..a.paths as u64)
            .map(|i| simulate_forward(&params, a.m, path_seed(a.seed, i)))
            .collect::<crate::Result<Vec<_>>>()?
    } else {
        let ell = a.ell.expect("clap enforces --ell without --forward");
        let chain = ReversedChain::new(kind, a.m, ell)?;
        (0..a.paths as u64)
            .map(|i| chain.sample_seeded(path_seed(a.seed, i)))
            .collect()
    };
    let direction = if a.forward { "forward" } else { "reversed" };
    Ok(match format {
        Format::Csv => {
            let mut rows = Vec::with_capacity(a.paths * (a.m + 1));
            for (i, p) in paths.iter().enumerate() {
                rows.extend(
                    p.levels()
                        .into_iter()
                        .enumerate()
                        .map(|(n, x)| format!("{i},{n},{x}")),
                );
            }
            Artifact::Csv {
                header: "path,n,X_n",
                rows,
            }
        }
        Format::Json => {
            let result: Vec<Value> = paths
                .iter()
                .enumerate()
                .map(
                    |(i, p)| json!({"path": i, "levels": p.levels(), "trajectory": p.trajectory()}),
                )
                .collect();
            let params = json!({
                "m": a.m,
                "ell": a.ell,
                "direction": direction,
                "param": a.param,
                "paths": a.paths,
            });
            envelope("simulate", Some(kind), params, Some(a.seed), result)
        }
    })
}

fn fieldline(a: FieldlineArgs, format: Format) -> crate::Result<Artifact> {
    let kind: TriangleKind = a.kind.into();
    if a.grid < 2 {
        return Err(Error::InvalidParameter(
            "--grid needs at least 2 points".into(),
        ));
    }
    let line = if a.ode || kind == TriangleKind::Euler {
        field_line_ode(kind, a.lambda, OdeGrid::default())?
    } else {
        FieldLine::closed(kind, a.lambda)?
    };
    let points = line.sample(a.grid);
    Ok(match format {
        Format::Csv => Artifact::Csv {
            header: "x,y",
            rows: points.iter().map(|(x, y)| format!("{x},{y}")).collect(),
        },
        Format::Json => {
            let z = line.zeta();
            let result = json!({
                "mode": line.mode(),
                "zeta": z.zeta,
                "residual": z.residual,
                "phi": z.phi(),
                "points": points.iter().map(|&(x, y)| json!({"x": x, "y": y})).collect::<Vec<_>>(),
            });
            let params = json!({
                "lambda": a.lambda,
                "grid": a.grid,
                "ode": line.mode() == LineMode::OdeGrid,
            });
            envelope("fieldline", Some(kind), params, None, result)
        }
    })
}

fn slope(a: SlopeArgs, format: Format) -> crate::Result<Artifact> {
    let kind: TriangleKind = a.kind.into();
    let precision = if a.exact {
        Precision::Exact
    } else {
        default_precision(kind)
    };
    let report = slope_convergence_with(kind, a.lambda, &a.m, precision)?;
    Ok(match format {
        Format::Csv => Artifact::Csv {
            header: "m,ell,lambda,p1,phi,error",
            rows: report
                .rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{}",
                        r.m, r.ell, r.lambda, r.p1, r.phi, r.error
                    )
                })
                .collect(),
        },
        Format::Json => {
            let params = json!({"lambda": a.lambda, "m": a.m, "precision": precision});
            envelope("slope", Some(kind), params, None, report)
        }
    })
}

fn converge(a: ConvergeArgs, format: Format) -> crate::Result<Artifact> {
    let kind: TriangleKind = a.kind.into();
    let report = convergence_experiment(kind, a.m, a.lambda, a.eta, a.paths, a.seed)?;
    Ok(match format {
        Format::Csv => Artifact::Csv {
            header: "path,sup_distance,exceeds",
            rows: report
                .distances
                .iter()
                .enumerate()
                .map(|(i, d)| format!("{i},{d},{}", u8::from(*d >= report.threshold)))
                .collect(),
        },
        Format::Json => {
            let params = json!({"m": a.m, "lambda": a.lambda, "eta": a.eta, "paths": a.paths});
            envelope("converge", Some(kind), params, Some(a.seed), report)
        }
    })
}

fn average(a: AverageArgs, format: Format) -> crate::Result<Artifact> {
    let kind: TriangleKind = a.kind.into();
    let starts = if a.t.is_empty() {
        DEFAULT_STARTS.to_vec()
    } else {
        a.t.clone()
    };
    let report = averaged_paths(kind, a.m, &starts, a.paths, a.seed)?;
    Ok(match format {
        Format::Csv => {
            let m = report.m as f64;
            let mut rows = Vec::new();
            for c in &report.curves {
                rows.extend(
                    c.mean
                        .iter()
                        .enumerate()
                        .map(|(j, y)| format!("{},{},{j},{},{y}", c.t, c.ell, j as f64 / m)),
                );
            }
            Artifact::Csv {
                header: "t,ell,j,x,mean",
                rows,
            }
        }
        Format::Json => {
            let params = json!({"m": a.m, "t": starts, "paths": a.paths});
            envelope("average", Some(kind), params, Some(a.seed), report)
        }
    })
}

fn acda(a: AcdaArgs, format: Format) -> crate::Result<Artifact> {
    if a.exact && a.n > ACDA_EXACT_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "exact values are computed for n <= {ACDA_EXACT_MAX_N}, got n = {}",
            a.n
        )));
    }
    let p = acda_probability(a.letters, a.n)?;
    let c = korsunov_constant(a.letters)?;
    let exact = p
        .exact
        .as_ref()
        .map(|q| format!("{}/{}", q.numer(), q.denom()));
    let gap = (p.value - c.c_k).abs();
    Ok(match format {
        Format::Csv => Artifact::Csv {
            header: "k,n,probability,exact,c_k,gap",
            rows: vec![format!(
                "{},{},{},{},{},{gap}",
                a.letters,
                a.n,
                p.value,
                exact.as_deref().unwrap_or(""),
                c.c_k
            )],
        },
        Format::Json => {
            let result = json!({
                "probability": p.value,
                "exact": exact,
                "c_k": c.c_k,
                "zeta": c.zeta.zeta,
                "zeta_residual": c.zeta.residual,
                "crossing_probability": c.crossing_probability,
                "gap": gap,
            });
            let params = json!({"letters": a.letters, "n": a.n, "exact": a.exact});
            envelope("acda", Some(TriangleKind::Stirling2), params, None, result)
        }
    })
}
