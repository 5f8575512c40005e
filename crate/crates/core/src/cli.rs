//! Command-line front end.
//!
//! Exit codes: 0 success, 1 error, 2 clean no-result (no bracket, failed
//! refinement, empty triangle list), 64 usage error, 66 unreadable input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::curve::{Curve, CurveSpec};
use crate::error::{Error, Result};
use crate::report::{
    EquilateralReport, InputSummary, MonotoneReport, RunReport, RunStatus, ShapeSummary, SweepReport, Timing,
    TriangleReport,
};
use crate::shape::TriangleShape;
use crate::solvers::{
    check_strong_monotone, estimate_theta_bounds, ratio_path, solve_equilateral, solve_similar,
    strongly_monotone_window, sweep_similar, SolverOptions, WINDOW_LADDER,
};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_RESULT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;

/// Environment variable capping the worker thread count (0 = automatic).
pub const THREADS_ENV: &str = "INSCRIBED_TRI_THREADS";

#[derive(Parser, Debug)]
#[command(name = "inscribed-tri", version, about = "Find triangles of a given shape inscribed in closed curves in R^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangles similar to --angles with one vertex at the base point.
    SolveSimilar(CommonArgs),
    /// An equilateral triangle with one vertex at the base point.
    SolveEquilateral(CommonArgs),
    /// Estimate the chord-angle bounds at the base point and test the shape against them.
    CheckHypothesis(CommonArgs),
    /// Test strong monotonicity of the base point.
    CheckMonotone(CommonArgs),
    /// Report the sweep invariant on the grid, with brackets and refined crossings.
    Sweep(CommonArgs),
    /// Only write plots.
    Plot(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Curve JSON file, or generator shorthand `gen:name,key=value,...`.
    #[arg(long)]
    curve: String,
    /// Triangle angles in degrees at o, p, q.
    #[arg(long, default_value = "60,60,60")]
    angles: String,
    /// Parameter of the base point o on the input curve.
    #[arg(long, default_value_t = 0.0)]
    base: f64,
    /// Sweep grid size.
    #[arg(long)]
    grid: Option<usize>,
    /// Residual tolerance for refined triangles.
    #[arg(long)]
    tol: Option<f64>,
    /// Window half-width for check-hypothesis (δ) or check-monotone (ε);
    /// default scans 0.2, 0.1, 0.05, 0.02, 0.01.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG of the curve and any triangle found.
    #[arg(long)]
    plot_svg: Option<PathBuf>,
    /// `s,file`: SVG of the ratio path R_s of the base-relocated curve.
    #[arg(long)]
    plot_ratio_path: Option<String>,
    /// Plot curves of dimension > 2 through the cylindrical projection.
    #[arg(long)]
    project: bool,
    /// Omit the timing field so reports are byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

/// Failure of a run: exit code plus message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_NO_INPUT,
            _ => EXIT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Reports go to `stdout` unless `--out` is given.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    configure_threads();
    let started = Instant::now();
    let (name, args) = match &cli.command {
        Command::SolveSimilar(a) => ("solve-similar", a),
        Command::SolveEquilateral(a) => ("solve-equilateral", a),
        Command::CheckHypothesis(a) => ("check-hypothesis", a),
        Command::CheckMonotone(a) => ("check-monotone", a),
        Command::Sweep(a) => ("sweep", a),
        Command::Plot(a) => ("plot", a),
    };
    let mut report = RunReport::new(name);
    let outcome = execute(&cli.command, args, &mut report);
    let code = match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            report.status = RunStatus::Error;
            if f.code != EXIT_ERROR {
                return f.code;
            }
            report.diagnostics.push(f.message);
            f.code
        }
    };
    if !args.no_timing {
        report.timing = Some(Timing { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 });
    }
    let json = report.to_json();
    let written = match &args.out {
        Some(path) => std::fs::write(path, json.as_bytes()),
        None => stdout.write_all(json.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return EXIT_ERROR;
    }
    code
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return;
    };
    if let Ok(n) = value.trim().parse::<usize>() {
        if n > 0 {
            // Fails harmlessly if the pool was already built in this process.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn load_curve(source: &str) -> std::result::Result<Curve, Failure> {
    let spec = if source.starts_with("gen:") {
        CurveSpec::from_shorthand(source)?
    } else {
        let text = std::fs::read_to_string(source).map_err(|e| Failure {
            code: EXIT_NO_INPUT,
            message: format!("cannot read curve file {source}: {e}"),
        })?;
        CurveSpec::from_json(&text)?
    };
    Ok(spec.build()?)
}

fn parse_angles(text: &str) -> std::result::Result<TriangleShape, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    let values: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("--angles expects three numbers a,b,c, got {text}")))?;
    if values.len() != 3 {
        return Err(usage(format!("--angles expects three numbers a,b,c, got {text}")));
    }
    Ok(TriangleShape::from_degrees(values[0], values[1], values[2])?)
}

fn options(args: &CommonArgs) -> std::result::Result<SolverOptions, Failure> {
    let mut opts = SolverOptions::default();
    if let Some(g) = args.grid {
        opts.grid_size = g;
    }
    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(usage(format!("--tol must be positive, got {tol}")));
        }
        opts.residual_tol = tol;
    }
    Ok(opts)
}

fn parse_ratio_target(text: &str) -> std::result::Result<(f64, PathBuf), Failure> {
    let (s, file) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("--plot-ratio-path expects s,file, got {text}")))?;
    let s: f64 = s
        .trim()
        .parse()
        .map_err(|_| usage(format!("--plot-ratio-path: bad parameter {s}")))?;
    Ok((s, PathBuf::from(file)))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

fn execute(command: &Command, args: &CommonArgs, report: &mut RunReport) -> std::result::Result<i32, Failure> {
    if !args.base.is_finite() {
        return Err(usage("--base must be finite"));
    }
    let ratio_target = args.plot_ratio_path.as_deref().map(parse_ratio_target).transpose()?;
    let shape = parse_angles(&args.angles)?;
    let opts = options(args)?;
    let curve = load_curve(&args.curve)?;
    report.input = Some(InputSummary::new(&args.curve, &curve, args.base));

    let mut triangle_vertices: Option<[Vec<f64>; 3]> = None;
    let mut code = EXIT_OK;
    match command {
        Command::SolveSimilar(_) | Command::Sweep(_) => {
            report.shape = Some(ShapeSummary::from(&shape));
            let is_sweep = matches!(command, Command::Sweep(_));
            let outcome = if is_sweep {
                let relocated = curve.rebased(args.base);
                sweep_similar(&relocated, &shape, &opts).map(|s| (None, s.crossings.clone(), s, Vec::new()))
            } else {
                solve_similar(&curve, &shape, args.base, &opts)
                    .map(|sol| (sol.hypothesis, sol.triangles.clone(), sol.sweep, sol.warnings))
            };
            match outcome {
                Ok((hypothesis, triangles, sweep, warnings)) => {
                    report.hypothesis = hypothesis;
                    report.sweep = Some(SweepReport::from(&sweep));
                    report.diagnostics.extend(warnings);
                    if is_sweep {
                        report.diagnostics.extend(sweep.refine_failures.iter().cloned());
                    }
                    report.triangles = triangles
                        .iter()
                        .map(|t| TriangleReport::from_relocated(t, crate::curve::wrap(args.base)))
                        .collect();
                    if let Some(t) = triangles.first() {
                        triangle_vertices = Some([
                            t.point_o.coords().to_vec(),
                            t.point_p.coords().to_vec(),
                            t.point_q.coords().to_vec(),
                        ]);
                    }
                    if triangles.is_empty() && !is_sweep {
                        report.status = RunStatus::NoResult;
                        report.diagnostics.push("no triangle refined from the brackets found".into());
                        code = EXIT_NO_RESULT;
                    }
                }
                Err(e) => code = no_result_or_fail(e, report)?,
            }
        }
        Command::SolveEquilateral(_) => {
            report.shape = Some(ShapeSummary::from(&TriangleShape::equilateral()));
            match solve_equilateral(&curve, args.base, &opts) {
                Ok(sol) => {
                    report.equilateral = Some(EquilateralReport::from(&sol));
                    report.diagnostics.extend(sol.warnings.iter().cloned());
                    report.triangles = vec![TriangleReport::from_relocated(&sol.triangle, sol.base_param)];
                    let t = &sol.triangle;
                    triangle_vertices = Some([
                        t.point_o.coords().to_vec(),
                        t.point_p.coords().to_vec(),
                        t.point_q.coords().to_vec(),
                    ]);
                }
                Err(e) => code = no_result_or_fail(e, report)?,
            }
        }
        Command::CheckHypothesis(_) => {
            report.shape = Some(ShapeSummary::from(&shape));
            let relocated = curve.rebased(args.base);
            let deltas: Vec<f64> = match args.epsilon {
                Some(d) => vec![d],
                None => WINDOW_LADDER.to_vec(),
            };
            let mut last = None;
            for d in deltas {
                let r = estimate_theta_bounds(&relocated, d, opts.theta_samples)?.with_theta_v(shape.theta_v);
                last = Some(r);
                if r.satisfied {
                    break;
                }
            }
            report.hypothesis = last;
        }
        Command::CheckMonotone(_) => {
            let relocated = curve.rebased(args.base);
            let samples = opts.monotone_samples;
            report.monotone = Some(match args.epsilon {
                Some(eps) => MonotoneReport {
                    epsilon: eps,
                    samples,
                    strongly_monotone: check_strong_monotone(&relocated, eps, samples)?,
                },
                None => {
                    let w = strongly_monotone_window(&relocated, samples)?;
                    MonotoneReport {
                        epsilon: w.unwrap_or(WINDOW_LADDER[WINDOW_LADDER.len() - 1]),
                        samples,
                        strongly_monotone: w.is_some(),
                    }
                }
            });
        }
        Command::Plot(_) => {
            if args.plot_svg.is_none() && ratio_target.is_none() {
                return Err(usage("plot needs --plot-svg and/or --plot-ratio-path"));
            }
        }
    }

    if let Some(path) = &args.plot_svg {
        let tri = triangle_vertices.as_ref().map(|v| [v[0].as_slice(), v[1].as_slice(), v[2].as_slice()]);
        write_file(path, &svg::curve_scene(&curve, tri, args.project)?.render())?;
    }
    if let Some((s, path)) = &ratio_target {
        let relocated = curve.rebased(args.base);
        let m = (relocated.vertex_count() + 1).max(32);
        let path_r = ratio_path(&relocated, *s, m)?;
        write_file(path, &svg::ratio_path_scene(&path_r, *s).render())?;
    }
    Ok(code)
}

/// Maps solver errors that mean "nothing found" to exit 2 (recording the
/// diagnostic in the report); everything else is a failure.
fn no_result_or_fail(e: Error, report: &mut RunReport) -> std::result::Result<i32, Failure> {
    match e {
        Error::NoBracket { reason, grid } => {
            report.diagnostics.push(format!("no bracket: {reason}"));
            if !grid.is_empty() {
                report.sweep = Some(SweepReport {
                    grid_size: grid.len(),
                    t_near: grid.first().map_or(0.0, |g| g.t),
                    t_far: grid.last().map_or(0.0, |g| g.t),
                    epsilon: None,
                    bracket: None,
                    brackets: Vec::new(),
                    invariants: grid,
                });
            }
        }
        e @ (Error::RefineFailed { .. } | Error::HypothesisViolation(_)) => report.diagnostics.push(e.to_string()),
        other => return Err(other.into()),
    }
    report.status = RunStatus::NoResult;
    Ok(EXIT_NO_RESULT)
}
