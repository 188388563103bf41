//! `trienc`: minimum-perimeter enclosing triangles from the command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad input, 3 solver failure,
//! 4 oracle comparison outside the allowed gap.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use trienc::io::{parse_polygon, render_svg, serialize_polygon, validate_normalize, Format, PolygonDocument, Scene, Validated};
use trienc::oracle::{oracle_min_perimeter, random_convex_polygon, OracleConfig, DEFAULT_COARSE_STEPS};
use trienc::{solve_with, SolveMode, SolveReport, SolverConfig, Tolerances};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "trienc", version, about = "Minimum-perimeter triangle enclosing a convex polygon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a polygon and print the result document.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the brute-force reference search, optionally against the solver.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = DEFAULT_COARSE_STEPS)]
        coarse_steps: usize,
        /// Do not pin the first side to an edge (slow; use a small grid).
        #[arg(long)]
        free_base: bool,
        /// Also run the solver and gate on the relative gap.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = 1e-4)]
        gap_tol: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate and normalize a polygon.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Write the normalized polygon here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random strictly convex polygon.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a polygon and its optimal triangle as SVG.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Draw only the polygon.
        #[arg(long)]
        no_triangle: bool,
        /// Also draw the witness circles of the vertex-touching sides.
        #[arg(long)]
        circles: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Polygon file, or `-` for standard input.
    input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct TolArgs {
    #[arg(long, env = "TRIENC_TOL_RESIDUAL")]
    tol_residual: Option<f64>,
    #[arg(long)]
    tol_len: Option<f64>,
    #[arg(long)]
    tol_cross: Option<f64>,
    #[arg(long)]
    tol_improve: Option<f64>,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Linear)]
    mode: ModeArg,
    #[arg(long, default_value_t = trienc::enclosing::DEFAULT_MAX_FLIPS)]
    max_flips: usize,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Linear,
    QuadraticSafe,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(what: &Path, e: io::Error) -> Self {
        Self {
            code: 1,
            message: format!("{}: {e}", what.display()),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances<f64>, Failure> {
        let mut t = Tolerances::<f64>::default();
        t.residual = self.tol_residual.unwrap_or(t.residual);
        t.len = self.tol_len.unwrap_or(t.len);
        t.cross = self.tol_cross.unwrap_or(t.cross);
        t.improve = self.tol_improve.unwrap_or(t.improve);
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Failure::input("tolerances must be finite and positive"))
        }
    }
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig<f64>, Failure> {
        Ok(SolverConfig {
            tol: self.tol.tolerances()?,
            max_flips: self.max_flips,
            mode: match self.mode {
                ModeArg::Linear => SolveMode::Linear,
                ModeArg::QuadraticSafe => SolveMode::QuadraticSafe,
            },
        })
    }
}

fn read_input(args: &InputArgs) -> Result<(PolygonDocument, Format), Failure> {
    let mut bytes = Vec::new();
    let path = &args.input;
    if path.as_os_str() == "-" {
        io::stdin().read_to_end(&mut bytes).map_err(|e| Failure::io(path, e))?;
    } else {
        bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    }
    let format = args.format.map(Format::from).unwrap_or_else(|| Format::from_path(path));
    let doc = parse_polygon(&bytes, format, &path.display().to_string())
        .map_err(|e| Failure::input(format!("{}: {e} (reason: {})", path.display(), e.code())))?;
    Ok((doc, format))
}

fn load(args: &InputArgs, tol: &Tolerances<f64>) -> Result<Validated, Failure> {
    let (doc, _) = read_input(args)?;
    validate_normalize(&doc, tol)
        .map_err(|e| Failure::input(format!("{}: {e} (reason: {})", args.input.display(), e.code())))
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("result documents serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct SolveDocument<'a> {
    schema: u32,
    source: &'a str,
    mode: &'static str,
    vertices: usize,
    merged: usize,
    reversed: bool,
    triangle: [[f64; 2]; 3],
    perimeter: f64,
    flush_edge: usize,
    flip_counts: &'a [usize],
    advance_steps: usize,
    max_flips_exceeded: &'a [usize],
}

impl<'a> SolveDocument<'a> {
    fn new(source: &'a str, v: &Validated, r: &'a SolveReport<f64>) -> Self {
        Self {
            schema: SCHEMA,
            source,
            mode: r.mode.as_str(),
            vertices: v.polygon.len(),
            merged: v.merged,
            reversed: v.reversed,
            triangle: r.best.vertices().map(|p| [p.x, p.y]),
            perimeter: r.perimeter,
            flush_edge: r.flush_edge,
            flip_counts: &r.flip_counts,
            advance_steps: r.advance_steps,
            max_flips_exceeded: &r.max_flips_exceeded,
        }
    }
}

fn run_solver(v: &Validated, config: &SolverConfig<f64>) -> Result<SolveReport<f64>, Failure> {
    let report = solve_with(&v.polygon, config).map_err(|e| Failure {
        code: 3,
        message: format!("solver failed: {e}"),
    })?;
    if !report.max_flips_exceeded.is_empty() {
        eprintln!(
            "warning: flip limit reached on {} edge(s)",
            report.max_flips_exceeded.len()
        );
    }
    Ok(report)
}

fn cmd_solve(input: &InputArgs, solver: &SolverArgs, output: Option<&Path>) -> CmdResult {
    let config = solver.config()?;
    let v = load(input, &config.tol)?;
    let report = run_solver(&v, &config)?;
    let source = input.input.display().to_string();
    write_output(output, &to_json(&SolveDocument::new(&source, &v, &report)))
}

#[derive(Serialize)]
struct OracleDocument {
    schema: u32,
    source: String,
    oracle_perimeter: f64,
    oracle_triangle: [[f64; 2]; 3],
    angles: [f64; 3],
    coarse_steps: usize,
    free_base: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver_perimeter: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

fn cmd_oracle(
    input: &InputArgs,
    solver: &SolverArgs,
    oracle: OracleConfig,
    compare: bool,
    gap_tol: f64,
    output: Option<&Path>,
) -> CmdResult {
    let config = solver.config()?;
    let v = load(input, &config.tol)?;
    let o = oracle_min_perimeter(&v.polygon, &oracle).map_err(|e| Failure {
        code: 3,
        message: format!("oracle failed: {e}"),
    })?;
    let mut doc = OracleDocument {
        schema: SCHEMA,
        source: input.input.display().to_string(),
        oracle_perimeter: o.perimeter,
        oracle_triangle: o.triangle.vertices().map(|p| [p.x, p.y]),
        angles: o.angles,
        coarse_steps: oracle.coarse_steps,
        free_base: oracle.free_base,
        solver_perimeter: None,
        relative_gap: None,
        gap_tol: None,
        pass: None,
    };
    if compare {
        let report = run_solver(&v, &config)?;
        let gap = (report.perimeter - o.perimeter) / o.perimeter;
        doc.solver_perimeter = Some(report.perimeter);
        doc.relative_gap = Some(gap);
        doc.gap_tol = Some(gap_tol);
        doc.pass = Some(gap.abs() <= gap_tol);
    }
    write_output(output, &to_json(&doc))?;
    match doc.pass {
        Some(false) => Err(Failure {
            code: 4,
            message: format!("relative gap {:e} exceeds {gap_tol:e}", doc.relative_gap.unwrap_or(f64::NAN)),
        }),
        _ => Ok(()),
    }
}

fn cmd_check(input: &InputArgs, tol: &TolArgs, output: Option<&Path>) -> CmdResult {
    let tol = tol.tolerances()?;
    let v = load(input, &tol)?;
    let note = format!(
        "ok: {} vertices\nmerged: {}\nreversed: {}\n",
        v.polygon.len(),
        v.merged,
        v.reversed
    );
    match output {
        Some(p) => {
            let doc = PolygonDocument::from_polygon(&v.polygon, input.input.display().to_string());
            let format = input.format.map(Format::from).unwrap_or_else(|| Format::from_path(p));
            write_output(Some(p), &serialize_polygon(&doc, format))?;
            write_output(None, &note)
        }
        None => write_output(None, &note),
    }
}

fn cmd_gen(n: usize, seed: u64, format: FormatArg, output: Option<&Path>) -> CmdResult {
    let poly = random_convex_polygon(n, seed).map_err(|e| Failure::input(e.to_string()))?;
    let doc = PolygonDocument::from_polygon(&poly, format!("random n={n} seed={seed}"));
    write_output(output, &serialize_polygon(&doc, format.into()))
}

fn cmd_render(input: &InputArgs, solver: &SolverArgs, no_triangle: bool, circles: bool, output: Option<&Path>) -> CmdResult {
    let config = solver.config()?;
    let v = load(input, &config.tol)?;
    let mut scene = Scene {
        polygon: v.polygon.vertices().to_vec(),
        ..Scene::default()
    };
    if !no_triangle {
        let report = run_solver(&v, &config)?;
        scene.triangle = Some(report.best);
        if circles {
            for side in &report.sides {
                if let trienc::SideKind::VertexTangent { witness, .. } = side.kind {
                    scene.circles.push(witness);
                }
            }
        }
    }
    write_output(output, &render_svg(&scene))
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Solve { input, solver, output } => cmd_solve(input, solver, output.as_deref()),
        Command::Oracle {
            input,
            solver,
            coarse_steps,
            free_base,
            compare,
            gap_tol,
            output,
        } => {
            let oracle = OracleConfig {
                coarse_steps: *coarse_steps,
                free_base: *free_base,
                refine: true,
            };
            cmd_oracle(input, solver, oracle, *compare, *gap_tol, output.as_deref())
        }
        Command::Check { input, tol, output } => cmd_check(input, tol, output.as_deref()),
        Command::Gen { n, seed, format, output } => cmd_gen(*n, *seed, *format, output.as_deref()),
        Command::Render {
            input,
            solver,
            no_triangle,
            circles,
            output,
        } => cmd_render(input, solver, *no_triangle, *circles, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
