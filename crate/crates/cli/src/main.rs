//! `torus-bubbles`: solve for minimizing double bubbles, draw phase
//! portraits and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 invalid
//! input, 3 solver convergence failure.

use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use torus_bubbles::oracle::{formula_suite, verify_paper_inequalities};
use torus_bubbles::portrait::{compute_portrait_window, CYLINDER_WINDOW};
use torus_bubbles::render::{render_instance_svg, render_portrait_svg, RenderStyle};
use torus_bubbles::{CandidateKind, Error, FlatTorus, Solver, SolverConfig, Space};

#[derive(Parser)]
#[command(name = "torus-bubbles", version, about = "Perimeter-minimizing double bubbles on flat tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the minimizing double bubble(s) for two areas.
    Solve(SolveArgs),
    /// Compute a phase portrait over the simplex of areas.
    Phase(PhaseArgs),
    /// Run the quadrature and inequality suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpaceArgs {
    /// Torus as `L,degrees` (L >= 1, 60 <= degrees <= 90) or `hex`.
    #[arg(long, conflicts_with = "space")]
    torus: Option<String>,
    /// Non-compact space instead of a torus.
    #[arg(long, value_enum)]
    space: Option<SpaceKind>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceKind {
    Cylinder,
    Strip,
}

#[derive(Args)]
struct SolverArgs {
    /// Perimeter difference below which candidates tie.
    #[arg(long, default_value_t = 1e-9)]
    tie_tolerance: f64,
    /// Cells per side of the chain parameter sweep.
    #[arg(long, default_value_t = 512)]
    chain_sweep: usize,
    /// Worker threads (defaults to available cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// The two prescribed areas, `A1,A2`.
    #[arg(long)]
    areas: String,
    /// Write the full report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Draw the first winner as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct PhaseArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Cells per side of the area grid.
    #[arg(long, default_value_t = 128)]
    resolution: usize,
    /// Largest area on each axis of a cylinder portrait.
    #[arg(long, default_value_t = CYLINDER_WINDOW)]
    window: f64,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run one suite only.
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Random instances per family.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Chords per curved edge in the quadrature.
    #[arg(long, default_value_t = 20_000)]
    subdivisions: usize,
    /// Grid points per inequality scan.
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    Formulas,
    Inequalities,
}

/// `println!` that ignores a closed stdout.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>().map(Error::root) {
            Some(Error::InvalidInput(_) | Error::Domain { .. }) => 2,
            Some(Error::Convergence(_)) => 3,
            _ => 1,
        };
        Self { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Error::InvalidInput(msg.into()).into()
}

fn parse_space(args: &SpaceArgs) -> Result<Space, Failure> {
    match (&args.torus, args.space) {
        (Some(t), None) => parse_torus(t).map(Space::Torus),
        (None, Some(SpaceKind::Cylinder)) => Ok(Space::Cylinder),
        (None, Some(SpaceKind::Strip)) => Ok(Space::Strip),
        (None, None) => Err(invalid("give --torus L,degrees or --space cylinder|strip")),
        (Some(_), Some(_)) => Err(invalid("--torus and --space are exclusive")),
    }
}

fn parse_torus(spec: &str) -> Result<FlatTorus, Failure> {
    if spec.trim().eq_ignore_ascii_case("hex") {
        return Ok(FlatTorus::hexagonal());
    }
    let [l, deg] = parse_pair(spec, "--torus")?;
    if !(l >= 1.0) {
        return Err(invalid(format!("torus side {l} must be at least 1")));
    }
    if !(60.0..=90.0).contains(&deg) {
        return Err(invalid(format!("torus angle {deg} must lie in [60, 90] degrees")));
    }
    Ok(FlatTorus::from_degrees(l, deg)?)
}

fn parse_pair(s: &str, flag: &str) -> Result<[f64; 2], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(invalid(format!("{flag} expects two comma-separated numbers, got `{s}`")));
    };
    let num = |x: &str| x.parse::<f64>().map_err(|_| invalid(format!("{flag}: `{x}` is not a number")));
    Ok([num(a)?, num(b)?])
}

fn solver(args: &SolverArgs) -> Result<Solver, Failure> {
    if !(args.tie_tolerance >= 0.0) {
        return Err(invalid("--tie-tolerance must be nonnegative"));
    }
    if args.chain_sweep < 8 {
        return Err(invalid("--chain-sweep must be at least 8"));
    }
    Ok(Solver::new(SolverConfig {
        tie_tolerance: args.tie_tolerance,
        chain_sweep: args.chain_sweep,
        ..SolverConfig::default()
    }))
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(invalid("--threads must be positive"));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Failure::from(anyhow::anyhow!(e)))
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let space = parse_space(&args.space)?;
    let [a1, a2] = parse_pair(&args.areas, "--areas")?;
    let solver = solver(&args.solver)?;
    let report = pool(args.solver.threads)?.install(|| solver.best_double_bubble(&space, a1, a2))?;

    say!("space      {space}");
    say!("areas      A1 = {a1}, A2 = {a2}, A0 = {}", report.requested[2]);
    let kinds: Vec<&str> = report.winner_kinds().iter().map(|k| k.name()).collect();
    say!("winner     {}", kinds.join("+"));
    say!("perimeter  {:.9}", report.min_perimeter);
    say!();
    say!("{:>4}  {:<22} {:<10} {:>14}  flags", "rank", "kind", "roles", "perimeter");
    for (n, c) in report.feasible.iter().enumerate() {
        let roles: Vec<String> = c.roles.iter().map(|r| r.to_string()).collect();
        let mut flags = Vec::new();
        if c.perimeter - report.min_perimeter <= solver.config.tie_tolerance {
            flags.push("winner");
        }
        if c.axis_flag {
            flags.push("long-axis");
        }
        say!(
            "{:>4}  {:<22} {:<10} {:>14.9}  {}",
            n + 1,
            c.kind.name(),
            roles.join(","),
            c.perimeter,
            flags.join(",")
        );
    }
    for d in &report.diagnostics {
        eprintln!("note: {} {:?}: {}", d.kind.name(), d.roles, d.reason);
    }

    if let Some(path) = &args.json {
        let doc = json!({
            "schema": "torus-bubbles/solve",
            "version": 1,
            "space": space,
            "space_name": space.to_string(),
            "requested": report.requested,
            "winner_kinds": report.winner_kinds(),
            "min_perimeter": report.min_perimeter,
            "tie_tolerance": solver.config.tie_tolerance,
            "winners": report.winners,
            "feasible": report.feasible,
            "diagnostics": report.diagnostics,
        });
        let text = serde_json::to_string_pretty(&doc).context("serializing report")?;
        write_file(path, &(text + "\n"))?;
    }
    if let Some(path) = &args.svg {
        let first = report.winners.first().ok_or_else(|| invalid("no feasible candidate to draw"))?;
        write_file(path, &render_instance_svg(first, &space, &RenderStyle::default())?)?;
    }
    Ok(())
}

fn cmd_phase(args: PhaseArgs) -> Result<(), Failure> {
    let space = parse_space(&args.space)?;
    if matches!(space, Space::Strip) {
        return Err(invalid("phase portraits are computed on tori or the cylinder"));
    }
    let solver = solver(&args.solver)?;
    let grid = pool(args.solver.threads)?
        .install(|| compute_portrait_window(&solver, &space, args.resolution, args.window))?;

    say!("space       {space}");
    say!("resolution  {} ({} cells)", grid.resolution, grid.cells.len());
    for (label, count) in grid.phase_counts() {
        say!("{count:>8}  {label}");
    }
    let counts = grid.kind_counts();
    for kind in CandidateKind::ALL {
        say!("kind {:<22} {:>8}", kind.name(), counts[kind.index()]);
    }
    let violations = grid.contiguity_violations();
    say!("isolated cells  {}", violations.len());

    if let Some(path) = &args.out_csv {
        let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        grid.write_csv(BufWriter::new(f)).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.out_svg {
        write_file(path, &render_portrait_svg(&grid, &RenderStyle::default()))?;
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, Failure> {
    let mut ok = true;
    if args.suite != Some(Suite::Inequalities) {
        if args.samples == 0 {
            return Err(invalid("--samples must be positive"));
        }
        say!("formulas: {} samples per family, n = {}", args.samples, args.subdivisions);
        for c in formula_suite(args.samples, args.subdivisions, args.seed)? {
            let pass = c.passes(1e-6, 1e-9);
            ok &= pass;
            say!(
                "  {:<22} area {:.3e}  perimeter {:.3e}  regularity {:.3e}  {}",
                c.kind.name(),
                c.max_area_error,
                c.max_perimeter_error,
                c.max_regularity,
                if pass { "ok" } else { "FAIL" }
            );
        }
    }
    if args.suite != Some(Suite::Formulas) {
        let r = verify_paper_inequalities(args.grid)?;
        let pass = r.passes();
        ok &= pass;
        say!("inequalities: {} grid points", r.samples);
        say!("  g(theta) min        {:.6e} at {:.6}", r.g_margin, r.g_argmin);
        say!("  octagon Q - 2 min   {:.6e} at {:.6}", r.octagon_margin, r.octagon_argmin);
        say!("  octagon equality at {:?}", r.octagon_equality_points);
        say!("  P - pi D min        {:.6e} at {:.6}", r.diameter_margin, r.diameter_argmin);
        say!("  {}", if pass { "ok" } else { "FAIL" });
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a).map(|()| true),
        Command::Phase(a) => cmd_phase(a).map(|()| true),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
