//! Command-line interface: solve, generate, reduce3sat, validate and bench
//! subcommands with machine-readable output.
//!
//! Exit codes: 0 solved/feasible, 1 proven infeasible, 2 heuristic
//! no-solution, 3 time limit, 4 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ifdp_core::bench::{
    emit_plot_data, generate_instance, parse_dimacs, reduce_3sat, resolve_alpha, run_benchmark,
    AlphaSpec, BenchConfig, Scenario, Topology,
};
use ifdp_core::cga::{solve_cga, CgaOptions};
use ifdp_core::mfa::solve_mfa;
use ifdp_core::model::{evaluate_schedule, Instance, Schedule, SolveReport, SolveStatus};
use ifdp_core::tsa::{rtsa_lower_bound, solve_tsa, SliceMultiplier};
use ifdp_core::{io, oracle, Error};

#[derive(Parser)]
#[command(
    name = "ifdp",
    about = "Solvers for routing and scheduling deadline-constrained flows with discrete capacity allocation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and optionally write the schedule.
    Solve(SolveArgs),
    /// Generate an instance from a scenario description.
    Generate(GenerateArgs),
    /// Build a hard instance from a DIMACS 3-CNF formula.
    Reduce3sat(ReduceArgs),
    /// Check a schedule file against an instance file.
    Validate(ValidateArgs),
    /// Run a benchmark configuration and emit CSV metrics.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Algorithm {
    Tsa,
    Cga,
    Mfa,
    Oracle,
    Edf,
    Continuous,
}

#[derive(Clone, Copy, ValueEnum)]
enum WarmStart {
    Mfa,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Rtsa,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Slice-count multiplier for the time-sliced solver.
    #[arg(long, default_value = "1x")]
    slices: String,
    /// Initialize column generation from a heuristic schedule.
    #[arg(long, value_enum)]
    warm_start: Option<WarmStart>,
    /// Lower-bound source for gap-bounded termination.
    #[arg(long, value_enum, requires = "gap")]
    bound: Option<BoundKind>,
    /// Optimality-gap tolerance in percent (with --bound).
    #[arg(long, requires = "bound")]
    gap: Option<f64>,
    /// Accept the first improving column per pricing sweep.
    #[arg(long)]
    fast_pricing: bool,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Instance file.
    #[arg(short = 'i', long = "instance")]
    instance: PathBuf,
    /// Write the schedule here on success.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// triangle | star | small | softlayer | geant | custom:<path>
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = 5)]
    flows: usize,
    /// Fixed deadline factor.
    #[arg(long, conflicts_with_all = ["tight", "moderate"])]
    alpha: Option<f64>,
    /// Calibrate the deadline factor to the feasibility boundary.
    #[arg(long, conflicts_with = "moderate")]
    tight: bool,
    /// Tight calibration raised by 30%.
    #[arg(long)]
    moderate: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Link capacity per direction.
    #[arg(long, default_value_t = 10.0)]
    capacity: f64,
    /// Capacity unit(s); repeat for multiple.
    #[arg(long = "unit", default_values_t = [2.0])]
    units: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    size_min: f64,
    #[arg(long, default_value_t = 100.0)]
    size_max: f64,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    /// DIMACS CNF file with exactly three literals per clause.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(short = 'i', long = "instance")]
    instance: PathBuf,
    #[arg(short = 's', long = "schedule")]
    schedule: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON benchmark configuration.
    #[arg(long)]
    config: PathBuf,
    /// CSV output file (stdout when absent).
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Directory for per-figure plot-data CSV files.
    #[arg(long = "emit-plot-data")]
    emit_plot_data: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Reduce3sat(args) => cmd_reduce(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                // a flow that can never be delivered proves infeasibility
                Error::Unreachable(_) => 1,
                _ => 4,
            };
            ExitCode::from(code)
        }
    }
}

fn print_report(report: &SolveReport) {
    println!("solver: {}", report.solver);
    println!("status: {}", report.status);
    if let Some(obj) = report.objective {
        println!("objective: {obj}");
    }
    if let Some(lb) = report.lower_bound {
        println!("lower_bound: {lb}");
    }
    println!("iterations: {}", report.iterations);
    println!("wall_time_s: {:.6}", report.wall_time);
    if let Some(note) = &report.note {
        println!("note: {note}");
    }
}

fn status_code(status: SolveStatus) -> ExitCode {
    match status {
        SolveStatus::Optimal | SolveStatus::Feasible => ExitCode::from(0),
        SolveStatus::Infeasible => ExitCode::from(1),
        SolveStatus::NoSolution => ExitCode::from(2),
        SolveStatus::TimeLimit => ExitCode::from(3),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, Error> {
    let inst = io::read_instance(&args.instance)?;
    let (report, schedule) = match args.algorithm {
        Algorithm::Tsa => {
            let multiplier: SliceMultiplier = args.slices.parse()?;
            solve_tsa(&inst, multiplier, args.time_limit)?
        }
        Algorithm::Cga => {
            let warm = match args.warm_start {
                Some(WarmStart::Mfa) => solve_mfa(&inst, args.time_limit)?.1,
                None => None,
            };
            let gap_bound = match (args.bound, args.gap) {
                (Some(BoundKind::Rtsa), Some(p)) => {
                    let bound = rtsa_lower_bound(&inst, rtsa_tol(&inst)?)?;
                    Some((bound, p))
                }
                _ => None,
            };
            let outcome = solve_cga(
                &inst,
                &CgaOptions {
                    warm_start: warm,
                    gap_bound,
                    fast_pricing: args.fast_pricing,
                    time_limit: args.time_limit,
                    ..CgaOptions::default()
                },
            )?;
            (outcome.report, outcome.schedule)
        }
        Algorithm::Mfa => solve_mfa(&inst, args.time_limit)?,
        Algorithm::Oracle => oracle::solve_full_mp(&inst)?,
        Algorithm::Edf => oracle::solve_edf_bottleneck(&inst)?,
        Algorithm::Continuous => oracle::continuous_mode(&inst, args.time_limit)?,
    };
    print_report(&report);
    if let (Some(path), Some(schedule)) = (&args.output, &schedule) {
        io::write_schedule(path, &inst, schedule)?;
    }
    Ok(status_code(report.status))
}

fn rtsa_tol(inst: &Instance) -> Result<f64, Error> {
    let mut total = 0.0;
    for f in 0..inst.flow_count() {
        total += ifdp_core::model::earliest_completion(inst, f)?;
    }
    Ok((1e-3 * total).max(1e-4))
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode, Error> {
    let topology = match args.scenario.as_str() {
        "triangle" => Topology::Triangle,
        "star" => Topology::Star,
        "small" => Topology::Small,
        "softlayer" => Topology::Softlayer,
        "geant" => Topology::Geant,
        other => match other.strip_prefix("custom:") {
            Some(path) => Topology::Custom(path.to_string()),
            None => {
                return Err(Error::MalformedScenario(format!(
                    "unknown scenario `{other}`"
                )))
            }
        },
    };
    let alpha = if args.tight {
        Some(AlphaSpec::Tight)
    } else if args.moderate {
        Some(AlphaSpec::Moderate)
    } else {
        args.alpha.map(AlphaSpec::Fixed)
    };
    let scenario = Scenario {
        topology,
        flow_count: args.flows,
        alpha,
        capacity: args.capacity,
        units: args.units,
        size_range: (args.size_min, args.size_max),
        seed: args.seed,
    };
    let resolved = resolve_alpha(&scenario)?;
    if let Some(AlphaSpec::Fixed(a)) = resolved.alpha {
        if scenario.alpha != resolved.alpha {
            eprintln!("calibrated deadline factor: {a:.4}");
        }
    }
    let inst = generate_instance(&resolved)?;
    io::write_instance(&args.output, &inst)?;
    println!(
        "wrote {} ({} nodes, {} arcs, {} flows)",
        args.output.display(),
        inst.network().node_count,
        inst.network().arcs.len(),
        inst.flow_count()
    );
    Ok(ExitCode::from(0))
}

fn cmd_reduce(args: ReduceArgs) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::Io(format!("{}: {e}", args.input.display())))?;
    let formula = parse_dimacs(&text)?;
    let inst = reduce_3sat(&formula)?;
    io::write_instance(&args.output, &inst)?;
    println!(
        "wrote {} ({} variables, {} clauses -> {} nodes, {} arcs, {} flows)",
        args.output.display(),
        formula.var_count,
        formula.clauses.len(),
        inst.network().node_count,
        inst.network().arcs.len(),
        inst.flow_count()
    );
    Ok(ExitCode::from(0))
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode, Error> {
    let inst = io::read_instance(&args.instance)?;
    let schedule: Schedule = io::read_schedule(&args.schedule, &inst)?;
    let eval = evaluate_schedule(&inst, &schedule);
    println!("completion: {}", eval.completion);
    for f in 0..inst.flow_count() {
        println!(
            "flow {}: delivered {:.6} of {:.6}, finish {:.6}",
            inst.to_external(f),
            eval.per_flow_delivered[f],
            inst.flows()[f].size,
            eval.per_flow_finish[f]
        );
    }
    if eval.feasible {
        println!("feasible: true");
        Ok(ExitCode::from(0))
    } else {
        println!("feasible: false");
        for v in &eval.violations {
            println!("violation: {v}");
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Io(format!("{}: {e}", args.config.display())))?;
    let cfg: BenchConfig =
        serde_json::from_str(&text).map_err(|e| Error::ParseError(e.to_string()))?;
    for sc in &cfg.scenarios {
        sc.validate()?;
    }
    let rows = match &args.output {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            run_benchmark(&cfg, &mut file)?
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            run_benchmark(&cfg, &mut lock)?
        }
    };
    if let Some(dir) = &args.emit_plot_data {
        emit_plot_data(&rows, dir)?;
    }
    eprintln!("{} cells", rows.len());
    Ok(ExitCode::from(0))
}
