//! Command-line driver.
//!
//! Exit codes: 0 on success, 2 for invalid input (flags, problem or config
//! files), 3 for runtime failures such as I/O errors.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Parser;

use crate::benchmarks::{build_benchmark, BenchmarkId};
use crate::design_space::AccelKind;
use crate::error::Error;
use crate::io::{
    format_layout, format_result, format_stats, load_config, read_problem_file, serialize_problem_file,
    write_convergence_csv, ConvergenceRow, RunStats,
};
use crate::model::{TrussProblem, VariableSet};
use crate::optimizer::{analyze_design, Alpha, OptimizationConfig, OptimizationResult, RewardMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Worker-count override for `--runs`; 0 or unset runs sequentially.
pub const THREADS_ENV: &str = "MVSMCTS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "mvsmcts", version, about = "Minimum-weight truss sizing and shape optimization by tree search")]
pub struct Args {
    /// Problem file to optimize.
    #[arg(long, conflicts_with = "benchmark", required_unless_present_any = ["benchmark", "list"])]
    pub problem: Option<PathBuf>,
    /// Built-in benchmark id (see --list).
    #[arg(long)]
    pub benchmark: Option<String>,
    /// List built-in benchmarks and exit.
    #[arg(long)]
    pub list: bool,
    /// TOML configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// none, geometric, linear or step.
    #[arg(long)]
    pub accel: Option<String>,
    /// best or average.
    #[arg(long)]
    pub reward: Option<String>,
    /// Reward scale in kg, or `auto` to track the best weight so far.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Search-region position for sizing variables, in [0, 1].
    #[arg(long)]
    pub ax: Option<f64>,
    /// Search-region position for shape variables, in [0, 1].
    #[arg(long)]
    pub ay: Option<f64>,
    #[arg(long)]
    pub rounds_max: Option<u32>,
    /// Simulations per unit of log-width (default: three per variable).
    #[arg(long)]
    pub j_mvs: Option<usize>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Number of runs with consecutive seeds.
    #[arg(long, default_value_t = 1)]
    pub runs: u32,
    /// Add a wall-time column to convergence.csv (makes it run-dependent).
    #[arg(long)]
    pub timing: bool,
    /// Also write the problem file used to `<out>/problem.truss`.
    #[arg(long)]
    pub export_problem: bool,
    /// Print one line per round to stderr.
    #[arg(long, short)]
    pub verbose: bool,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { EXIT_OK } else { EXIT_INVALID };
        }
    };
    match run(&args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Fem(_) | Error::State(_) => EXIT_RUNTIME,
        Error::Model(_) | Error::Config(_) | Error::Parse(_) | Error::UnknownBenchmark(_) => EXIT_INVALID,
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.display().to_string(), source }
}

/// Builds the run configuration from the config file and flag overrides.
pub fn resolve_config(args: &Args) -> Result<OptimizationConfig, Error> {
    let mut c = match &args.config {
        Some(p) => load_config(p)?,
        None => OptimizationConfig::default(),
    };
    if let Some(s) = args.seed {
        c.seed = s;
    }
    if let Some(a) = &args.accel {
        c.accel = a.parse::<AccelKind>()?;
    }
    if let Some(r) = &args.reward {
        c.reward_mode = r.parse::<RewardMode>()?;
    }
    if let Some(a) = &args.alpha {
        c.alpha = a.parse::<Alpha>()?;
    }
    if let Some(a) = args.ax {
        c.expansion.sizing = a;
    }
    if let Some(a) = args.ay {
        c.expansion.shape = a;
    }
    if let Some(r) = args.rounds_max {
        c.max_rounds = r;
    }
    if args.j_mvs.is_some() {
        c.j_mvs = args.j_mvs;
    }
    c.validate()?;
    Ok(c)
}

fn load_problem(args: &Args) -> Result<(TrussProblem, VariableSet), Error> {
    match (&args.problem, &args.benchmark) {
        (Some(p), _) => read_problem_file(p),
        (None, Some(id)) => {
            let b = build_benchmark(id.parse::<BenchmarkId>()?);
            Ok((b.problem, b.vars))
        }
        (None, None) => Err(Error::UnknownBenchmark(String::new())),
    }
}

fn run(args: &Args) -> Result<(), Error> {
    if args.list {
        for id in BenchmarkId::ALL {
            println!("{id}");
        }
        return Ok(());
    }
    if args.runs == 0 {
        return Err(crate::error::ConfigError::OutOfRange { what: "runs", value: 0.0 }.into());
    }
    let config = resolve_config(args)?;
    let (problem, vars) = load_problem(args)?;
    std::fs::create_dir_all(&args.out).map_err(io_err(&args.out))?;
    if args.export_problem {
        let path = args.out.join("problem.truss");
        std::fs::write(&path, serialize_problem_file(&problem, &vars)).map_err(io_err(&path))?;
    }

    if args.runs == 1 {
        let result = run_once(&problem, &vars, &config, &args.out, args.timing, args.verbose)?;
        println!(
            "{}: best weight {:.4} kg (feasible: {}) after {} rounds, {}",
            problem.name(),
            result.best_weight,
            result.best_feasible,
            result.rounds.len(),
            result.termination
        );
        return Ok(());
    }

    let n = args.runs as usize;
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    let slots: Vec<Mutex<Option<Result<OptimizationResult, Error>>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let job = |k: usize| {
        let c = OptimizationConfig { seed: config.seed.wrapping_add(k as u64), ..config.clone() };
        let dir = args.out.join(format!("run_{}", k + 1));
        let r = std::fs::create_dir_all(&dir)
            .map_err(io_err(&dir))
            .and_then(|_| run_once(&problem, &vars, &c, &dir, args.timing, args.verbose));
        *slots[k].lock().expect("result slot") = Some(r);
    };
    if threads <= 1 {
        (0..n).for_each(job);
    } else {
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..threads.min(n) {
                s.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= n {
                        break;
                    }
                    job(k);
                });
            }
        });
    }

    let mut stats = RunStats { seeds: Vec::new(), weights: Vec::new(), feasible: Vec::new() };
    for (k, slot) in slots.into_iter().enumerate() {
        let r = slot.into_inner().expect("result slot").expect("every run finished")?;
        stats.seeds.push(config.seed.wrapping_add(k as u64));
        stats.weights.push(r.best_weight);
        stats.feasible.push(r.best_feasible);
    }
    let path = args.out.join("stats.txt");
    std::fs::write(&path, format_stats(problem.name(), &stats)).map_err(io_err(&path))?;
    println!(
        "{}: {} runs, best {:.4} kg, worst {:.4} kg, mean {:.4} kg, std {:.4}",
        problem.name(),
        n,
        stats.best(),
        stats.worst(),
        stats.mean(),
        stats.std_dev()
    );
    Ok(())
}

/// Optimizes once and writes convergence.csv, result.txt and layout.csv into `dir`.
pub fn run_once(
    problem: &TrussProblem,
    vars: &VariableSet,
    config: &OptimizationConfig,
    dir: &Path,
    timing: bool,
    verbose: bool,
) -> Result<OptimizationResult, Error> {
    let result = crate::optimizer::optimize_observed(problem, vars, config, |r| {
        if verbose {
            eprintln!(
                "seed {} round {:>3}  weight {:>12.4}  min {:>12.4}  eta {:>9.4}%  theta {}  feasible {}",
                config.seed, r.round, r.weight, r.min_s, r.eta, r.theta, r.feasible
            );
        }
    })?;
    let rows: Vec<ConvergenceRow> = result.rounds.iter().map(ConvergenceRow::from).collect();
    write_convergence_csv(&rows, &dir.join("convergence.csv"), timing)?;
    let analysis = analyze_design(problem, vars, &result.best_design, config.constraint_tolerance)?;
    let path = dir.join("result.txt");
    std::fs::write(&path, format_result(problem, vars, config, &result, &analysis)).map_err(io_err(&path))?;
    let path = dir.join("layout.csv");
    std::fs::write(&path, format_layout(problem, vars, &analysis, &result.best_design.sizing)).map_err(io_err(&path))?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_invalid() {
        assert_eq!(run_cli(["mvsmcts", "--bogus"]), EXIT_INVALID);
    }

    #[test]
    fn missing_problem_is_invalid() {
        assert_eq!(run_cli(["mvsmcts", "--seed", "1"]), EXIT_INVALID);
    }

    #[test]
    fn flag_overrides() {
        let args = Args::try_parse_from([
            "mvsmcts", "--benchmark", "ten_bar_continuous", "--accel", "step", "--alpha", "40", "--ax", "0", "--rounds-max", "7",
        ])
        .unwrap();
        let c = resolve_config(&args).unwrap();
        assert_eq!(c.accel, AccelKind::Step);
        assert_eq!(c.alpha, Alpha::Fixed(40.0));
        assert_eq!(c.expansion.sizing, 0.0);
        assert_eq!(c.max_rounds, 7);
    }

    #[test]
    fn bad_values_are_invalid() {
        let args = Args::try_parse_from(["mvsmcts", "--benchmark", "x", "--accel", "fast"]).unwrap();
        assert_eq!(exit_code(&resolve_config(&args).unwrap_err()), EXIT_INVALID);
        let args = Args::try_parse_from(["mvsmcts", "--benchmark", "x", "--ax", "1.5"]).unwrap();
        assert_eq!(exit_code(&resolve_config(&args).unwrap_err()), EXIT_INVALID);
    }
}
