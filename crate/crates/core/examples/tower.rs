// The 220-bar transmission tower with two load cases. A full budget takes
// several seconds per round; pass a smaller `j_mvs` for a quick look.
//
// `cargo run --release --example tower -- [j_mvs] [rounds]`

use mvsmcts::{build_benchmark, optimize, BenchmarkId, OptimizationConfig, OptimizationResult};

fn run_example(j_mvs: Option<usize>, max_rounds: u32) -> Result<OptimizationResult, mvsmcts::Error> {
    let b = build_benchmark(BenchmarkId::Tower220Mixed);
    println!(
        "{} nodes, {} members, {} sizing and {} shape variables",
        b.problem.nodes().len(),
        b.problem.members().len(),
        b.vars.sizing_count(),
        b.vars.shape_count()
    );
    let config = OptimizationConfig { j_mvs, max_rounds, ..Default::default() };
    optimize(&b.problem, &b.vars, &config)
}

#[allow(dead_code)]
fn main() -> Result<(), mvsmcts::Error> {
    let mut args = std::env::args().skip(1);
    let j_mvs = args.next().and_then(|s| s.parse().ok()).or(Some(5));
    let rounds = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let r = run_example(j_mvs, rounds)?;
    println!(
        "{:.2} kg (feasible {}) after {} rounds, {} simulations, {:.1} s",
        r.best_weight,
        r.best_feasible,
        r.rounds.len(),
        r.total_simulations(),
        r.total_time().as_secs_f64()
    );
    Ok(())
}
