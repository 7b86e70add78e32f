// Continuous sizing of the 10-bar cantilever truss.
//
// `cargo run --release --example ten_bar -- [seed]`

use mvsmcts::{build_benchmark, BenchmarkId, OptimizationConfig, OptimizationResult};

fn run_example(seed: u64, max_rounds: u32) -> Result<OptimizationResult, mvsmcts::Error> {
    let b = build_benchmark(BenchmarkId::TenBarContinuous);
    let config = OptimizationConfig { seed, max_rounds, ..Default::default() };
    mvsmcts::optimizer::optimize_observed(&b.problem, &b.vars, &config, |r| {
        println!("round {:>3}  W {:>10.3}  min {:>10.3}  eta {:>8.4}%  theta {}", r.round, r.weight, r.min_s, r.eta, r.theta);
    })
}

#[allow(dead_code)]
fn main() -> Result<(), mvsmcts::Error> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let r = run_example(seed, 200)?;
    println!("best {:.3} kg in round {} ({})", r.best_weight, r.best_round, r.termination);
    for (i, a) in r.best_design.sizing.iter().enumerate() {
        println!("  A{:<2} {:>10.2} mm2", i + 1, a);
    }
    Ok(())
}
