// Mixed problem: discrete areas and discrete coordinates on the 25-bar
// transmission tower. Re-analyses the best design from scratch.
//
// `cargo run --release --example twenty_five_bar -- [seed]`

use mvsmcts::optimizer::{analyze_design, DesignAnalysis};
use mvsmcts::{build_benchmark, optimize, BenchmarkId, OptimizationConfig, OptimizationResult};

fn run_example(seed: u64, max_rounds: u32) -> Result<(OptimizationResult, DesignAnalysis), mvsmcts::Error> {
    let b = build_benchmark(BenchmarkId::TwentyFiveBarMixed);
    let config = OptimizationConfig { seed, max_rounds, ..Default::default() };
    let result = optimize(&b.problem, &b.vars, &config)?;
    let analysis = analyze_design(&b.problem, &b.vars, &result.best_design, config.constraint_tolerance)?;
    Ok((result, analysis))
}

#[allow(dead_code)]
fn main() -> Result<(), mvsmcts::Error> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let (r, a) = run_example(seed, 200)?;
    println!("seed {seed}: {:.3} kg after {} rounds ({})", r.best_weight, r.rounds.len(), r.termination);
    println!("areas mm2 {:?}", r.best_design.sizing);
    println!("coordinates m {:?}", r.best_design.shape);
    println!(
        "re-analysis: {:.3} kg, stress ratio {:.4}, displacement ratio {:.4}",
        a.weight, a.report.max_stress_ratio, a.report.max_disp_ratio
    );
    Ok(())
}
