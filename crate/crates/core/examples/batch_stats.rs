// Several seeds of one benchmark on worker threads, summarised like
// `mvsmcts --runs`.
//
// `cargo run --release --example batch_stats -- [runs] [benchmark]`

use mvsmcts::io::{format_stats, RunStats};
use mvsmcts::{build_benchmark, optimize, BenchmarkId, OptimizationConfig};

fn run_example(id: BenchmarkId, runs: u64, max_rounds: u32) -> Result<RunStats, mvsmcts::Error> {
    let b = build_benchmark(id);
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..runs)
            .map(|seed| {
                let b = &b;
                s.spawn(move || {
                    let config = OptimizationConfig { seed, max_rounds, ..Default::default() };
                    optimize(&b.problem, &b.vars, &config)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut stats = RunStats { seeds: Vec::new(), weights: Vec::new(), feasible: Vec::new() };
    for (seed, r) in results.into_iter().enumerate() {
        let r = r?;
        stats.seeds.push(seed as u64);
        stats.weights.push(r.best_weight);
        stats.feasible.push(r.best_feasible);
    }
    Ok(stats)
}

#[allow(dead_code)]
fn main() -> Result<(), mvsmcts::Error> {
    let mut args = std::env::args().skip(1);
    let runs = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let id = args.next().map(|s| s.parse()).transpose()?.unwrap_or(BenchmarkId::TwentyFiveBarMixed);
    let stats = run_example(id, runs, 200)?;
    print!("{}", format_stats(id.name(), &stats));
    Ok(())
}
