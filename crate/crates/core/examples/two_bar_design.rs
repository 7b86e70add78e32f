// Sizing and shape of a two-bar truss, checked against a fine grid over
// the apex position where each bar is sized to its stress limit.
//
// `cargo run --example two_bar_design`

use mvsmcts::optimizer::analyze_design;
use mvsmcts::{build_benchmark, optimize, BenchmarkId, DesignVector, OptimizationConfig, OptimizationResult};

/// Fully stressed weight with the apex at `(x, y)`: two-bar statics give the
/// bar forces, areas follow from the stress limit within their bounds.
fn grid_optimum(b: &mvsmcts::benchmarks::Benchmark) -> Result<(f64, [f64; 2]), mvsmcts::Error> {
    let (p, sigma) = (100e3, 150e6);
    let mut best = (f64::INFINITY, [0.0; 2]);
    for i in 0..=100 {
        for j in 0..=150 {
            let (x, y) = (0.5 + 0.01 * i as f64, 0.5 + 0.01 * j as f64);
            let (l1, l2) = ((x * x + y * y).sqrt(), ((2.0 - x).powi(2) + y * y).sqrt());
            // N1 u1 + N2 u2 = (0, P), u_k pointing from the apex to the support.
            let (u1, u2) = ([-x / l1, -y / l1], [(2.0 - x) / l2, -y / l2]);
            let det = u1[0] * u2[1] - u1[1] * u2[0];
            let n1 = (0.0 * u2[1] - p * u2[0]) / det;
            let n2 = (u1[0] * p - u1[1] * 0.0) / det;
            let area = |n: f64| (n.abs() / sigma * 1e6).clamp(50.0, 2000.0);
            let d = DesignVector::determined(vec![area(n1), area(n2)], vec![x, y]);
            let a = analyze_design(&b.problem, &b.vars, &d, 1e-6)?;
            if a.report.feasible && a.weight < best.0 {
                best = (a.weight, [x, y]);
            }
        }
    }
    Ok(best)
}

fn run_example(seed: u64) -> Result<(OptimizationResult, f64), mvsmcts::Error> {
    let b = build_benchmark(BenchmarkId::TwoBarFixture);
    let config = OptimizationConfig { seed, ..Default::default() };
    let result = optimize(&b.problem, &b.vars, &config)?;
    Ok((result, grid_optimum(&b)?.0))
}

#[allow(dead_code)]
fn main() -> Result<(), mvsmcts::Error> {
    let (r, target) = run_example(0)?;
    println!("rounds {} ({})", r.rounds.len(), r.termination);
    println!("areas mm2 {:?}", r.best_design.sizing);
    println!("apex x, y m {:?}", r.best_design.shape);
    println!("weight {:.4} kg, grid {:.4} kg, gap {:+.2}%", r.best_weight, target, (r.best_weight / target - 1.0) * 100.0);
    Ok(())
}
