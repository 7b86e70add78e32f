// How the search region, mesh count and discrete window shrink per round.
//
// `cargo run --example schedules`

use mvsmcts::design_space::{range_schedule, width_schedule_continuous, width_schedule_discrete};
use mvsmcts::{AccelKind, ScheduleConstants};

/// Rows of `(kind, round, range, mesh, window)` for a continuous variable on
/// [0, 100] with ten variables and a 64-entry discrete list.
fn run_example(rounds: u32) -> Vec<(AccelKind, u32, f64, usize, usize)> {
    let c = ScheduleConstants::default();
    let mut rows = Vec::new();
    for kind in [AccelKind::None, AccelKind::Geometric, AccelKind::Linear, AccelKind::Step] {
        for p in 1..=rounds {
            rows.push((
                kind,
                p,
                range_schedule(kind, p, 0.0, 100.0, &c.sizing),
                width_schedule_continuous(kind, p, 10, &c.sizing),
                width_schedule_discrete(kind, p, 64, &c.sizing),
            ));
        }
    }
    rows
}

#[allow(dead_code)]
fn main() {
    println!("{:<10} {:>5} {:>10} {:>5} {:>5}", "kind", "round", "range", "mesh", "beta");
    for (kind, p, xi, kappa, beta) in run_example(12) {
        println!("{:<10} {p:>5} {xi:>10.4} {kappa:>5} {beta:>5}", kind.to_string());
    }
}
