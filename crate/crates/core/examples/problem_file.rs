// Writes a benchmark as a `.truss` text file, reads it back and solves
// the parsed copy.
//
// `cargo run --example problem_file -- [benchmark]`

use mvsmcts::io::{parse_problem_file, read_problem_file, serialize_problem_file};
use mvsmcts::{build_benchmark, BenchmarkId};

fn run_example(id: BenchmarkId, dir: &std::path::Path) -> Result<bool, mvsmcts::Error> {
    let b = build_benchmark(id);
    let text = serialize_problem_file(&b.problem, &b.vars);
    let path = dir.join(format!("{id}.truss"));
    std::fs::write(&path, &text).map_err(|source| mvsmcts::Error::Io { path: path.display().to_string(), source })?;
    let (problem, vars) = read_problem_file(&path)?;
    println!("{}: {} lines, {} variables", path.display(), text.lines().count(), vars.len());

    // A broken copy reports the offending line.
    let broken = text.replacen("[members]", "[members]\n99 1 999 1", 1);
    if let Err(e) = parse_problem_file(&broken) {
        println!("broken copy: {e}");
    }
    Ok(problem == b.problem && vars == b.vars)
}

#[allow(dead_code)]
fn main() -> Result<(), mvsmcts::Error> {
    let id = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(BenchmarkId::TwentyFiveBarMixed);
    let dir = std::env::temp_dir();
    println!("round trip exact: {}", run_example(id, &dir)?);
    Ok(())
}
