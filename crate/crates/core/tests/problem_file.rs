use std::path::PathBuf;

use mvsmcts::io::{parse_problem_file, read_problem_file, serialize_problem_file, ParseErrorKind};
use mvsmcts::{build_benchmark, BenchmarkId};

fn golden(id: BenchmarkId) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(format!("{id}.truss"))
}

#[test]
fn goldens_match_builders() {
    for id in BenchmarkId::ALL {
        let b = build_benchmark(id);
        let text = std::fs::read_to_string(golden(id)).unwrap();
        assert_eq!(serialize_problem_file(&b.problem, &b.vars), text, "{id}: serializer drifted from golden");
        let (problem, vars) = read_problem_file(&golden(id)).unwrap();
        assert!(problem == b.problem && vars == b.vars, "{id}: parsed golden differs from builder");
    }
}

#[test]
fn round_trip_is_a_fixed_point() {
    for id in BenchmarkId::ALL {
        let text = std::fs::read_to_string(golden(id)).unwrap();
        let (p, v) = parse_problem_file(&text).unwrap();
        assert_eq!(serialize_problem_file(&p, &v), text);
    }
}

fn error_line(text: &str) -> (Option<usize>, bool) {
    let e = parse_problem_file(text).unwrap_err();
    (e.line, matches!(e.kind, ParseErrorKind::Syntax(_)))
}

#[test]
fn errors_point_at_the_offending_line() {
    let text = std::fs::read_to_string(golden(BenchmarkId::TwoBarFixture)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let members = lines.iter().position(|l| *l == "[members]").unwrap();

    let bad = text.replacen("[members]", "[members]\n7 1 42 1", 1);
    let (line, kind) = error_line(&bad);
    assert_eq!((line, kind), (Some(members + 2), false));

    let bad = text.replacen("[members]", "[members]\n7 1 two 1", 1);
    let (line, kind) = error_line(&bad);
    assert_eq!((line, kind), (Some(members + 2), true));

    let bad = text.replacen("[variables]", "[variables]\nsizing X9 group 1 range 10 5", 1);
    assert!(parse_problem_file(&bad).is_err());
}

#[test]
fn missing_file_is_an_io_error() {
    let err = read_problem_file(std::path::Path::new("/nonexistent/x.truss")).unwrap_err();
    assert!(matches!(err, mvsmcts::Error::Io { .. }));
}
