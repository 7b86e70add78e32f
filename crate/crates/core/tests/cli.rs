use std::path::{Path, PathBuf};
use std::process::Command;

fn mvsmcts(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mvsmcts")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap()
}

#[test]
fn list_prints_every_benchmark() {
    let (code, out, _) = mvsmcts(&["--list"]);
    assert_eq!(code, 0);
    for id in mvsmcts::BenchmarkId::ALL {
        assert!(out.lines().any(|l| l == id.name()));
    }
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(mvsmcts(&["--frobnicate"]).0, 2);
    assert_eq!(mvsmcts(&["--benchmark", "fifteen_bar", "--out", out]).0, 2);
    assert_eq!(mvsmcts(&["--benchmark", "two_bar_fixture", "--accel", "warp", "--out", out]).0, 2);
    assert_eq!(mvsmcts(&["--benchmark", "two_bar_fixture", "--runs", "0", "--out", out]).0, 2);
    assert_eq!(mvsmcts(&["--problem", "/nonexistent/p.truss", "--out", out]).0, 3);

    let bad = tmp.path().join("bad.truss");
    std::fs::write(&bad, read(&data(""), "two_bar_fixture.truss").replace("density 7860", "density -1")).unwrap();
    let (code, _, err) = mvsmcts(&["--problem", bad.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 2, "{err}");

    let cfg = tmp.path().join("bad.toml");
    std::fs::write(&cfg, "theta_max = 0\n").unwrap();
    assert_eq!(mvsmcts(&["--benchmark", "two_bar_fixture", "--config", cfg.to_str().unwrap(), "--out", out]).0, 2);
}

#[test]
fn writes_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let (code, stdout, err) = mvsmcts(&["--benchmark", "two_bar_fixture", "--seed", "3", "--export-problem", "--out", out]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("best weight"));

    let csv = read(tmp.path(), "convergence.csv");
    let header = csv.lines().next().unwrap();
    assert_eq!(header.split(',').count(), 11);
    assert!(!header.contains("wall_time"));
    let mins: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!(!mins.is_empty() && mins.windows(2).all(|w| w[1] <= w[0]));

    let result = read(tmp.path(), "result.txt");
    assert!(result.starts_with("problem two_bar_fixture\nseed 3\n"));
    assert!(result.contains("[stress case 1]"));
    assert!(read(tmp.path(), "layout.csv").starts_with("kind,id,x,y,z,start,end,group,area_mm2\n"));
    assert_eq!(read(tmp.path(), "problem.truss"), read(&data(""), "two_bar_fixture.truss"));
}

#[test]
fn timing_adds_a_column() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(mvsmcts(&["--benchmark", "two_bar_fixture", "--timing", "--rounds-max", "2", "--out", out]).0, 0);
    let csv = read(tmp.path(), "convergence.csv");
    assert!(csv.lines().next().unwrap().ends_with(",wall_time_s"));
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 12));
}

#[test]
fn problem_file_and_benchmark_agree() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let file = data("ten_bar_continuous.truss");
    let common = ["--seed", "5", "--rounds-max", "6"];
    let mut args = vec!["--benchmark", "ten_bar_continuous", "--out", a.path().to_str().unwrap()];
    args.extend(common);
    assert_eq!(mvsmcts(&args).0, 0);
    let mut args = vec!["--problem", file.to_str().unwrap(), "--out", b.path().to_str().unwrap()];
    args.extend(common);
    assert_eq!(mvsmcts(&args).0, 0);
    assert_eq!(read(a.path(), "convergence.csv"), read(b.path(), "convergence.csv"));
    assert_eq!(read(a.path(), "result.txt"), read(b.path(), "result.txt"));
}

#[test]
fn config_file_and_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.toml");
    std::fs::write(&cfg, "seed = 11\naccel = \"step\"\nmax_rounds = 4\n").unwrap();
    let out = tmp.path().join("o");
    let (code, _, err) = mvsmcts(&[
        "--benchmark", "two_bar_fixture", "--config", cfg.to_str().unwrap(), "--seed", "12", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let result = read(&out, "result.txt");
    assert!(result.contains("seed 12\naccel step\n"), "{result}");
    assert!(read(&out, "convergence.csv").lines().count() <= 5);
}

#[test]
fn batch_runs_write_stats() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let (code, stdout, err) = mvsmcts(&["--benchmark", "two_bar_fixture", "--runs", "3", "--seed", "7", "--out", out]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("3 runs"));
    let stats = read(tmp.path(), "stats.txt");
    assert!(stats.contains("runs 3\n"));
    for (k, seed) in [(1, 7), (2, 8), (3, 9)] {
        let dir = tmp.path().join(format!("run_{k}"));
        assert!(read(&dir, "result.txt").contains(&format!("seed {seed}\n")));
        assert!(stats.lines().any(|l| l.starts_with(&format!("{seed} "))));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let (code, _, err) = mvsmcts(&[
            "--benchmark", "twenty_five_bar_mixed", "--seed", "2", "--rounds-max", "8", "--out", dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
    }
    for f in ["convergence.csv", "result.txt", "layout.csv"] {
        assert_eq!(read(a.path(), f), read(b.path(), f), "{f}");
    }
}
