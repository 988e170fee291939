use std::path::Path;
use std::process::{Command, Output};

use spike_entropy::benchmark::BENCHMARK_HEADER;

const BIN: &str = env!("CARGO_BIN_EXE_spike-entropy");

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(cwd)
        .env_remove("SPIKE_ENTROPY_OUT_DIR")
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simulate_is_deterministic_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let args = |seed: &'static str, out: &'static str| {
        vec![
            "simulate",
            "--order",
            "3",
            "--fixture",
            "benchmark",
            "--n",
            "500",
            "--seed",
            seed,
            "--output",
            out,
        ]
    };
    assert!(run(&args("11", "a.txt"), dir.path()).status.success());
    assert!(run(&args("11", "b.txt"), dir.path()).status.success());
    assert!(run(&args("12", "c.txt"), dir.path()).status.success());
    let read = |f: &str| std::fs::read_to_string(dir.path().join(f)).unwrap();
    assert_eq!(read("a.txt"), read("b.txt"));
    assert_ne!(read("a.txt"), read("c.txt"));
    let text = read("a.txt");
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# spike-entropy "));
    assert_eq!(lines.next().unwrap().len(), 500);
}

#[test]
fn out_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(BIN)
        .args(["simulate", "--n", "10", "--output", "nested/x.txt"])
        .env("SPIKE_ENTROPY_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("nested/x.txt").exists());
}

#[test]
fn parse_prints_pipe_notation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.txt"), "0011001010100111\n").unwrap();
    let o = run(
        &["parse", "--scheme", "lz78", "--input", "g.txt"],
        dir.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "0|01|1|00|10|101|001|11");
    assert_eq!(lines[2], "c=8 K=1.500000");

    let o = run(
        &["parse", "--scheme", "lz76", "--input", "g.txt", "--json"],
        dir.path(),
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["c"], 6);
    assert_eq!(v["phrases"][4], "10100");
}

#[test]
fn counts_csv() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.txt"), "01001011010110001100\n").unwrap();
    let o = run(&["counts", "--k", "1", "--input", "t.txt"], dir.path());
    let out = stdout(&o);
    let body: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        body,
        [
            "context,symbol,count,relative_frequency",
            "0,0,4,2/5",
            "0,1,6,3/5",
            "1,0,6,2/3",
            "1,1,3,1/3"
        ]
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("short.txt"), "0101\n").unwrap();
    std::fs::write(dir.path().join("bad.txt"), "01201\n").unwrap();

    let o = run(
        &[
            "estimate",
            "--method",
            "ep",
            "--k",
            "4",
            "--input",
            "short.txt",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("entropy_estimators"));

    let o = run(
        &[
            "estimate",
            "--method",
            "ep",
            "--k",
            "1",
            "--input",
            "missing.txt",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));

    let o = run(
        &[
            "estimate", "--method", "ep", "--k", "1", "--input", "bad.txt",
        ],
        dir.path(),
    );
    assert_ne!(o.status.code(), Some(0));

    let o = run(
        &["estimate", "--method", "bogus", "--input", "short.txt"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));

    let o = run(
        &["sweep", "--input", "short.txt", "--preset", "table2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window_analysis"));

    let o = run(&["--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sweep_then_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(run(
        &["simulate", "--n", "250", "--seed", "5", "--output", "x.txt"],
        p
    )
    .status
    .success());
    let o = run(
        &[
            "sweep", "--input", "x.txt", "--preset", "table2", "--method", "ep,swlz", "--k",
            "0,1,2", "--output", "r.csv",
        ],
        p,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records = std::fs::read_to_string(p.join("r.csv")).unwrap();
    // header comment + CSV header + 4 configs x 45 windows
    assert_eq!(records.lines().count(), 2 + 4 * 45);

    let o = run(&["summarize", "--input", "r.csv"], p);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(
        out.lines().nth(1),
        Some("method,k,window_length,mean_bits,sd_bits,count")
    );
    assert_eq!(out.lines().count(), 2 + 4 * 5);
}

#[test]
fn sweep_reports_skips_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("x.txt"), "0110100110\n").unwrap();
    let o = run(
        &["sweep", "--input", "x.txt", "--lengths", "2,10", "--k", "3"],
        p,
    );
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr)
        .contains("skipped: method=EP k=3 window_start=1 window_length=2"));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn binarize_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(
        p.join("rates.csv"),
        "t,a,b\n0,0,0.7\n1,0,0.7\n2,0,0.7\n3,0,0.7\n4,10,0.7\n",
    )
    .unwrap();
    let o = run(&["binarize", "--input", "rates.csv"], p);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(lines, ["a,13.4164078650,00000", "b,0.0000000000,11111"]);

    std::fs::write(p.join("back.csv"), "t,a\n1,0\n0,1\n").unwrap();
    let o = run(&["binarize", "--input", "back.csv"], p);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("spike_ingest"));
}

#[test]
fn benchmark_quick_tracks_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["benchmark", "--quick", "--seed", "1"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().nth(1), Some(BENCHMARK_HEADER));
    let full_length_ep: Vec<f64> = out
        .lines()
        .skip(2)
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|f| f[1] == "EP" && f[2] == "3" && f[3] == "1000")
        .map(|f| f[4].parse().unwrap())
        .collect();
    assert_eq!(full_length_ep.len(), 1);
    assert!(
        (0.3658..=0.4658).contains(&full_length_ep[0]),
        "{}",
        full_length_ep[0]
    );
}
