//! Acceptance suite.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one `PASS`/`FAIL` line regardless of outcome. Exit status is non-zero when
//! any criterion fails.
//!
//! ```text
//! cargo test --release --test acceptance
//! ```

use std::process::{Command as Process, ExitCode};
use std::time::{Duration, Instant};

use spike_entropy::estimators::{count_contexts, ep_entropy, estimate, Method};
use spike_entropy::ingest::{binarize, SpikeRateTrace};
use spike_entropy::lz::{self, naive};
use spike_entropy::markov::{
    exact_entropy_rate, marginalize_to, sample, MarkovSourceSpec, UniformStream,
};
use spike_entropy::window::{build_plan, mean_sd, sweep, EstimatorConfig, PlanParams};

const SEEDS: u64 = 20;
const N: usize = 1000;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn check(
    id: &'static str,
    budget: Option<Duration>,
    f: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    if let Some(b) = budget {
        if !in_budget {
            detail.push_str(&format!("; over runtime budget {b:?}"));
        }
    }
    Outcome {
        id,
        pass: ok && in_budget,
        detail,
        elapsed,
    }
}

fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Sorted-order bits of every length-`n` sequence.
fn all_sequences(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << n).map(move |v| (0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect())
}

fn c1_context_counts() -> (bool, String) {
    let x = bits("01001011010110001100");
    // (k, context, count of next 0, count of next 1)
    let expected: &[(usize, &str, u64, u64)] = &[
        (0, "", 11, 9),
        (1, "0", 4, 6),
        (1, "1", 6, 3),
        (2, "00", 1, 2),
        (2, "01", 3, 3),
        (2, "10", 3, 3),
        (2, "11", 3, 0),
    ];
    let mut mismatches = Vec::new();
    for &(k, ctx, n0, n1) in expected {
        let table = count_contexts(&x, k).expect("k <= n");
        let c = (0..table.num_contexts())
            .find(|&c| table.context_label(c) == ctx)
            .expect("context");
        let got = (table.count(c, 0), table.count(c, 1));
        if got != (n0, n1) {
            mismatches.push(format!("k={k} ctx={ctx:?} got {got:?} want ({n0}, {n1})"));
        }
    }
    (
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "14 cells exact".into()
        } else {
            mismatches.join("; ")
        },
    )
}

fn c2_lz_golden() -> (bool, String) {
    let x = bits("0011001010100111");
    let r78 = lz::lz78(&x).unwrap();
    let r76 = lz::lz76(&x).unwrap();
    let rsw = lz::swlz(&x).unwrap();
    let p78 = r78.phrases.clone().unwrap().join(",");
    let p76 = r76.phrases.clone().unwrap().join(",");
    let l = rsw.match_lengths.clone().unwrap();
    let ok = p78 == "0,01,1,00,10,101,001,11"
        && r78.phrase_count == Some(8)
        && r78.complexity == 1.5
        && p76 == "0,01,10,010,10100,111"
        && r76.phrase_count == Some(6)
        && r76.complexity == 1.5
        && l == [1, 2, 1, 2, 4, 3, 3, 3, 3, 4, 5, 5, 4, 3, 2, 1]
        && rsw.match_length_sum() == Some(46)
        && rsw.complexity == 0.71875;
    (
        ok,
        format!(
            "LZ78 [{p78}] K={}; LZ76 [{p76}] K={}; SWLZ sum={} K={}",
            r78.complexity,
            r76.complexity,
            rsw.match_length_sum().unwrap(),
            rsw.complexity
        ),
    )
}

fn c3_oracle(order: usize, target: f64) -> impl FnOnce() -> (bool, String) {
    move || {
        let spec = marginalize_to(&MarkovSourceSpec::benchmark_order3(), order).unwrap();
        let h = exact_entropy_rate(&spec).unwrap();
        let err = (h - target).abs();
        (
            err <= 0.005,
            format!("m={order}: exact {h:.6} vs {target} (|diff| {err:.6}, tol 0.005)"),
        )
    }
}

/// Mean over seeds of `f(sample)` on the order-`m` source.
fn seed_mean(m: usize, f: impl Fn(&[u8]) -> f64) -> f64 {
    let spec = marginalize_to(&MarkovSourceSpec::benchmark_order3(), m).unwrap();
    let total: f64 = (0..SEEDS)
        .map(|s| f(&sample(&spec, N, 1000 * m as u64 + s).unwrap()))
        .sum();
    total / SEEDS as f64
}

fn c4_convergence() -> (bool, String) {
    let source = MarkovSourceSpec::benchmark_order3();
    let mut ok = true;
    let mut parts = Vec::new();
    for m in 0..=3 {
        let oracle = exact_entropy_rate(&marginalize_to(&source, m).unwrap()).unwrap();
        let matched = seed_mean(m, |x| ep_entropy(x, m).unwrap().value);
        let fit = (matched - oracle).abs() <= 0.05;
        ok &= fit;
        let mut part = format!("m={m}: EP(k={m}) {matched:.4} vs {oracle:.4}");
        if m >= 1 {
            let under = seed_mean(m, |x| ep_entropy(x, m - 1).unwrap().value);
            let over = under - oracle;
            ok &= over >= 0.03;
            part.push_str(&format!(", EP(k={}) excess {over:.4}", m - 1));
        }
        parts.push(part);
    }
    (ok, parts.join("; "))
}

fn c5_ordering() -> (bool, String) {
    let target = 0.4158;
    let ep = seed_mean(3, |x| ep_entropy(x, 3).unwrap().value);
    let l78 = seed_mean(3, |x| estimate(x, Method::Lz78, 0).unwrap().value);
    let l76 = seed_mean(3, |x| estimate(x, Method::Lz76, 0).unwrap().value);
    let (e, a, b) = (
        (ep - target).abs(),
        (l78 - target).abs(),
        (l76 - target).abs(),
    );
    (
        e < a && e < b,
        format!("|EP-0.4158|={e:.4}, |LZ78-0.4158|={a:.4}, |LZ76-0.4158|={b:.4}"),
    )
}

fn c6_table2_trend() -> (bool, String) {
    let source = MarkovSourceSpec::iid(0.3).unwrap();
    let plan = build_plan(250, &PlanParams::table2()).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 0..=2 {
        let hits = (0..100u64)
            .filter(|&trial| {
                let x = sample(&source, 250, 50_000 + 100 * k as u64 + trial).unwrap();
                let out = sweep(&x, &plan, &[EstimatorConfig::ep(k)]);
                let sd_at = |len: usize| {
                    let v: Vec<f64> = out
                        .records
                        .iter()
                        .filter(|r| r.window.length == len)
                        .map(|r| r.value)
                        .collect();
                    mean_sd(&v).1
                };
                sd_at(200) < sd_at(40)
            })
            .count();
        ok &= hits >= 90;
        parts.push(format!("k={k}: {hits}/100"));
    }
    (ok, parts.join(", "))
}

fn c7_threshold() -> (bool, String) {
    let mut rng = UniformStream::new(7);
    let mut violations = 0;
    for i in 0..1000 {
        let len = 2 + (rng.next_f64() * 199.0) as usize;
        let rates: Vec<f64> = (0..len).map(|_| rng.next_f64().powi(4) * 8.0).collect();
        let lambda = 10f64.powf(rng.next_f64() * 4.0 - 2.0);
        let scaled: Vec<f64> = rates.iter().map(|r| r * lambda).collect();
        let (a, ta) =
            binarize(&SpikeRateTrace::from_rates(format!("n{i}"), rates).unwrap()).unwrap();
        let (b, tb) =
            binarize(&SpikeRateTrace::from_rates(format!("n{i}"), scaled).unwrap()).unwrap();
        if a != b || (tb - lambda * ta).abs() > 1e-12 * tb.abs().max(1.0) {
            violations += 1;
        }
    }
    let worked = [
        (vec![0.7; 5], 0.0, "11111"),
        (vec![0.0, 0.0, 0.0, 0.0, 10.0], 3.0 * 20f64.sqrt(), "00000"),
        (
            vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 5.0],
            3.0 * 2.5f64.sqrt(),
            "0000000001",
        ),
    ];
    let mut worked_ok = 0;
    for (rates, thr, expected) in worked {
        let (seq, t) = binarize(&SpikeRateTrace::from_rates("w", rates).unwrap()).unwrap();
        if (t - thr).abs() <= 1e-9 && seq.to_string() == expected {
            worked_ok += 1;
        }
    }
    (
        violations == 0 && worked_ok == 3,
        format!("{violations} scaling violations in 1000 traces; worked examples {worked_ok}/3"),
    )
}

/// Fewest phrases over all parsings whose phrases are a copy (start earlier,
/// overlap allowed) followed by at most one new symbol.
fn min_phrase_count(x: &[u8]) -> usize {
    let n = x.len();
    let reproducible =
        |p: usize, len: usize| len == 0 || naive::occurs(&x[..p + len - 1], &x[p..p + len]);
    let mut best = vec![usize::MAX; n + 1];
    best[0] = 0;
    for p in 0..n {
        if best[p] == usize::MAX {
            continue;
        }
        for q in p + 1..=n {
            if reproducible(p, q - p - 1) {
                best[q] = best[q].min(best[p] + 1);
            }
        }
    }
    best[n]
}

fn c8_brute_force() -> (bool, String) {
    let mut checked = 0usize;
    let mut swlz_bad = 0usize;
    let mut lz76_bad = 0usize;
    let mut lz76_not_min = 0usize;
    for n in 1..=12 {
        for x in all_sequences(n) {
            checked += 1;
            if lz::swlz(&x).unwrap().match_lengths.unwrap() != naive::swlz_match_lengths(&x) {
                swlz_bad += 1;
            }
            let r = lz::lz76(&x).unwrap();
            let lengths: Vec<usize> = r
                .phrases
                .as_ref()
                .unwrap()
                .iter()
                .map(String::len)
                .collect();
            if lengths != naive::lz76_phrase_lengths(&x) {
                lz76_bad += 1;
            }
            if r.phrase_count != Some(min_phrase_count(&x)) {
                lz76_not_min += 1;
            }
        }
    }
    (
        swlz_bad + lz76_bad + lz76_not_min == 0,
        format!(
            "{checked} sequences: SWLZ mismatches {swlz_bad}, LZ76 mismatches {lz76_bad}, LZ76 non-minimal {lz76_not_min}"
        ),
    )
}

fn c9_determinism() -> (bool, String) {
    let dir = tempfile::tempdir().expect("tempdir");
    let bin = env!("CARGO_BIN_EXE_spike-entropy");
    let run = |args: &[&str], out: &str| -> Vec<u8> {
        let path = dir.path().join(out);
        let status = Process::new(bin)
            .args(args)
            .arg("--output")
            .arg(&path)
            .env_remove("SPIKE_ENTROPY_OUT_DIR")
            .status()
            .expect("spawn");
        assert!(status.success(), "{args:?} exited with {status}");
        std::fs::read(path).expect("output")
    };
    let sim = [
        "simulate",
        "--order",
        "3",
        "--fixture",
        "benchmark",
        "--n",
        "1000",
        "--seed",
        "7",
    ];
    let bench = ["benchmark", "--quick", "--seed", "7"];
    let (s1, s2) = (run(&sim, "sim1.txt"), run(&sim, "sim2.txt"));
    let (b1, b2) = (run(&bench, "b1.csv"), run(&bench, "b2.csv"));
    (
        s1 == s2 && b1 == b2 && !s1.is_empty() && !b1.is_empty(),
        format!(
            "simulate identical: {}, benchmark --quick identical: {}",
            s1 == s2,
            b1 == b2
        ),
    )
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let secs = Duration::from_secs;
    let outcomes = [
        check("1  context count table", Some(ms(1)), c1_context_counts),
        check("2  LZ golden parses", None, c2_lz_golden),
        check(
            "3a oracle rate m=3 (0.4158)",
            Some(ms(10)),
            c3_oracle(3, 0.4158),
        ),
        check(
            "3b oracle rate m=2 (0.4775)",
            Some(ms(10)),
            c3_oracle(2, 0.4775),
        ),
        check(
            "3c oracle rate m=1 (0.5339)",
            Some(ms(10)),
            c3_oracle(1, 0.5339),
        ),
        check(
            "3d oracle rate m=0 (0.6386)",
            Some(ms(10)),
            c3_oracle(0, 0.6386),
        ),
        check(
            "4  EP convergence per order",
            Some(secs(30)),
            c4_convergence,
        ),
        check("5  EP closer than LZ78/LZ76", None, c5_ordering),
        check(
            "6  window sd shrinks with length",
            Some(secs(60)),
            c6_table2_trend,
        ),
        check("7  threshold equivariance", None, c7_threshold),
        check(
            "8  brute-force LZ equivalence",
            Some(secs(60)),
            c8_brute_force,
        ),
        check("9  CLI determinism", None, c9_determinism),
    ];
    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {:<36} {:>10.3?}  {}",
            o.id, o.elapsed, o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
