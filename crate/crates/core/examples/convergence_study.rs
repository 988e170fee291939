//! Mean estimate against prefix length on samples of the bundled source,
//! next to the exact rate.
//!
//! ```text
//! cargo run --release --example convergence_study
//! ```

use spike_entropy::benchmark::{run_benchmark, BenchmarkConfig};
use spike_entropy::estimators::Method;
use spike_entropy::MarkovSourceSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = BenchmarkConfig {
        orders: vec![3],
        ks: vec![1, 3],
        methods: vec![Method::Ep, Method::Lz78, Method::Lz76, Method::Swlz],
        seeds: 20,
        ..BenchmarkConfig::full(1)
    };
    let rows = run_benchmark(&MarkovSourceSpec::benchmark_order3(), &config)?;
    let oracle = rows[0].oracle;
    println!("exact rate: {oracle:.4} bits\n");
    println!("{:<8} {:>6} {:>8} {:>8}", "method", "length", "mean", "sd");
    for r in rows.iter().filter(|r| r.window_length % 200 == 0) {
        let label = match r.k {
            Some(k) => format!("{}(k={k})", r.method),
            None => r.method.to_string(),
        };
        println!(
            "{label:<8} {:>6} {:>8.4} {:>8.4}",
            r.window_length, r.mean, r.sd
        );
    }
    Ok(())
}
