//! Spread of estimates across nine window positions, per window length.
//!
//! ```text
//! cargo run --example window_length_study
//! ```

use spike_entropy::markov::{sample, MarkovSourceSpec};
use spike_entropy::window::{build_plan, summarize, sweep, EstimatorConfig, PlanParams};
use spike_entropy::Method;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = sample(&MarkovSourceSpec::iid(0.3)?, 250, 4)?;
    let plan = build_plan(x.len(), &PlanParams::table2())?;
    println!("{} windows ({} dropped)", plan.windows.len(), plan.dropped);

    let configs = [
        EstimatorConfig::lz(Method::Swlz),
        EstimatorConfig::ep(0),
        EstimatorConfig::ep(1),
        EstimatorConfig::ep(2),
    ];
    let out = sweep(&x, &plan, &configs);
    println!("{:<10} {:>6} {:>8} {:>8}", "config", "length", "mean", "sd");
    for s in summarize(&out.records)? {
        let label =
            s.k.map_or(s.method.to_string(), |k| format!("{}(k={k})", s.method));
        println!(
            "{label:<10} {:>6} {:>8.4} {:>8.4}",
            s.window_length, s.mean, s.sd
        );
    }
    Ok(())
}
