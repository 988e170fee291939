//! Mean estimate against window length under both temporal aggregations.
//!
//! ```text
//! cargo run --example temporal_variation
//! ```

use spike_entropy::markov::{sample, MarkovSourceSpec};
use spike_entropy::window::{temporal_profile, EstimatorConfig, PlanParams, TemporalAggregation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = sample(&MarkovSourceSpec::benchmark_order3(), 600, 21)?;
    let lengths = PlanParams::lengths_by_step(50, 400);
    let configs = [EstimatorConfig::ep(0), EstimatorConfig::ep(2)];
    for aggregation in [
        TemporalAggregation::GrowingPrefix,
        TemporalAggregation::SlidingFixed,
    ] {
        println!("{}", aggregation.name());
        for s in temporal_profile(&x, aggregation, lengths.clone(), 25, &configs)? {
            println!(
                "  EP(k={}) length {:>3}: {:.4} ± {:.4} over {} windows",
                s.k.unwrap_or(0),
                s.window_length,
                s.mean,
                s.sd,
                s.count
            );
        }
    }
    Ok(())
}
