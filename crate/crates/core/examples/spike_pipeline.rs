//! Rate traces to binary spike trains to entropy-rate estimates.
//!
//! Reads a CSV of spike-rate traces (first column time, one column per
//! neuron) or synthesizes one when no path is given.
//!
//! ```text
//! cargo run --example spike_pipeline -- rates.csv
//! ```

use spike_entropy::estimators::{ep_entropy, estimate, Method};
use spike_entropy::ingest::{binarize, load_traces, SpikeRateTrace};
use spike_entropy::markov::UniformStream;

fn synthetic() -> Vec<SpikeRateTrace> {
    let mut rng = UniformStream::new(11);
    (1..=3)
        .map(|id| {
            // sparse bursts over a low baseline
            let rates = (0..600)
                .map(|_| {
                    let base = 0.05 * rng.next_f64();
                    if rng.next_f64() < 0.04 * id as f64 {
                        base + 1.0 + rng.next_f64()
                    } else {
                        base
                    }
                })
                .collect();
            SpikeRateTrace::from_rates(format!("neuron{id}"), rates).expect("valid trace")
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let traces = match std::env::args().nth(1) {
        Some(path) => load_traces(path)?,
        None => synthetic(),
    };
    println!(
        "{:<10} {:>9} {:>6} {:>8} {:>8} {:>8}",
        "neuron", "threshold", "ones", "EP(k=0)", "EP(k=2)", "SWLZ"
    );
    for trace in &traces {
        let (x, threshold) = binarize(trace)?;
        println!(
            "{:<10} {threshold:>9.4} {:>6} {:>8.4} {:>8.4} {:>8.4}",
            trace.neuron_id,
            x.ones(),
            ep_entropy(&x, 0)?.value,
            ep_entropy(&x, 2)?.value,
            estimate(&x, Method::Swlz, 0)?.value
        );
    }
    Ok(())
}
