//! Exact entropy rates of the bundled order-3 source and its lower-order
//! marginalizations.
//!
//! ```text
//! cargo run --example markov_oracle
//! ```

use spike_entropy::markov::{
    exact_entropy_rate, marginalize_to, stationary_distribution, stationary_symbol_one,
    MarkovSourceSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let source = MarkovSourceSpec::benchmark_order3();
    println!("order  P(1)      rate (bits)");
    for m in (0..=3).rev() {
        let spec = marginalize_to(&source, m)?;
        println!(
            "{m:>5}  {:.6}  {:.6}",
            stationary_symbol_one(&spec)?,
            exact_entropy_rate(&spec)?
        );
    }

    let pi = stationary_distribution(&source)?;
    println!(
        "\nstationary distribution of the order-3 source (residual {:.1e}):",
        pi.residual
    );
    for (c, p) in pi.probs.iter().enumerate() {
        println!("  {c:03b}  {p:.6}");
    }

    println!(
        "\norder-1 reduction as JSON:\n{}",
        marginalize_to(&source, 1)?.to_json()
    );
    Ok(())
}
