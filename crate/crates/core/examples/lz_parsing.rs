//! LZ78, LZ76 and sliding-window match-length parses of a sequence.
//!
//! ```text
//! cargo run --example lz_parsing -- 0011001010100111
//! ```

use spike_entropy::lz::{self, Scheme};
use spike_entropy::BinarySequence;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "0011001010100111".into());
    let x = BinarySequence::from_bits(&text)?;
    for scheme in [Scheme::Lz78, Scheme::Lz76, Scheme::Swlz] {
        let r = lz::parse(scheme, &x)?;
        println!("{scheme:<5} {}", r.pipe_notation(&x));
        match r.phrase_count {
            Some(c) => println!("      c = {c}, complexity = {:.6}", r.complexity),
            None => println!(
                "      lengths = {:?}, sum = {}, complexity = {:.6}, rate = {:.6}",
                r.match_lengths.as_deref().unwrap_or_default(),
                r.match_length_sum().unwrap_or(0),
                r.complexity,
                r.rate_estimate
            ),
        }
    }
    Ok(())
}
