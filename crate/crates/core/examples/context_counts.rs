//! Context count tables and the EP / ESD estimates they produce.
//!
//! ```text
//! cargo run --example context_counts -- 01001011010110001100
//! ```

use spike_entropy::estimators::{count_contexts, ep_entropy, esd_entropy};
use spike_entropy::BinarySequence;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "01001011010110001100".into());
    let x = BinarySequence::from_bits(&text)?;
    for k in 0..=2 {
        let table = count_contexts(&x, k)?;
        println!("k = {k}");
        for c in 0..table.num_contexts() {
            let label = table.context_label(c);
            let [n0, n1] = table.rows()[c];
            println!(
                "  {:>3}  next=0: {n0:>3}   next=1: {n1:>3}",
                if label.is_empty() { "-" } else { &label }
            );
        }
        let esd = if k > 0 {
            format!("{:.4}", esd_entropy(&x, k)?.value)
        } else {
            "n/a".into()
        };
        println!("  EP = {:.4} bits, ESD = {esd}", ep_entropy(&x, k)?.value);
    }
    Ok(())
}
