//! Entropy-rate estimation for binary spike trains.
//!
//! The crate estimates how many bits per symbol a binary sequence carries,
//! using the empirical conditional entropy of the next symbol given a context
//! of `k` previous symbols. It also provides the competing estimators this
//! is usually compared with (three Lempel-Ziv variants and an empirical
//! stationary-distribution method), exact Markov sources to test them
//! against, window sweeps for short or nonstationary recordings, and a
//! thresholding step that turns inferred spike-rate traces into binary trains.
//!
//! | module          | contents                                                   |
//! |-----------------|------------------------------------------------------------|
//! | [`markov`]      | Markov sources: stationary solve, exact rate, marginalize, sample |
//! | [`lz`]          | LZ78, LZ76 and SWLZ parsers with brute-force references    |
//! | [`estimators`]  | context counts, EP and ESD estimators                      |
//! | [`window`]      | window plans, sweeps, summaries, CSV                        |
//! | [`ingest`]      | spike-rate CSV loading and 3-sigma binarization            |
//! | [`benchmark`]   | convergence study over sampled Markov sources              |
//! | [`cli`]         | the `spike-entropy` command line                           |
//!
//! ```
//! use spike_entropy::{estimators::ep_entropy, markov::{MarkovSourceSpec, exact_entropy_rate, sample}};
//!
//! let source = MarkovSourceSpec::benchmark_order3();
//! let seq = sample(&source, 1000, 7).unwrap();
//! let estimate = ep_entropy(&seq, 3).unwrap().value;
//! let exact = exact_entropy_rate(&source).unwrap();
//! assert!((estimate - exact).abs() < 0.1);
//! ```

pub mod benchmark;
pub mod cli;
pub mod estimators;
pub mod ingest;
pub mod lz;
pub mod markov;
pub mod sequence;
pub mod window;

pub use estimators::{ContextCountTable, EntropyEstimate, Method};
pub use lz::{ParseResult, Scheme};
pub use markov::{MarkovSourceSpec, StationaryDistribution};
pub use sequence::BinarySequence;
