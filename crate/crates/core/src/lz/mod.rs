//! Lempel-Ziv parsing schemes and the complexity values derived from them.
//!
//! Three parsers are provided:
//!
//! - [`lz78`]: incremental dictionary. Each phrase is the shortest prefix of
//!   the remainder not yet in the dictionary. Complexity `c log2(c) / n`.
//! - [`lz76`]: exhaustive history. The phrase at `p` is the shortest
//!   `x_p..x_q` that is not a substring of `x_1..x_{q-1}`, so the copy source
//!   may overlap the phrase itself. Complexity `(c / n) log2(n)`.
//! - [`swlz`]: per-position match lengths. `L_i` is the length of the shortest
//!   string starting at `i` that does not occur in `x_1..x_{i-1}`. The literal
//!   complexity is `(sum L_i / n) / log2(n)`, which tends to the reciprocal
//!   of the entropy rate; `rate_estimate` carries `n log2(n) / sum L_i`.
//!
//! In all three a final phrase cut short by the end of the input is counted,
//! and an SWLZ match that runs to the end of the input has `L_i = n - i + 1`.
//!
//! The LZ76 and SWLZ parsers walk an online suffix automaton of the history,
//! which costs `O(sum of match lengths)`. Long constant runs are therefore
//! quadratic; typical spike trains are not.

mod automaton;
pub mod naive;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequence::bits_to_string;
use automaton::SuffixAutomaton;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LzError {
    #[error("cannot parse an empty sequence")]
    EmptySequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "LZ78")]
    Lz78,
    #[serde(rename = "LZ76")]
    Lz76,
    #[serde(rename = "SWLZ")]
    Swlz,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Lz78 => "LZ78",
            Scheme::Lz76 => "LZ76",
            Scheme::Swlz => "SWLZ",
        })
    }
}

/// Outcome of one parse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseResult {
    pub scheme: Scheme,
    /// Phrase list (LZ78 / LZ76).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phrases: Option<Vec<String>>,
    /// Match length per position (SWLZ).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub match_lengths: Option<Vec<usize>>,
    /// Phrase count (LZ78 / LZ76).
    #[serde(rename = "c", default, skip_serializing_if = "Option::is_none")]
    pub phrase_count: Option<usize>,
    /// Value of the scheme's complexity formula, in bits/symbol.
    pub complexity: f64,
    /// Entropy-rate estimate in bits/symbol. Equals `complexity` for LZ78 and
    /// LZ76; the reciprocal form for SWLZ.
    pub rate_estimate: f64,
}

impl ParseResult {
    /// Pipe-delimited segments. For SWLZ each segment is `x_i..x_{i+L_i-1}`.
    pub fn pipe_notation(&self, input: &[u8]) -> String {
        match (&self.phrases, &self.match_lengths) {
            (Some(phrases), _) => phrases.join("|"),
            (None, Some(lengths)) => lengths
                .iter()
                .enumerate()
                .map(|(i, &len)| bits_to_string(&input[i..i + len]))
                .collect::<Vec<_>>()
                .join("|"),
            (None, None) => String::new(),
        }
    }

    pub fn match_length_sum(&self) -> Option<usize> {
        self.match_lengths.as_ref().map(|l| l.iter().sum())
    }
}

fn phrases_from_lengths(x: &[u8], lengths: &[usize]) -> Vec<String> {
    let mut start = 0;
    lengths
        .iter()
        .map(|&len| {
            let phrase = bits_to_string(&x[start..start + len]);
            start += len;
            phrase
        })
        .collect()
}

/// Incremental-dictionary parse.
pub fn lz78(x: &[u8]) -> Result<ParseResult, LzError> {
    if x.is_empty() {
        return Err(LzError::EmptySequence);
    }
    const NONE: u32 = u32::MAX;
    let mut trie: Vec<[u32; 2]> = vec![[NONE; 2]];
    let mut lengths = Vec::new();
    let mut node = 0usize;
    let mut len = 0usize;
    for &symbol in x {
        len += 1;
        let child = trie[node][symbol as usize];
        if child == NONE {
            trie[node][symbol as usize] = trie.len() as u32;
            trie.push([NONE; 2]);
            lengths.push(len);
            node = 0;
            len = 0;
        } else {
            node = child as usize;
        }
    }
    if len > 0 {
        lengths.push(len);
    }
    let c = lengths.len();
    let complexity = c as f64 * (c as f64).log2() / x.len() as f64;
    Ok(ParseResult {
        scheme: Scheme::Lz78,
        phrases: Some(phrases_from_lengths(x, &lengths)),
        match_lengths: None,
        phrase_count: Some(c),
        complexity,
        rate_estimate: complexity,
    })
}

/// Exhaustive-history parse.
pub fn lz76(x: &[u8]) -> Result<ParseResult, LzError> {
    if x.is_empty() {
        return Err(LzError::EmptySequence);
    }
    let n = x.len();
    let mut sam = SuffixAutomaton::with_capacity(n);
    let mut built = 0;
    let mut lengths = Vec::new();
    let mut p = 0;
    while p < n {
        while built < p {
            sam.push(x[built]);
            built += 1;
        }
        let rest = &x[p..];
        // longest copy lying entirely inside x[..p]
        let inside = sam.longest_prefix_match(rest);
        // An overlapping copy starting at p - d with length > d contains a
        // length-d copy inside x[..p], so only d <= inside can improve on it.
        let mut best = inside;
        for d in 1..=inside.min(p) {
            if best == rest.len() {
                break;
            }
            let lcp = x[p - d..]
                .iter()
                .zip(rest)
                .take_while(|(a, b)| a == b)
                .count();
            best = best.max(lcp);
        }
        let len = if best < rest.len() {
            best + 1
        } else {
            rest.len()
        };
        lengths.push(len);
        p += len;
    }
    let c = lengths.len();
    let complexity = c as f64 / n as f64 * (n as f64).log2();
    Ok(ParseResult {
        scheme: Scheme::Lz76,
        phrases: Some(phrases_from_lengths(x, &lengths)),
        match_lengths: None,
        phrase_count: Some(c),
        complexity,
        rate_estimate: complexity,
    })
}

/// Per-position match lengths against the whole preceding prefix.
pub fn swlz(x: &[u8]) -> Result<ParseResult, LzError> {
    if x.is_empty() {
        return Err(LzError::EmptySequence);
    }
    let n = x.len();
    let mut sam = SuffixAutomaton::with_capacity(n);
    let mut lengths = Vec::with_capacity(n);
    for i in 0..n {
        let rest = &x[i..];
        let matched = sam.longest_prefix_match(rest);
        lengths.push(if matched < rest.len() {
            matched + 1
        } else {
            rest.len()
        });
        sam.push(x[i]);
    }
    let total: usize = lengths.iter().sum();
    let (complexity, rate_estimate) = if n == 1 {
        (0.0, 0.0)
    } else {
        let log_n = (n as f64).log2();
        (
            total as f64 / n as f64 / log_n,
            n as f64 * log_n / total as f64,
        )
    };
    Ok(ParseResult {
        scheme: Scheme::Swlz,
        phrases: None,
        match_lengths: Some(lengths),
        phrase_count: None,
        complexity,
        rate_estimate,
    })
}

pub fn parse(scheme: Scheme, x: &[u8]) -> Result<ParseResult, LzError> {
    match scheme {
        Scheme::Lz78 => lz78(x),
        Scheme::Lz76 => lz76(x),
        Scheme::Swlz => swlz(x),
    }
}
