//! Brute-force reference parsers.
//!
//! Quadratic-or-worse substring search straight from the definitions. They
//! exist to cross-check the automaton-backed parsers on short inputs and
//! share no code with them.

use std::collections::HashSet;

/// Whether `needle` is a contiguous substring of `haystack`.
pub fn occurs(haystack: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

/// Incremental-dictionary phrase lengths.
pub fn lz78_phrase_lengths(x: &[u8]) -> Vec<usize> {
    let mut dictionary: HashSet<&[u8]> = HashSet::new();
    let mut lengths = Vec::new();
    let mut start = 0;
    while start < x.len() {
        let mut end = start + 1;
        while end < x.len() && dictionary.contains(&x[start..end]) {
            end += 1;
        }
        dictionary.insert(&x[start..end]);
        lengths.push(end - start);
        start = end;
    }
    lengths
}

/// Exhaustive-history phrase lengths: the phrase at `p` is the shortest
/// `x[p..=q]` that is not a substring of `x[..q]`.
pub fn lz76_phrase_lengths(x: &[u8]) -> Vec<usize> {
    let n = x.len();
    let mut lengths = Vec::new();
    let mut p = 0;
    while p < n {
        let mut len = 1;
        while p + len <= n && occurs(&x[..p + len - 1], &x[p..p + len]) {
            len += 1;
        }
        let len = len.min(n - p);
        lengths.push(len);
        p += len;
    }
    lengths
}

/// Per-position match lengths: `L_i` is the length of the shortest string
/// starting at `i` that is not a substring of `x[..i]`, or the remaining
/// suffix length when every prefix of the suffix occurs.
pub fn swlz_match_lengths(x: &[u8]) -> Vec<usize> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (1..=n - i)
                .find(|&len| !occurs(&x[..i], &x[i..i + len]))
                .unwrap_or(n - i)
        })
        .collect()
}
