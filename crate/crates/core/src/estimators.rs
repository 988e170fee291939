//! Entropy-rate estimators built on empirical context counts.
//!
//! The empirical-probability (EP) estimator is the plug-in conditional
//! entropy `H(X_{k+1} | X_k, ..., X_1)`: every length-`k + 1` window of the
//! sequence contributes one (context, symbol) observation, contexts are
//! weighted by their empirical frequency, and no smoothing or escape mass is
//! added. The empirical-stationary-distribution (ESD) estimator uses the same
//! counts to build a transition table, but weights its rows by that table's
//! stationary distribution instead.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lz::{self, LzError, Scheme};
use crate::markov::{self, entropy_bits, MAX_ORDER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EstimateError {
    #[error("sequence of length {n} is too short for context length {k}")]
    SequenceTooShort { n: usize, k: usize },
    #[error("context length {0} is not supported here")]
    InvalidOrder(usize),
    #[error("LZ parse failed: {0}")]
    Lz(#[from] LzError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "EP")]
    Ep,
    #[serde(rename = "ESD")]
    Esd,
    #[serde(rename = "LZ78")]
    Lz78,
    #[serde(rename = "LZ76")]
    Lz76,
    #[serde(rename = "SWLZ")]
    Swlz,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Ep,
        Method::Esd,
        Method::Lz78,
        Method::Lz76,
        Method::Swlz,
    ];

    pub fn uses_context(self) -> bool {
        matches!(self, Method::Ep | Method::Esd)
    }

    pub fn lz_scheme(self) -> Option<Scheme> {
        match self {
            Method::Lz78 => Some(Scheme::Lz78),
            Method::Lz76 => Some(Scheme::Lz76),
            Method::Swlz => Some(Scheme::Swlz),
            Method::Ep | Method::Esd => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ep => "EP",
            Method::Esd => "ESD",
            Method::Lz78 => "LZ78",
            Method::Lz76 => "LZ76",
            Method::Swlz => "SWLZ",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ep" => Ok(Method::Ep),
            "esd" => Ok(Method::Esd),
            "lz78" => Ok(Method::Lz78),
            "lz76" => Ok(Method::Lz76),
            "swlz" => Ok(Method::Swlz),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Counts `N(c, s)` of symbol `s` following the length-`k` context `c`.
///
/// Contexts are indexed oldest-symbol-first in base 2. The first `k` symbols
/// of the input only serve as context, so the total is `n - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextCountTable {
    context_length: usize,
    counts: Vec<[u64; 2]>,
}

impl ContextCountTable {
    pub fn context_length(&self) -> usize {
        self.context_length
    }

    pub fn num_contexts(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, context: usize, symbol: u8) -> u64 {
        self.counts[context][symbol as usize]
    }

    /// `N(c) = N(c, 0) + N(c, 1)`.
    pub fn context_total(&self, context: usize) -> u64 {
        self.counts[context][0] + self.counts[context][1]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|r| r[0] + r[1]).sum()
    }

    /// `N(c, s) / N(c)`, or `None` for an unseen context.
    pub fn relative_frequency(&self, context: usize, symbol: u8) -> Option<f64> {
        let total = self.context_total(context);
        (total > 0).then(|| self.count(context, symbol) as f64 / total as f64)
    }

    pub fn rows(&self) -> &[[u64; 2]] {
        &self.counts
    }

    /// Context label, oldest symbol first (`""` when `k = 0`).
    pub fn context_label(&self, context: usize) -> String {
        (0..self.context_length)
            .rev()
            .map(|b| if (context >> b) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Empirical transition table; unseen contexts get the uniform row.
    pub fn transition_estimate(&self) -> Vec<[f64; 2]> {
        self.counts
            .iter()
            .map(|&[a, b]| {
                let total = (a + b) as f64;
                if total > 0.0 {
                    [a as f64 / total, b as f64 / total]
                } else {
                    [0.5, 0.5]
                }
            })
            .collect()
    }

    /// Empirical context frequencies `N(c) / (n - k)`.
    pub fn context_frequencies(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.counts
            .iter()
            .map(|r| (r[0] + r[1]) as f64 / total)
            .collect()
    }

    /// Plug-in conditional entropy of the next symbol given the context.
    pub fn conditional_entropy(&self) -> f64 {
        let total = self.total() as f64;
        self.counts
            .iter()
            .filter(|r| r[0] + r[1] > 0)
            .map(|&[a, b]| {
                let n_c = (a + b) as f64;
                n_c / total * entropy_bits(&[a as f64 / n_c, b as f64 / n_c])
            })
            .sum()
    }
}

pub fn count_contexts(x: &[u8], k: usize) -> Result<ContextCountTable, EstimateError> {
    if k > MAX_ORDER {
        return Err(EstimateError::InvalidOrder(k));
    }
    if x.len() <= k {
        return Err(EstimateError::SequenceTooShort { n: x.len(), k });
    }
    let mask = (1usize << k) - 1;
    let mut counts = vec![[0u64; 2]; 1 << k];
    let mut context = x[..k]
        .iter()
        .fold(0usize, |acc, &s| (acc << 1) | s as usize);
    for &symbol in &x[k..] {
        counts[context][symbol as usize] += 1;
        context = ((context << 1) | symbol as usize) & mask;
    }
    Ok(ContextCountTable {
        context_length: k,
        counts,
    })
}

/// Where an estimate was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowRef {
    Whole,
    /// 1-based start position and length.
    Span {
        start: usize,
        length: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub method: Method,
    /// Context length (EP / ESD only).
    pub k: Option<usize>,
    pub window: WindowRef,
    /// Bits per symbol.
    pub value: f64,
}

/// How the EP estimator treats the first `k` positions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EpWeighting {
    /// `H(X_{k+1} | X_k..X_1)`, the large-`n` form.
    #[default]
    Conditional,
    /// Chain-rule form for a finite sequence:
    /// `(H_0 + H_1 + ... + H_{k-1} + (n - k) H_k) / n`, with `H_j` the
    /// order-`j` plug-in conditional entropy.
    FiniteLength,
}

pub fn ep_entropy(x: &[u8], k: usize) -> Result<EntropyEstimate, EstimateError> {
    ep_entropy_with(x, k, EpWeighting::Conditional)
}

pub fn ep_entropy_with(
    x: &[u8],
    k: usize,
    weighting: EpWeighting,
) -> Result<EntropyEstimate, EstimateError> {
    let table = count_contexts(x, k)?;
    let value = match weighting {
        EpWeighting::Conditional => table.conditional_entropy(),
        EpWeighting::FiniteLength => {
            let n = x.len() as f64;
            let lower: f64 = (0..k)
                .map(|j| count_contexts(x, j).map(|t| t.conditional_entropy()))
                .sum::<Result<f64, _>>()?;
            (lower + (n - k as f64) * table.conditional_entropy()) / n
        }
    };
    Ok(EntropyEstimate {
        method: Method::Ep,
        k: Some(k),
        window: WindowRef::Whole,
        value,
    })
}

/// Entropy rate of the empirical order-`k` chain weighted by its stationary
/// distribution. Falls back to the empirical context frequencies when the
/// empirical chain is reducible or the solve does not converge.
pub fn esd_entropy(x: &[u8], k: usize) -> Result<EntropyEstimate, EstimateError> {
    if k == 0 {
        return Err(EstimateError::InvalidOrder(0));
    }
    let table = count_contexts(x, k)?;
    let transition = table.transition_estimate();
    let frequencies = table.context_frequencies();
    let weights = if markov::is_irreducible(&transition, k) {
        markov::solve_stationary(&transition, k, &frequencies)
            .map(|pi| pi.probs)
            .unwrap_or(frequencies)
    } else {
        frequencies
    };
    let value = markov::weighted_row_entropy(&weights, &transition);
    Ok(EntropyEstimate {
        method: Method::Esd,
        k: Some(k),
        window: WindowRef::Whole,
        value,
    })
}

/// Dispatches to the estimator for `method`. `k` is ignored by the LZ
/// methods, which report their entropy-rate estimate.
pub fn estimate(x: &[u8], method: Method, k: usize) -> Result<EntropyEstimate, EstimateError> {
    match method {
        Method::Ep => ep_entropy(x, k),
        Method::Esd => esd_entropy(x, k),
        Method::Lz78 | Method::Lz76 | Method::Swlz => {
            let scheme = method.lz_scheme().expect("LZ method");
            let parsed = lz::parse(scheme, x)?;
            Ok(EntropyEstimate {
                method,
                k: None,
                window: WindowRef::Whole,
                value: parsed.rate_estimate,
            })
        }
    }
}
