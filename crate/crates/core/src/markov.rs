//! Binary Markov sources of arbitrary order.
//!
//! A source of order `m` is described by a row-stochastic table over the
//! `2^m` contexts and a distribution over those contexts. Contexts are indexed
//! by the integer whose base-2 digits are the context symbols, oldest first,
//! so the context `011` (oldest `0`, newest `1`) is index 3. Appending symbol
//! `s` to context `c` moves the chain to `((c << 1) | s) & (2^m - 1)`.
//!
//! These sources are the exact oracle for every estimator in the crate: the
//! entropy rate is computed from the transition table and the stationary
//! distribution of the induced context chain, never from a rounded context
//! distribution supplied by the caller.

use std::collections::VecDeque;
use std::path::Path;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequence::BinarySequence;

/// Max-norm tolerance on `|pi - pi P|` for a converged stationary solve.
pub const STATIONARY_TOLERANCE: f64 = 1e-10;
/// Total iteration cap for the stationary solve.
pub const STATIONARY_MAX_ITERATIONS: usize = 1_000_000;
/// Plain power iterations attempted before switching to the lazy chain.
const PLAIN_ITERATIONS: usize = 10_000;
const ROW_TOLERANCE: f64 = 1e-12;

/// Largest supported order; `2^m` contexts are materialized.
pub const MAX_ORDER: usize = 24;

const BENCHMARK_ORDER3_JSON: &str = include_str!("../fixtures/benchmark_order3.json");

#[derive(Debug, Error)]
pub enum MarkovError {
    #[error("invalid Markov source: {0}")]
    InvalidSpec(String),
    #[error("order must be at least 1 to marginalize (got {0})")]
    InvalidOrder(usize),
    #[error(
        "stationary solve did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NonConvergent { iterations: usize, residual: f64 },
    #[error("sample length must be positive")]
    EmptySample,
    #[error("malformed source JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Order, transition table and context distribution of a binary Markov source.
///
/// `transition[c][s]` is `P(next = s | context c)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct MarkovSourceSpec {
    order: usize,
    transition: Vec<[f64; 2]>,
    context_dist: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSpec {
    order: usize,
    transition: Vec<[f64; 2]>,
    context_dist: Vec<f64>,
}

impl TryFrom<RawSpec> for MarkovSourceSpec {
    type Error = MarkovError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        MarkovSourceSpec::new(raw.order, raw.transition, raw.context_dist)
    }
}

/// Stationary distribution of a context chain together with its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    pub probs: Vec<f64>,
    /// `max_c |pi(c) - (pi P)(c)|` at the returned solution.
    pub residual: f64,
}

impl MarkovSourceSpec {
    pub fn new(
        order: usize,
        transition: Vec<[f64; 2]>,
        context_dist: Vec<f64>,
    ) -> Result<Self, MarkovError> {
        let spec = Self {
            order,
            transition,
            context_dist,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// An order-0 source emitting `1` with probability `p_one`.
    pub fn iid(p_one: f64) -> Result<Self, MarkovError> {
        Self::new(0, vec![[1.0 - p_one, p_one]], vec![1.0])
    }

    /// The order-3 benchmark source shipped in `fixtures/benchmark_order3.json`.
    pub fn benchmark_order3() -> Self {
        serde_json::from_str(BENCHMARK_ORDER3_JSON).expect("bundled fixture is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, MarkovError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MarkovError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn transition(&self) -> &[[f64; 2]] {
        &self.transition
    }

    pub fn context_dist(&self) -> &[f64] {
        &self.context_dist
    }

    pub fn num_contexts(&self) -> usize {
        1 << self.order
    }

    fn validate(&self) -> Result<(), MarkovError> {
        let invalid = |msg: String| Err(MarkovError::InvalidSpec(msg));
        if self.order > MAX_ORDER {
            return invalid(format!("order {} exceeds maximum {MAX_ORDER}", self.order));
        }
        let states = 1usize << self.order;
        if self.transition.len() != states {
            return invalid(format!(
                "transition table has {} rows, expected {states}",
                self.transition.len()
            ));
        }
        if self.context_dist.len() != states {
            return invalid(format!(
                "context_dist has {} entries, expected {states}",
                self.context_dist.len()
            ));
        }
        for (c, row) in self.transition.iter().enumerate() {
            if row.iter().any(|p| !(0.0..=1.0).contains(p)) {
                return invalid(format!("transition row {c} has an entry outside [0, 1]"));
            }
            if (row[0] + row[1] - 1.0).abs() > ROW_TOLERANCE {
                return invalid(format!("transition row {c} sums to {}", row[0] + row[1]));
            }
        }
        if self.context_dist.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return invalid("context_dist has an entry outside [0, 1]".into());
        }
        let total: f64 = self.context_dist.iter().sum();
        if (total - 1.0).abs() > ROW_TOLERANCE {
            return invalid(format!("context_dist sums to {total}"));
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn next_context(context: usize, symbol: u8, order: usize) -> usize {
    ((context << 1) | symbol as usize) & ((1 << order) - 1)
}

/// `-p log2 p` with the convention `0 log 0 = 0`.
#[inline]
pub fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Binary entropy function in bits.
pub fn binary_entropy(p: f64) -> f64 {
    plogp(p) + plogp(1.0 - p)
}

/// Entropy in bits of a probability vector.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    probs.iter().copied().map(plogp).sum()
}

/// Stationary distribution of the `2^m`-state context chain induced by the
/// transition table.
///
/// The power iteration starts from the uniform vector over contexts reachable
/// from the support of `context_dist`, so a reducible chain yields a
/// stationary distribution of the recurrent classes reachable from there.
pub fn stationary_distribution(
    spec: &MarkovSourceSpec,
) -> Result<StationaryDistribution, MarkovError> {
    solve_stationary(&spec.transition, spec.order, &spec.context_dist)
}

pub(crate) fn solve_stationary(
    transition: &[[f64; 2]],
    order: usize,
    start_weights: &[f64],
) -> Result<StationaryDistribution, MarkovError> {
    let states = 1usize << order;
    if states == 1 {
        return Ok(StationaryDistribution {
            probs: vec![1.0],
            residual: 0.0,
        });
    }

    let reachable = reachable_from(transition, order, start_weights);
    let count = reachable.iter().filter(|&&r| r).count().max(1);
    let mut pi: Vec<f64> = reachable
        .iter()
        .map(|&r| if r { 1.0 / count as f64 } else { 0.0 })
        .collect();
    let mut stepped = vec![0.0; states];

    let mut residual = f64::INFINITY;
    for iteration in 0..STATIONARY_MAX_ITERATIONS {
        step(transition, order, &pi, &mut stepped);
        residual = max_abs_diff(&pi, &stepped);
        if residual <= STATIONARY_TOLERANCE {
            normalize(&mut pi);
            step(transition, order, &pi, &mut stepped);
            let residual = max_abs_diff(&pi, &stepped);
            return Ok(StationaryDistribution {
                probs: pi,
                residual,
            });
        }
        if iteration < PLAIN_ITERATIONS {
            std::mem::swap(&mut pi, &mut stepped);
        } else {
            // lazy chain (I + P) / 2: aperiodic, same fixed points as P
            for (p, s) in pi.iter_mut().zip(&stepped) {
                *p = 0.5 * (*p + s);
            }
        }
    }
    Err(MarkovError::NonConvergent {
        iterations: STATIONARY_MAX_ITERATIONS,
        residual,
    })
}

fn step(transition: &[[f64; 2]], order: usize, pi: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for (c, (&mass, row)) in pi.iter().zip(transition).enumerate() {
        if mass == 0.0 {
            continue;
        }
        out[next_context(c, 0, order)] += mass * row[0];
        out[next_context(c, 1, order)] += mass * row[1];
    }
}

fn normalize(v: &mut [f64]) {
    let total: f64 = v.iter().sum();
    if total > 0.0 {
        v.iter_mut().for_each(|x| *x /= total);
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn reachable_from(transition: &[[f64; 2]], order: usize, start_weights: &[f64]) -> Vec<bool> {
    let states = 1usize << order;
    let mut seen = vec![false; states];
    let mut queue: VecDeque<usize> = (0..states).filter(|&c| start_weights[c] > 0.0).collect();
    if queue.is_empty() {
        queue.extend(0..states);
    }
    for &c in &queue {
        seen[c] = true;
    }
    while let Some(c) = queue.pop_front() {
        for s in 0..2u8 {
            if transition[c][s as usize] > 0.0 {
                let next = next_context(c, s, order);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Whether every context reaches every other context with positive probability.
pub(crate) fn is_irreducible(transition: &[[f64; 2]], order: usize) -> bool {
    let states = 1usize << order;
    if states == 1 {
        return true;
    }
    let mut start = vec![0.0; states];
    start[0] = 1.0;
    if !reachable_from(transition, order, &start).iter().all(|&r| r) {
        return false;
    }
    // reverse reachability to context 0
    let mut seen = vec![false; states];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(target) = queue.pop_front() {
        for (c, row) in transition.iter().enumerate() {
            if seen[c] {
                continue;
            }
            let hits =
                (0..2u8).any(|s| row[s as usize] > 0.0 && next_context(c, s, order) == target);
            if hits {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    }
    seen.iter().all(|&r| r)
}

/// Entropy rate of the source in bits/symbol:
/// `-sum_c pi(c) sum_s T[c][s] log2 T[c][s]` with `pi` the exact stationary
/// distribution of the context chain.
pub fn exact_entropy_rate(spec: &MarkovSourceSpec) -> Result<f64, MarkovError> {
    let pi = stationary_distribution(spec)?;
    Ok(weighted_row_entropy(&pi.probs, &spec.transition))
}

pub(crate) fn weighted_row_entropy(weights: &[f64], transition: &[[f64; 2]]) -> f64 {
    weights
        .iter()
        .zip(transition)
        .map(|(&w, row)| w * entropy_bits(row))
        .sum()
}

/// Marginal probability of emitting `1` under the stationary regime.
pub fn stationary_symbol_one(spec: &MarkovSourceSpec) -> Result<f64, MarkovError> {
    let pi = stationary_distribution(spec)?;
    Ok(pi
        .probs
        .iter()
        .zip(&spec.transition)
        .map(|(p, row)| p * row[1])
        .sum())
}

/// Derives the consistent order-`m - 1` source.
///
/// Builds the `(m + 1)`-symbol joint from the exact stationary distribution,
/// sums out the oldest symbol, and conditions the resulting `m`-symbol joint
/// on its first `m - 1` symbols. Contexts of zero probability get the uniform
/// row.
pub fn marginalize_order(spec: &MarkovSourceSpec) -> Result<MarkovSourceSpec, MarkovError> {
    let m = spec.order;
    if m == 0 {
        return Err(MarkovError::InvalidOrder(0));
    }
    let pi = stationary_distribution(spec)?;
    let states = 1usize << m;

    let mut shifted = vec![0.0; states];
    for (c, row) in spec.transition.iter().enumerate() {
        for s in 0..2 {
            shifted[((c << 1) | s) & (states - 1)] += pi.probs[c] * row[s];
        }
    }

    let reduced = states / 2;
    let mut transition = Vec::with_capacity(reduced);
    let mut context_dist = Vec::with_capacity(reduced);
    for c in 0..reduced {
        let (a, b) = (shifted[c << 1], shifted[(c << 1) | 1]);
        let total = a + b;
        context_dist.push(total);
        transition.push(if total > 0.0 {
            [a / total, b / total]
        } else {
            [0.5, 0.5]
        });
    }
    if m == 1 {
        context_dist = vec![1.0];
    } else {
        normalize(&mut context_dist);
    }
    MarkovSourceSpec::new(m - 1, transition, context_dist)
}

/// Repeatedly marginalizes down to `order`.
pub fn marginalize_to(
    spec: &MarkovSourceSpec,
    order: usize,
) -> Result<MarkovSourceSpec, MarkovError> {
    if order > spec.order {
        return Err(MarkovError::InvalidSpec(format!(
            "cannot raise order {} to {order}",
            spec.order
        )));
    }
    let mut current = spec.clone();
    while current.order > order {
        current = marginalize_order(&current)?;
    }
    Ok(current)
}

/// Deterministic source of uniform variates in `[0, 1)`.
///
/// ChaCha8 keyed by `seed_from_u64`; each variate takes the top 53 bits of one
/// `u64` output. The stream is identical on every platform.
pub struct UniformStream(ChaCha8Rng);

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

fn draw_index(probs: &[f64], u: f64) -> usize {
    let mut cumulative = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// Draws `n` symbols from the source.
///
/// The first `m` symbols are the initial context drawn from `context_dist`
/// (oldest first); every later symbol follows the transition table.
pub fn sample(spec: &MarkovSourceSpec, n: usize, seed: u64) -> Result<BinarySequence, MarkovError> {
    if n == 0 {
        return Err(MarkovError::EmptySample);
    }
    let m = spec.order;
    let mut rng = UniformStream::new(seed);
    let mut context = draw_index(&spec.context_dist, rng.next_f64());
    let mut symbols = Vec::with_capacity(n.max(m));
    for bit in (0..m).rev() {
        symbols.push(((context >> bit) & 1) as u8);
    }
    while symbols.len() < n {
        let symbol = u8::from(rng.next_f64() >= spec.transition[context][0]);
        symbols.push(symbol);
        context = next_context(context, symbol, m);
    }
    symbols.truncate(n);
    Ok(BinarySequence::new(symbols).expect("sampled symbols are binary"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Direct linear solve of `pi (I - P) = 0`, `sum pi = 1` by Gaussian
    /// elimination. Independent of the iterative solver.
    #[allow(clippy::needless_range_loop)]
    fn direct_stationary(spec: &MarkovSourceSpec) -> Vec<f64> {
        let n = spec.num_contexts();
        let mut a = vec![vec![0.0; n + 1]; n];
        // rows: balance equations for states 0..n-1, last row replaced by normalization
        for j in 0..n {
            for i in 0..n {
                let mut p = 0.0;
                for s in 0..2u8 {
                    if next_context(i, s, spec.order) == j {
                        p += spec.transition[i][s as usize];
                    }
                }
                a[j][i] = if i == j { 1.0 - p } else { -p };
            }
        }
        for i in 0..n {
            a[n - 1][i] = 1.0;
        }
        a[n - 1][n] = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
                .unwrap();
            a.swap(col, pivot);
            for row in 0..n {
                if row != col {
                    let f = a[row][col] / a[col][col];
                    for k in col..=n {
                        a[row][k] -= f * a[col][k];
                    }
                }
            }
        }
        (0..n).map(|i| a[i][n] / a[i][i]).collect()
    }

    #[test]
    fn order_zero_stationary_is_trivial() {
        let spec = MarkovSourceSpec::new(0, vec![[0.55, 0.45]], vec![1.0]).unwrap();
        assert_eq!(stationary_distribution(&spec).unwrap().probs, vec![1.0]);
    }

    #[test]
    fn two_state_balance() {
        let spec =
            MarkovSourceSpec::new(1, vec![[0.4, 0.6], [2.0 / 3.0, 1.0 / 3.0]], vec![0.5, 0.5])
                .unwrap();
        let pi = stationary_distribution(&spec).unwrap();
        assert_abs_diff_eq!(pi.probs[0], 10.0 / 19.0, epsilon = 1e-9);
        assert_abs_diff_eq!(pi.probs[1], 9.0 / 19.0, epsilon = 1e-9);
        assert!(pi.residual <= STATIONARY_TOLERANCE);
    }

    #[test]
    fn iterative_matches_direct_solve_for_small_orders() {
        let specs = [
            MarkovSourceSpec::new(1, vec![[0.9, 0.1], [0.3, 0.7]], vec![1.0, 0.0]).unwrap(),
            MarkovSourceSpec::new(
                2,
                vec![[0.2, 0.8], [0.6, 0.4], [0.5, 0.5], [0.95, 0.05]],
                vec![0.25; 4],
            )
            .unwrap(),
            marginalize_to(&MarkovSourceSpec::benchmark_order3(), 2).unwrap(),
        ];
        for spec in &specs {
            let direct = direct_stationary(spec);
            let iterative = stationary_distribution(spec).unwrap();
            for (a, b) in direct.iter().zip(&iterative.probs) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn periodic_chain_uses_lazy_fallback() {
        // 01 <-> 10 is a period-2 cycle fed unevenly by the transient 00 and 11
        let spec = MarkovSourceSpec::new(
            2,
            vec![[0.5, 0.5], [1.0, 0.0], [0.0, 1.0], [1.0, 0.0]],
            vec![0.25; 4],
        )
        .unwrap();
        let pi = stationary_distribution(&spec).unwrap();
        let expected = [0.0, 0.5, 0.5, 0.0];
        for (p, e) in pi.probs.iter().zip(expected) {
            assert_abs_diff_eq!(*p, e, epsilon = 1e-9);
        }
        assert!(pi.residual <= STATIONARY_TOLERANCE);
        assert_abs_diff_eq!(exact_entropy_rate(&spec).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn trivial_entropy_rates() {
        assert_abs_diff_eq!(
            exact_entropy_rate(&MarkovSourceSpec::iid(0.5).unwrap()).unwrap(),
            1.0
        );
        assert_eq!(
            exact_entropy_rate(&MarkovSourceSpec::iid(0.0).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn marginalize_rejects_order_zero() {
        let spec = MarkovSourceSpec::iid(0.3).unwrap();
        assert!(matches!(
            marginalize_order(&spec),
            Err(MarkovError::InvalidOrder(0))
        ));
    }

    #[test]
    fn marginalize_iid_is_invariant() {
        let spec = MarkovSourceSpec::new(1, vec![[0.5, 0.5], [0.5, 0.5]], vec![0.5, 0.5]).unwrap();
        let reduced = marginalize_order(&spec).unwrap();
        assert_eq!(reduced.order(), 0);
        assert_abs_diff_eq!(reduced.transition()[0][0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn marginalize_identity_chain_stays_valid() {
        // reducible: every distribution is stationary; the solve starts from
        // the uniform vector over the reachable contexts
        let spec = MarkovSourceSpec::new(1, vec![[1.0, 0.0], [0.0, 1.0]], vec![0.3, 0.7]).unwrap();
        let reduced = marginalize_order(&spec).unwrap();
        assert_eq!(reduced.order(), 0);
        assert_abs_diff_eq!(reduced.transition()[0][0], 0.5, epsilon = 1e-12);

        // supported only on context 1: the reachable class is {1}
        let spec = MarkovSourceSpec::new(1, vec![[1.0, 0.0], [0.0, 1.0]], vec![0.0, 1.0]).unwrap();
        let reduced = marginalize_order(&spec).unwrap();
        assert_abs_diff_eq!(reduced.transition()[0][1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(MarkovSourceSpec::new(1, vec![[0.5, 0.6], [0.5, 0.5]], vec![0.5, 0.5]).is_err());
        assert!(MarkovSourceSpec::new(1, vec![[0.5, 0.5]], vec![1.0]).is_err());
        assert!(MarkovSourceSpec::new(0, vec![[1.2, -0.2]], vec![1.0]).is_err());
        assert!(MarkovSourceSpec::new(1, vec![[0.5, 0.5]; 2], vec![0.5, 0.4]).is_err());
        assert!(MarkovSourceSpec::from_json(
            r#"{"order":0,"transition":[[0.5,0.6]],"context_dist":[1]}"#
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = MarkovSourceSpec::benchmark_order3();
        let back = MarkovSourceSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn deterministic_samples() {
        let spec = MarkovSourceSpec::iid(1.0 - 1.0).unwrap();
        assert_eq!(sample(&spec, 5, 99).unwrap().to_string(), "00000");
        let alt = MarkovSourceSpec::new(1, vec![[0.0, 1.0], [1.0, 0.0]], vec![1.0, 0.0]).unwrap();
        assert_eq!(sample(&alt, 6, 1234).unwrap().to_string(), "010101");
        assert!(matches!(sample(&alt, 0, 0), Err(MarkovError::EmptySample)));
    }

    #[test]
    fn sample_shorter_than_order_truncates_context() {
        let spec = MarkovSourceSpec::benchmark_order3();
        assert_eq!(sample(&spec, 2, 5).unwrap().len(), 2);
    }

    #[test]
    fn irreducibility_detection() {
        assert!(is_irreducible(&[[0.4, 0.6], [0.5, 0.5]], 1));
        assert!(!is_irreducible(&[[1.0, 0.0], [0.5, 0.5]], 1));
        assert!(is_irreducible(&[[0.0, 1.0], [1.0, 0.0]], 1));
    }
}
