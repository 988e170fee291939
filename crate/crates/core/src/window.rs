//! Window plans, estimator sweeps and per-group summaries.
//!
//! Windows are 1-based, closed-open intervals `[start, start + length)` over a
//! binary sequence. A window's midpoint is `start - 1 + length / 2`, so a
//! window of length 200 centred at 100 covers positions 1..=200.

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::estimators::{estimate, Method, WindowRef};

#[derive(Debug, Error)]
pub enum WindowError {
    #[error("no window of the plan fits a sequence of length {n}")]
    EmptyPlan { n: usize },
    #[error("invalid window plan: {0}")]
    InvalidPlan(String),
    #[error("cannot summarize an empty record list")]
    EmptyInput,
    #[error("malformed record CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed record CSV at line {line}: {message}")]
    Record { line: u64, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowMode {
    /// Prefixes of increasing length from one or more start offsets.
    Growing,
    /// Fixed lengths placed at a list of midpoints.
    MidpointSlide,
    /// Non-overlapping windows of one length.
    Tiling,
}

/// Parameters from which a [`WindowPlan`] is built.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanParams {
    Growing {
        starts: Vec<usize>,
        lengths: Vec<usize>,
    },
    MidpointSlide {
        lengths: Vec<usize>,
        midpoints: Vec<usize>,
    },
    Tiling {
        length: usize,
    },
}

impl PlanParams {
    /// Lengths 40, 80, 120, 160, 200 centred at 100, 105, ..., 140.
    pub fn table2() -> Self {
        PlanParams::MidpointSlide {
            lengths: (1..=5).map(|i| 40 * i).collect(),
            midpoints: (0..=8).map(|i| 100 + 5 * i).collect(),
        }
    }

    /// Prefixes of `lengths` starting at position 1.
    pub fn growing(lengths: Vec<usize>) -> Self {
        PlanParams::Growing {
            starts: vec![1],
            lengths,
        }
    }

    /// Fixed-length windows whose midpoints step by `stride` across `n`.
    pub fn sliding(lengths: Vec<usize>, stride: usize, n: usize) -> Self {
        let stride = stride.max(1);
        PlanParams::MidpointSlide {
            lengths,
            midpoints: (1..).map(|i| i * stride).take_while(|&m| m <= n).collect(),
        }
    }

    /// `step, 2 step, ...` up to `max`.
    pub fn lengths_by_step(step: usize, max: usize) -> Vec<usize> {
        let step = step.max(1);
        (1..).map(|i| i * step).take_while(|&l| l <= max).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub start: usize,
    pub length: usize,
    pub midpoint: usize,
}

impl Window {
    fn new(start: usize, length: usize) -> Self {
        Self {
            start,
            length,
            midpoint: start - 1 + length / 2,
        }
    }

    /// Inclusive 1-based end position.
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowPlan {
    pub mode: WindowMode,
    pub lengths: Vec<usize>,
    pub midpoints: Vec<usize>,
    pub stride: usize,
    pub windows: Vec<Window>,
    /// Windows dropped because they would extend past the sequence.
    pub dropped: usize,
}

/// Lays out the windows of `params` over a sequence of length `n`.
///
/// Windows that would extend outside `[1, n]` are dropped, never truncated.
pub fn build_plan(n: usize, params: &PlanParams) -> Result<WindowPlan, WindowError> {
    let check_lengths = |lengths: &[usize]| {
        if lengths.is_empty() || lengths.contains(&0) {
            Err(WindowError::InvalidPlan(
                "window lengths must be positive".into(),
            ))
        } else {
            Ok(())
        }
    };
    let (mode, lengths, midpoints, stride, candidates): (_, _, _, _, Vec<Option<Window>>) =
        match params {
            PlanParams::Growing { starts, lengths } => {
                check_lengths(lengths)?;
                if starts.is_empty() || starts.contains(&0) {
                    return Err(WindowError::InvalidPlan(
                        "start offsets must be positive".into(),
                    ));
                }
                let stride = match starts.as_slice() {
                    [a, b, ..] => b.saturating_sub(*a).max(1),
                    _ => 1,
                };
                let windows = starts
                    .iter()
                    .flat_map(|&s| lengths.iter().map(move |&l| Some(Window::new(s, l))))
                    .collect();
                (
                    WindowMode::Growing,
                    lengths.clone(),
                    Vec::new(),
                    stride,
                    windows,
                )
            }
            PlanParams::MidpointSlide { lengths, midpoints } => {
                check_lengths(lengths)?;
                if midpoints.is_empty() {
                    return Err(WindowError::InvalidPlan("no midpoints given".into()));
                }
                let stride = match midpoints.as_slice() {
                    [a, b, ..] => b.saturating_sub(*a).max(1),
                    _ => 1,
                };
                let windows = lengths
                    .iter()
                    .flat_map(|&l| {
                        midpoints.iter().map(move |&m| {
                            // start = m - l/2 + 1 must be at least 1
                            (m + 1 > l / 2).then(|| Window::new(m + 1 - l / 2, l))
                        })
                    })
                    .collect();
                (
                    WindowMode::MidpointSlide,
                    lengths.clone(),
                    midpoints.clone(),
                    stride,
                    windows,
                )
            }
            PlanParams::Tiling { length } => {
                check_lengths(&[*length])?;
                let windows = (0..n / length)
                    .map(|i| Some(Window::new(1 + i * length, *length)))
                    .collect();
                (
                    WindowMode::Tiling,
                    vec![*length],
                    Vec::new(),
                    *length,
                    windows,
                )
            }
        };

    let total = candidates.len();
    let mut seen = HashSet::new();
    let windows: Vec<Window> = candidates
        .into_iter()
        .flatten()
        .filter(|w| w.end() <= n)
        .filter(|w| seen.insert(*w))
        .collect();
    if windows.is_empty() {
        return Err(WindowError::EmptyPlan { n });
    }
    let dropped = total - windows.len();
    Ok(WindowPlan {
        mode,
        lengths,
        midpoints,
        stride,
        windows,
        dropped,
    })
}

/// One estimator applied to every window of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub method: Method,
    /// Context length; `None` for the LZ methods.
    pub k: Option<usize>,
}

impl EstimatorConfig {
    pub fn new(method: Method, k: usize) -> Self {
        Self {
            method,
            k: method.uses_context().then_some(k),
        }
    }

    pub fn ep(k: usize) -> Self {
        Self::new(Method::Ep, k)
    }

    pub fn esd(k: usize) -> Self {
        Self::new(Method::Esd, k)
    }

    pub fn lz(method: Method) -> Self {
        Self::new(method, 0)
    }

    fn min_length(&self) -> usize {
        self.k.map_or(1, |k| k + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub config: EstimatorConfig,
    pub window: Window,
    pub value: f64,
}

impl SweepRecord {
    pub fn window_ref(&self) -> WindowRef {
        WindowRef::Span {
            start: self.window.start,
            length: self.window.length,
        }
    }
}

/// A (config, window) pair that was not evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPair {
    pub config: EstimatorConfig,
    pub window: Window,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutput {
    /// Sorted by config, then window start, then window length.
    pub records: Vec<SweepRecord>,
    pub skipped: Vec<SkippedPair>,
}

/// Evaluates every config on every window of the plan.
///
/// Pairs whose window is too short for the config's context length are
/// reported in `skipped`. Evaluation runs in parallel; the output order is
/// canonical regardless.
pub fn sweep(x: &[u8], plan: &WindowPlan, configs: &[EstimatorConfig]) -> SweepOutput {
    let pairs: Vec<(EstimatorConfig, Window)> = configs
        .iter()
        .flat_map(|&c| plan.windows.iter().map(move |&w| (c, w)))
        .collect();

    let results: Vec<Result<SweepRecord, SkippedPair>> = pairs
        .par_iter()
        .map(|&(config, window)| {
            let skip = |reason: String| SkippedPair {
                config,
                window,
                reason,
            };
            if window.end() > x.len() {
                return Err(skip(format!(
                    "window ends past sequence length {}",
                    x.len()
                )));
            }
            if window.length < config.min_length() {
                return Err(skip(format!(
                    "window length {} too short for k = {}",
                    window.length,
                    config.k.unwrap_or(0)
                )));
            }
            let data = &x[window.start - 1..window.end()];
            estimate(data, config.method, config.k.unwrap_or(0))
                .map(|e| SweepRecord {
                    config,
                    window,
                    value: e.value,
                })
                .map_err(|e| skip(e.to_string()))
        })
        .collect();

    let mut out = SweepOutput::default();
    for r in results {
        match r {
            Ok(rec) => out.records.push(rec),
            Err(s) => out.skipped.push(s),
        }
    }
    let key = |c: &EstimatorConfig, w: &Window| (*c, w.start, w.length);
    out.records.sort_by_key(|r| key(&r.config, &r.window));
    out.skipped.sort_by_key(|s| key(&s.config, &s.window));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub method: Method,
    pub k: Option<usize>,
    pub window_length: usize,
    pub mean: f64,
    /// Sample standard deviation (divisor `count - 1`); 0 for a single record.
    pub sd: f64,
    pub count: usize,
}

/// Mean and sample standard deviation per (method, k, window length).
pub fn summarize(records: &[SweepRecord]) -> Result<Vec<SummaryStats>, WindowError> {
    if records.is_empty() {
        return Err(WindowError::EmptyInput);
    }
    let mut groups: BTreeMap<(Method, Option<usize>, usize), Vec<f64>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.config.method, r.config.k, r.window.length))
            .or_default()
            .push(r.value);
    }
    Ok(groups
        .into_iter()
        .map(|((method, k, window_length), mut values)| {
            // fixed summation order keeps the result independent of input order
            values.sort_by(f64::total_cmp);
            let (mean, sd) = mean_sd(&values);
            SummaryStats {
                method,
                k,
                window_length,
                mean,
                sd,
                count: values.len(),
            }
        })
        .collect())
}

/// Mean and sample standard deviation (0 for fewer than two values).
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// How temporal-variation curves are aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemporalAggregation {
    /// Growing prefixes from start offsets `1, 1 + step, ...`; the curve is
    /// the mean across offsets at each prefix length.
    GrowingPrefix,
    /// Fixed-length windows with midpoints every `step`; the curve is the
    /// mean across positions at each length.
    SlidingFixed,
}

impl TemporalAggregation {
    pub fn name(self) -> &'static str {
        match self {
            TemporalAggregation::GrowingPrefix => "growing-prefix",
            TemporalAggregation::SlidingFixed => "sliding-fixed",
        }
    }

    pub fn params(self, n: usize, lengths: Vec<usize>, step: usize) -> PlanParams {
        match self {
            TemporalAggregation::GrowingPrefix => {
                let step = step.max(1);
                let min_len = lengths.iter().copied().min().unwrap_or(1);
                let starts = (0..)
                    .map(|i| 1 + i * step)
                    .take_while(|&s| s + min_len - 1 <= n)
                    .collect::<Vec<_>>();
                PlanParams::Growing {
                    starts: if starts.is_empty() { vec![1] } else { starts },
                    lengths,
                }
            }
            TemporalAggregation::SlidingFixed => PlanParams::sliding(lengths, step, n),
        }
    }
}

/// Sweep plus summary: mean entropy-rate estimate against window length.
pub fn temporal_profile(
    x: &[u8],
    aggregation: TemporalAggregation,
    lengths: Vec<usize>,
    step: usize,
    configs: &[EstimatorConfig],
) -> Result<Vec<SummaryStats>, WindowError> {
    let plan = build_plan(x.len(), &aggregation.params(x.len(), lengths, step))?;
    summarize(&sweep(x, &plan, configs).records)
}

pub const RECORD_HEADER: [&str; 6] = [
    "method",
    "k",
    "window_start",
    "window_length",
    "window_midpoint",
    "value_bits",
];
pub const SUMMARY_HEADER: [&str; 6] = [
    "method",
    "k",
    "window_length",
    "mean_bits",
    "sd_bits",
    "count",
];

fn fmt_k(k: Option<usize>) -> String {
    k.map(|k| k.to_string()).unwrap_or_default()
}

pub(crate) fn fmt_bits(v: f64) -> String {
    format!("{v:.10}")
}

pub fn write_records_csv<W: Write>(writer: W, records: &[SweepRecord]) -> Result<(), WindowError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.config.method.as_str().to_string(),
            fmt_k(r.config.k),
            r.window.start.to_string(),
            r.window.length.to_string(),
            r.window.midpoint.to_string(),
            fmt_bits(r.value),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads records written by [`write_records_csv`]; `#` lines are skipped.
pub fn read_records_csv<R: Read>(reader: R) -> Result<Vec<SweepRecord>, WindowError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |message: String| WindowError::Record { line, message };
        if row.len() != RECORD_HEADER.len() {
            return Err(bad(format!(
                "expected {} fields, got {}",
                RECORD_HEADER.len(),
                row.len()
            )));
        }
        let method: Method = row[0].parse().map_err(bad)?;
        let num = |i: usize| -> Result<usize, WindowError> {
            row[i].trim().parse().map_err(|_| {
                bad(format!(
                    "field {} is not an integer: {:?}",
                    RECORD_HEADER[i], &row[i]
                ))
            })
        };
        let k = if row[1].trim().is_empty() {
            None
        } else {
            Some(num(1)?)
        };
        let (start, length, midpoint) = (num(2)?, num(3)?, num(4)?);
        let value: f64 = row[5]
            .trim()
            .parse()
            .map_err(|_| bad(format!("value_bits is not a number: {:?}", &row[5])))?;
        records.push(SweepRecord {
            config: EstimatorConfig {
                method,
                k: if method.uses_context() { k } else { None },
            },
            window: Window {
                start,
                length,
                midpoint,
            },
            value,
        });
    }
    Ok(records)
}

pub fn write_summary_csv<W: Write>(writer: W, stats: &[SummaryStats]) -> Result<(), WindowError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SUMMARY_HEADER)?;
    for s in stats {
        w.write_record([
            s.method.as_str().to_string(),
            fmt_k(s.k),
            s.window_length.to_string(),
            fmt_bits(s.mean),
            fmt_bits(s.sd),
            s.count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
