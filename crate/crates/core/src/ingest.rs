//! Spike-rate traces and their conversion to binary spike trains.
//!
//! Input CSV: the first column holds timestamps in seconds, every further
//! column is one neuron (header cell = neuron id) holding inferred spike
//! rates. A frame is labelled 1 when its rate strictly exceeds three sample
//! standard deviations of that neuron's rate vector.

use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::sequence::BinarySequence;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed CSV at line {line}: {message}")]
    MalformedCsv { line: u64, message: String },
    #[error("timestamps not strictly increasing at line {line}")]
    NonMonotonicTime { line: u64 },
    #[error("negative rate for neuron {neuron:?} at line {line}")]
    NegativeRate { line: u64, neuron: String },
    #[error("trace {neuron:?} has {len} samples; at least 2 are needed")]
    TraceTooShort { neuron: String, len: usize },
    #[error("trace {0:?}: timestamps and rates differ in length")]
    LengthMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpikeRateTrace {
    pub neuron_id: String,
    /// Seconds, strictly increasing. Carried for labelling only.
    pub timestamps: Vec<f64>,
    /// Expected spikes per imaging interval, non-negative.
    pub rates: Vec<f64>,
}

impl SpikeRateTrace {
    pub fn new(
        neuron_id: impl Into<String>,
        timestamps: Vec<f64>,
        rates: Vec<f64>,
    ) -> Result<Self, IngestError> {
        let neuron_id = neuron_id.into();
        if timestamps.len() != rates.len() {
            return Err(IngestError::LengthMismatch(neuron_id));
        }
        if let Some(i) = timestamps.windows(2).position(|w| w[1] <= w[0]) {
            return Err(IngestError::NonMonotonicTime { line: i as u64 + 2 });
        }
        if let Some(i) = rates.iter().position(|&r| r < 0.0 || r.is_nan()) {
            return Err(IngestError::NegativeRate {
                line: i as u64 + 1,
                neuron: neuron_id,
            });
        }
        Ok(Self {
            neuron_id,
            timestamps,
            rates,
        })
    }

    /// Traces with evenly spaced unit timestamps `0, 1, 2, ...`.
    pub fn from_rates(neuron_id: impl Into<String>, rates: Vec<f64>) -> Result<Self, IngestError> {
        let timestamps = (0..rates.len()).map(|i| i as f64).collect();
        Self::new(neuron_id, timestamps, rates)
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }
}

pub fn load_traces(path: impl AsRef<Path>) -> Result<Vec<SpikeRateTrace>, IngestError> {
    read_traces(std::fs::File::open(path)?)
}

pub fn read_traces<R: Read>(reader: R) -> Result<Vec<SpikeRateTrace>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| IngestError::MalformedCsv {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if header.len() < 2 {
        return Err(IngestError::MalformedCsv {
            line: 1,
            message: "need a time column and at least one neuron column".into(),
        });
    }
    let ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut timestamps: Vec<f64> = Vec::new();
    let mut rates: Vec<Vec<f64>> = vec![Vec::new(); ids.len()];

    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            IngestError::MalformedCsv {
                line,
                message: e.to_string(),
            }
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let parse = |i: usize| -> Result<f64, IngestError> {
            row[i]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| IngestError::MalformedCsv {
                    line,
                    message: format!("non-numeric cell {:?}", &row[i]),
                })
        };
        let t = parse(0)?;
        if timestamps.last().is_some_and(|&prev| t <= prev) {
            return Err(IngestError::NonMonotonicTime { line });
        }
        timestamps.push(t);
        for (j, column) in rates.iter_mut().enumerate() {
            let r = parse(j + 1)?;
            if r < 0.0 {
                return Err(IngestError::NegativeRate {
                    line,
                    neuron: ids[j].clone(),
                });
            }
            column.push(r);
        }
    }

    Ok(ids
        .into_iter()
        .zip(rates)
        .map(|(neuron_id, rates)| SpikeRateTrace {
            neuron_id,
            timestamps: timestamps.clone(),
            rates,
        })
        .collect())
}

/// Sample standard deviation (divisor `n - 1`).
fn sample_sd(values: &[f64]) -> f64 {
    // exact zero for constant input; the rounded mean would leave a residue
    if values.iter().all(|&v| v == values[0]) {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Thresholds the trace at three sample standard deviations of its rates.
///
/// Returns the binary train and the threshold used. A rate equal to the
/// threshold maps to 0.
pub fn binarize(trace: &SpikeRateTrace) -> Result<(BinarySequence, f64), IngestError> {
    if trace.len() < 2 {
        return Err(IngestError::TraceTooShort {
            neuron: trace.neuron_id.clone(),
            len: trace.len(),
        });
    }
    let threshold = 3.0 * sample_sd(&trace.rates);
    let symbols = trace
        .rates
        .iter()
        .map(|&r| u8::from(r > threshold))
        .collect();
    Ok((BinarySequence::new(symbols).expect("binary"), threshold))
}

/// One `neuron_id,threshold,bitstring` line per trace.
pub fn write_binarized<W: Write>(
    mut writer: W,
    rows: &[(String, f64, BinarySequence)],
) -> std::io::Result<()> {
    for (id, threshold, seq) in rows {
        writeln!(writer, "{id},{threshold:.10},{seq}")?;
    }
    Ok(())
}
