//! Binary symbol sequences and their on-disk text format.
//!
//! A sequence file is a single line of `0`/`1` characters with an optional
//! trailing newline. Lines starting with `#` are metadata and are skipped on
//! read, so files written with a provenance header stay loadable.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("invalid symbol {found:?} at position {position} (expected '0' or '1')")]
    InvalidSymbol { position: usize, found: char },
    #[error("invalid symbol value {value} at index {index} (expected 0 or 1)")]
    InvalidValue { index: usize, value: u8 },
    #[error("sequence file contains more than one data line (line {line})")]
    ExtraDataLine { line: usize },
}

/// An ordered list of symbols over the alphabet `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinarySequence(Vec<u8>);

impl BinarySequence {
    pub fn new(symbols: Vec<u8>) -> Result<Self, SequenceError> {
        if let Some((index, &value)) = symbols.iter().enumerate().find(|(_, &s)| s > 1) {
            return Err(SequenceError::InvalidValue { index, value });
        }
        Ok(Self(symbols))
    }

    /// Builds a sequence from `0`/`1` characters, ignoring surrounding whitespace.
    pub fn from_bits(text: &str) -> Result<Self, SequenceError> {
        text.trim()
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                found => Err(SequenceError::InvalidSymbol { position, found }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    /// Symbols at 1-based positions `[start, start + len)`.
    pub fn window(&self, start: usize, len: usize) -> &[u8] {
        &self.0[start - 1..start - 1 + len]
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&s| s == 1).count()
    }

    pub fn read_from<R: BufRead>(reader: R) -> io::Result<Self> {
        let mut data: Option<Self> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if data.is_some() {
                return Err(invalid_data(SequenceError::ExtraDataLine { line: idx + 1 }));
            }
            data = Some(Self::from_bits(trimmed).map_err(invalid_data)?);
        }
        Ok(data.unwrap_or_default())
    }

    pub fn write_to<W: Write>(&self, mut writer: W) -> io::Result<()> {
        writeln!(writer, "{self}")
    }
}

fn invalid_data(e: SequenceError) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, e)
}

impl Deref for BinarySequence {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl FromStr for BinarySequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_bits(s)
    }
}

impl TryFrom<Vec<u8>> for BinarySequence {
    type Error = SequenceError;

    fn try_from(symbols: Vec<u8>) -> Result<Self, Self::Error> {
        Self::new(symbols)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .0
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({self})")
    }
}

/// Renders a symbol slice as a `0`/`1` string.
pub fn bits_to_string(symbols: &[u8]) -> String {
    symbols
        .iter()
        .map(|&b| if b == 1 { '1' } else { '0' })
        .collect()
}
