//! The memoryless binary-input packet channel.
//!
//! Every packet in a frame passes independently through the same channel,
//! described by two transition rows `q0 = P(y | 0)` and `q1 = P(y | 1)` over
//! `J >= 2` output letters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::entropy::entropy;
use crate::error::{check_probability, domain, Error, Result};

/// Tolerance on the row sums of a transition matrix.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// Built-in packet error models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    /// Packet address decoded correctly or erased; outputs `{0, 1, ε}`.
    Erasure,
    /// Binary symmetric channel.
    Bsc,
    /// Z-channel: a present packet (1) goes undetected with probability `p`,
    /// an absent packet (0) is never corrupted.
    Z,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Erasure => "erasure",
            ChannelKind::Bsc => "bsc",
            ChannelKind::Z => "z",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "erasure" | "bec" => Ok(ChannelKind::Erasure),
            "bsc" => Ok(ChannelKind::Bsc),
            "z" => Ok(ChannelKind::Z),
            other => Err(domain(format!("unknown channel preset `{other}`"))),
        }
    }
}

/// A binary-input discrete memoryless channel.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryInputChannel {
    q0: Vec<f64>,
    q1: Vec<f64>,
    output_labels: Vec<String>,
    preset: Option<(ChannelKind, f64)>,
}

impl BinaryInputChannel {
    /// Builds a channel from explicit rows, with labels `0..J`.
    pub fn new(q0: Vec<f64>, q1: Vec<f64>) -> Result<Self> {
        let labels = (0..q0.len()).map(|j| j.to_string()).collect();
        Self::with_labels(q0, q1, labels)
    }

    pub fn with_labels(q0: Vec<f64>, q1: Vec<f64>, output_labels: Vec<String>) -> Result<Self> {
        let channel = BinaryInputChannel {
            q0,
            q1,
            output_labels,
            preset: None,
        };
        channel.validate()?;
        Ok(channel)
    }

    /// One of the built-in error models with parameter `p`.
    pub fn preset(kind: ChannelKind, p: f64) -> Result<Self> {
        check_probability("p", p)?;
        let (q0, q1, labels) = match kind {
            ChannelKind::Erasure => (
                vec![1.0 - p, 0.0, p],
                vec![0.0, 1.0 - p, p],
                vec!["0", "1", "e"],
            ),
            ChannelKind::Bsc => (vec![1.0 - p, p], vec![p, 1.0 - p], vec!["0", "1"]),
            ChannelKind::Z => (vec![1.0, 0.0], vec![p, 1.0 - p], vec!["0", "1"]),
        };
        let channel = BinaryInputChannel {
            q0,
            q1,
            output_labels: labels.into_iter().map(String::from).collect(),
            preset: Some((kind, p)),
        };
        channel.validate()?;
        Ok(channel)
    }

    /// Noiseless identity channel on `{0, 1}`.
    pub fn noiseless() -> Self {
        Self::preset(ChannelKind::Bsc, 0.0).expect("noiseless preset is valid")
    }

    /// Checks the row invariants: equal lengths, `J >= 2`, entries in
    /// `[0, 1]` and row sums within [`ROW_SUM_TOLERANCE`] of one.
    pub fn validate(&self) -> Result<()> {
        let j = self.q0.len();
        if j < 2 {
            return Err(domain(format!("output alphabet size {j} < 2")));
        }
        if self.q1.len() != j {
            return Err(domain(format!(
                "row lengths differ: q0 has {j}, q1 has {}",
                self.q1.len()
            )));
        }
        if self.output_labels.len() != j {
            return Err(domain("one output label per letter required"));
        }
        for (name, row) in [("q0", &self.q0), ("q1", &self.q1)] {
            if let Some(bad) = row
                .iter()
                .find(|v| !(v.is_finite() && (0.0..=1.0).contains(*v)))
            {
                return Err(domain(format!("{name} has entry {bad} outside [0, 1]")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(domain(format!("{name} sums to {sum}, not 1")));
            }
        }
        Ok(())
    }

    /// Output alphabet size `J`.
    pub fn output_size(&self) -> usize {
        self.q0.len()
    }

    /// Transition row for input `bit`.
    pub fn row(&self, bit: u8) -> &[f64] {
        if bit == 0 {
            &self.q0
        } else {
            &self.q1
        }
    }

    pub fn q0(&self) -> &[f64] {
        &self.q0
    }

    pub fn q1(&self) -> &[f64] {
        &self.q1
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    /// The preset this channel was built from, if any.
    pub fn preset_kind(&self) -> Option<(ChannelKind, f64)> {
        self.preset
    }

    /// `H(q_bit)` in bits.
    pub fn row_entropy(&self, bit: u8) -> f64 {
        entropy(self.row(bit))
    }
}

/// Channel description as found in config records:
/// `{"kind": "erasure", "p": 0.2}` or `{"custom": {"q0": [...], "q1": [...]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChannelSpec {
    Preset { kind: ChannelKind, p: f64 },
    Custom { custom: CustomRows },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CustomRows {
    pub q0: Vec<f64>,
    pub q1: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ChannelSpec {
    pub fn build(&self) -> Result<BinaryInputChannel> {
        match self {
            ChannelSpec::Preset { kind, p } => BinaryInputChannel::preset(*kind, *p),
            ChannelSpec::Custom { custom } => match &custom.labels {
                Some(labels) => BinaryInputChannel::with_labels(
                    custom.q0.clone(),
                    custom.q1.clone(),
                    labels.clone(),
                ),
                None => BinaryInputChannel::new(custom.q0.clone(), custom.q1.clone()),
            },
        }
    }
}

impl TryFrom<&ChannelSpec> for BinaryInputChannel {
    type Error = Error;

    fn try_from(spec: &ChannelSpec) -> Result<Self> {
        spec.build()
    }
}
