//! Frame-level vector channel: frame states, weight classes and likelihoods.
//!
//! A frame of `F` packets is a binary vector `x`; its Hamming weight is the
//! frame state `s` (number of packets addressed to user 1). Symbols are
//! packed into integers with the first printed position as the most
//! significant bit, so numeric order equals lexicographic order of the
//! printed bitstrings. Outputs are base-`J` integers with the same
//! convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channel::BinaryInputChannel;
use crate::entropy::binomial;
use crate::error::{check_probability, domain, Error, Result};

/// Largest supported frame length.
pub const MAX_FRAME_LEN: u32 = 20;

/// Default ceiling on `J^F` for dense output tabulation (`3^12`).
pub const DEFAULT_MAX_OUTPUTS: usize = 531_441;

/// Environment variable overriding [`DEFAULT_MAX_OUTPUTS`]. Raising it trades
/// memory (8 bytes per output per tabulated distribution) for reach.
pub const MAX_OUTPUTS_ENV: &str = "REORDER_MAX_OUTPUTS";

/// Frame length and the probability that a packet is addressed to user 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameConfig {
    frame_len: u32,
    addr_prob: f64,
}

impl FrameConfig {
    pub fn new(frame_len: u32, addr_prob: f64) -> Result<Self> {
        if frame_len == 0 || frame_len > MAX_FRAME_LEN {
            return Err(domain(format!(
                "frame length {frame_len} outside 1..={MAX_FRAME_LEN}"
            )));
        }
        check_probability("a", addr_prob)?;
        Ok(FrameConfig {
            frame_len,
            addr_prob,
        })
    }

    pub fn frame_len(&self) -> u32 {
        self.frame_len
    }

    pub fn addr_prob(&self) -> f64 {
        self.addr_prob
    }

    /// Binomial state distribution `P_S(s) = C(F,s) a^s (1-a)^(F-s)`.
    pub fn state_pmf(&self) -> Vec<f64> {
        state_pmf(self.frame_len, self.addr_prob)
    }
}

/// `P_S(s)` for `s = 0..=F`.
pub fn state_pmf(frame_len: u32, a: f64) -> Vec<f64> {
    let f = frame_len as i32;
    (0..=frame_len)
        .map(|s| {
            let s_i = s as i32;
            binomial(frame_len, s) as f64 * a.powi(s_i) * (1.0 - a).powi(f - s_i)
        })
        .collect()
}

/// A length-`F` binary frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameSymbol {
    len: u32,
    bits: u32,
}

impl FrameSymbol {
    pub fn new(len: u32, bits: u32) -> Result<Self> {
        if len == 0 || len > MAX_FRAME_LEN {
            return Err(domain(format!(
                "frame length {len} outside 1..={MAX_FRAME_LEN}"
            )));
        }
        if u64::from(bits) >> len != 0 {
            return Err(domain(format!(
                "bits {bits:#b} do not fit in {len} positions"
            )));
        }
        Ok(FrameSymbol { len, bits })
    }

    pub(crate) fn from_raw(len: u32, bits: u32) -> Self {
        debug_assert!(u64::from(bits) >> len == 0);
        FrameSymbol { len, bits }
    }

    pub fn zeros(len: u32) -> Self {
        FrameSymbol { len, bits: 0 }
    }

    pub fn ones(len: u32) -> Self {
        FrameSymbol {
            len,
            bits: ((1u64 << len) - 1) as u32,
        }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Hamming weight, i.e. the state this symbol belongs to.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Bit at printed position `pos` (0 = leftmost).
    pub fn bit(&self, pos: u32) -> u8 {
        ((self.bits >> (self.len - 1 - pos)) & 1) as u8
    }

    pub fn hamming_distance(&self, other: &FrameSymbol) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }
}

impl fmt::Display for FrameSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.len {
            f.write_str(if self.bit(pos) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for FrameSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let len = s.len() as u32;
        if len == 0 || len > MAX_FRAME_LEN {
            return Err(domain(format!(
                "`{s}` is not a bitstring of length 1..={MAX_FRAME_LEN}"
            )));
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits = match c {
                '0' => bits << 1,
                '1' => (bits << 1) | 1,
                _ => return Err(domain(format!("`{s}` is not a bitstring"))),
            };
        }
        FrameSymbol::new(len, bits)
    }
}

impl Serialize for FrameSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FrameSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A length-`F` word over the `J` output letters, packed as a base-`J`
/// integer with position 0 most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutputSymbol {
    len: u32,
    index: usize,
}

impl OutputSymbol {
    pub fn from_index(len: u32, index: usize) -> Self {
        OutputSymbol { len, index }
    }

    /// Packs letter indices (each `< J`).
    pub fn from_letters(letters: &[usize], output_size: usize) -> Result<Self> {
        let mut index = 0usize;
        for &l in letters {
            if l >= output_size {
                return Err(domain(format!("letter {l} not below J = {output_size}")));
            }
            index = index * output_size + l;
        }
        Ok(OutputSymbol {
            len: letters.len() as u32,
            index,
        })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn letters(&self, output_size: usize) -> Vec<usize> {
        let mut out = vec![0; self.len as usize];
        let mut rem = self.index;
        for slot in out.iter_mut().rev() {
            *slot = rem % output_size;
            rem /= output_size;
        }
        out
    }

    /// Renders with the channel's output labels.
    pub fn display_with(&self, channel: &BinaryInputChannel) -> String {
        self.letters(channel.output_size())
            .into_iter()
            .map(|l| channel.output_labels()[l].as_str())
            .collect()
    }
}

/// The members of `X_s` in ascending (lexicographic) order.
pub fn enumerate_weight_class(frame_len: u32, weight: u32) -> Result<Vec<FrameSymbol>> {
    if frame_len == 0 || frame_len > MAX_FRAME_LEN {
        return Err(domain(format!(
            "frame length {frame_len} outside 1..={MAX_FRAME_LEN}"
        )));
    }
    if weight > frame_len {
        return Err(domain(format!("state {weight} outside 0..={frame_len}")));
    }
    let mut out = Vec::with_capacity(binomial(frame_len, weight) as usize);
    if weight == 0 {
        out.push(FrameSymbol::zeros(frame_len));
        return Ok(out);
    }
    // Gosper's hack walks same-weight integers in increasing order.
    let limit = 1u64 << frame_len;
    let mut v: u64 = (1u64 << weight) - 1;
    while v < limit {
        out.push(FrameSymbol::from_raw(frame_len, v as u32));
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    Ok(out)
}

/// `J^F`, checked against the tabulation ceiling.
pub fn output_space_size(output_size: usize, frame_len: u32) -> Result<usize> {
    let limit = max_outputs();
    let size = (output_size as u128).pow(frame_len);
    if size > limit as u128 {
        return Err(Error::Limit(format!(
            "output space J^F = {output_size}^{frame_len} = {size} exceeds {limit} \
             (set {MAX_OUTPUTS_ENV} to raise it)"
        )));
    }
    Ok(size as usize)
}

/// The active output tabulation ceiling.
pub fn max_outputs() -> usize {
    std::env::var(MAX_OUTPUTS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_OUTPUTS)
}

/// `P(y | x) = Π_f q_{x_f, y_f}`.
pub fn frame_likelihood(
    channel: &BinaryInputChannel,
    x: &FrameSymbol,
    y: &OutputSymbol,
) -> Result<f64> {
    if x.len() != y.len() {
        return Err(domain(format!(
            "input length {} differs from output length {}",
            x.len(),
            y.len()
        )));
    }
    let letters = y.letters(channel.output_size());
    Ok((0..x.len())
        .map(|f| channel.row(x.bit(f))[letters[f as usize]])
        .product())
}

/// Dense `P(· | x)` over all `J^F` outputs, indexed by [`OutputSymbol::index`].
pub fn likelihood_vector(channel: &BinaryInputChannel, x: &FrameSymbol) -> Result<Vec<f64>> {
    let j = channel.output_size();
    let size = output_space_size(j, x.len())?;
    let mut table = Vec::with_capacity(size);
    table.push(1.0);
    for f in 0..x.len() {
        let row = channel.row(x.bit(f));
        let prev = std::mem::take(&mut table);
        table.reserve(prev.len() * j);
        for p in prev {
            table.extend(row.iter().map(|q| p * q));
        }
    }
    Ok(table)
}

/// `H(Y | X = x) = s H(q1) + (F - s) H(q0)` with `s = weight(x)`.
pub fn conditional_entropy_given_x(channel: &BinaryInputChannel, x: &FrameSymbol) -> f64 {
    let s = x.weight() as f64;
    let f = x.len() as f64;
    s * channel.row_entropy(1) + (f - s) * channel.row_entropy(0)
}
