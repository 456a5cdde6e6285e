//! Multisymbols: one representative frame per state.
//!
//! Strategy `t` maps each frame state `s` to a symbol `x_s(t)` of weight
//! `s`. The `F + 1` representatives form the multisymbol of `t`. A
//! multisymbol is *minimal* when every pair of representatives is as close
//! as their weights allow, `d_H(x_a, x_b) = |a - b|`; the minimal ones are
//! exactly the position permutations of the basic multisymbol
//! `{0..0, 0..01, 0..011, ..., 1..1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channel::BinaryInputChannel;
use crate::entropy::{binomial, entropy};
use crate::error::{domain, Error, Result};
use crate::frame::{
    conditional_entropy_given_x, enumerate_weight_class, output_space_size, FrameConfig,
    FrameSymbol, MAX_FRAME_LEN,
};

/// `F + 1` representatives, `reps[s]` of weight `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisymbol {
    reps: Vec<FrameSymbol>,
}

impl Multisymbol {
    pub fn new(reps: Vec<FrameSymbol>) -> Result<Self> {
        let f = reps
            .len()
            .checked_sub(1)
            .ok_or_else(|| domain("empty multisymbol"))? as u32;
        if f == 0 || f > MAX_FRAME_LEN {
            return Err(domain(format!(
                "frame length {f} outside 1..={MAX_FRAME_LEN}"
            )));
        }
        for (s, x) in reps.iter().enumerate() {
            if x.len() != f {
                return Err(domain(format!(
                    "representative {x} has length {}, expected {f}",
                    x.len()
                )));
            }
            if x.weight() as usize != s {
                return Err(domain(format!(
                    "representative {x} for state {s} has weight {}",
                    x.weight()
                )));
            }
        }
        Ok(Multisymbol { reps })
    }

    /// `reps[s]` is `F - s` zeros followed by `s` ones.
    pub fn basic(frame_len: u32) -> Result<Self> {
        if frame_len == 0 || frame_len > MAX_FRAME_LEN {
            return Err(domain(format!(
                "frame length {frame_len} outside 1..={MAX_FRAME_LEN}"
            )));
        }
        let reps = (0..=frame_len)
            .map(|s| FrameSymbol::from_raw(frame_len, ((1u64 << s) - 1) as u32))
            .collect();
        Ok(Multisymbol { reps })
    }

    pub fn frame_len(&self) -> u32 {
        (self.reps.len() - 1) as u32
    }

    pub fn reps(&self) -> &[FrameSymbol] {
        &self.reps
    }

    /// Representative for state `s`.
    pub fn rep(&self, s: u32) -> Option<FrameSymbol> {
        self.reps.get(s as usize).copied()
    }

    /// Checks `d_H(x_a, x_b) = |a - b|` over all pairs.
    pub fn is_minimal(&self) -> bool {
        let n = self.reps.len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| self.reps[a].hamming_distance(&self.reps[b]) as usize == b - a)
        })
    }

    /// Applies `pi` to the positions of every representative.
    pub fn permute(&self, pi: &Permutation) -> Result<Multisymbol> {
        if pi.len() != self.frame_len() as usize {
            return Err(domain(format!(
                "permutation of {} positions applied to frame length {}",
                pi.len(),
                self.frame_len()
            )));
        }
        Ok(Multisymbol {
            reps: self.reps.iter().map(|x| pi.apply(x)).collect(),
        })
    }
}

impl fmt::Display for Multisymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.reps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Multisymbol {
    type Err = Error;

    /// Accepts `0000,0001,...` with optional surrounding parentheses or braces.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '{'])
            .trim_end_matches([')', '}']);
        let reps = inner
            .split(',')
            .map(|part| part.parse())
            .collect::<Result<Vec<FrameSymbol>>>()?;
        Multisymbol::new(reps)
    }
}

impl Serialize for Multisymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.reps.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multisymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let reps = Vec::<FrameSymbol>::deserialize(deserializer)?;
        Multisymbol::new(reps).map_err(serde::de::Error::custom)
    }
}

/// A permutation of frame positions, stored as `target[source]` (0-based).
/// Applying it moves the bit at printed position `i` to position `target[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    target: Vec<usize>,
}

impl Permutation {
    pub fn new(target: Vec<usize>) -> Result<Self> {
        let n = target.len();
        let mut seen = vec![false; n];
        for &t in &target {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(domain(format!("{target:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Permutation { target })
    }

    /// From 1-based targets, as permutations are usually written (`321`).
    pub fn from_one_based(target: &[usize]) -> Result<Self> {
        if target.contains(&0) {
            return Err(domain("1-based permutation contains 0"));
        }
        Self::new(target.iter().map(|t| t - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            target: (0..n).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Permutation {
            target: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn targets(&self) -> &[usize] {
        &self.target
    }

    pub fn apply(&self, x: &FrameSymbol) -> FrameSymbol {
        let f = x.len();
        let mut bits = 0u32;
        for (src, &dst) in self.target.iter().enumerate() {
            if x.bit(src as u32) == 1 {
                bits |= 1 << (f - 1 - dst as u32);
            }
        }
        FrameSymbol::from_raw(f, bits)
    }

    /// All permutations of `n` positions in lexicographic order of targets.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                target: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// `321` (single digits) or `3,2,1`, 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let targets = parsed.ok_or_else(|| domain(format!("`{s}` is not a permutation")))?;
        Permutation::from_one_based(&targets)
    }
}

/// Position agreement counts `g_uv` between two frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgreementCounts {
    pub g00: u32,
    pub g01: u32,
    pub g10: u32,
    pub g11: u32,
}

impl AgreementCounts {
    pub fn hamming_distance(&self) -> u32 {
        self.g01 + self.g10
    }
}

/// Counts positions where `(x1_f, x2_f) = (u, v)`.
pub fn agreement_counts(x1: &FrameSymbol, x2: &FrameSymbol) -> Result<AgreementCounts> {
    if x1.len() != x2.len() {
        return Err(domain(format!(
            "lengths {} and {} differ",
            x1.len(),
            x2.len()
        )));
    }
    let mask = ((1u64 << x1.len()) - 1) as u32;
    let (a, b) = (x1.bits(), x2.bits());
    Ok(AgreementCounts {
        g00: (!a & !b & mask).count_ones(),
        g01: (!a & b & mask).count_ones(),
        g10: (a & !b & mask).count_ones(),
        g11: (a & b).count_ones(),
    })
}

/// Writes `P(· | x)` over all `J^F` outputs into `buf`.
pub(crate) fn fill_likelihood(channel: &BinaryInputChannel, x: &FrameSymbol, buf: &mut Vec<f64>) {
    let j = channel.output_size();
    let total = j.pow(x.len());
    buf.clear();
    buf.resize(total, 0.0);
    buf[0] = 1.0;
    let mut filled = 1;
    // Expand in place from the back: entry k of the old prefix becomes
    // entries k*J .. k*J+J of the new one.
    for f in 0..x.len() {
        let row = channel.row(x.bit(f));
        for k in (0..filled).rev() {
            let p = buf[k];
            for (l, q) in row.iter().enumerate() {
                buf[k * j + l] = p * q;
            }
        }
        filled *= j;
    }
}

fn check_lengths(config: &FrameConfig, m: &Multisymbol) -> Result<()> {
    if config.frame_len() != m.frame_len() {
        return Err(domain(format!(
            "multisymbol frame length {} differs from config frame length {}",
            m.frame_len(),
            config.frame_len()
        )));
    }
    Ok(())
}

/// Output law under strategy `t`: `P(y | t) = Σ_s P_S(s) P(y | x_s(t))`.
pub fn output_pmf_given_t(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    m: &Multisymbol,
) -> Result<Vec<f64>> {
    check_lengths(config, m)?;
    let size = output_space_size(channel.output_size(), m.frame_len())?;
    let mut out = vec![0.0; size];
    let mut buf = Vec::with_capacity(size);
    accumulate_output_pmf(channel, &config.state_pmf(), m, &mut out, &mut buf);
    Ok(out)
}

/// Adds `Σ_s P_S(s) P(· | x_s)` into `out`. `out` must have `J^F` entries.
pub(crate) fn accumulate_output_pmf(
    channel: &BinaryInputChannel,
    state_pmf: &[f64],
    m: &Multisymbol,
    out: &mut [f64],
    buf: &mut Vec<f64>,
) {
    for (x, &ps) in m.reps.iter().zip(state_pmf) {
        if ps == 0.0 {
            continue;
        }
        fill_likelihood(channel, x, buf);
        for (o, l) in out.iter_mut().zip(buf.iter()) {
            *o += ps * l;
        }
    }
}

/// `H(Y | T = t)` by exact enumeration of the output space.
pub fn entropy_output_given_t(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    m: &Multisymbol,
) -> Result<f64> {
    Ok(entropy(&output_pmf_given_t(channel, config, m)?))
}

/// Per-position output laws `u_f = Σ_s P_S(s) q_{x_{s,f}}`.
pub fn position_marginals(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    m: &Multisymbol,
) -> Result<Vec<Vec<f64>>> {
    check_lengths(config, m)?;
    let ps = config.state_pmf();
    Ok((0..m.frame_len())
        .map(|f| {
            let mut u = vec![0.0; channel.output_size()];
            for (x, &p) in m.reps.iter().zip(&ps) {
                for (acc, q) in u.iter_mut().zip(channel.row(x.bit(f))) {
                    *acc += p * q;
                }
            }
            u
        })
        .collect())
}

/// `Σ_f H(u_f)`: the sum of per-position output entropies. This upper-bounds
/// `H(Y | T = t)` and meets it only when the positions are independent
/// under the state mixture (e.g. a degenerate state law).
pub fn positionwise_entropy_bound(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    m: &Multisymbol,
) -> Result<f64> {
    Ok(position_marginals(channel, config, m)?
        .iter()
        .map(|u| entropy(u))
        .sum())
}

/// `H(Y | X, T = t) = Σ_s P_S(s) H_s`, identical for every multisymbol.
pub fn conditional_entropy_given_xt(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    m: &Multisymbol,
) -> Result<f64> {
    check_lengths(config, m)?;
    Ok(m.reps
        .iter()
        .zip(config.state_pmf())
        .map(|(x, p)| p * conditional_entropy_given_x(channel, x))
        .sum())
}

/// `I(X; Y | T = t) = H(Y | T = t) - H(Y | X, T = t)`.
pub fn mutual_info_within(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    m: &Multisymbol,
) -> Result<f64> {
    Ok(entropy_output_given_t(channel, config, m)?
        - conditional_entropy_given_xt(channel, config, m)?)
}

/// The positionwise two-representative expression
/// `g00 H(q0) + g11 H(q1) + g01 H(λ q0 + (1-λ) q1) + g10 H((1-λ) q0 + λ q1)`
/// where `x1` carries probability `λ` and `x2` carries `1 - λ`.
///
/// This is the positionwise sum specialised to two states, so it is an
/// upper bound on the exact output entropy. It is exact when `d_H <= 1`
/// or `λ ∈ {0, 1}`.
pub fn two_state_positionwise_entropy(
    channel: &BinaryInputChannel,
    x1: &FrameSymbol,
    x2: &FrameSymbol,
    lambda: f64,
) -> Result<f64> {
    let g = agreement_counts(x1, x2)?;
    let mix = |w0: f64| -> Vec<f64> {
        channel
            .q0()
            .iter()
            .zip(channel.q1())
            .map(|(a, b)| w0 * a + (1.0 - w0) * b)
            .collect()
    };
    Ok(g.g00 as f64 * channel.row_entropy(0)
        + g.g11 as f64 * channel.row_entropy(1)
        + g.g01 as f64 * entropy(&mix(lambda))
        + g.g10 as f64 * entropy(&mix(1.0 - lambda)))
}

/// Exact output entropy of the two-point mixture `λ P(·|x1) + (1-λ) P(·|x2)`.
pub fn two_state_output_entropy(
    channel: &BinaryInputChannel,
    x1: &FrameSymbol,
    x2: &FrameSymbol,
    lambda: f64,
) -> Result<f64> {
    if x1.len() != x2.len() {
        return Err(domain("lengths differ"));
    }
    output_space_size(channel.output_size(), x1.len())?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    fill_likelihood(channel, x1, &mut a);
    fill_likelihood(channel, x2, &mut b);
    let mixed: Vec<f64> = a
        .iter()
        .zip(&b)
        .map(|(p, q)| lambda * p + (1.0 - lambda) * q)
        .collect();
    Ok(entropy(&mixed))
}

/// Number of multisymbols (strategies) for frame length `F`: `Π_s C(F, s)`.
pub fn strategy_count(frame_len: u32) -> Option<u128> {
    (0..=frame_len).try_fold(1u128, |acc, s| {
        acc.checked_mul(binomial(frame_len, s) as u128)
    })
}

/// Every multisymbol for frame length `F`, in mixed-radix order with the
/// highest state varying fastest and each class in lexicographic order.
pub fn all_multisymbols(frame_len: u32) -> Result<Vec<Multisymbol>> {
    let classes = (0..=frame_len)
        .map(|s| enumerate_weight_class(frame_len, s))
        .collect::<Result<Vec<_>>>()?;
    let count = strategy_count(frame_len).unwrap_or(u128::MAX);
    if count > 10_000_000 {
        return Err(Error::Limit(format!(
            "{count} strategies for F = {frame_len} are too many to enumerate"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; classes.len()];
    loop {
        out.push(Multisymbol {
            reps: idx.iter().zip(&classes).map(|(&i, c)| c[i]).collect(),
        });
        let mut pos = classes.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < classes[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
