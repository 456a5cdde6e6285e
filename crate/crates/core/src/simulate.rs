//! Monte Carlo frame simulation with MAP decoding.
//!
//! Each frame draws a primary state `s ~ P_S` and a strategy `t ~ P_T`,
//! sends `x = x_s(t)` through the packet channel and decodes `t` from the
//! output. The empirical rate is the plug-in mutual information of the
//! `(t, y)` joint histogram. Its bias is positive and roughly
//! `(|T| - 1)(|Y| - 1) / (2 N ln 2)` bits for `N` frames.
//!
//! Randomness comes from ChaCha8 (stable across platforms and crate
//! versions). Frames are grouped into fixed blocks of [`BLOCK_FRAMES`];
//! block `k` uses stream `k` of the generator seeded with `seed`, so the
//! report does not depend on how blocks are split across threads.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::capacity::mutual_info_ty;
use crate::channel::BinaryInputChannel;
use crate::error::{domain, Error, Result};
use crate::frame::{output_space_size, FrameConfig, FrameSymbol, OutputSymbol};
use crate::multisymbol::accumulate_output_pmf;
use crate::strategy::StrategySet;

/// Frames per generator stream.
pub const BLOCK_FRAMES: u64 = 1 << 14;

/// Ceiling on `|T| * J^F` histogram / decoder table cells.
pub const MAX_TABLE_CELLS: usize = 1 << 26;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub frames: u64,
    pub symbol_errors: u64,
    /// Errors of the hard-decision nearest-representative decoder on the
    /// same frames, for comparison.
    pub heuristic_symbol_errors: u64,
    /// Plug-in estimate, bits per frame.
    pub empirical_mi: f64,
    /// Exact `I(T;Y)` of the strategy set, bits per frame.
    pub analytical_mi: f64,
    pub seed: u64,
}

impl SimReport {
    pub fn symbol_error_rate(&self) -> f64 {
        self.symbol_errors as f64 / self.frames as f64
    }
}

/// The representative of strategy `t` in state `s`.
pub fn encode(set: &StrategySet, t: usize, s: u32) -> Result<FrameSymbol> {
    let m = set
        .get(t)
        .ok_or_else(|| domain(format!("strategy {t} out of range (set has {})", set.len())))?;
    m.rep(s)
        .ok_or_else(|| domain(format!("state {s} outside 0..={}", m.frame_len())))
}

fn sample_index(cdf: &[f64], u: f64) -> usize {
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1)
}

fn cumulative(pmf: &[f64]) -> Vec<f64> {
    pmf.iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

/// Per-bit cumulative rows for sampling channel outputs.
struct ChannelSampler {
    cdf: [Vec<f64>; 2],
    output_size: usize,
}

impl ChannelSampler {
    fn new(channel: &BinaryInputChannel) -> Self {
        ChannelSampler {
            cdf: [cumulative(channel.q0()), cumulative(channel.q1())],
            output_size: channel.output_size(),
        }
    }

    fn transmit<R: Rng + ?Sized>(&self, x: &FrameSymbol, rng: &mut R) -> OutputSymbol {
        let mut index = 0usize;
        for f in 0..x.len() {
            let cdf = &self.cdf[x.bit(f) as usize];
            // zero-probability letters are never drawn: u < c fails on flat steps
            let letter = sample_index(cdf, rng.gen::<f64>());
            index = index * self.output_size + letter;
        }
        OutputSymbol::from_index(x.len(), index)
    }
}

/// Passes `x` through the channel, one independent draw per packet.
pub fn transmit<R: Rng + ?Sized>(
    channel: &BinaryInputChannel,
    x: &FrameSymbol,
    rng: &mut R,
) -> OutputSymbol {
    ChannelSampler::new(channel).transmit(x, rng)
}

/// Tabulated MAP decoder: `argmax_t P_T(t) P(y | t)`, ties to the smallest `t`.
#[derive(Clone, Debug)]
pub struct MapDecoder {
    outputs: usize,
    /// `P_T(t) P(y | t)`, row-major by `t`.
    joint: Vec<f64>,
    decisions: Vec<Option<usize>>,
}

impl MapDecoder {
    pub fn new(
        set: &StrategySet,
        channel: &BinaryInputChannel,
        config: &FrameConfig,
    ) -> Result<Self> {
        if set.frame_len() != config.frame_len() {
            return Err(domain("strategy set and config frame lengths differ"));
        }
        let outputs = output_space_size(channel.output_size(), config.frame_len())?;
        if set.len().saturating_mul(outputs) > MAX_TABLE_CELLS {
            return Err(Error::Limit(format!(
                "decoder table of {} x {outputs} cells exceeds {MAX_TABLE_CELLS}",
                set.len()
            )));
        }
        let ps = config.state_pmf();
        let mut joint = vec![0.0; set.len() * outputs];
        let mut buf = Vec::with_capacity(outputs);
        for ((m, &pt), row) in set
            .multisymbols()
            .iter()
            .zip(set.pmf())
            .zip(joint.chunks_mut(outputs))
        {
            accumulate_output_pmf(channel, &ps, m, row, &mut buf);
            row.iter_mut().for_each(|v| *v *= pt);
        }
        let decisions = (0..outputs)
            .map(|y| {
                let mut best: Option<(usize, f64)> = None;
                for t in 0..set.len() {
                    let v = joint[t * outputs + y];
                    if v > 0.0 && best.is_none_or(|(_, b)| v > b) {
                        best = Some((t, v));
                    }
                }
                best.map(|(t, _)| t)
            })
            .collect();
        Ok(MapDecoder {
            outputs,
            joint,
            decisions,
        })
    }

    pub fn decode(&self, y: &OutputSymbol) -> Result<usize> {
        self.decisions
            .get(y.index())
            .copied()
            .flatten()
            .ok_or_else(|| {
                domain(format!(
                    "output {} has zero probability under every strategy",
                    y.index()
                ))
            })
    }

    /// `P_T(t) P(y | t)`.
    pub fn joint(&self, t: usize, y: &OutputSymbol) -> f64 {
        self.joint[t * self.outputs + y.index()]
    }
}

/// MAP estimate of the strategy behind `y`.
pub fn map_decode(
    set: &StrategySet,
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    y: &OutputSymbol,
) -> Result<usize> {
    MapDecoder::new(set, channel, config)?.decode(y)
}

/// Hard-decision baseline: each output letter votes for the input bit that
/// makes it more likely (letters equally likely under both inputs are
/// ignored); pick the strategy with a representative at the fewest
/// disagreements, ties to the smallest index.
pub fn nearest_representative_decode(
    set: &StrategySet,
    channel: &BinaryInputChannel,
    y: &OutputSymbol,
) -> usize {
    let letters = y.letters(channel.output_size());
    let hard: Vec<Option<u8>> = letters
        .iter()
        .map(|&l| {
            let (a, b) = (channel.q0()[l], channel.q1()[l]);
            if a > b {
                Some(0)
            } else if b > a {
                Some(1)
            } else {
                None
            }
        })
        .collect();
    let distance = |x: &FrameSymbol| -> usize {
        hard.iter()
            .enumerate()
            .filter(|(f, h)| h.is_some_and(|bit| bit != x.bit(*f as u32)))
            .count()
    };
    let mut best = (usize::MAX, 0);
    for (t, m) in set.multisymbols().iter().enumerate() {
        let d = m.reps().iter().map(&distance).min().unwrap_or(usize::MAX);
        if d < best.0 {
            best = (d, t);
        }
    }
    best.1
}

/// Counts accumulated over a range of frames. Additive across partitions.
#[derive(Clone, Debug, PartialEq)]
struct Tally {
    joint: Vec<u64>,
    symbol_errors: u64,
    heuristic_errors: u64,
}

impl Tally {
    fn new(cells: usize) -> Self {
        Tally {
            joint: vec![0; cells],
            symbol_errors: 0,
            heuristic_errors: 0,
        }
    }

    fn merge(&mut self, other: &Tally) {
        for (a, b) in self.joint.iter_mut().zip(&other.joint) {
            *a += b;
        }
        self.symbol_errors += other.symbol_errors;
        self.heuristic_errors += other.heuristic_errors;
    }
}

/// One trace record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub frame: u64,
    pub state: u32,
    pub strategy: usize,
    pub x: String,
    pub y: String,
    pub decoded: usize,
}

struct Simulation<'a> {
    set: &'a StrategySet,
    channel: &'a BinaryInputChannel,
    state_cdf: Vec<f64>,
    strategy_cdf: Vec<f64>,
    sampler: ChannelSampler,
    decoder: MapDecoder,
    n_frames: u64,
    seed: u64,
}

impl Simulation<'_> {
    fn run_blocks(
        &self,
        blocks: std::ops::Range<u64>,
        mut trace: Option<&mut dyn FnMut(TraceRecord) -> Result<()>>,
    ) -> Result<Tally> {
        let outputs = self.decoder.outputs;
        let mut tally = Tally::new(self.set.len() * outputs);
        for block in blocks {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(block);
            let start = block * BLOCK_FRAMES;
            let end = (start + BLOCK_FRAMES).min(self.n_frames);
            for frame in start..end {
                let s = sample_index(&self.state_cdf, rng.gen::<f64>()) as u32;
                let t = sample_index(&self.strategy_cdf, rng.gen::<f64>());
                let x = encode(self.set, t, s)?;
                let y = self.sampler.transmit(&x, &mut rng);
                let t_hat = self.decoder.decode(&y)?;
                tally.joint[t * outputs + y.index()] += 1;
                if t_hat != t {
                    tally.symbol_errors += 1;
                }
                if nearest_representative_decode(self.set, self.channel, &y) != t {
                    tally.heuristic_errors += 1;
                }
                if let Some(sink) = trace.as_mut() {
                    sink(TraceRecord {
                        frame,
                        state: s,
                        strategy: t,
                        x: x.to_string(),
                        y: y.display_with(self.channel),
                        decoded: t_hat,
                    })?;
                }
            }
        }
        Ok(tally)
    }
}

/// Plug-in mutual information of a joint count table `counts[t][y]`.
pub fn plug_in_mutual_information(counts: &[u64], rows: usize, cols: usize) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    let row_sums: Vec<f64> = counts
        .chunks(cols)
        .map(|r| r.iter().sum::<u64>() as f64)
        .collect();
    let mut col_sums = vec![0.0; cols];
    for r in counts.chunks(cols) {
        for (c, &v) in col_sums.iter_mut().zip(r) {
            *c += v as f64;
        }
    }
    let mut mi = 0.0;
    for (t, row) in counts.chunks(cols).enumerate().take(rows) {
        for (y, &c) in row.iter().enumerate() {
            if c > 0 {
                let c = c as f64;
                mi += c / n * (c * n / (row_sums[t] * col_sums[y])).log2();
            }
        }
    }
    mi.max(0.0)
}

fn prepare<'a>(
    channel: &'a BinaryInputChannel,
    config: &FrameConfig,
    set: &'a StrategySet,
    n_frames: u64,
    seed: u64,
) -> Result<Simulation<'a>> {
    if n_frames == 0 {
        return Err(domain("at least one frame is required"));
    }
    Ok(Simulation {
        set,
        channel,
        state_cdf: cumulative(&config.state_pmf()),
        strategy_cdf: cumulative(set.pmf()),
        sampler: ChannelSampler::new(channel),
        decoder: MapDecoder::new(set, channel, config)?,
        n_frames,
        seed,
    })
}

fn finish(
    sim: &Simulation<'_>,
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    tally: Tally,
) -> Result<SimReport> {
    let outputs = sim.decoder.outputs;
    Ok(SimReport {
        frames: sim.n_frames,
        symbol_errors: tally.symbol_errors,
        heuristic_symbol_errors: tally.heuristic_errors,
        empirical_mi: plug_in_mutual_information(&tally.joint, sim.set.len(), outputs),
        analytical_mi: mutual_info_ty(channel, config, sim.set)?.i_ty,
        seed: sim.seed,
    })
}

/// Simulates `n_frames` frames. Reproducible for a fixed `seed`.
pub fn run_monte_carlo(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    set: &StrategySet,
    n_frames: u64,
    seed: u64,
) -> Result<SimReport> {
    run_monte_carlo_partitioned(channel, config, set, n_frames, seed, 1)
}

/// As [`run_monte_carlo`], splitting the blocks over `partitions` threads.
/// The report is identical for every partition count.
pub fn run_monte_carlo_partitioned(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    set: &StrategySet,
    n_frames: u64,
    seed: u64,
    partitions: usize,
) -> Result<SimReport> {
    let sim = prepare(channel, config, set, n_frames, seed)?;
    let blocks = n_frames.div_ceil(BLOCK_FRAMES);
    let parts = (partitions.max(1) as u64).min(blocks);
    let per = blocks.div_ceil(parts);
    let tallies: Vec<Result<Tally>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..parts)
            .map(|k| {
                let sim = &sim;
                let range = (k * per).min(blocks)..((k + 1) * per).min(blocks);
                scope.spawn(move || sim.run_blocks(range, None))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });
    let mut total = Tally::new(set.len() * sim.decoder.outputs);
    for tally in tallies {
        total.merge(&tally?);
    }
    finish(&sim, channel, config, total)
}

/// As [`run_monte_carlo`], writing one CSV line per frame
/// (`frame,s,t,x,y,t_hat`) to `trace`.
pub fn run_monte_carlo_with_trace<W: Write>(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    set: &StrategySet,
    n_frames: u64,
    seed: u64,
    trace: &mut W,
) -> Result<SimReport> {
    let sim = prepare(channel, config, set, n_frames, seed)?;
    let io = |e: std::io::Error| Error::Domain(format!("trace write failed: {e}"));
    writeln!(trace, "frame,s,t,x,y,t_hat").map_err(io)?;
    let mut sink = |r: TraceRecord| -> Result<()> {
        writeln!(
            trace,
            "{},{},{},{},{},{}",
            r.frame, r.state, r.strategy, r.x, r.y, r.decoded
        )
        .map_err(io)
    };
    let tally = sim.run_blocks(0..n_frames.div_ceil(BLOCK_FRAMES), Some(&mut sink))?;
    finish(&sim, channel, config, tally)
}
