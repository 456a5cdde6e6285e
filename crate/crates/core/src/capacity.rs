//! Mutual information and capacity of the reordering channel.
//!
//! The channel from strategies to frame outputs is the cascade `T - X - Y`,
//! so `I(T;Y) = I(X;Y) - I(X;Y|T)`. The constructed strategy set maximises
//! the first term over input laws consistent with the state marginals and
//! minimises the second with minimal multisymbols. [`oracle_capacity`]
//! checks this independently by running Blahut–Arimoto over every strategy.

use serde::{Deserialize, Serialize};

use crate::channel::{BinaryInputChannel, ChannelKind};
use crate::entropy::{binary_entropy, binomial, entropy, plogp};
use crate::error::{check_probability, domain, Error, Result};
use crate::frame::{conditional_entropy_given_x, output_space_size, FrameConfig, FrameSymbol};
use crate::multisymbol::{
    accumulate_output_pmf, all_multisymbols, conditional_entropy_given_xt, fill_likelihood,
    mutual_info_within, strategy_count, Multisymbol,
};
use crate::strategy::{construct_strategy_set, induced_input_pmf, StrategySet};

/// Tolerance on the decomposition `I(T;Y) = I(X;Y) - I(X;Y|T)`.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-9;

/// Blahut–Arimoto stops once the duality gap falls below this (bits).
pub const BA_GAP_TOLERANCE: f64 = 1e-10;

/// Blahut–Arimoto iteration cap.
pub const BA_MAX_ITERATIONS: usize = 100_000;

/// Default ceiling on `strategies x outputs` for [`oracle_capacity`].
pub const DEFAULT_ORACLE_LIMIT: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_ORACLE_LIMIT`]. Oracle time
/// and memory grow with this product; large values can run for minutes.
pub const ORACLE_LIMIT_ENV: &str = "REORDER_ORACLE_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityMethod {
    Constructed,
    Oracle,
    ClosedForm,
}

/// All quantities in bits per frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub i_ty: f64,
    pub i_xy: f64,
    pub i_xy_given_t: f64,
    pub c_xy: f64,
    pub outer_bound: f64,
    pub method: CapacityMethod,
}

fn check_set(config: &FrameConfig, set: &StrategySet) -> Result<()> {
    if set.frame_len() != config.frame_len() {
        return Err(domain(format!(
            "strategy frame length {} differs from config frame length {}",
            set.frame_len(),
            config.frame_len()
        )));
    }
    Ok(())
}

/// Output law and output entropy under an input law indexed by `x.bits()`.
fn output_law_from_inputs(
    channel: &BinaryInputChannel,
    frame_len: u32,
    px: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let size = output_space_size(channel.output_size(), frame_len)?;
    let mut py = vec![0.0; size];
    let mut buf = Vec::with_capacity(size);
    let mut h_y_given_x = 0.0;
    for (bits, &p) in px.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let x = FrameSymbol::from_raw(frame_len, bits as u32);
        fill_likelihood(channel, &x, &mut buf);
        for (o, l) in py.iter_mut().zip(&buf) {
            *o += p * l;
        }
        h_y_given_x += p * conditional_entropy_given_x(channel, &x);
    }
    Ok((py, h_y_given_x))
}

/// `I(T;Y)` of a strategy set, together with the two terms of the cascade
/// decomposition and the reference bounds.
pub fn mutual_info_ty(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
    set: &StrategySet,
) -> Result<CapacityReport> {
    check_set(config, set)?;
    let size = output_space_size(channel.output_size(), config.frame_len())?;
    let ps = config.state_pmf();

    // Route 1: through the strategies.
    let mut py = vec![0.0; size];
    let mut pyt = vec![0.0; size];
    let mut buf = Vec::with_capacity(size);
    let mut h_y_given_t = 0.0;
    let mut i_xy_given_t = 0.0;
    for (m, &pt) in set.multisymbols().iter().zip(set.pmf()) {
        if pt == 0.0 {
            continue;
        }
        pyt.fill(0.0);
        accumulate_output_pmf(channel, &ps, m, &mut pyt, &mut buf);
        let h = entropy(&pyt);
        h_y_given_t += pt * h;
        i_xy_given_t += pt * (h - conditional_entropy_given_xt(channel, config, m)?);
        for (o, v) in py.iter_mut().zip(&pyt) {
            *o += pt * v;
        }
    }
    let i_ty = entropy(&py) - h_y_given_t;

    // Route 2: through the induced input law.
    let px = induced_input_pmf(set, config)?;
    let (py_x, h_y_given_x) = output_law_from_inputs(channel, config.frame_len(), &px)?;
    let i_xy = entropy(&py_x) - h_y_given_x;

    let residual = i_ty - (i_xy - i_xy_given_t);
    if residual.abs() > DECOMPOSITION_TOLERANCE {
        return Err(Error::Internal(format!(
            "I(T;Y) = {i_ty} but I(X;Y) - I(X;Y|T) = {} (residual {residual:e})",
            i_xy - i_xy_given_t
        )));
    }

    Ok(CapacityReport {
        i_ty,
        i_xy,
        i_xy_given_t,
        c_xy: c_xy(channel, config)?,
        outer_bound: outer_bound(channel, config)?,
        method: CapacityMethod::Constructed,
    })
}

/// Input law that is uniform within each weight class:
/// `P_X(x) = P_S(s) / C(F, s)`, indexed by `x.bits()`.
pub fn class_uniform_input_pmf(config: &FrameConfig) -> Vec<f64> {
    let f = config.frame_len();
    let ps = config.state_pmf();
    (0..1u32 << f)
        .map(|bits| {
            let s = bits.count_ones();
            ps[s as usize] / binomial(f, s) as f64
        })
        .collect()
}

/// Largest `I(X;Y)` over input laws with the prescribed class masses,
/// evaluated at the class-uniform law.
pub fn c_xy(channel: &BinaryInputChannel, config: &FrameConfig) -> Result<f64> {
    let px = class_uniform_input_pmf(config);
    let (py, h_y_given_x) = output_law_from_inputs(channel, config.frame_len(), &px)?;
    Ok(entropy(&py) - h_y_given_x)
}

/// `F` times the unconstrained capacity of one packet.
pub fn outer_bound(channel: &BinaryInputChannel, config: &FrameConfig) -> Result<f64> {
    Ok(config.frame_len() as f64 * packet_capacity(channel)?)
}

/// Capacity of a single packet use: closed forms for the presets,
/// Blahut–Arimoto otherwise.
pub fn packet_capacity(channel: &BinaryInputChannel) -> Result<f64> {
    match channel.preset_kind() {
        Some((ChannelKind::Erasure, p)) => Ok(1.0 - p),
        Some((ChannelKind::Bsc, p)) => Ok(1.0 - binary_entropy(p)),
        Some((ChannelKind::Z, p)) => Ok(z_point_capacity(p)),
        None => {
            let w = TransitionMatrix::new(
                2,
                channel.output_size(),
                channel.q0().iter().chain(channel.q1()).copied().collect(),
            )?;
            Ok(blahut_arimoto(&w, BA_GAP_TOLERANCE, BA_MAX_ITERATIONS)?.capacity)
        }
    }
}

/// `C_{F,0} = Σ_s P_S(s) log2 C(F, s)`: capacity without packet errors.
pub fn errorless_capacity(config: &FrameConfig) -> f64 {
    let f = config.frame_len();
    config
        .state_pmf()
        .iter()
        .enumerate()
        .map(|(s, p)| p * (binomial(f, s as u32) as f64).log2())
        .sum()
}

/// Capacity of the binary Z-channel, `log2(1 + (1-p) p^{p/(1-p)})`.
pub fn z_point_capacity(p: f64) -> f64 {
    if p >= 1.0 {
        return 0.0;
    }
    // powf(0, 0) = 1 covers the noiseless limit.
    (1.0 + (1.0 - p) * p.powf(p / (1.0 - p))).log2()
}

/// Mutual information of the Z-channel with input law `P(1) = a`:
/// `h_b(a (1-p)) - a h_b(p)`.
pub fn z_fixed_input_capacity(a: f64, p: f64) -> Result<f64> {
    check_probability("a", a)?;
    check_probability("p", p)?;
    Ok(binary_entropy(a * (1.0 - p)) - a * binary_entropy(p))
}

/// `c_xy - I_m`: the cascade bound evaluated with a minimal multisymbol
/// (all minimal multisymbols share the same `I(X;Y|T=t)`).
pub fn cascade_upper_bound(channel: &BinaryInputChannel, config: &FrameConfig) -> Result<f64> {
    let basic = Multisymbol::basic(config.frame_len())?;
    Ok(c_xy(channel, config)? - mutual_info_within(channel, config, &basic)?)
}

/// `I(T;Y)` of the constructed uniform `L`-sized strategy set.
pub fn secondary_capacity(
    channel: &BinaryInputChannel,
    config: &FrameConfig,
) -> Result<CapacityReport> {
    let set = construct_strategy_set(config.frame_len())?;
    mutual_info_ty(channel, config, &set)
}

/// Row-major channel matrix `W[input][output]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    inputs: usize,
    outputs: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    pub fn new(inputs: usize, outputs: usize, data: Vec<f64>) -> Result<Self> {
        if inputs == 0 || outputs == 0 || data.len() != inputs * outputs {
            return Err(domain(format!(
                "{} entries for a {inputs}x{outputs} matrix",
                data.len()
            )));
        }
        for (i, row) in data.chunks(outputs).enumerate() {
            let sum: f64 = row.iter().sum();
            if row.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || (sum - 1.0).abs() > 1e-9 {
                return Err(domain(format!(
                    "row {i} is not a probability vector (sum {sum})"
                )));
            }
        }
        Ok(TransitionMatrix {
            inputs,
            outputs,
            data,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.outputs..(i + 1) * self.outputs]
    }
}

/// Outcome of a Blahut–Arimoto run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlahutArimoto {
    /// Mutual information at the final input law (a lower bound).
    pub capacity: f64,
    /// `max_i D(W_i || q)`, an upper bound on capacity.
    pub upper_bound: f64,
    pub gap: f64,
    pub iterations: usize,
    pub input_pmf: Vec<f64>,
}

/// Blahut–Arimoto in bits. Stops when `upper - lower < tol`.
pub fn blahut_arimoto(w: &TransitionMatrix, tol: f64, max_iter: usize) -> Result<BlahutArimoto> {
    let n = w.inputs;
    let neg_row_entropy: Vec<f64> = (0..n)
        .map(|i| -w.row(i).iter().map(|&v| plogp(v)).sum::<f64>())
        .collect();
    let mut p = vec![1.0 / n as f64; n];
    let mut q = vec![0.0; w.outputs];
    let mut log_q = vec![0.0; w.outputs];
    let mut div = vec![0.0; n];
    let mut gap = f64::INFINITY;
    for iter in 0..=max_iter {
        q.fill(0.0);
        for (i, &pi) in p.iter().enumerate() {
            for (qy, wy) in q.iter_mut().zip(w.row(i)) {
                *qy += pi * wy;
            }
        }
        for (l, &qy) in log_q.iter_mut().zip(&q) {
            *l = if qy > 0.0 { qy.log2() } else { 0.0 };
        }
        for (i, d) in div.iter_mut().enumerate() {
            let cross: f64 = w.row(i).iter().zip(&log_q).map(|(wy, l)| wy * l).sum();
            *d = neg_row_entropy[i] - cross;
        }
        let lower: f64 = p.iter().zip(&div).map(|(pi, d)| pi * d).sum();
        let upper = div.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        gap = upper - lower;
        if gap < tol {
            return Ok(BlahutArimoto {
                capacity: lower,
                upper_bound: upper,
                gap,
                iterations: iter,
                input_pmf: p,
            });
        }
        // p_i <- p_i 2^{D_i} / Z, shifted by the max for stability
        let mut z = 0.0;
        for (pi, d) in p.iter_mut().zip(&div) {
            *pi *= (d - upper).exp2();
            z += *pi;
        }
        p.iter_mut().for_each(|pi| *pi /= z);
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        gap,
    })
}

/// Result of the full-strategy-space oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub capacity: f64,
    pub gap: f64,
    pub iterations: usize,
    pub strategies: usize,
    pub outputs: usize,
}

/// The active oracle enumeration ceiling.
pub fn oracle_limit() -> u128 {
    std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

/// Whether [`oracle_capacity`] accepts this size under the active ceiling.
pub fn oracle_feasible(channel: &BinaryInputChannel, frame_len: u32) -> bool {
    oracle_cells(channel, frame_len).is_some_and(|c| c <= oracle_limit())
}

fn oracle_cells(channel: &BinaryInputChannel, frame_len: u32) -> Option<u128> {
    let outputs = (channel.output_size() as u128).checked_pow(frame_len)?;
    strategy_count(frame_len)?.checked_mul(outputs)
}

/// Capacity of the strategy channel `P(y|t) = Σ_s P_S(s) P(y | t(s))`
/// over every strategy with `t(s) ∈ X_s`, by Blahut–Arimoto.
pub fn oracle_capacity(channel: &BinaryInputChannel, config: &FrameConfig) -> Result<OracleReport> {
    let f = config.frame_len();
    let limit = oracle_limit();
    match oracle_cells(channel, f) {
        Some(cells) if cells <= limit => {}
        cells => {
            return Err(Error::Limit(format!(
                "oracle needs {} strategy-output cells at F = {f}, J = {}; limit is {limit} \
                 (set {ORACLE_LIMIT_ENV} to raise it)",
                cells.map_or("too many".to_string(), |c| c.to_string()),
                channel.output_size()
            )))
        }
    }
    let outputs = output_space_size(channel.output_size(), f)?;
    let strategies = all_multisymbols(f)?;
    let ps = config.state_pmf();
    let mut data = vec![0.0; strategies.len() * outputs];
    let mut buf = Vec::with_capacity(outputs);
    for (m, row) in strategies.iter().zip(data.chunks_mut(outputs)) {
        accumulate_output_pmf(channel, &ps, m, row, &mut buf);
    }
    let w = TransitionMatrix::new(strategies.len(), outputs, data)?;
    let ba = blahut_arimoto(&w, BA_GAP_TOLERANCE, BA_MAX_ITERATIONS)?;
    Ok(OracleReport {
        capacity: ba.capacity,
        gap: ba.gap,
        iterations: ba.iterations,
        strategies: strategies.len(),
        outputs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multisymbol::Multisymbol;
    use crate::strategy::full_permutation_set;

    fn preset(kind: ChannelKind, p: f64) -> BinaryInputChannel {
        BinaryInputChannel::preset(kind, p).unwrap()
    }

    #[test]
    fn two_strategy_noiseless_example() {
        let set = StrategySet::uniform(vec![
            "00,01,11".parse::<Multisymbol>().unwrap(),
            "00,10,11".parse().unwrap(),
        ])
        .unwrap();
        let cfg = FrameConfig::new(2, 0.5).unwrap();
        let r = mutual_info_ty(&BinaryInputChannel::noiseless(), &cfg, &set).unwrap();
        assert!((r.i_ty - 0.5).abs() < 1e-12);
        assert!((r.i_ty - errorless_capacity(&cfg)).abs() < 1e-12);
        assert!((r.i_xy - 2.0).abs() < 1e-12);
        assert!((r.i_xy_given_t - 1.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cases_carry_nothing() {
        let set = construct_strategy_set(3).unwrap();
        let ch = preset(ChannelKind::Bsc, 0.1);
        for a in [0.0, 1.0] {
            let r = mutual_info_ty(&ch, &FrameConfig::new(3, a).unwrap(), &set).unwrap();
            assert!(r.i_ty.abs() < 1e-12);
        }
        let erased = preset(ChannelKind::Erasure, 1.0);
        let r = mutual_info_ty(&erased, &FrameConfig::new(3, 0.5).unwrap(), &set).unwrap();
        assert!(r.i_ty.abs() < 1e-12);
    }

    #[test]
    fn c_xy_examples() {
        for p in [0.0, 0.2, 0.45] {
            let ch = preset(ChannelKind::Erasure, p);
            for f in 1..=5 {
                let cfg = FrameConfig::new(f, 0.5).unwrap();
                assert!((c_xy(&ch, &cfg).unwrap() - f as f64 * (1.0 - p)).abs() < 1e-9);
            }
        }
        let cfg = FrameConfig::new(4, 0.5).unwrap();
        assert!((c_xy(&BinaryInputChannel::noiseless(), &cfg).unwrap() - 4.0).abs() < 1e-12);

        let cfg = FrameConfig::new(3, 0.3).unwrap();
        let v = c_xy(&preset(ChannelKind::Erasure, 0.2), &cfg).unwrap();
        assert!(v < 3.0 * 0.8 - 1e-6, "c_xy = {v}");
        // The class-uniform law is i.i.d. Bernoulli(a), so
        // c_xy = F (1-p) h_b(a) for the erasure channel.
        assert!((v - 3.0 * 0.8 * binary_entropy(0.3)).abs() < 1e-12);
    }

    #[test]
    fn errorless_examples() {
        let cfg = FrameConfig::new(2, 0.5).unwrap();
        assert!((errorless_capacity(&cfg) - 0.5).abs() < 1e-15);
        let cfg = FrameConfig::new(4, 0.5).unwrap();
        let expect = (4.0 * 2.0 + 6.0 * 6f64.log2() + 4.0 * 2.0) / 16.0;
        assert!((errorless_capacity(&cfg) - expect).abs() < 1e-15);
        assert!((expect - 1.9693609377704335).abs() < 1e-12);
        for f in 1..=10 {
            for a in [0.0, 1.0] {
                assert_eq!(errorless_capacity(&FrameConfig::new(f, a).unwrap()), 0.0);
            }
        }
    }

    #[test]
    fn z_point_values() {
        assert_eq!(z_point_capacity(0.0), 1.0);
        assert_eq!(z_point_capacity(1.0), 0.0);
        assert!(z_point_capacity(1.0 - 1e-9) < 1e-6);
        assert!((z_point_capacity(0.5) - 1.25f64.log2()).abs() < 1e-15);
        assert!((z_point_capacity(0.5) - 0.32192809488736235).abs() < 1e-15);
    }

    #[test]
    fn z_point_capacity_is_max_over_inputs() {
        for p in [0.05, 0.2, 0.5, 0.8] {
            let best = (0..=100_000)
                .map(|i| z_fixed_input_capacity(i as f64 / 100_000.0, p).unwrap())
                .fold(0.0, f64::max);
            assert!((best - z_point_capacity(p)).abs() < 1e-8, "p = {p}");
        }
    }

    #[test]
    fn z_fixed_input_examples() {
        assert!((z_fixed_input_capacity(0.5, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(z_fixed_input_capacity(0.0, 0.3).unwrap(), 0.0);
        let v = z_fixed_input_capacity(0.5, 0.2).unwrap();
        assert!((v - (binary_entropy(0.4) - 0.5 * binary_entropy(0.2))).abs() < 1e-15);
        let single = c_xy(
            &preset(ChannelKind::Z, 0.2),
            &FrameConfig::new(1, 0.5).unwrap(),
        )
        .unwrap();
        assert!((v - single).abs() < 1e-12);
        assert!(z_fixed_input_capacity(1.1, 0.2).is_err());
    }

    #[test]
    fn blahut_arimoto_known_channels() {
        // BSC(0.11): 1 - h_b(0.11)
        let p = 0.11;
        let w = TransitionMatrix::new(2, 2, vec![1.0 - p, p, p, 1.0 - p]).unwrap();
        let ba = blahut_arimoto(&w, 1e-12, 100_000).unwrap();
        assert!((ba.capacity - (1.0 - binary_entropy(p))).abs() < 1e-11);
        assert!(ba.gap < 1e-12);
        assert!(ba.upper_bound >= ba.capacity);

        let z = TransitionMatrix::new(2, 2, vec![1.0, 0.0, 0.3, 0.7]).unwrap();
        let ba = blahut_arimoto(&z, 1e-12, 100_000).unwrap();
        assert!((ba.capacity - z_point_capacity(0.3)).abs() < 1e-11);

        // Noiseless ternary channel
        let id = TransitionMatrix::new(3, 3, vec![1., 0., 0., 0., 1., 0., 0., 0., 1.]).unwrap();
        let ba = blahut_arimoto(&id, 1e-12, 10).unwrap();
        assert!((ba.capacity - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn blahut_arimoto_reports_nonconvergence() {
        let z = TransitionMatrix::new(2, 2, vec![1.0, 0.0, 0.3, 0.7]).unwrap();
        assert!(matches!(
            blahut_arimoto(&z, 1e-14, 1),
            Err(Error::NonConvergence { iterations: 1, .. })
        ));
    }

    #[test]
    fn packet_capacity_of_custom_matches_preset() {
        let custom = BinaryInputChannel::new(vec![1.0, 0.0], vec![0.2, 0.8]).unwrap();
        assert!((packet_capacity(&custom).unwrap() - z_point_capacity(0.2)).abs() < 1e-9);
    }

    #[test]
    fn oracle_matches_errorless() {
        let ch = BinaryInputChannel::noiseless();
        for f in 2..=4 {
            let cfg = FrameConfig::new(f, 0.5).unwrap();
            let o = oracle_capacity(&ch, &cfg).unwrap();
            assert!(
                (o.capacity - errorless_capacity(&cfg)).abs() < 1e-6,
                "F={f}: {o:?}"
            );
            assert!(o.gap < BA_GAP_TOLERANCE);
        }
        for a in [0.0, 1.0] {
            let cfg = FrameConfig::new(3, a).unwrap();
            assert!(oracle_capacity(&ch, &cfg).unwrap().capacity.abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_matches_constructed_erasure_f4() {
        let ch = preset(ChannelKind::Erasure, 0.2);
        let cfg = FrameConfig::new(4, 0.5).unwrap();
        let o = oracle_capacity(&ch, &cfg).unwrap();
        let r = secondary_capacity(&ch, &cfg).unwrap();
        assert!(
            (o.capacity - r.i_ty).abs() < 1e-6,
            "oracle {o:?} constructed {r:?}"
        );
        assert_eq!(o.strategies, 96);
        assert_eq!(o.outputs, 81);
    }

    #[test]
    fn oracle_refuses_large_problems() {
        let ch = preset(ChannelKind::Erasure, 0.2);
        let cfg = FrameConfig::new(8, 0.5).unwrap();
        assert!(matches!(oracle_capacity(&ch, &cfg), Err(Error::Limit(_))));
        assert!(!oracle_feasible(&ch, 8));
        assert!(oracle_feasible(&ch, 4));
    }

    #[test]
    fn secondary_capacity_examples() {
        let cfg = FrameConfig::new(5, 0.4).unwrap();
        let r = secondary_capacity(&BinaryInputChannel::noiseless(), &cfg).unwrap();
        assert!((r.i_ty - errorless_capacity(&cfg)).abs() < 1e-9);

        let z = preset(ChannelKind::Z, 0.2);
        // F = 1 leaves no freedom: one strategy, zero rate, and the packet
        // carries exactly one Z-channel use at input law a.
        let r = secondary_capacity(&z, &FrameConfig::new(1, 0.5).unwrap()).unwrap();
        assert!(r.i_ty.abs() < 1e-12);
        assert!((r.i_xy - z_fixed_input_capacity(0.5, 0.2).unwrap()).abs() < 1e-12);
        assert!((r.c_xy - z_fixed_input_capacity(0.5, 0.2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn constructed_and_permutation_sets_agree() {
        for kind in [ChannelKind::Erasure, ChannelKind::Bsc, ChannelKind::Z] {
            let ch = preset(kind, 0.15);
            for f in 1..=5 {
                let cfg = FrameConfig::new(f, 0.35).unwrap();
                let a = mutual_info_ty(&ch, &cfg, &construct_strategy_set(f).unwrap()).unwrap();
                let b = mutual_info_ty(&ch, &cfg, &full_permutation_set(f).unwrap()).unwrap();
                assert!((a.i_ty - b.i_ty).abs() < 1e-9, "{kind} F={f}");
            }
        }
    }

    #[test]
    fn report_bounds_hold() {
        for kind in [ChannelKind::Erasure, ChannelKind::Bsc, ChannelKind::Z] {
            for p in [0.05, 0.3] {
                let ch = preset(kind, p);
                for f in 1..=5 {
                    let cfg = FrameConfig::new(f, 0.3).unwrap();
                    let r = secondary_capacity(&ch, &cfg).unwrap();
                    assert!(r.i_ty >= -1e-12);
                    assert!(r.i_ty <= r.c_xy + 1e-9);
                    assert!(r.c_xy <= r.outer_bound + 1e-9);
                    assert!((r.i_xy - r.c_xy).abs() < 1e-9);
                    let bound = cascade_upper_bound(&ch, &cfg).unwrap();
                    assert!(r.i_ty <= bound + 1e-9);
                }
            }
        }
    }
}
