//! Capacity-achieving strategy sets.
//!
//! A uniform set of `L = lcm(C(F,0), ..., C(F,F))` minimal multisymbols in
//! which every weight-`s` symbol appears exactly `m_s = L / C(F,s)` times
//! induces the input law `P_X(x) = P_S(s) / C(F,s)`. Such a set is built by
//! weighting the cover graph of the Boolean lattice (edges join `x_s` to
//! each `x_{s+1}` obtained by flipping one zero) so that every node of
//! `X_s` sends `m_s` units up and every node of `X_{s+1}` receives
//! `m_{s+1}`, then peeling off `L` unit paths from `0..0` to `1..1`.
//!
//! Per layer transition every edge weight is `floor(m_s / (F-s))` or one
//! more. Choosing which edges take the larger weight is a bipartite
//! degree-constrained subgraph problem (`b` per lower node, `d` per upper
//! node), solved here with max-flow.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::entropy::binomial;
use crate::error::{domain, Error, Result};
use crate::flow::FlowNetwork;
use crate::frame::{enumerate_weight_class, FrameConfig, FrameSymbol, MAX_FRAME_LEN};
use crate::multisymbol::{Multisymbol, Permutation};

/// Largest frame length for [`build_weighted_graph`] / [`decompose_paths`].
pub const MAX_CONSTRUCT_FRAME_LEN: u32 = 15;

/// Largest frame length for [`full_permutation_set`] (`F!` multisymbols).
pub const MAX_PERMUTATION_FRAME_LEN: u32 = 8;

const PMF_TOLERANCE: f64 = 1e-12;

/// Strategies with a probability mass over them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategySet {
    multisymbols: Vec<Multisymbol>,
    pmf: Vec<f64>,
}

impl StrategySet {
    pub fn new(multisymbols: Vec<Multisymbol>, pmf: Vec<f64>) -> Result<Self> {
        let first = multisymbols
            .first()
            .ok_or_else(|| domain("strategy set is empty"))?;
        let f = first.frame_len();
        if let Some(m) = multisymbols.iter().find(|m| m.frame_len() != f) {
            return Err(domain(format!(
                "mixed frame lengths: {f} and {}",
                m.frame_len()
            )));
        }
        if pmf.len() != multisymbols.len() {
            return Err(domain(format!(
                "{} probabilities for {} strategies",
                pmf.len(),
                multisymbols.len()
            )));
        }
        if pmf.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(domain("strategy probabilities must be nonnegative"));
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Err(domain(format!("strategy probabilities sum to {total}")));
        }
        Ok(StrategySet { multisymbols, pmf })
    }

    /// Uniform `P_T` over the given multisymbols.
    pub fn uniform(multisymbols: Vec<Multisymbol>) -> Result<Self> {
        let n = multisymbols.len().max(1);
        StrategySet::new(multisymbols, vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.multisymbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multisymbols.is_empty()
    }

    pub fn frame_len(&self) -> u32 {
        self.multisymbols[0].frame_len()
    }

    pub fn multisymbols(&self) -> &[Multisymbol] {
        &self.multisymbols
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn get(&self, t: usize) -> Option<&Multisymbol> {
        self.multisymbols.get(t)
    }

    /// Number of strategies whose representative for `x`'s state is `x`.
    pub fn multiplicity(&self, x: &FrameSymbol) -> usize {
        let s = x.weight();
        self.multisymbols
            .iter()
            .filter(|m| m.rep(s) == Some(*x))
            .count()
    }
}

/// `lcm(C(F,0), ..., C(F,F))` in exact integer arithmetic.
pub fn lcm_binomials(frame_len: u32) -> Result<u64> {
    if frame_len == 0 || frame_len > MAX_FRAME_LEN {
        return Err(domain(format!(
            "frame length {frame_len} outside 1..={MAX_FRAME_LEN}"
        )));
    }
    (0..=frame_len).try_fold(1u64, |acc, s| {
        let c = binomial(frame_len, s);
        (acc / gcd(acc, c))
            .checked_mul(c)
            .ok_or_else(|| Error::Limit(format!("lcm of binomials overflows at F = {frame_len}")))
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `m_s = L / C(F, s)`.
pub fn representative_multiplicity(frame_len: u32, state: u32) -> Result<u64> {
    if state > frame_len {
        return Err(domain(format!("state {state} outside 0..={frame_len}")));
    }
    let l = lcm_binomials(frame_len)?;
    let c = binomial(frame_len, state);
    debug_assert_eq!(l % c, 0);
    Ok(l / c)
}

/// Weight bookkeeping for the transition `X_s -> X_{s+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionPlan {
    pub state: u32,
    /// `floor(m_s / (F - s))`.
    pub w1: u64,
    /// `ceil(m_s / (F - s))`.
    pub w2: u64,
    /// Edges at `w2` per node of `X_s`: `m_s mod (F - s)`.
    pub b: u64,
    /// Edges at `w2` per node of `X_{s+1}`: `m_{s+1} mod (s + 1)`.
    pub d: u64,
}

impl TransitionPlan {
    pub fn new(frame_len: u32, state: u32) -> Result<Self> {
        if state >= frame_len {
            return Err(domain(format!(
                "no transition out of state {state} for F = {frame_len}"
            )));
        }
        let out_deg = u64::from(frame_len - state);
        let in_deg = u64::from(state + 1);
        let m_lo = representative_multiplicity(frame_len, state)?;
        let m_hi = representative_multiplicity(frame_len, state + 1)?;
        let (w1, b) = (m_lo / out_deg, m_lo % out_deg);
        let (c, d) = (m_hi / in_deg, m_hi % in_deg);
        if w1 != c || b * binomial(frame_len, state) != d * binomial(frame_len, state + 1) {
            return Err(Error::Internal(format!(
                "weight averages disagree at s = {state}: m_s = {m_lo} = {w1}*{out_deg} + {b}, \
                 m_s+1 = {m_hi} = {c}*{in_deg} + {d}"
            )));
        }
        Ok(TransitionPlan {
            state,
            w1,
            w2: if b == 0 { w1 } else { w1 + 1 },
            b,
            d,
        })
    }
}

/// A weighted edge between consecutive weight classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: FrameSymbol,
    pub to: FrameSymbol,
    pub weight: u64,
}

/// The cover graph of the weight classes with integer edge weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayeredGraph {
    frame_len: u32,
    lcm: u64,
    layers: Vec<Vec<FrameSymbol>>,
    /// `transitions[s]`: edges `X_s -> X_{s+1}`, sorted by `(from, to)`.
    transitions: Vec<Vec<Edge>>,
    plans: Vec<TransitionPlan>,
}

impl LayeredGraph {
    pub fn frame_len(&self) -> u32 {
        self.frame_len
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn layer(&self, s: u32) -> &[FrameSymbol] {
        &self.layers[s as usize]
    }

    pub fn transition(&self, s: u32) -> &[Edge] {
        &self.transitions[s as usize]
    }

    pub fn plan(&self, s: u32) -> &TransitionPlan {
        &self.plans[s as usize]
    }

    /// Outgoing edges of `x`.
    pub fn outgoing(&self, x: &FrameSymbol) -> impl Iterator<Item = &Edge> {
        let s = x.weight() as usize;
        let x = *x;
        self.transitions
            .get(s)
            .into_iter()
            .flatten()
            .filter(move |e| e.from == x)
    }

    /// Incoming edges of `x`.
    pub fn incoming(&self, x: &FrameSymbol) -> impl Iterator<Item = &Edge> {
        let s = x.weight() as usize;
        let x = *x;
        s.checked_sub(1)
            .and_then(|prev| self.transitions.get(prev))
            .into_iter()
            .flatten()
            .filter(move |e| e.to == x)
    }

    /// Checks flow conservation and the per-edge weight bounds.
    pub fn verify(&self) -> Result<()> {
        let f = self.frame_len;
        for s in 0..f {
            let plan = &self.plans[s as usize];
            let m_lo = representative_multiplicity(f, s)?;
            let m_hi = representative_multiplicity(f, s + 1)?;
            let mut out_sum: HashMap<FrameSymbol, u64> = HashMap::new();
            let mut in_sum: HashMap<FrameSymbol, u64> = HashMap::new();
            for e in &self.transitions[s as usize] {
                if e.from.hamming_distance(&e.to) != 1 || e.to.weight() != s + 1 {
                    return Err(self.dump(format!("edge {} -> {} is not a cover", e.from, e.to)));
                }
                if e.weight != plan.w1 && e.weight != plan.w2 {
                    return Err(self.dump(format!(
                        "edge {} -> {} has weight {} outside {{{}, {}}}",
                        e.from, e.to, e.weight, plan.w1, plan.w2
                    )));
                }
                *out_sum.entry(e.from).or_default() += e.weight;
                *in_sum.entry(e.to).or_default() += e.weight;
            }
            for x in &self.layers[s as usize] {
                let got = out_sum.get(x).copied().unwrap_or(0);
                if got != m_lo {
                    return Err(self.dump(format!("{x} sends {got}, expected {m_lo}")));
                }
            }
            for x in &self.layers[s as usize + 1] {
                let got = in_sum.get(x).copied().unwrap_or(0);
                if got != m_hi {
                    return Err(self.dump(format!("{x} receives {got}, expected {m_hi}")));
                }
            }
        }
        Ok(())
    }

    fn dump(&self, reason: String) -> Error {
        let mut msg = format!("{reason}\nF = {}, L = {}\n", self.frame_len, self.lcm);
        for (s, edges) in self.transitions.iter().enumerate() {
            msg.push_str(&format!("transition {s}: {:?}\n", self.plans[s]));
            for e in edges {
                msg.push_str(&format!("  {} -> {} : {}\n", e.from, e.to, e.weight));
            }
        }
        Error::Internal(msg)
    }
}

fn check_construct_len(frame_len: u32) -> Result<()> {
    if frame_len == 0 {
        return Err(domain("frame length must be at least 1"));
    }
    if frame_len > MAX_CONSTRUCT_FRAME_LEN {
        return Err(Error::Limit(format!(
            "construction supports F <= {MAX_CONSTRUCT_FRAME_LEN}, got {frame_len}"
        )));
    }
    Ok(())
}

/// Assigns edge weights so that every `x_s` carries `m_s` units of flow.
pub fn build_weighted_graph(frame_len: u32) -> Result<LayeredGraph> {
    check_construct_len(frame_len)?;
    let lcm = lcm_binomials(frame_len)?;
    let layers = (0..=frame_len)
        .map(|s| enumerate_weight_class(frame_len, s))
        .collect::<Result<Vec<_>>>()?;
    let mut transitions = Vec::with_capacity(frame_len as usize);
    let mut plans = Vec::with_capacity(frame_len as usize);

    for s in 0..frame_len {
        let plan = TransitionPlan::new(frame_len, s)?;
        let lower = &layers[s as usize];
        let upper = &layers[s as usize + 1];
        let upper_index: HashMap<u32, usize> = upper
            .iter()
            .enumerate()
            .map(|(i, x)| (x.bits(), i))
            .collect();

        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (li, x) in lower.iter().enumerate() {
            let mut targets: Vec<usize> = (0..frame_len)
                .filter(|b| x.bits() >> b & 1 == 0)
                .map(|b| upper_index[&(x.bits() | 1 << b)])
                .collect();
            targets.sort_unstable();
            edges.extend(targets.into_iter().map(|ui| (li, ui)));
        }

        let mut heavy = vec![false; edges.len()];
        if plan.b > 0 {
            // source, lower nodes, upper nodes, sink
            let source = 0;
            let sink = 1 + lower.len() + upper.len();
            let mut net = FlowNetwork::new(sink + 1);
            for li in 0..lower.len() {
                net.add_arc(source, 1 + li, plan.b);
            }
            let arc_ids: Vec<usize> = edges
                .iter()
                .map(|&(li, ui)| net.add_arc(1 + li, 1 + lower.len() + ui, 1))
                .collect();
            for ui in 0..upper.len() {
                net.add_arc(1 + lower.len() + ui, sink, plan.d);
            }
            let required = plan.b * lower.len() as u64;
            let got = net.max_flow(source, sink);
            if got != required {
                return Err(Error::Internal(format!(
                    "no feasible weight assignment at F = {frame_len}, s = {s}: \
                     flow {got} of {required} ({plan:?})"
                )));
            }
            for (flag, id) in heavy.iter_mut().zip(arc_ids) {
                *flag = net.flow(id) == 1;
            }
        }

        transitions.push(
            edges
                .iter()
                .zip(heavy)
                .map(|(&(li, ui), h)| Edge {
                    from: lower[li],
                    to: upper[ui],
                    weight: if h { plan.w2 } else { plan.w1 },
                })
                .collect(),
        );
        plans.push(plan);
    }

    let graph = LayeredGraph {
        frame_len,
        lcm,
        layers,
        transitions,
        plans,
    };
    graph.verify()?;
    Ok(graph)
}

/// Peels `L` unit paths off the weighted graph. Each walk starts at the
/// all-zero frame and follows the lexicographically smallest edge with
/// residual weight. The result is a uniform strategy set.
pub fn decompose_paths(graph: &LayeredGraph) -> Result<StrategySet> {
    let f = graph.frame_len;
    let mut residual: Vec<Vec<u64>> = graph
        .transitions
        .iter()
        .map(|edges| edges.iter().map(|e| e.weight).collect())
        .collect();
    // Edges are sorted by `from`, so each node owns a contiguous range.
    let ranges: Vec<HashMap<FrameSymbol, (usize, usize)>> = graph
        .transitions
        .iter()
        .map(|edges| {
            let mut map: HashMap<FrameSymbol, (usize, usize)> = HashMap::new();
            for (i, e) in edges.iter().enumerate() {
                map.entry(e.from)
                    .and_modify(|r| r.1 = i + 1)
                    .or_insert((i, i + 1));
            }
            map
        })
        .collect();

    let mut paths = Vec::with_capacity(graph.lcm as usize);
    for n in 0..graph.lcm {
        let mut cur = FrameSymbol::zeros(f);
        let mut reps = Vec::with_capacity(f as usize + 1);
        reps.push(cur);
        for s in 0..f as usize {
            let (lo, hi) = ranges[s].get(&cur).copied().unwrap_or((0, 0));
            let Some(i) = (lo..hi).find(|&i| residual[s][i] > 0) else {
                return Err(Error::Internal(format!(
                    "path {n} stuck at {cur} (state {s}) with no residual weight"
                )));
            };
            residual[s][i] -= 1;
            cur = graph.transitions[s][i].to;
            reps.push(cur);
        }
        paths.push(Multisymbol::new(reps)?);
    }
    if let Some((s, _)) = residual
        .iter()
        .enumerate()
        .find(|(_, r)| r.iter().any(|&w| w != 0))
    {
        return Err(Error::Internal(format!(
            "residual weight left in transition {s} after extracting {} paths",
            graph.lcm
        )));
    }
    StrategySet::uniform(paths)
}

/// The uniform `L`-sized capacity-achieving strategy set.
pub fn construct_strategy_set(frame_len: u32) -> Result<StrategySet> {
    decompose_paths(&build_weighted_graph(frame_len)?)
}

/// All `F!` permutations of the basic multisymbol with uniform `P_T`.
pub fn full_permutation_set(frame_len: u32) -> Result<StrategySet> {
    if frame_len == 0 {
        return Err(domain("frame length must be at least 1"));
    }
    if frame_len > MAX_PERMUTATION_FRAME_LEN {
        return Err(domain(format!(
            "full permutation set supports F <= {MAX_PERMUTATION_FRAME_LEN}, got {frame_len}"
        )));
    }
    let basic = Multisymbol::basic(frame_len)?;
    let all = Permutation::all(frame_len as usize)
        .iter()
        .map(|pi| basic.permute(pi))
        .collect::<Result<Vec<_>>>()?;
    let distinct: HashSet<&Multisymbol> = all.iter().collect();
    if distinct.len() != all.len() {
        return Err(Error::Internal(format!(
            "{} permutations produced only {} distinct minimal multisymbols",
            all.len(),
            distinct.len()
        )));
    }
    StrategySet::uniform(all)
}

/// Input law induced by a strategy set:
/// `P_X(x) = Σ_t P_T(t) P_S(w(x)) [x = x_{w(x)}(t)]`, indexed by `x.bits()`.
pub fn induced_input_pmf(set: &StrategySet, config: &FrameConfig) -> Result<Vec<f64>> {
    let f = set.frame_len();
    if f != config.frame_len() {
        return Err(domain(format!(
            "strategy frame length {f} differs from config frame length {}",
            config.frame_len()
        )));
    }
    let ps = config.state_pmf();
    let mut px = vec![0.0; 1usize << f];
    for (m, &pt) in set.multisymbols.iter().zip(&set.pmf) {
        for (x, &p) in m.reps().iter().zip(&ps) {
            px[x.bits() as usize] += pt * p;
        }
    }
    Ok(px)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_binomials(4).unwrap(), 12);
        assert_eq!(lcm_binomials(7).unwrap(), 105);
        assert_eq!(lcm_binomials(1).unwrap(), 1);
        assert_eq!(lcm_binomials(2).unwrap(), 2);
        assert!(lcm_binomials(0).is_err());
        let mut fact = 1u64;
        for f in 1..=MAX_FRAME_LEN {
            fact = fact.saturating_mul(f as u64);
            let l = lcm_binomials(f).unwrap();
            for s in 0..=f {
                assert_eq!(l % binomial(f, s), 0);
            }
            if f <= 20 {
                assert_eq!(fact % l, 0, "L must divide F! at F = {f}");
            }
        }
    }

    #[test]
    fn lcm_matches_brute_force() {
        // smallest positive multiple of every binomial, by search
        for f in 1..=9u32 {
            let cs: Vec<u64> = (0..=f).map(|s| binomial(f, s)).collect();
            let brute = (1u64..).find(|n| cs.iter().all(|c| n % c == 0)).unwrap();
            assert_eq!(lcm_binomials(f).unwrap(), brute);
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(representative_multiplicity(7, 1).unwrap(), 15);
        assert_eq!(representative_multiplicity(4, 2).unwrap(), 2);
        assert_eq!(representative_multiplicity(4, 0).unwrap(), 12);
        assert!(representative_multiplicity(4, 5).is_err());
    }

    #[test]
    fn f4_graph_weights() {
        let g = build_weighted_graph(4).unwrap();
        let t0 = g.transition(0);
        assert_eq!(t0.len(), 4);
        assert!(t0.iter().all(|e| e.weight == 3));
        assert!(g.transition(1).iter().all(|e| e.weight == 1));
    }

    #[test]
    fn f7_graph_weights() {
        let g = build_weighted_graph(7).unwrap();
        for x in g.layer(1) {
            let mut w: Vec<u64> = g.outgoing(x).map(|e| e.weight).collect();
            w.sort_unstable();
            assert_eq!(w, vec![2, 2, 2, 3, 3, 3]);
        }
        let plan = g.plan(1);
        assert_eq!((plan.w1, plan.w2, plan.b), (2, 3, 3));
    }

    #[test]
    fn average_weight_identity() {
        // m_s / (F - s) = m_{s+1} / (s + 1), compared as exact fractions
        for f in 1..=MAX_FRAME_LEN {
            for s in 0..f {
                let lo = representative_multiplicity(f, s).unwrap() as u128 * (s as u128 + 1);
                let hi = representative_multiplicity(f, s + 1).unwrap() as u128 * (f - s) as u128;
                assert_eq!(lo, hi);
                let plan = TransitionPlan::new(f, s).unwrap();
                assert_eq!(plan.b * binomial(f, s), plan.d * binomial(f, s + 1));
            }
        }
    }

    #[test]
    fn decomposition_small_cases() {
        let set = construct_strategy_set(1).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.get(0).unwrap().to_string(), "(0,1)");

        let set = construct_strategy_set(2).unwrap();
        let shown: Vec<String> = set.multisymbols().iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["(00,01,11)", "(00,10,11)"]);
    }

    #[test]
    fn decomposition_postconditions() {
        for f in 1..=8u32 {
            let set = construct_strategy_set(f).unwrap();
            let l = lcm_binomials(f).unwrap() as usize;
            assert_eq!(set.len(), l);
            assert!(set.multisymbols().iter().all(Multisymbol::is_minimal));
            for s in 0..=f {
                let m_s = representative_multiplicity(f, s).unwrap() as usize;
                for x in enumerate_weight_class(f, s).unwrap() {
                    assert_eq!(set.multiplicity(&x), m_s, "F={f} x={x}");
                }
            }
            assert!(set.pmf().iter().all(|&p| p == 1.0 / l as f64));
        }
    }

    #[test]
    fn decomposition_is_deterministic() {
        assert_eq!(
            construct_strategy_set(6).unwrap(),
            construct_strategy_set(6).unwrap()
        );
    }

    #[test]
    fn construction_limit() {
        assert!(matches!(
            build_weighted_graph(MAX_CONSTRUCT_FRAME_LEN + 1),
            Err(Error::Limit(_))
        ));
    }

    #[test]
    fn permutation_set_examples() {
        assert_eq!(full_permutation_set(3).unwrap().len(), 6);
        assert_eq!(full_permutation_set(1).unwrap().len(), 1);
        let set = full_permutation_set(4).unwrap();
        assert_eq!(set.len(), 24);
        for s in 0..=4u32 {
            let expect = (1..=s).product::<u32>() * (1..=4 - s).product::<u32>();
            for x in enumerate_weight_class(4, s).unwrap() {
                assert_eq!(set.multiplicity(&x), expect as usize);
            }
        }
        assert!(full_permutation_set(MAX_PERMUTATION_FRAME_LEN + 1).is_err());
    }

    #[test]
    fn induced_law_is_uniform_within_classes() {
        let cfg = FrameConfig::new(4, 0.5).unwrap();
        let px = induced_input_pmf(&construct_strategy_set(4).unwrap(), &cfg).unwrap();
        let ps = cfg.state_pmf();
        for (bits, p) in px.iter().enumerate() {
            let s = (bits as u32).count_ones();
            assert!((p - ps[s as usize] / binomial(4, s) as f64).abs() < 1e-12);
        }

        let set = full_permutation_set(3).unwrap();
        for a in [0.1, 0.35, 0.8] {
            let cfg = FrameConfig::new(3, a).unwrap();
            let ps = cfg.state_pmf();
            let px = induced_input_pmf(&set, &cfg).unwrap();
            for (bits, p) in px.iter().enumerate() {
                let s = (bits as u32).count_ones();
                assert!((p - ps[s as usize] / binomial(3, s) as f64).abs() < 1e-12);
            }
        }

        let single = StrategySet::uniform(vec![Multisymbol::basic(3).unwrap()]).unwrap();
        let cfg = FrameConfig::new(3, 0.3).unwrap();
        let ps = cfg.state_pmf();
        let px = induced_input_pmf(&single, &cfg).unwrap();
        for (bits, p) in px.iter().enumerate() {
            let on_path = [0b000, 0b001, 0b011, 0b111].contains(&bits);
            let s = (bits as u32).count_ones() as usize;
            assert_eq!(*p, if on_path { ps[s] } else { 0.0 });
        }
    }

    #[test]
    fn strategy_set_validation() {
        let b3 = Multisymbol::basic(3).unwrap();
        assert!(StrategySet::new(vec![], vec![]).is_err());
        assert!(StrategySet::new(vec![b3.clone()], vec![0.5]).is_err());
        assert!(StrategySet::new(
            vec![b3.clone(), Multisymbol::basic(2).unwrap()],
            vec![0.5, 0.5]
        )
        .is_err());
        assert!(StrategySet::new(vec![b3], vec![1.0]).is_ok());
    }
}
