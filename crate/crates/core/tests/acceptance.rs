//! Acceptance criteria. Runs as a plain binary and prints one PASS/FAIL
//! line per criterion; exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reorder_channel::capacity::{c_xy, oracle_capacity};
use reorder_channel::frame::{conditional_entropy_given_x, enumerate_weight_class};
use reorder_channel::multisymbol::{
    all_multisymbols, entropy_output_given_t, mutual_info_within, positionwise_entropy_bound,
};
use reorder_channel::strategy::{build_weighted_graph, lcm_binomials};
use reorder_channel::sweep::{run_sweep, SweepSpec};
use reorder_channel::{
    construct_strategy_set, errorless_capacity, run_monte_carlo, secondary_capacity,
    z_fixed_input_capacity, z_point_capacity, BinaryInputChannel, ChannelKind, FrameConfig,
    FrameSymbol, Multisymbol,
};

const PRESETS: [ChannelKind; 3] = [ChannelKind::Erasure, ChannelKind::Bsc, ChannelKind::Z];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ch(kind: ChannelKind, p: f64) -> BinaryInputChannel {
    BinaryInputChannel::preset(kind, p).unwrap()
}

fn cfg(f: u32, a: f64) -> FrameConfig {
    FrameConfig::new(f, a).unwrap()
}

// Independent reference computations.

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn binom_u64(n: u32, k: u32) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm_of_row(f: u32) -> u64 {
    (0..=f)
        .map(|s| binom_u64(f, s))
        .fold(1, |l, c| l / gcd(l, c) * c)
}

fn state_law(f: u32, a: f64) -> Vec<f64> {
    (0..=f)
        .map(|s| binom(f, s) * a.powi(s as i32) * (1.0 - a).powi((f - s) as i32))
        .collect()
}

fn h(pmf: impl IntoIterator<Item = f64>) -> f64 {
    pmf.into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// `H(Y | X = x)` by listing every output word.
fn brute_entropy_given_x(channel: &BinaryInputChannel, x: &FrameSymbol) -> f64 {
    let j = channel.output_size();
    let f = x.len();
    let total = j.pow(f);
    h((0..total).map(|mut y| {
        let mut prob = 1.0;
        for pos in (0..f).rev() {
            let letter = y % j;
            y /= j;
            let row = if x.bit(pos) == 1 {
                channel.q1()
            } else {
                channel.q0()
            };
            prob *= row[letter];
        }
        prob
    }))
}

fn errorless_reference(f: u32, a: f64) -> f64 {
    state_law(f, a)
        .iter()
        .enumerate()
        .map(|(s, p)| p * binom(f, s as u32).log2())
        .sum()
}

/// `I(X;Y)` of a 2-input channel with `P(X=1) = a`, from the definition.
fn direct_mutual_information(a: f64, q0: &[f64], q1: &[f64]) -> f64 {
    let px = [1.0 - a, a];
    let rows = [q0, q1];
    let py: Vec<f64> = (0..q0.len())
        .map(|y| px[0] * q0[y] + px[1] * q1[y])
        .collect();
    let mut mi = 0.0;
    for x in 0..2 {
        for y in 0..q0.len() {
            let joint = px[x] * rows[x][y];
            if joint > 0.0 {
                mi += joint * (rows[x][y] / py[y]).log2();
            }
        }
    }
    mi
}

// Criteria.

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut points = 0;
    for f in 2..=4 {
        for kind in PRESETS {
            for p in [0.1, 0.2] {
                for a in [0.3, 0.5] {
                    let (c, k) = (ch(kind, p), cfg(f, a));
                    let constructed = secondary_capacity(&c, &k).map_err(|e| e.to_string())?.i_ty;
                    let oracle = oracle_capacity(&c, &k).map_err(|e| e.to_string())?.capacity;
                    let d = (constructed - oracle).abs();
                    worst = worst.max(d);
                    ensure(d < 1e-6, || {
                        format!("F={f} {kind} p={p} a={a}: constructed {constructed} vs oracle {oracle}")
                    })?;
                    points += 1;
                }
            }
        }
    }
    Ok(format!("{points} points, max |diff| = {worst:.2e}"))
}

fn errorless_closed_form() -> Outcome {
    let noiseless = BinaryInputChannel::noiseless();
    let mut worst = 0.0f64;
    for f in 1..=6 {
        let set = construct_strategy_set(f).map_err(|e| e.to_string())?;
        for i in 1..=9 {
            let a = i as f64 / 10.0;
            let k = cfg(f, a);
            let i_ty = reorder_channel::mutual_info_ty(&noiseless, &k, &set)
                .map_err(|e| e.to_string())?
                .i_ty;
            let reference = errorless_reference(f, a);
            let d = (i_ty - reference)
                .abs()
                .max((errorless_capacity(&k) - reference).abs());
            worst = worst.max(d);
            ensure(d < 1e-9, || {
                format!("F={f} a={a}: I(T;Y) {i_ty} vs {reference}")
            })?;
        }
    }
    Ok(format!("54 points, max |diff| = {worst:.2e}"))
}

fn construction_validity() -> Outcome {
    for f in 1..=8u32 {
        let l = lcm_binomials(f).map_err(|e| e.to_string())?;
        ensure(l == lcm_of_row(f), || {
            format!("F={f}: L {l} vs {}", lcm_of_row(f))
        })?;
        let set = construct_strategy_set(f).map_err(|e| e.to_string())?;
        ensure(set.len() as u64 == l, || {
            format!("F={f}: {} multisymbols, L = {l}", set.len())
        })?;
        ensure(
            set.multisymbols().iter().all(Multisymbol::is_minimal),
            || format!("F={f}: non-minimal multisymbol"),
        )?;
        for s in 0..=f {
            let m_s = l / binom_u64(f, s);
            for x in enumerate_weight_class(f, s).unwrap() {
                let hits = set
                    .multisymbols()
                    .iter()
                    .filter(|m| m.reps()[s as usize] == x)
                    .count();
                ensure(hits as u64 == m_s, || {
                    format!("F={f}: {x} covered {hits} times, want {m_s}")
                })?;
            }
        }
    }
    ensure(construct_strategy_set(4).unwrap().len() == 12, || {
        "F=4: L != 12".into()
    })?;
    let g7 = build_weighted_graph(7).map_err(|e| e.to_string())?;
    ensure(g7.lcm() == 105, || format!("F=7: L = {}", g7.lcm()))?;
    ensure(105 / binom_u64(7, 1) == 15, || "F=7: m_1 != 15".into())?;
    for x in enumerate_weight_class(7, 1).unwrap() {
        let mut w: Vec<u64> = g7.outgoing(&x).map(|e| e.weight).collect();
        w.sort_unstable();
        ensure(w == [2, 2, 2, 3, 3, 3], || {
            format!("F=7: {x} outgoing weights {w:?}")
        })?;
    }
    Ok("F = 1..8 exact; F=4 L=12; F=7 L=105, m_1=15, X_1 weights {3,3,3,2,2,2}".into())
}

fn conditional_entropy_per_symbol() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in PRESETS {
        for p in [0.0, 0.1, 0.35, 0.5, 1.0] {
            let c = ch(kind, p);
            for f in 1..=5 {
                for bits in 0..(1u32 << f) {
                    let x = FrameSymbol::new(f, bits).unwrap();
                    let (lib, brute) = (
                        conditional_entropy_given_x(&c, &x),
                        brute_entropy_given_x(&c, &x),
                    );
                    worst = worst.max((lib - brute).abs());
                    ensure((lib - brute).abs() < 1e-10, || {
                        format!("{kind} p={p} x={x}: {lib} vs {brute}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases, max |diff| = {worst:.2e}"))
}

fn minimal_multisymbols_optimal() -> Outcome {
    let all = all_multisymbols(3).map_err(|e| e.to_string())?;
    ensure(all.len() == 9, || {
        format!("{} multisymbols at F=3", all.len())
    })?;
    ensure(all.iter().filter(|m| m.is_minimal()).count() == 6, || {
        "expected 6 minimal".into()
    })?;
    let mut spread = 0.0f64;
    for kind in PRESETS {
        for p in [0.05, 0.2, 0.4] {
            for a in [0.2, 0.5, 0.8] {
                let (c, k) = (ch(kind, p), cfg(3, a));
                let hy: Vec<f64> = all
                    .iter()
                    .map(|m| entropy_output_given_t(&c, &k, m).unwrap())
                    .collect();
                let best = hy.iter().copied().fold(f64::INFINITY, f64::min);
                let im: Vec<f64> = all
                    .iter()
                    .filter(|m| m.is_minimal())
                    .map(|m| mutual_info_within(&c, &k, m).unwrap())
                    .collect();
                for (m, v) in all.iter().zip(&hy) {
                    if m.is_minimal() {
                        ensure(*v <= best + 1e-12, || {
                            format!("{kind} p={p} a={a}: minimal {m} H={v} > min {best}")
                        })?;
                    }
                }
                let lo = im.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = im.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                spread = spread.max(hi - lo);
                ensure(hi - lo < 1e-10, || {
                    format!("{kind} p={p} a={a}: I_m spread {}", hi - lo)
                })?;
            }
        }
    }
    Ok(format!("27 configurations, max I_m spread = {spread:.2e}"))
}

fn bounds_and_trend() -> Outcome {
    let mut rows = 0;
    for kind in PRESETS {
        let spec = SweepSpec {
            preset: kind,
            p_values: vec![0.0, 0.1, 0.2, 0.5],
            a_values: vec![0.3, 0.5],
            f_values: (1..=6).collect(),
            normalize: false,
        };
        for r in run_sweep(&spec).map_err(|e| e.to_string())? {
            let tag = format!("{kind} F={} a={} p={}", r.frame_len, r.a, r.p);
            ensure(r.c_constructed <= r.c_xy + 1e-9, || {
                format!("{tag}: constructed {} > c_xy {}", r.c_constructed, r.c_xy)
            })?;
            ensure(r.c_xy <= r.outer_bound + 1e-9, || {
                format!("{tag}: c_xy {} > outer {}", r.c_xy, r.outer_bound)
            })?;
            if let Some(o) = r.c_oracle {
                ensure((o - r.c_constructed).abs() < 1e-6, || {
                    format!("{tag}: oracle {o}")
                })?;
            }
            if kind == ChannelKind::Erasure && r.a == 0.5 {
                let want = r.frame_len as f64 * (1.0 - r.p);
                ensure((r.c_xy - want).abs() < 1e-9, || {
                    format!("{tag}: c_xy {} vs F(1-p) {want}", r.c_xy)
                })?;
            }
            rows += 1;
        }
    }
    let mut trend = Vec::new();
    for p in [0.1, 0.2] {
        let spec = SweepSpec {
            preset: ChannelKind::Erasure,
            p_values: vec![p],
            a_values: vec![0.5],
            f_values: (1..=10).collect(),
            normalize: true,
        };
        let per_packet: Vec<f64> = run_sweep(&spec)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|r| r.c_constructed)
            .collect();
        for w in per_packet.windows(2) {
            ensure(w[1] >= w[0] - 1e-12, || {
                format!("p={p}: C_F/F decreased {per_packet:?}")
            })?;
        }
        let last = *per_packet.last().unwrap();
        ensure(last < 1.0 - p, || {
            format!("p={p}: C_10/10 = {last} above 1-p")
        })?;
        trend.push(format!("p={p}: C_10/10={last:.4}"));
    }
    Ok(format!("{rows} rows bounded; {}", trend.join(", ")))
}

fn positionwise_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240607);
    let mut max_gap = 0.0f64;
    let mut degenerate = 0;
    for case in 0..1000 {
        let f = rng.gen_range(1..=5u32);
        let kind = PRESETS[rng.gen_range(0..3)];
        let p: f64 = rng.gen();
        let a = match case % 5 {
            0 => [0.0, 1.0][rng.gen_range(0..2)],
            _ => rng.gen(),
        };
        let reps = (0..=f)
            .map(|s| {
                let class = enumerate_weight_class(f, s).unwrap();
                class[rng.gen_range(0..class.len())]
            })
            .collect();
        let m = Multisymbol::new(reps).unwrap();
        let (c, k) = (ch(kind, p), cfg(f, a));
        let bound = positionwise_entropy_bound(&c, &k, &m).map_err(|e| e.to_string())?;
        let exact = entropy_output_given_t(&c, &k, &m).map_err(|e| e.to_string())?;
        ensure(bound >= exact - 1e-9, || {
            format!("case {case}: {m} {kind} p={p} a={a}: bound {bound} < exact {exact}")
        })?;
        if a == 0.0 || a == 1.0 {
            degenerate += 1;
            ensure((bound - exact).abs() < 1e-9, || {
                format!("case {case}: degenerate P_S but gap {}", bound - exact)
            })?;
        }
        max_gap = max_gap.max(bound - exact);
    }
    Ok(format!(
        "1000 cases ({degenerate} degenerate), max gap = {max_gap:.4} bits"
    ))
}

fn monte_carlo() -> Outcome {
    let (c, k) = (ch(ChannelKind::Erasure, 0.2), cfg(4, 0.5));
    let set = construct_strategy_set(4).map_err(|e| e.to_string())?;
    let first = run_monte_carlo(&c, &k, &set, 1_000_000, 17).map_err(|e| e.to_string())?;
    let second = run_monte_carlo(&c, &k, &set, 1_000_000, 17).map_err(|e| e.to_string())?;
    let (a, b) = (
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap(),
    );
    ensure(a == b, || format!("reports differ:\n{a}\n{b}"))?;
    let d = (first.empirical_mi - first.analytical_mi).abs();
    ensure(d < 0.02, || {
        format!(
            "empirical {} vs analytical {}",
            first.empirical_mi, first.analytical_mi
        )
    })?;
    Ok(format!(
        "empirical {:.5} vs analytical {:.5} (|diff| {d:.5}); reruns byte-identical",
        first.empirical_mi, first.analytical_mi
    ))
}

fn z_channel_points() -> Outcome {
    ensure(z_point_capacity(0.0) == 1.0, || {
        format!("C_Z(0) = {}", z_point_capacity(0.0))
    })?;
    let mut worst = 0.0f64;
    for i in 0..=20 {
        for j in 0..=20 {
            let (a, p) = (i as f64 / 20.0, j as f64 / 20.0);
            let closed = z_fixed_input_capacity(a, p).map_err(|e| e.to_string())?;
            let c = ch(ChannelKind::Z, p);
            let lib = c_xy(&c, &cfg(1, a)).map_err(|e| e.to_string())?;
            let direct = direct_mutual_information(a, c.q0(), c.q1());
            let d = (closed - lib).abs().max((closed - direct).abs());
            worst = worst.max(d);
            ensure(d < 1e-12, || {
                format!("a={a} p={p}: closed {closed}, c_xy {lib}, direct {direct}")
            })?;
        }
    }
    Ok(format!(
        "C_Z(0) = 1; 441 grid points, max |diff| = {worst:.2e}"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("errorless closed form", errorless_closed_form),
        ("construction validity", construction_validity),
        ("conditional entropy per symbol", conditional_entropy_per_symbol),
        (
            "minimal multisymbols optimal at F=3",
            minimal_multisymbols_optimal,
        ),
        ("capacity bounds and per-packet trend", bounds_and_trend),
        ("positionwise entropy bound", positionwise_bound),
        ("Monte Carlo consistency", monte_carlo),
        ("Z-channel point values", z_channel_points),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(format!(
                "panicked: {:?}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(e.downcast_ref::<&str>().copied())
            ))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
