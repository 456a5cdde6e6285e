//! Parameter sweeps over `(F, a, p)` for one channel family, emitted as CSV.

use std::fmt::Write as _;

use crate::capacity::{errorless_capacity, mutual_info_ty, oracle_capacity, oracle_feasible};
use crate::channel::{BinaryInputChannel, ChannelKind};
use crate::error::{check_probability, domain, Result};
use crate::frame::FrameConfig;
use crate::strategy::construct_strategy_set;

pub const CSV_HEADER: &str = "F,a,p,preset,c_constructed,c_oracle,c_xy,outer_bound,c_errorless";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub preset: ChannelKind,
    pub p_values: Vec<f64>,
    pub a_values: Vec<f64>,
    pub f_values: Vec<u32>,
    /// Divide every capacity column by `F`.
    pub normalize: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p_values.is_empty() || self.a_values.is_empty() || self.f_values.is_empty() {
            return Err(domain("sweep needs at least one value of F, a and p"));
        }
        for &p in &self.p_values {
            check_probability("p", p)?;
        }
        for &a in &self.a_values {
            check_probability("a", a)?;
        }
        if self.f_values.contains(&0) {
            return Err(domain("frame length must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub frame_len: u32,
    pub a: f64,
    pub p: f64,
    pub preset: ChannelKind,
    pub c_constructed: f64,
    /// `None` when the oracle is above the enumeration ceiling.
    pub c_oracle: Option<f64>,
    pub c_xy: f64,
    pub outer_bound: f64,
    pub c_errorless: f64,
}

/// Evaluates every grid point. Rows are sorted by `(F, a, p)` and
/// duplicates in the value lists are dropped.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut fs = spec.f_values.clone();
    fs.sort_unstable();
    fs.dedup();
    let sorted = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    let (aa, pp) = (sorted(&spec.a_values), sorted(&spec.p_values));

    let mut rows = Vec::with_capacity(fs.len() * aa.len() * pp.len());
    for &f in &fs {
        let set = construct_strategy_set(f)?;
        for &a in &aa {
            let config = FrameConfig::new(f, a)?;
            for &p in &pp {
                let channel = BinaryInputChannel::preset(spec.preset, p)?;
                let report = mutual_info_ty(&channel, &config, &set)?;
                let c_oracle = if oracle_feasible(&channel, f) {
                    Some(oracle_capacity(&channel, &config)?.capacity)
                } else {
                    None
                };
                let scale = if spec.normalize { 1.0 / f as f64 } else { 1.0 };
                rows.push(SweepRow {
                    frame_len: f,
                    a,
                    p,
                    preset: spec.preset,
                    c_constructed: report.i_ty * scale,
                    c_oracle: c_oracle.map(|c| c * scale),
                    c_xy: report.c_xy * scale,
                    outer_bound: report.outer_bound * scale,
                    c_errorless: errorless_capacity(&config) * scale,
                });
            }
        }
    }
    Ok(rows)
}

/// Rounds to 12 significant digits and prints the shortest decimal form.
pub fn format_value(v: f64) -> String {
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.frame_len,
            format_value(r.a),
            format_value(r.p),
            r.preset,
            format_value(r.c_constructed),
            r.c_oracle.map(format_value).unwrap_or_default(),
            format_value(r.c_xy),
            format_value(r.outer_bound),
            format_value(r.c_errorless),
        );
    }
    out
}
