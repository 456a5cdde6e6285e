//! C ABI for `reorder-channel`.
//!
//! Every fallible call returns a [`ReorderStatus`] and writes results
//! through out-pointers. On failure a message is kept per thread and can be
//! read with [`reorder_last_error`]. Handles are opaque and owned by the
//! caller, who releases them with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use reorder_channel::capacity::{c_xy, oracle_capacity};
use reorder_channel::strategy::lcm_binomials;
use reorder_channel::{
    construct_strategy_set, errorless_capacity, full_permutation_set, mutual_info_ty,
    run_monte_carlo, secondary_capacity, z_fixed_input_capacity, z_point_capacity,
    BinaryInputChannel, CapacityReport, ChannelKind, Error, FrameConfig, SimReport, StrategySet,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReorderStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Limit = 3,
    NonConvergence = 4,
    Internal = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReorderChannelKind {
    Erasure = 0,
    Bsc = 1,
    Z = 2,
}

/// Bits per frame.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ReorderCapacityReport {
    pub i_ty: f64,
    pub i_xy: f64,
    pub i_xy_given_t: f64,
    pub c_xy: f64,
    pub outer_bound: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ReorderSimReport {
    pub frames: u64,
    pub symbol_errors: u64,
    pub heuristic_symbol_errors: u64,
    pub empirical_mi: f64,
    pub analytical_mi: f64,
    pub seed: u64,
}

/// Opaque packet channel.
pub struct ReorderChannel(BinaryInputChannel);

/// Opaque strategy set.
pub struct ReorderStrategySet(StrategySet);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

impl From<&Error> for ReorderStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => ReorderStatus::Domain,
            Error::Limit(_) => ReorderStatus::Limit,
            Error::NonConvergence { .. } => ReorderStatus::NonConvergence,
            Error::Internal(_) => ReorderStatus::Internal,
        }
    }
}

impl From<ChannelKind> for ReorderChannelKind {
    fn from(k: ChannelKind) -> Self {
        match k {
            ChannelKind::Erasure => ReorderChannelKind::Erasure,
            ChannelKind::Bsc => ReorderChannelKind::Bsc,
            ChannelKind::Z => ReorderChannelKind::Z,
        }
    }
}

impl From<ReorderChannelKind> for ChannelKind {
    fn from(k: ReorderChannelKind) -> Self {
        match k {
            ReorderChannelKind::Erasure => ChannelKind::Erasure,
            ReorderChannelKind::Bsc => ChannelKind::Bsc,
            ReorderChannelKind::Z => ChannelKind::Z,
        }
    }
}

impl From<CapacityReport> for ReorderCapacityReport {
    fn from(r: CapacityReport) -> Self {
        ReorderCapacityReport {
            i_ty: r.i_ty,
            i_xy: r.i_xy,
            i_xy_given_t: r.i_xy_given_t,
            c_xy: r.c_xy,
            outer_bound: r.outer_bound,
        }
    }
}

impl From<SimReport> for ReorderSimReport {
    fn from(r: SimReport) -> Self {
        ReorderSimReport {
            frames: r.frames,
            symbol_errors: r.symbol_errors,
            heuristic_symbol_errors: r.heuristic_symbol_errors,
            empirical_mi: r.empirical_mi,
            analytical_mi: r.analytical_mi,
            seed: r.seed,
        }
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, writing its value through `out`.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Failure>) -> ReorderStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return ReorderStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            ReorderStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            ReorderStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            (&e).into()
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            ReorderStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

fn config(frame_len: u32, a: f64) -> Result<FrameConfig, Failure> {
    Ok(FrameConfig::new(frame_len, a)?)
}

/// Copies the calling thread's last error message, NUL-terminated and
/// truncated to `len` bytes, into `buf`. Returns the full message length
/// plus one. `buf` may be null to query the size.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn reorder_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len() + 1
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_channel_preset(
    kind: ReorderChannelKind,
    p: f64,
    out: *mut *mut ReorderChannel,
) -> ReorderStatus {
    guard(out, || {
        let ch = BinaryInputChannel::preset(kind.into(), p)?;
        Ok(Box::into_raw(Box::new(ReorderChannel(ch))))
    })
}

/// Custom channel with rows `q0[0..j]` and `q1[0..j]`.
///
/// # Safety
/// `q0` and `q1` must be valid for `j` reads; `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_channel_custom(
    q0: *const f64,
    q1: *const f64,
    j: usize,
    out: *mut *mut ReorderChannel,
) -> ReorderStatus {
    guard(out, || {
        if q0.is_null() || q1.is_null() {
            return Err(Failure::Null("channel row"));
        }
        let (r0, r1) = (
            std::slice::from_raw_parts(q0, j),
            std::slice::from_raw_parts(q1, j),
        );
        let ch = BinaryInputChannel::new(r0.to_vec(), r1.to_vec())?;
        Ok(Box::into_raw(Box::new(ReorderChannel(ch))))
    })
}

/// # Safety
/// `channel` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn reorder_channel_free(channel: *mut ReorderChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Output alphabet size, or 0 for a null handle.
///
/// # Safety
/// `channel` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reorder_channel_output_size(channel: *const ReorderChannel) -> usize {
    channel.as_ref().map_or(0, |c| c.0.output_size())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_strategy_construct(
    frame_len: u32,
    out: *mut *mut ReorderStrategySet,
) -> ReorderStatus {
    guard(out, || {
        let set = construct_strategy_set(frame_len)?;
        Ok(Box::into_raw(Box::new(ReorderStrategySet(set))))
    })
}

/// All `F!` reorderings of the basic multisymbol.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_strategy_full_permutation(
    frame_len: u32,
    out: *mut *mut ReorderStrategySet,
) -> ReorderStatus {
    guard(out, || {
        let set = full_permutation_set(frame_len)?;
        Ok(Box::into_raw(Box::new(ReorderStrategySet(set))))
    })
}

/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn reorder_strategy_free(set: *mut ReorderStrategySet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of strategies, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn reorder_strategy_len(set: *const ReorderStrategySet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Frame symbol sent by strategy `t` in state `s`, as an integer whose most
/// significant of `F` bits is the first packet.
///
/// # Safety
/// `set` must be a live handle; `out_bits` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_strategy_representative(
    set: *const ReorderStrategySet,
    t: usize,
    s: u32,
    out_bits: *mut u32,
) -> ReorderStatus {
    guard(out_bits, || {
        let set = deref(set, "strategy set")?;
        Ok(reorder_channel::simulate::encode(&set.0, t, s)?.bits())
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_lcm_binomials(frame_len: u32, out: *mut u64) -> ReorderStatus {
    guard(out, || Ok(lcm_binomials(frame_len)?))
}

/// Capacity report of the constructed strategy set.
///
/// # Safety
/// `channel` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_secondary_capacity(
    channel: *const ReorderChannel,
    frame_len: u32,
    a: f64,
    out: *mut ReorderCapacityReport,
) -> ReorderStatus {
    guard(out, || {
        let ch = deref(channel, "channel")?;
        Ok(secondary_capacity(&ch.0, &config(frame_len, a)?)?.into())
    })
}

/// Capacity report of an arbitrary strategy set.
///
/// # Safety
/// `channel` and `set` must be live handles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_mutual_info_ty(
    channel: *const ReorderChannel,
    set: *const ReorderStrategySet,
    a: f64,
    out: *mut ReorderCapacityReport,
) -> ReorderStatus {
    guard(out, || {
        let ch = deref(channel, "channel")?;
        let set = deref(set, "strategy set")?;
        Ok(mutual_info_ty(&ch.0, &config(set.0.frame_len(), a)?, &set.0)?.into())
    })
}

/// Brute-force capacity over every strategy. `out_gap` may be null.
///
/// # Safety
/// `channel` must be a live handle; `out_capacity` valid for writes;
/// `out_gap` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_oracle_capacity(
    channel: *const ReorderChannel,
    frame_len: u32,
    a: f64,
    out_capacity: *mut f64,
    out_gap: *mut f64,
) -> ReorderStatus {
    guard(out_capacity, || {
        let ch = deref(channel, "channel")?;
        let r = oracle_capacity(&ch.0, &config(frame_len, a)?)?;
        if !out_gap.is_null() {
            out_gap.write(r.gap);
        }
        Ok(r.capacity)
    })
}

/// `I(X;Y)` under the class-uniform input law.
///
/// # Safety
/// `channel` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_c_xy(
    channel: *const ReorderChannel,
    frame_len: u32,
    a: f64,
    out: *mut f64,
) -> ReorderStatus {
    guard(out, || {
        let ch = deref(channel, "channel")?;
        Ok(c_xy(&ch.0, &config(frame_len, a)?)?)
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_errorless_capacity(
    frame_len: u32,
    a: f64,
    out: *mut f64,
) -> ReorderStatus {
    guard(out, || Ok(errorless_capacity(&config(frame_len, a)?)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_z_point_capacity(p: f64, out: *mut f64) -> ReorderStatus {
    guard(out, || {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("p = {p} is not a probability in [0, 1]")).into());
        }
        Ok(z_point_capacity(p))
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_z_fixed_input_capacity(
    a: f64,
    p: f64,
    out: *mut f64,
) -> ReorderStatus {
    guard(out, || Ok(z_fixed_input_capacity(a, p)?))
}

/// Monte Carlo run of `frames` frames with MAP decoding.
///
/// # Safety
/// `channel` and `set` must be live handles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn reorder_simulate(
    channel: *const ReorderChannel,
    set: *const ReorderStrategySet,
    a: f64,
    frames: u64,
    seed: u64,
    out: *mut ReorderSimReport,
) -> ReorderStatus {
    guard(out, || {
        let ch = deref(channel, "channel")?;
        let set = deref(set, "strategy set")?;
        Ok(run_monte_carlo(&ch.0, &config(set.0.frame_len(), a)?, &set.0, frames, seed)?.into())
    })
}
