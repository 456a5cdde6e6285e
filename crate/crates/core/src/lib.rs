//! Secondary channels created by reordering labelled resources in frames.
//!
//! A primary scheduler fills each frame of `F` packets with `s` packets for
//! user 1 and `F - s` for user 0. The secondary transmitter may only choose
//! the order, so it signals through the arrangement of a frame whose weight
//! it does not control. This crate computes the capacity of that channel,
//! builds strategy sets that reach it, checks them against a brute-force
//! Blahut–Arimoto oracle and simulates them end to end.

pub mod capacity;
pub mod channel;
pub mod entropy;
pub mod error;
mod flow;
pub mod frame;
pub mod multisymbol;
pub mod simulate;
pub mod strategy;
pub mod sweep;

pub use capacity::{
    c_xy, errorless_capacity, mutual_info_ty, oracle_capacity, secondary_capacity,
    z_fixed_input_capacity, z_point_capacity, CapacityMethod, CapacityReport, OracleReport,
};
pub use channel::{BinaryInputChannel, ChannelKind, ChannelSpec};
pub use error::{Error, Result};
pub use frame::{FrameConfig, FrameSymbol, OutputSymbol};
pub use multisymbol::{Multisymbol, Permutation};
pub use simulate::{run_monte_carlo, SimReport};
pub use strategy::{construct_strategy_set, full_permutation_set, LayeredGraph, StrategySet};
