//! # covsim
//!
//! Simulation library and experiment CLI for UAV-provided emergency wireless
//! coverage extended by relay hops and multi-hop D2D links.
//!
//! The library is organized around four models plus an experiment harness:
//!
//! - [`atg_channel`] — closed-form air-to-ground channel: slant geometry,
//!   LoS/NLoS probability (elevation-angle sigmoid), and mixed average path loss.
//! - [`erlang_traffic`] — Erlang-B blocking probability for the congested
//!   coverage service and a channel-dimensioning helper.
//! - [`d2d_capacity`] — multi-hop relay-assisted D2D system capacity with
//!   hop-distance scaling `R_r = R_d / N` and relay/D2D power ratio.
//! - [`disaster_scenario`] — seeded Poisson point process user fields on a
//!   square disaster area, UAV coverage classification, edge-of-coverage relay
//!   selection, and multi-hop reachability metrics.
//! - [`experiment`] — deterministic CSV sweeps and scenario runs behind the
//!   `covsim` CLI.
//!
//! All model operations are pure functions of their arguments; scenario
//! generation is deterministic given a seed. Safe to call concurrently.

pub mod atg_channel;
pub mod d2d_capacity;
pub mod disaster_scenario;
pub mod erlang_traffic;
pub mod experiment;
mod numfmt;

pub use experiment::config::{Experiment, ExperimentConfig};
