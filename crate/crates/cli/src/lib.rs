//! Command-line front end for `skewinfo`: problem files, reports, bound
//! checks, CSV sweeps, sampling campaigns and τ estimation.

pub mod commands;
pub mod exit;
pub mod format;
pub mod problem;

pub use commands::{
    cmd_info, cmd_sample, cmd_scan, cmd_tau, cmd_verify, Relation, SampleArgs, ScanRow,
    SweepParam, SweepSpec,
};
pub use exit::{CliError, CliResult, Exit};
pub use problem::{ChannelSpec, Instance, Problem, StateSpec};
