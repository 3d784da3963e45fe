//! Desk-scale experiments: slope convergence, sample-path convergence,
//! averaged trajectories, and the automata-counting constant.

mod acda;
mod average;
mod convergence;
mod slope;

pub use acda::{
    acda_probability, acda_report, korsunov_constant, AcdaProbability, AcdaReport,
    KorsunovConstant, ACDA_EXACT_MAX_N,
};
pub use average::{averaged_paths, AveragedPaths, MeanCurve, DEFAULT_STARTS};
pub use convergence::{
    convergence_experiment, sup_distance, wilson_interval, ConvergenceReport, Curve, Status,
};
pub use slope::{
    default_precision, slope_convergence, slope_convergence_with, SlopeReport, SlopeRow,
};
