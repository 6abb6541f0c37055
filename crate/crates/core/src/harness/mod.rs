//! Problem generators, file I/O, a reference eigensolver and the experiment
//! driver behind the command-line tool.

mod experiment;
mod generators;
mod mm;
mod reference;
mod rng;
mod selftest;

pub use experiment::{
    load_problem, run_experiment, ExperimentConfig, ExperimentSummary, Family, Outcome, ProblemRecord, ResultRow,
    RunRecord, SCHEMA_VERSION,
};
pub use generators::{
    gen_pentadiag, gen_probe, gen_tridiag, tridiag_mass, Generated, RadiusRule, DEFAULT_DELTA, TRIDIAG_VARIANCE,
};
pub use mm::{format_matrix_market, load_matrix_market, parse_matrix_market, write_matrix_market};
pub use reference::{contains_direction, BandPencil};
pub use rng::{GaussianStream, STREAM_B, STREAM_V};
pub use selftest::selftest;
