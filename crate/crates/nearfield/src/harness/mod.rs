//! Experiment harness: scenario grids, the per-frame pipeline, metric
//! aggregation, and report emission.
//!
//! A scenario is a grid of deterministic trials. Every trial runs the same
//! pipeline per frame -- cast → corridor filter → cluster → footprint
//! compensation → size filter → track → decide -- and logs one decision per
//! strategy per frame. Metrics are trial-level: a strategy scores a positive
//! on a trial if it braked in any counted frame.

mod config;
mod config_file;
mod metrics;
mod report;
mod runner;
mod scenario;

pub use config::{ScenarioConfig, ScenarioKind};
pub use config_file::{apply_pairs, kind_from_pairs, load_pairs, parse_pairs};
pub use metrics::{compute_metrics, Counts, Metrics, TrialLog};
pub use report::{write_text, Report, ScenarioReport, StaticReport, StaticRow, StrategyReport};
pub use runner::{resolve_zone, run_static_validation, run_trials, RunOptions};
pub use scenario::{build_car_following, build_size_sweep, ScenarioTrials, TrialScene};

/// Hit counts recorded for the standard 26×36×12 cm validation target at
/// 0.6 m steps from 0.6 m to 7.8 m; the reference series the simulated curve
/// is accepted against.
pub const REFERENCE_STATIC_HITS: [(f64, usize); 13] = [
    (0.6, 2032),
    (1.2, 520),
    (1.8, 258),
    (2.4, 132),
    (3.0, 100),
    (3.6, 42),
    (4.2, 38),
    (4.8, 34),
    (5.4, 30),
    (6.0, 26),
    (6.6, 22),
    (7.2, 22),
    (7.8, 18),
];
