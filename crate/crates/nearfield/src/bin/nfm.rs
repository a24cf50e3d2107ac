//! Near-field monitoring CLI.
//!
//! Subcommands build the scenario grids, run the full pipeline, and emit
//! CSV/JSON reports. `--check` verifies the acceptance bands and exits with
//! code 2 when any band is violated; configuration problems exit with 1.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nearfield::error::Error;
use nearfield::harness::{
    apply_pairs, build_car_following, build_size_sweep, compute_metrics, kind_from_pairs,
    load_pairs, run_static_validation, run_trials, write_text, Metrics, Report, RunOptions,
    ScenarioConfig, ScenarioKind, ScenarioReport, StaticReport, StaticRow, StrategyReport,
    TrialLog, REFERENCE_STATIC_HITS,
};
use nearfield::monitor::Strategy;

#[derive(Parser)]
#[command(
    name = "nfm",
    version,
    about = "Near-field LiDAR collision monitoring: deterministic scenario evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hit-count curve of the reference target at 0.6 m steps.
    ValidateStatic(Common),
    /// Object-size × distance sweep (144 trials, stationary ego).
    EvalSize(Common),
    /// Car-following scenarios: constant gap and increasing gap.
    EvalMotion(Common),
    /// Generic scenario driven entirely by a config file.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario config file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Master seed (overrides the config file).
    #[arg(long)]
    seed: Option<u64>,

    /// Report format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Strategies to evaluate (single-point, size-based, motion-aware).
    #[arg(long, value_delimiter = ',')]
    strategies: Option<Vec<String>>,

    /// Dump every simulated frame as `x y z` text into this directory.
    #[arg(long)]
    dump_frames: Option<PathBuf>,

    /// Verify the acceptance bands; exit code 2 on violation.
    #[arg(long)]
    check: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Build the scenario config for one kind: defaults, then file, then flags.
fn build_config(kind: ScenarioKind, common: &Common) -> Result<ScenarioConfig, Error> {
    let mut cfg = ScenarioConfig::for_kind(kind);
    if let Some(path) = &common.config {
        let pairs = load_pairs(path)?;
        if let Some(declared) = kind_from_pairs(&pairs) {
            let declared = declared?;
            if declared != kind {
                return Err(Error::config(format!(
                    "config declares kind '{}' but the command runs '{}'",
                    declared.name(),
                    kind.name()
                )));
            }
        }
        apply_pairs(&mut cfg, &pairs)?;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(names) = &common.strategies {
        let mut strategies = Vec::new();
        for name in names {
            let s: Strategy = name.parse().map_err(Error::Config)?;
            if !strategies.contains(&s) {
                strategies.push(s);
            }
        }
        cfg.strategies = strategies;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn metric_for(metrics: &[(Strategy, Metrics)], s: Strategy) -> Option<Metrics> {
    metrics.iter().find(|(m, _)| *m == s).map(|(_, m)| *m)
}

fn require_metric(
    metrics: &[(Strategy, Metrics)],
    s: Strategy,
    context: &str,
) -> Result<Metrics, Error> {
    metric_for(metrics, s).ok_or_else(|| {
        Error::config(format!(
            "--check for {context} needs strategy '{}' in --strategies",
            s.name()
        ))
    })
}

fn scenario_report(
    cfg: &ScenarioConfig,
    kind: ScenarioKind,
    trials: usize,
    padded: usize,
    metrics: &[(Strategy, Metrics)],
) -> ScenarioReport {
    ScenarioReport {
        scenario: kind.name().to_string(),
        trials,
        padded_trials: padded,
        warmup_frames: cfg.warmup_frames,
        strategies: metrics
            .iter()
            .map(|(s, m)| StrategyReport::new(*s, m))
            .collect(),
    }
}

fn report_failures(failures: &[String]) -> u8 {
    if failures.is_empty() {
        eprintln!("check: all bands satisfied");
        0
    } else {
        for f in failures {
            eprintln!("check failed: {f}");
        }
        2
    }
}

fn execute(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::ValidateStatic(common) => {
            let cfg = build_config(ScenarioKind::StaticValidation, &common)?;
            let options = RunOptions {
                dump_dir: common.dump_frames.as_deref(),
            };
            let rows = run_static_validation(&cfg, &options)?;
            let report = StaticReport {
                seed: cfg.seed,
                rows: rows
                    .iter()
                    .map(|&(distance_m, hits)| StaticRow {
                        distance_m,
                        hits,
                        reference: reference_hits(distance_m).unwrap_or(0),
                    })
                    .collect(),
            };
            emit(&common, &report.render(&common.format)?)?;
            if common.check {
                return Ok(report_failures(&check_static(&rows)?));
            }
            Ok(0)
        }
        Command::EvalSize(common) => {
            let cfg = build_config(ScenarioKind::SizeSweep, &common)?;
            let options = RunOptions {
                dump_dir: common.dump_frames.as_deref(),
            };
            let built = build_size_sweep(&cfg)?;
            let logs = run_trials(&cfg, &built.trials, &options)?;
            let metrics = compute_metrics(&logs, &cfg.strategies);
            let report = Report {
                seed: cfg.seed,
                scenarios: vec![scenario_report(
                    &cfg,
                    ScenarioKind::SizeSweep,
                    built.trials.len(),
                    built.padded_trials,
                    &metrics,
                )],
            };
            emit(&common, &report.render(&common.format)?)?;
            if common.check {
                return Ok(report_failures(&check_size_sweep(&metrics)?));
            }
            Ok(0)
        }
        Command::EvalMotion(common) => {
            let mut scenarios = Vec::new();
            let mut all_metrics = Vec::new();
            let mut seed = 0;
            for kind in [ScenarioKind::ConstantGap, ScenarioKind::IncreasingGap] {
                let cfg = build_config(kind, &common)?;
                seed = cfg.seed;
                let options = RunOptions {
                    dump_dir: common.dump_frames.as_deref(),
                };
                let built = build_car_following(&cfg)?;
                let logs = run_trials(&cfg, &built.trials, &options)?;
                let metrics = compute_metrics(&logs, &cfg.strategies);
                scenarios.push(scenario_report(
                    &cfg,
                    kind,
                    built.trials.len(),
                    built.padded_trials,
                    &metrics,
                ));
                all_metrics.push((kind, metrics));
            }
            let report = Report { seed, scenarios };
            emit(&common, &report.render(&common.format)?)?;
            if common.check {
                let mut failures = Vec::new();
                for (kind, metrics) in &all_metrics {
                    failures.extend(check_car_following(*kind, metrics)?);
                }
                return Ok(report_failures(&failures));
            }
            Ok(0)
        }
        Command::Run(common) => {
            let Some(path) = &common.config else {
                return Err(Error::config("run requires --config"));
            };
            let pairs = load_pairs(path)?;
            let kind = match kind_from_pairs(&pairs) {
                Some(kind) => kind?,
                None => return Err(Error::config("config file must set 'kind'")),
            };
            let cfg = build_config(kind, &common)?;
            let options = RunOptions {
                dump_dir: common.dump_frames.as_deref(),
            };
            match kind {
                ScenarioKind::StaticValidation => {
                    let rows = run_static_validation(&cfg, &options)?;
                    let report = StaticReport {
                        seed: cfg.seed,
                        rows: rows
                            .iter()
                            .map(|&(distance_m, hits)| StaticRow {
                                distance_m,
                                hits,
                                reference: reference_hits(distance_m).unwrap_or(0),
                            })
                            .collect(),
                    };
                    emit(&common, &report.render(&common.format)?)?;
                    if common.check {
                        return Ok(report_failures(&check_static(&rows)?));
                    }
                    Ok(0)
                }
                ScenarioKind::SizeSweep
                | ScenarioKind::ConstantGap
                | ScenarioKind::IncreasingGap => {
                    let built = match kind {
                        ScenarioKind::SizeSweep => build_size_sweep(&cfg)?,
                        _ => build_car_following(&cfg)?,
                    };
                    let logs = run_trials(&cfg, &built.trials, &options)?;
                    report_errored_trials(&logs);
                    let metrics = compute_metrics(&logs, &cfg.strategies);
                    let report = Report {
                        seed: cfg.seed,
                        scenarios: vec![scenario_report(
                            &cfg,
                            kind,
                            built.trials.len(),
                            built.padded_trials,
                            &metrics,
                        )],
                    };
                    emit(&common, &report.render(&common.format)?)?;
                    if common.check {
                        let failures = match kind {
                            ScenarioKind::SizeSweep => check_size_sweep(&metrics)?,
                            _ => check_car_following(kind, &metrics)?,
                        };
                        return Ok(report_failures(&failures));
                    }
                    Ok(0)
                }
            }
        }
    }
}

fn report_errored_trials(logs: &[TrialLog]) {
    for log in logs.iter().filter(|l| l.error.is_some()) {
        eprintln!(
            "trial {} ({}) aborted: {}",
            log.trial_id,
            log.label,
            log.error.as_deref().unwrap_or("")
        );
    }
}

fn reference_hits(distance: f64) -> Option<usize> {
    REFERENCE_STATIC_HITS
        .iter()
        .find(|(d, _)| (d - distance).abs() < 1e-9)
        .map(|&(_, h)| h)
}

/// Static curve bands: each distance within ±25% of the reference, the sum
/// within ±10%.
fn check_static(rows: &[(f64, usize)]) -> Result<Vec<String>, Error> {
    let mut failures = Vec::new();
    let mut sum = 0usize;
    let mut ref_sum = 0usize;
    for &(distance, hits) in rows {
        let Some(reference) = reference_hits(distance) else {
            return Err(Error::config(format!(
                "--check has no reference hit count for distance {distance} m"
            )));
        };
        sum += hits;
        ref_sum += reference;
        let rel = (hits as f64 - reference as f64).abs() / reference as f64;
        if rel > 0.25 {
            failures.push(format!(
                "hits at {distance} m: {hits} vs reference {reference} ({:.1}% off, band 25%)",
                rel * 100.0
            ));
        }
    }
    let rel = (sum as f64 - ref_sum as f64).abs() / ref_sum as f64;
    if rel > 0.10 {
        failures.push(format!(
            "summed hits {sum} vs reference {ref_sum} ({:.1}% off, band 10%)",
            rel * 100.0
        ));
    }
    Ok(failures)
}

/// Size-sweep bands: the size-based strategy must be perfect; the
/// single-point baseline must keep full recall with FPR at or above 50%.
fn check_size_sweep(metrics: &[(Strategy, Metrics)]) -> Result<Vec<String>, Error> {
    let mut failures = Vec::new();
    let sb = require_metric(metrics, Strategy::SizeBased, "eval-size")?;
    if sb.fpr != Some(0.0) {
        failures.push(format!("size-based FPR {:?} != 0", sb.fpr));
    }
    if sb.tpr != Some(1.0) {
        failures.push(format!("size-based TPR {:?} != 1", sb.tpr));
    }
    if sb.f1 != Some(1.0) {
        failures.push(format!("size-based F1 {:?} != 1", sb.f1));
    }
    let sp = require_metric(metrics, Strategy::SinglePoint, "eval-size")?;
    if sp.tpr != Some(1.0) {
        failures.push(format!("single-point TPR {:?} != 1", sp.tpr));
    }
    if !sp.fpr.is_some_and(|v| v >= 0.5) {
        failures.push(format!("single-point FPR {:?} below 0.5", sp.fpr));
    }
    Ok(failures)
}

/// Car-following bands per scenario.
fn check_car_following(
    kind: ScenarioKind,
    metrics: &[(Strategy, Metrics)],
) -> Result<Vec<String>, Error> {
    let mut failures = Vec::new();
    let sb = require_metric(metrics, Strategy::SizeBased, kind.name())?;
    let ma = require_metric(metrics, Strategy::MotionAware, kind.name())?;
    match kind {
        ScenarioKind::ConstantGap => {
            if !sb.fpr.is_some_and(|v| v >= 0.30) {
                failures.push(format!(
                    "constant-gap size-based FPR {:?} below 0.30",
                    sb.fpr
                ));
            }
            if !ma.fpr.is_some_and(|v| v <= 0.05) {
                failures.push(format!(
                    "constant-gap motion-aware FPR {:?} above 0.05",
                    ma.fpr
                ));
            }
        }
        ScenarioKind::IncreasingGap => {
            if !sb.fpr.is_some_and(|v| v >= 0.15) {
                failures.push(format!(
                    "increasing-gap size-based FPR {:?} below 0.15",
                    sb.fpr
                ));
            }
            if ma.fpr != Some(0.0) {
                failures.push(format!("increasing-gap motion-aware FPR {:?} != 0", ma.fpr));
            }
        }
        _ => return Err(Error::config("not a car-following scenario")),
    }
    Ok(failures)
}
