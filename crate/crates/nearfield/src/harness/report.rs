//! Machine-readable reports (CSV and JSON).
//!
//! CSV rows carry rates as decimals with four fraction digits; undefined
//! rates (zero denominator) appear as `NA` in CSV and `null` in JSON. JSON
//! carries the same rounded values so both formats agree digit-for-digit.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Error;
use crate::monitor::Strategy;

use super::metrics::Metrics;

/// One strategy's row within a scenario.
#[derive(Debug, Clone, Serialize)]
pub struct StrategyReport {
    pub strategy: String,
    pub fp: u32,
    pub tp: u32,
    #[serde(rename = "fn")]
    pub fn_: u32,
    pub tn: u32,
    pub fpr: Option<f64>,
    pub tpr: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
}

/// One scenario's block.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub trials: usize,
    pub padded_trials: usize,
    pub warmup_frames: u64,
    pub strategies: Vec<StrategyReport>,
}

/// A full evaluation report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub seed: u64,
    pub scenarios: Vec<ScenarioReport>,
}

fn round4(v: f64) -> f64 {
    (v * 10_000.0).round() / 10_000.0
}

impl StrategyReport {
    pub fn new(strategy: Strategy, metrics: &Metrics) -> Self {
        let c = metrics.counts;
        Self {
            strategy: strategy.name().to_string(),
            fp: c.false_positives,
            tp: c.true_positives,
            fn_: c.false_negatives,
            tn: c.true_negatives,
            fpr: metrics.fpr.map(round4),
            tpr: metrics.tpr.map(round4),
            precision: metrics.precision.map(round4),
            f1: metrics.f1.map(round4),
        }
    }
}

fn rate_cell(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.4}"),
        None => "NA".to_string(),
    }
}

impl Report {
    /// Header `strategy,scenario,trials,fp,tp,fn,tn,fpr,tpr,precision,f1`,
    /// one row per strategy × scenario, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("strategy,scenario,trials,fp,tp,fn,tn,fpr,tpr,precision,f1\n");
        for sc in &self.scenarios {
            for st in &sc.strategies {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    st.strategy,
                    sc.scenario,
                    sc.trials,
                    st.fp,
                    st.tp,
                    st.fn_,
                    st.tn,
                    rate_cell(st.fpr),
                    rate_cell(st.tpr),
                    rate_cell(st.precision),
                    rate_cell(st.f1),
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: &str) -> Result<String, Error> {
        match format {
            "csv" => Ok(self.to_csv()),
            "json" => Ok(self.to_json()),
            other => Err(Error::config(format!("unknown format '{other}'"))),
        }
    }

    /// Render and write in one step.
    pub fn write_to(&self, format: &str, path: &Path) -> Result<(), Error> {
        write_text(path, &self.render(format)?)
    }
}

/// Static-validation table.
#[derive(Debug, Clone, Serialize)]
pub struct StaticRow {
    pub distance_m: f64,
    pub hits: usize,
    pub reference: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StaticReport {
    pub seed: u64,
    pub rows: Vec<StaticRow>,
}

impl StaticReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance_m,hits,reference\n");
        for r in &self.rows {
            out.push_str(&format!("{:.1},{},{}\n", r.distance_m, r.hits, r.reference));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: &str) -> Result<String, Error> {
        match format {
            "csv" => Ok(self.to_csv()),
            "json" => Ok(self.to_json()),
            other => Err(Error::config(format!("unknown format '{other}'"))),
        }
    }

    /// Render and write in one step.
    pub fn write_to(&self, format: &str, path: &Path) -> Result<(), Error> {
        write_text(path, &self.render(format)?)
    }
}

/// Write text to a file, surfacing I/O failures with path context.
pub fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
