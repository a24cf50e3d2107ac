//! Trial logs and classification metrics.

use std::collections::BTreeMap;

use crate::monitor::{Decision, Strategy};

/// Everything recorded about one trial.
#[derive(Debug, Clone)]
pub struct TrialLog {
    pub trial_id: usize,
    pub label: String,
    pub ground_truth_hazard: bool,
    /// Frames at the start excluded from decision accounting.
    pub warmup_frames: u64,
    /// Per-strategy decision streams, one entry per frame.
    pub decisions: BTreeMap<Strategy, Vec<Decision>>,
    pub params: Vec<(String, String)>,
    /// Set when the trial was aborted (e.g. invalid scene geometry).
    pub error: Option<String>,
}

impl TrialLog {
    /// Trial-level outcome: did the strategy brake in any counted frame?
    pub fn braked(&self, strategy: Strategy) -> bool {
        self.decisions
            .get(&strategy)
            .map(|ds| {
                ds.iter()
                    .any(|d| d.brake && d.frame_index >= self.warmup_frames)
            })
            .unwrap_or(false)
    }
}

/// Confusion counts at trial granularity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub false_positives: u32,
    pub true_positives: u32,
    pub false_negatives: u32,
    pub true_negatives: u32,
}

/// Counts plus derived rates. A rate whose denominator is zero is `None`
/// (undefined), never coerced to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub counts: Counts,
    pub fpr: Option<f64>,
    pub tpr: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
}

fn ratio(num: u32, denom: u32) -> Option<f64> {
    (denom > 0).then(|| f64::from(num) / f64::from(denom))
}

impl Metrics {
    pub fn from_counts(counts: Counts) -> Metrics {
        let c = counts;
        let fpr = ratio(c.false_positives, c.false_positives + c.true_negatives);
        let tpr = ratio(c.true_positives, c.true_positives + c.false_negatives);
        let precision = ratio(c.true_positives, c.true_positives + c.false_positives);
        let f1 = match (precision, tpr) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        Metrics {
            counts,
            fpr,
            tpr,
            precision,
            f1,
        }
    }
}

/// Aggregate trial outcomes per strategy. Errored trials are excluded.
pub fn compute_metrics(logs: &[TrialLog], strategies: &[Strategy]) -> Vec<(Strategy, Metrics)> {
    strategies
        .iter()
        .map(|&s| {
            let mut counts = Counts::default();
            for log in logs.iter().filter(|l| l.error.is_none()) {
                match (log.ground_truth_hazard, log.braked(s)) {
                    (true, true) => counts.true_positives += 1,
                    (true, false) => counts.false_negatives += 1,
                    (false, true) => counts.false_positives += 1,
                    (false, false) => counts.true_negatives += 1,
                }
            }
            (s, Metrics::from_counts(counts))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_strategy_metrics() {
        // TP=84, FN=0, FP=0, TN=60 -> TPR 100%, FPR 0%, F1 100%.
        let m = Metrics::from_counts(Counts {
            false_positives: 0,
            true_positives: 84,
            false_negatives: 0,
            true_negatives: 60,
        });
        assert_eq!(m.fpr, Some(0.0));
        assert_eq!(m.tpr, Some(1.0));
        assert_eq!(m.precision, Some(1.0));
        assert_eq!(m.f1, Some(1.0));
    }

    #[test]
    fn f1_harmonic_mean() {
        // precision 0.5, recall 1 -> F1 = 2/3.
        let m = Metrics::from_counts(Counts {
            false_positives: 1,
            true_positives: 1,
            false_negatives: 0,
            true_negatives: 0,
        });
        assert_eq!(m.precision, Some(0.5));
        assert_eq!(m.tpr, Some(1.0));
        assert!((m.f1.unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn undefined_rates_are_none() {
        let m = Metrics::from_counts(Counts::default());
        assert_eq!(m.fpr, None);
        assert_eq!(m.tpr, None);
        assert_eq!(m.precision, None);
        assert_eq!(m.f1, None);
        // No hazard trials: TPR undefined, FPR defined.
        let m = Metrics::from_counts(Counts {
            false_positives: 3,
            true_positives: 0,
            false_negatives: 0,
            true_negatives: 27,
        });
        assert_eq!(m.tpr, None);
        assert_eq!(m.fpr, Some(0.1));
    }

    #[test]
    fn count_identities() {
        use crate::monitor::Strategy;
        let mk = |hazard: bool, brake: bool| {
            let mut decisions = BTreeMap::new();
            decisions.insert(
                Strategy::SizeBased,
                vec![Decision {
                    frame_index: 5,
                    strategy: Strategy::SizeBased,
                    brake,
                    cause: brake.then_some(crate::monitor::BrakeCause {
                        track_id: None,
                        distance: 1.0,
                        rel_velocity: None,
                    }),
                }],
            );
            TrialLog {
                trial_id: 0,
                label: String::new(),
                ground_truth_hazard: hazard,
                warmup_frames: 5,
                decisions,
                params: vec![],
                error: None,
            }
        };
        let logs = vec![
            mk(true, true),
            mk(true, false),
            mk(false, true),
            mk(false, false),
        ];
        let metrics = compute_metrics(&logs, &[Strategy::SizeBased]);
        let c = metrics[0].1.counts;
        // FP+TN equals non-hazard trials; TP+FN equals hazard trials.
        assert_eq!(c.false_positives + c.true_negatives, 2);
        assert_eq!(c.true_positives + c.false_negatives, 2);
    }

    #[test]
    fn warmup_frames_do_not_count() {
        use crate::monitor::{BrakeCause, Strategy};
        let mut decisions = BTreeMap::new();
        decisions.insert(
            Strategy::SizeBased,
            vec![Decision {
                frame_index: 2, // inside warm-up
                strategy: Strategy::SizeBased,
                brake: true,
                cause: Some(BrakeCause {
                    track_id: None,
                    distance: 1.0,
                    rel_velocity: None,
                }),
            }],
        );
        let log = TrialLog {
            trial_id: 0,
            label: String::new(),
            ground_truth_hazard: false,
            warmup_frames: 5,
            decisions,
            params: vec![],
            error: None,
        };
        assert!(!log.braked(Strategy::SizeBased));
    }
}
