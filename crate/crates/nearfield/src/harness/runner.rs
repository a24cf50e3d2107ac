//! Trial executor: sim → corridor → cluster → size filter → track → decide.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::corridor::{build_zone, MonitorZone};
use crate::error::Error;
use crate::lidar::{advance, cast_frame, dump_frame, validation_target, Scene, SensorConfig};
use crate::monitor::{
    decide_motion_aware, decide_single_point, decide_size_based, Decision, Strategy,
};
use crate::perception::{
    compensate_azimuth_footprint, euclidean_cluster, filter_to_corridor, size_filter,
};
use crate::tracking::{GateSpec, Tracker};

use super::config::ScenarioConfig;
use super::metrics::TrialLog;
use super::scenario::TrialScene;

/// Monitoring zone for a trial: speed-derived reach unless the scenario
/// pins a fixed region of interest.
pub fn resolve_zone(cfg: &ScenarioConfig, ego_speed: f64) -> Result<MonitorZone, Error> {
    let mut zone = build_zone(ego_speed, &cfg.corridor)?;
    if let Some(limit) = cfg.zone_limit_override {
        zone.longitudinal_limit = limit;
    }
    Ok(zone)
}

/// Execution options independent of the scenario parameters.
#[derive(Debug, Default, Clone)]
pub struct RunOptions<'a> {
    /// Write one point dump per frame into this directory.
    pub dump_dir: Option<&'a Path>,
}

fn dump(
    dir: &Path,
    trial: usize,
    frame_index: u64,
    frame: &crate::lidar::Frame,
) -> Result<(), Error> {
    let path = dir.join(format!("t{trial:03}_f{frame_index:04}.xyz"));
    let mut buf = Vec::new();
    dump_frame(frame, &mut buf).map_err(|e| Error::io(&path, e))?;
    fs::write(&path, buf).map_err(|e| Error::io(&path, e))
}

/// Run every trial through the full per-frame pipeline.
///
/// Deterministic: trial seeds come from the scene list, decisions are pure,
/// and trials are folded in id order. A trial with invalid geometry is
/// aborted and logged with an error entry instead of decisions.
pub fn run_trials(
    cfg: &ScenarioConfig,
    scenes: &[TrialScene],
    options: &RunOptions,
) -> Result<Vec<TrialLog>, Error> {
    if let Some(dir) = options.dump_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let mut logs = Vec::with_capacity(scenes.len());
    for trial in scenes {
        let mut log = TrialLog {
            trial_id: trial.id,
            label: trial.label.clone(),
            ground_truth_hazard: trial.ground_truth_hazard,
            warmup_frames: cfg.warmup_frames,
            decisions: BTreeMap::new(),
            params: trial.params.clone(),
            error: None,
        };
        if let Err(e) = trial.scene.validate() {
            log.error = Some(e.to_string());
            logs.push(log);
            continue;
        }

        let zone = resolve_zone(cfg, trial.ego_speed)?;
        let observation_zone = zone.extended(cfg.motion.extension_factor);
        let sensor = SensorConfig {
            rng_seed: trial.seed,
            ..cfg.sensor.clone()
        };
        let dt = sensor.frame_period();
        let ego_dx = trial.ego_speed * dt;
        let mut tracker = Tracker::new(
            GateSpec {
                v_max: cfg.max_object_speed,
                dt,
            },
            cfg.velocity_window,
        );
        for s in &cfg.strategies {
            log.decisions
                .insert(*s, Vec::with_capacity(trial.frames as usize));
        }

        let mut scene = trial.scene.clone();
        for frame_index in 0..trial.frames {
            let frame = cast_frame(&scene, &sensor, frame_index);
            if let Some(dir) = options.dump_dir {
                dump(dir, trial.id, frame_index, &frame)?;
            }

            let corridor_frame = filter_to_corridor(&frame, &observation_zone);
            let clusters = euclidean_cluster(
                &corridor_frame,
                cfg.cluster_tolerance,
                cfg.min_cluster_points,
            );
            let step = sensor.azimuth_step();
            let compensated: Vec<_> = clusters
                .iter()
                .map(|c| compensate_azimuth_footprint(c, step))
                .collect();
            let hazards = size_filter(compensated, cfg.size_threshold);
            let tracks = tracker.step(&hazards, frame_index, ego_dx);

            for s in &cfg.strategies {
                let decision: Decision = match s {
                    Strategy::SinglePoint => {
                        decide_single_point(&corridor_frame, &zone, frame_index)
                    }
                    Strategy::SizeBased => decide_size_based(&hazards, &zone, frame_index),
                    Strategy::MotionAware => {
                        decide_motion_aware(tracks, &zone, &cfg.motion, frame_index)
                    }
                };
                log.decisions
                    .get_mut(s)
                    .expect("strategy registered")
                    .push(decision);
            }

            scene = advance(&scene, dt);
        }
        logs.push(log);
    }
    Ok(logs)
}

/// Static validation: hit count of the reference target per distance.
///
/// One frame per distance; the count is the number of corridor-filtered
/// returns (the scene contains nothing but the target, so every return is a
/// target hit).
pub fn run_static_validation(
    cfg: &ScenarioConfig,
    options: &RunOptions,
) -> Result<Vec<(f64, usize)>, Error> {
    cfg.validate()?;
    if let Some(dir) = options.dump_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let zone = resolve_zone(cfg, 0.0)?;
    let mut rows = Vec::with_capacity(cfg.validation_distances.len());
    for (i, &distance) in cfg.validation_distances.iter().enumerate() {
        let scene = Scene {
            obstacles: vec![validation_target(distance, cfg.sensor.mount_height)],
            ground_plane_enabled: false,
            ego_velocity: 0.0,
        };
        let sensor = SensorConfig {
            rng_seed: crate::rng::stream_seed2(cfg.seed, cfg.kind.index(), i as u64),
            ..cfg.sensor.clone()
        };
        let frame = cast_frame(&scene, &sensor, 0);
        if let Some(dir) = options.dump_dir {
            dump(dir, i, 0, &frame)?;
        }
        let hits = filter_to_corridor(&frame, &zone).points.len();
        rows.push((distance, hits));
    }
    Ok(rows)
}
