//! Trial-grid builders.

use crate::error::Error;
use crate::geometry::{Point3, Vec3};
use crate::lidar::{Cuboid, Scene};
use crate::rng::stream_seed2;

use super::config::{kmh_to_mps, ScenarioConfig, ScenarioKind};

/// One deterministic trial: a scene, its kinematics, and its ground truth.
#[derive(Debug, Clone)]
pub struct TrialScene {
    pub id: usize,
    pub label: String,
    pub scene: Scene,
    /// Ego speed in m/s; drives the monitoring zone and ego compensation.
    pub ego_speed: f64,
    pub ground_truth_hazard: bool,
    /// Total frames including warm-up.
    pub frames: u64,
    /// Per-trial sensor seed derived from the master seed.
    pub seed: u64,
    /// Scenario parameters echoed into the log.
    pub params: Vec<(String, String)>,
}

/// A built scenario: its trials plus grid bookkeeping.
#[derive(Debug, Clone)]
pub struct ScenarioTrials {
    pub kind: ScenarioKind,
    pub trials: Vec<TrialScene>,
    /// Trials beyond the parameter grid, re-seeded repeats.
    pub padded_trials: usize,
}

fn trial_seed(cfg: &ScenarioConfig, trial_id: usize) -> u64 {
    stream_seed2(cfg.seed, cfg.kind.index(), trial_id as u64)
}

/// Size × distance sweep: one cube per trial traversing the corridor
/// laterally at a fixed longitudinal distance, stationary ego.
///
/// The cube's front face sits at the stated distance; its base sits at
/// `cube_base_height` above ground. Ground truth: the cube is a hazard iff
/// its edge length reaches the size threshold.
pub fn build_size_sweep(cfg: &ScenarioConfig) -> Result<ScenarioTrials, Error> {
    if cfg.kind != ScenarioKind::SizeSweep {
        return Err(Error::config("config kind is not size_sweep"));
    }
    cfg.validate()?;

    // Long enough for the full traversal to the mirrored start offset.
    let traversal_time = 2.0 * cfg.traversal_start_y / cfg.traversal_speed;
    let frames = cfg.warmup_frames + (traversal_time * cfg.sensor.update_rate).ceil() as u64 + 1;

    let mut trials = Vec::with_capacity(cfg.cube_sizes.len() * cfg.cube_distances.len());
    for &size in &cfg.cube_sizes {
        for &distance in &cfg.cube_distances {
            let id = trials.len();
            let cube = Cuboid {
                center: Point3::new(
                    distance + size / 2.0,
                    cfg.traversal_start_y,
                    cfg.cube_base_height + size / 2.0,
                ),
                width: size,
                height: size,
                depth: size,
                velocity: Vec3::new(0.0, -cfg.traversal_speed, 0.0),
            };
            trials.push(TrialScene {
                id,
                label: format!("size={size:.2}m dist={distance:.1}m"),
                scene: Scene {
                    obstacles: vec![cube],
                    ground_plane_enabled: false,
                    ego_velocity: 0.0,
                },
                ego_speed: 0.0,
                ground_truth_hazard: size >= cfg.size_threshold,
                frames,
                seed: trial_seed(cfg, id),
                params: vec![
                    ("size_m".into(), format!("{size:.2}")),
                    ("distance_m".into(), format!("{distance:.1}")),
                ],
            });
        }
    }
    Ok(ScenarioTrials {
        kind: cfg.kind,
        trials,
        padded_trials: 0,
    })
}

fn lead_vehicle(cfg: &ScenarioConfig, gap: f64, speed_mps: f64) -> Cuboid {
    let (width, height, depth) = cfg.lead_vehicle;
    Cuboid {
        // Rear face at the gap, standing on the ground.
        center: Point3::new(gap + depth / 2.0, 0.0, height / 2.0),
        width,
        height,
        depth,
        velocity: Vec3::new(speed_mps, 0.0, 0.0),
    }
}

/// Car-following grids. Constant-gap: both vehicles at the same speed, so
/// the gap never changes. Increasing-gap: the ego runs `speed_delta_kmh`
/// slower than the lead, so the gap opens. Neither contains a true hazard;
/// every brake is a false positive.
pub fn build_car_following(cfg: &ScenarioConfig) -> Result<ScenarioTrials, Error> {
    cfg.validate()?;
    let frames =
        cfg.warmup_frames + (cfg.car_following_duration * cfg.sensor.update_rate).ceil() as u64;

    // (lead km/h, ego km/h, gap m) combinations in grid order.
    let combos: Vec<(f64, f64, f64)> = match cfg.kind {
        ScenarioKind::ConstantGap => cfg
            .constant_gap_speeds_kmh
            .iter()
            .flat_map(|&v| cfg.gaps.iter().map(move |&g| (v, v, g)))
            .collect(),
        ScenarioKind::IncreasingGap => cfg
            .lead_speeds_kmh
            .iter()
            .flat_map(|&v| {
                cfg.gaps
                    .iter()
                    .map(move |&g| (v, v - cfg.speed_delta_kmh, g))
            })
            .collect(),
        _ => return Err(Error::config("config kind is not a car-following scenario")),
    };

    let total = combos.len().max(cfg.pad_to_trials.max(1));
    let padded_trials = total - combos.len();
    let mut trials = Vec::with_capacity(total);
    for id in 0..total {
        let (lead_kmh, ego_kmh, gap) = combos[id % combos.len()];
        let lead_mps = kmh_to_mps(lead_kmh);
        let ego_mps = kmh_to_mps(ego_kmh);
        let repeat = if id >= combos.len() { " (repeat)" } else { "" };
        trials.push(TrialScene {
            id,
            label: format!("lead={lead_kmh:.0}km/h ego={ego_kmh:.0}km/h gap={gap:.0}m{repeat}"),
            scene: Scene {
                obstacles: vec![lead_vehicle(cfg, gap, lead_mps)],
                ground_plane_enabled: false,
                ego_velocity: ego_mps,
            },
            ego_speed: ego_mps,
            ground_truth_hazard: false,
            frames,
            seed: trial_seed(cfg, id),
            params: vec![
                ("lead_kmh".into(), format!("{lead_kmh:.0}")),
                ("ego_kmh".into(), format!("{ego_kmh:.0}")),
                ("gap_m".into(), format!("{gap:.0}")),
                ("padded".into(), (id >= combos.len()).to_string()),
            ],
        });
    }
    Ok(ScenarioTrials {
        kind: cfg.kind,
        trials,
        padded_trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_builds_144_trials() {
        let cfg = ScenarioConfig::for_kind(ScenarioKind::SizeSweep);
        let built = build_size_sweep(&cfg).unwrap();
        assert_eq!(built.trials.len(), 144);
        assert_eq!(built.padded_trials, 0);
        // 7 hazard sizes × 12 distances.
        let hazards = built
            .trials
            .iter()
            .filter(|t| t.ground_truth_hazard)
            .count();
        assert_eq!(hazards, 84);
        // Boundary size 0.30 counts as hazard; 0.05 does not.
        let t30 = built
            .trials
            .iter()
            .find(|t| t.label.starts_with("size=0.30"))
            .unwrap();
        assert!(t30.ground_truth_hazard);
        let t05 = built
            .trials
            .iter()
            .find(|t| t.label.starts_with("size=0.05"))
            .unwrap();
        assert!(!t05.ground_truth_hazard);
    }

    #[test]
    fn sweep_cube_geometry() {
        let cfg = ScenarioConfig::for_kind(ScenarioKind::SizeSweep);
        let built = build_size_sweep(&cfg).unwrap();
        let t = &built.trials[0]; // size 0.05, distance 1.2
        let cube = &t.scene.obstacles[0];
        // Front face at the stated distance.
        assert!((cube.aabb().min.x - 1.2).abs() < 1e-12);
        // Base at 0.6 m above ground.
        assert!((cube.aabb().min.z - 0.6).abs() < 1e-12);
        assert_eq!(cube.velocity.y, -1.0);
    }

    #[test]
    fn constant_gap_builds_30_trials() {
        let cfg = ScenarioConfig::for_kind(ScenarioKind::ConstantGap);
        let built = build_car_following(&cfg).unwrap();
        assert_eq!(built.trials.len(), 30);
        assert_eq!(built.padded_trials, 0);
        // Zero relative velocity everywhere.
        for t in &built.trials {
            let lead = &t.scene.obstacles[0];
            assert!((lead.velocity.x - t.scene.ego_velocity).abs() < 1e-12);
        }
    }

    #[test]
    fn increasing_gap_pads_to_30() {
        let cfg = ScenarioConfig::for_kind(ScenarioKind::IncreasingGap);
        let built = build_car_following(&cfg).unwrap();
        assert_eq!(built.trials.len(), 30);
        assert_eq!(built.padded_trials, 5);
        // Positive relative velocity: lead 30, ego 25 km/h -> +1.389 m/s.
        let t = built
            .trials
            .iter()
            .find(|t| t.label.starts_with("lead=30km/h ego=25km/h"))
            .unwrap();
        let rel = t.scene.obstacles[0].velocity.x - t.scene.ego_velocity;
        assert!((rel - 1.38889).abs() < 1e-4, "rel {rel}");
        // Padded repeats carry distinct seeds.
        assert_ne!(built.trials[25].seed, built.trials[0].seed);
        assert_eq!(built.trials[25].params.last().unwrap().1, "true");
    }

    #[test]
    fn lead_vehicle_rear_face_at_gap() {
        let cfg = ScenarioConfig::for_kind(ScenarioKind::ConstantGap);
        let built = build_car_following(&cfg).unwrap();
        let t = &built.trials[0]; // 5 km/h, gap 2
        assert!((t.scene.obstacles[0].aabb().min.x - 2.0).abs() < 1e-12);
        // Standing on the ground.
        assert!(t.scene.obstacles[0].aabb().min.z.abs() < 1e-12);
    }

    #[test]
    fn grid_is_speed_outer_gap_inner() {
        let cfg = ScenarioConfig::for_kind(ScenarioKind::ConstantGap);
        let built = build_car_following(&cfg).unwrap();
        assert!(built.trials[0].label.contains("lead=5km/h"));
        assert!(built.trials[0].label.contains("gap=2m"));
        assert!(built.trials[4].label.contains("gap=10m"));
        assert!(built.trials[5].label.contains("lead=10km/h"));
    }
}
