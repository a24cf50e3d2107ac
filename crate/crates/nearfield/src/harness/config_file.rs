//! Flat `key = value` scenario config files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! List values are comma-separated. Unknown keys are configuration errors.
//! CLI flags override file values.

use std::path::Path;

use crate::error::Error;
use crate::monitor::Strategy;

use super::config::{ScenarioConfig, ScenarioKind};

/// Parse the raw `key = value` pairs in file order.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, Error> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::config(format!(
                "line {}: expected 'key = value', got '{raw}'",
                lineno + 1
            )));
        };
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

/// Read and parse a config file.
pub fn load_pairs(path: &Path) -> Result<Vec<(String, String)>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(&text)
}

/// The scenario kind declared in the file, if any.
pub fn kind_from_pairs(pairs: &[(String, String)]) -> Option<Result<ScenarioKind, Error>> {
    pairs
        .iter()
        .find(|(k, _)| k == "kind")
        .map(|(_, v)| ScenarioKind::parse(v))
}

fn parse_f64(key: &str, v: &str) -> Result<f64, Error> {
    v.parse()
        .map_err(|_| Error::config(format!("{key}: expected a number, got '{v}'")))
}

fn parse_u64(key: &str, v: &str) -> Result<u64, Error> {
    v.parse()
        .map_err(|_| Error::config(format!("{key}: expected an integer, got '{v}'")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize, Error> {
    v.parse()
        .map_err(|_| Error::config(format!("{key}: expected an integer, got '{v}'")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, Error> {
    v.split(',')
        .map(|s| parse_f64(key, s.trim()))
        .collect::<Result<Vec<f64>, Error>>()
        .and_then(|list| {
            if list.is_empty() {
                Err(Error::config(format!("{key}: empty list")))
            } else {
                Ok(list)
            }
        })
}

/// Apply config-file pairs onto a scenario config (the `kind` key is handled
/// by the caller and skipped here).
pub fn apply_pairs(cfg: &mut ScenarioConfig, pairs: &[(String, String)]) -> Result<(), Error> {
    for (key, value) in pairs {
        let (key, v) = (key.as_str(), value.as_str());
        match key {
            "kind" => {} // resolved by the caller before defaults were built
            "seed" => cfg.seed = parse_u64(key, v)?,
            "strategies" => {
                cfg.strategies = v
                    .split(',')
                    .map(|s| s.parse::<Strategy>().map_err(Error::Config))
                    .collect::<Result<Vec<_>, _>>()?;
            }

            // Sensor.
            "horizontal_samples" => cfg.sensor.horizontal_samples = parse_usize(key, v)?,
            "vertical_channels" => cfg.sensor.vertical_channels = parse_usize(key, v)?,
            "horizontal_fov_min_deg" => cfg.sensor.horizontal_fov_deg.0 = parse_f64(key, v)?,
            "horizontal_fov_max_deg" => cfg.sensor.horizontal_fov_deg.1 = parse_f64(key, v)?,
            "vertical_fov_min_deg" => cfg.sensor.vertical_fov_deg.0 = parse_f64(key, v)?,
            "vertical_fov_max_deg" => cfg.sensor.vertical_fov_deg.1 = parse_f64(key, v)?,
            "update_rate_hz" => cfg.sensor.update_rate = parse_f64(key, v)?,
            "noise_sigma_m" => cfg.sensor.noise_sigma = parse_f64(key, v)?,
            "max_range_m" => cfg.sensor.max_range = parse_f64(key, v)?,
            "mount_height_m" => cfg.sensor.mount_height = parse_f64(key, v)?,

            // Corridor.
            "reaction_time_s" => cfg.corridor.reaction_time = parse_f64(key, v)?,
            "safety_margin_time_s" => cfg.corridor.safety_margin_time = parse_f64(key, v)?,
            "friction" => cfg.corridor.friction = parse_f64(key, v)?,
            "slope" => cfg.corridor.slope = parse_f64(key, v)?,
            "gravity" => cfg.corridor.gravity = parse_f64(key, v)?,
            "vehicle_width_m" => cfg.corridor.vehicle_width = parse_f64(key, v)?,
            "chassis_height_m" => cfg.corridor.chassis_height = parse_f64(key, v)?,
            "top_height_m" => cfg.corridor.top_height = parse_f64(key, v)?,

            // Perception.
            "cluster_tolerance_m" => cfg.cluster_tolerance = parse_f64(key, v)?,
            "min_cluster_points" => cfg.min_cluster_points = parse_usize(key, v)?,
            "size_threshold_m" => cfg.size_threshold = parse_f64(key, v)?,

            // Tracking and motion.
            "max_object_speed_mps" => cfg.max_object_speed = parse_f64(key, v)?,
            "extension_factor" => cfg.motion.extension_factor = parse_f64(key, v)?,
            "rel_velocity_epsilon_mps" => cfg.motion.rel_velocity_epsilon = parse_f64(key, v)?,
            "velocity_window_frames" => cfg.velocity_window = parse_usize(key, v)?,

            // Zone and executor.
            "zone_limit_m" => {
                let limit = parse_f64(key, v)?;
                cfg.zone_limit_override = (limit > 0.0).then_some(limit);
            }
            "warmup_frames" => cfg.warmup_frames = parse_u64(key, v)?,

            // Size sweep.
            "cube_sizes_m" => cfg.cube_sizes = parse_list(key, v)?,
            "cube_distances_m" => cfg.cube_distances = parse_list(key, v)?,
            "cube_base_height_m" => cfg.cube_base_height = parse_f64(key, v)?,
            "traversal_speed_mps" => cfg.traversal_speed = parse_f64(key, v)?,
            "traversal_start_y_m" => cfg.traversal_start_y = parse_f64(key, v)?,

            // Car following.
            "constant_gap_speeds_kmh" => cfg.constant_gap_speeds_kmh = parse_list(key, v)?,
            "lead_speeds_kmh" => cfg.lead_speeds_kmh = parse_list(key, v)?,
            "speed_delta_kmh" => cfg.speed_delta_kmh = parse_f64(key, v)?,
            "gaps_m" => cfg.gaps = parse_list(key, v)?,
            "pad_to_trials" => cfg.pad_to_trials = parse_usize(key, v)?,
            "duration_s" => cfg.car_following_duration = parse_f64(key, v)?,

            // Static validation.
            "validation_distances_m" => cfg.validation_distances = parse_list(key, v)?,

            other => {
                return Err(Error::config(format!("unknown config key '{other}'")));
            }
        }
    }
    Ok(())
}
