//! Brake/no-brake decision strategies.
//!
//! Three strategies of increasing selectivity over the same corridor:
//!
//! 1. **Single-point hit** -- brake on any return inside the monitoring zone.
//!    Maximally sensitive; the baseline every refinement is measured against.
//! 2. **Size-based filter** -- brake only when a cluster whose largest extent
//!    reaches the hazard threshold sits inside the zone. Small debris,
//!    insects, and stray returns no longer trigger.
//! 3. **Motion-aware** -- additionally require the tracked object to be
//!    closing (negative longitudinal relative velocity). An object inside
//!    the zone whose gap is constant or opening is not a collision threat.
//!
//! Each added condition is necessary, so on identical inputs the strategies
//! are strictly ordered: motion-aware brakes ⟹ size-based brakes ⟹
//! single-point brakes.

use std::fmt;
use std::str::FromStr;

use crate::corridor::MonitorZone;
use crate::lidar::Frame;
use crate::perception::Cluster;
use crate::tracking::Track;

/// Decision strategy identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    SinglePoint,
    SizeBased,
    MotionAware,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::SinglePoint,
        Strategy::SizeBased,
        Strategy::MotionAware,
    ];

    /// Stable identifier used in reports and CLI arguments.
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::SinglePoint => "single_point",
            Strategy::SizeBased => "size_based",
            Strategy::MotionAware => "motion_aware",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "single-point" => Ok(Strategy::SinglePoint),
            "size-based" => Ok(Strategy::SizeBased),
            "motion-aware" => Ok(Strategy::MotionAware),
            other => Err(format!(
                "unknown strategy '{other}' (expected single-point, size-based, or motion-aware)"
            )),
        }
    }
}

/// What triggered a brake decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrakeCause {
    /// Track id when the triggering entity is a track.
    pub track_id: Option<u64>,
    /// Longitudinal distance of the triggering point/extent in metres.
    pub distance: f64,
    /// Relative velocity of the triggering track, when estimated.
    pub rel_velocity: Option<f64>,
}

/// Per-frame decision of one strategy. A cause is present iff `brake` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub frame_index: u64,
    pub strategy: Strategy,
    pub brake: bool,
    pub cause: Option<BrakeCause>,
}

impl Decision {
    fn clear(frame_index: u64, strategy: Strategy) -> Self {
        Self {
            frame_index,
            strategy,
            brake: false,
            cause: None,
        }
    }

    fn braking(frame_index: u64, strategy: Strategy, cause: BrakeCause) -> Self {
        Self {
            frame_index,
            strategy,
            brake: true,
            cause: Some(cause),
        }
    }
}

/// Motion-aware parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionAwareSpec {
    /// Observation reach as a multiple of the monitoring distance (≥ 1);
    /// the extra margin buys velocity history before an object reaches the
    /// braking boundary.
    pub extension_factor: f64,
    /// Dead band around zero relative velocity in m/s, absorbing estimator
    /// noise so a constant gap does not flicker into braking.
    pub rel_velocity_epsilon: f64,
}

impl Default for MotionAwareSpec {
    fn default() -> Self {
        Self {
            extension_factor: 1.5,
            rel_velocity_epsilon: 0.05,
        }
    }
}

/// Baseline: brake on any corridor return within the monitoring distance.
///
/// Expects an already corridor-filtered frame.
pub fn decide_single_point(frame: &Frame, zone: &MonitorZone, frame_index: u64) -> Decision {
    let nearest = frame
        .points
        .iter()
        .filter(|p| p.x <= zone.longitudinal_limit)
        .map(|p| p.x)
        .min_by(|a, b| a.partial_cmp(b).expect("finite coordinate"));
    match nearest {
        Some(distance) => Decision::braking(
            frame_index,
            Strategy::SinglePoint,
            BrakeCause {
                track_id: None,
                distance,
                rel_velocity: None,
            },
        ),
        None => Decision::clear(frame_index, Strategy::SinglePoint),
    }
}

/// Brake when a hazard-sized cluster's nearest point is within the
/// monitoring distance. Expects clusters that already passed the size filter.
pub fn decide_size_based(hazards: &[Cluster], zone: &MonitorZone, frame_index: u64) -> Decision {
    let nearest = hazards
        .iter()
        .map(|c| c.nearest_x())
        .filter(|&x| x <= zone.longitudinal_limit)
        .min_by(|a, b| a.partial_cmp(b).expect("finite coordinate"));
    match nearest {
        Some(distance) => Decision::braking(
            frame_index,
            Strategy::SizeBased,
            BrakeCause {
                track_id: None,
                distance,
                rel_velocity: None,
            },
        ),
        None => Decision::clear(frame_index, Strategy::SizeBased),
    }
}

/// Brake when a tracked hazard inside the monitoring distance is closing
/// (relative velocity below `-epsilon`) -- or has no velocity estimate yet,
/// the fail-safe for objects that appear out of nowhere.
///
/// Tracks are built from size-filtered clusters observed out to
/// `extension_factor · D_Mon`; the braking test itself uses `D_Mon`.
pub fn decide_motion_aware(
    tracks: &[Track],
    zone: &MonitorZone,
    spec: &MotionAwareSpec,
    frame_index: u64,
) -> Decision {
    let mut trigger: Option<&Track> = None;
    for t in tracks {
        if t.nearest_x() > zone.longitudinal_limit {
            continue;
        }
        let closing = match t.rel_velocity_x {
            Some(v) => v < -spec.rel_velocity_epsilon,
            None => true, // fail-safe: unknown motion inside the zone
        };
        if closing && trigger.is_none_or(|best| t.nearest_x() < best.nearest_x()) {
            trigger = Some(t);
        }
    }
    match trigger {
        Some(t) => Decision::braking(
            frame_index,
            Strategy::MotionAware,
            BrakeCause {
                track_id: Some(t.id),
                distance: t.nearest_x(),
                rel_velocity: t.rel_velocity_x,
            },
        ),
        None => Decision::clear(frame_index, Strategy::MotionAware),
    }
}
