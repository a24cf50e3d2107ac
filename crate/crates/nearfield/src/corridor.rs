//! Speed-dependent monitoring corridor.
//!
//! The monitored volume ahead of the ego vehicle is a rectangular corridor:
//! its longitudinal reach grows with speed (reaction distance plus safety
//! margin plus friction-limited braking distance), while the lateral and
//! vertical faces follow the vehicle silhouette. The bottom face sits at
//! chassis height so ground returns never enter the pipeline; the top face
//! caps the view at the vehicle's highest point.

use crate::error::{require_non_negative, require_positive, Error};
use crate::geometry::Point3;

/// Vehicle geometry and timing/friction parameters defining the corridor.
///
/// All heights are above ground; the slope is a dimensionless grade
/// (positive uphill).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorridorSpec {
    /// System decision time in seconds.
    pub reaction_time: f64,
    /// Extra buffer time in seconds added on top of the reaction time.
    pub safety_margin_time: f64,
    /// Tyre/road friction coefficient.
    pub friction: f64,
    /// Road grade (0 on a horizontal surface).
    pub slope: f64,
    /// Gravitational acceleration in m/s².
    pub gravity: f64,
    /// Outermost vehicle width in metres.
    pub vehicle_width: f64,
    /// Chassis clearance above ground in metres (corridor bottom).
    pub chassis_height: f64,
    /// Topmost vehicle height in metres (corridor top).
    pub top_height: f64,
}

impl Default for CorridorSpec {
    /// Passenger-car defaults on dry asphalt: one 10 Hz sensor frame of
    /// reaction time plus a 0.2 s buffer, friction 0.75, level road.
    fn default() -> Self {
        Self {
            reaction_time: 0.1,
            safety_margin_time: 0.2,
            friction: 0.75,
            slope: 0.0,
            gravity: 9.81,
            vehicle_width: 2.0,
            chassis_height: 0.3,
            top_height: 1.8,
        }
    }
}

impl CorridorSpec {
    /// Check the structural invariants.
    pub fn validate(&self) -> Result<(), Error> {
        require_non_negative(self.reaction_time, "reaction_time")?;
        require_non_negative(self.safety_margin_time, "safety_margin_time")?;
        require_positive(self.friction, "friction")?;
        require_positive(self.gravity, "gravity")?;
        require_positive(self.vehicle_width, "vehicle_width")?;
        require_non_negative(self.chassis_height, "chassis_height")?;
        require_positive(
            self.top_height - self.chassis_height,
            "top_height - chassis_height",
        )?;
        require_positive(self.friction + self.slope, "friction + slope")?;
        Ok(())
    }
}

/// The monitored keep-out volume for one ego speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorZone {
    /// Longitudinal reach in metres, measured from the sensor origin.
    pub longitudinal_limit: f64,
    /// Half of the vehicle width.
    pub lateral_halfwidth: f64,
    /// Bottom face height above ground.
    pub z_min: f64,
    /// Top face height above ground.
    pub z_max: f64,
}

impl MonitorZone {
    /// True iff the point lies inside the corridor.
    ///
    /// Lateral and vertical faces are closed; the longitudinal lower bound
    /// is open so the sensor origin itself never counts as a return.
    pub fn contains(&self, p: &Point3) -> bool {
        0.0 < p.x
            && p.x <= self.longitudinal_limit
            && p.y.abs() <= self.lateral_halfwidth
            && self.z_min <= p.z
            && p.z <= self.z_max
    }

    /// Same corridor with the longitudinal reach scaled by `factor`.
    pub fn extended(&self, factor: f64) -> MonitorZone {
        MonitorZone {
            longitudinal_limit: self.longitudinal_limit * factor,
            ..*self
        }
    }
}

/// Friction-limited stopping distance `v² / (2 g (μ + s))` in metres.
pub fn braking_distance(speed: f64, spec: &CorridorSpec) -> Result<f64, Error> {
    let denom = spec.friction + spec.slope;
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::domain("friction + slope must be > 0"));
    }
    if speed.is_nan() || speed < 0.0 {
        return Err(Error::domain("speed must be >= 0"));
    }
    Ok(speed * speed / (2.0 * spec.gravity * denom))
}

/// Total monitoring distance `(t_r + t_s)·v + braking_distance(v)` in metres.
pub fn monitoring_distance(speed: f64, spec: &CorridorSpec) -> Result<f64, Error> {
    let braking = braking_distance(speed, spec)?;
    Ok((spec.reaction_time + spec.safety_margin_time) * speed + braking)
}

/// Corridor for the given ego speed.
pub fn build_zone(speed: f64, spec: &CorridorSpec) -> Result<MonitorZone, Error> {
    Ok(MonitorZone {
        longitudinal_limit: monitoring_distance(speed, spec)?,
        lateral_halfwidth: spec.vehicle_width / 2.0,
        z_min: spec.chassis_height,
        z_max: spec.top_height,
    })
}
