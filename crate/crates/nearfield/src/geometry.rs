//! Shared geometric primitives.
//!
//! Coordinate convention used throughout the crate: `x` points forward
//! (driving direction), `y` left, `z` up with `z = 0` at ground level.
//! The sensor sits on the x/y origin at its mount height, so a returned
//! point's `z` is its height above ground.

/// A point (or position) in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// A velocity in metres per second, same axes as [`Point3`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
}

/// Axis-aligned bounding box.
///
/// Extents follow the vehicle convention: width is the lateral (`y`) span,
/// height the vertical (`z`) span, depth the longitudinal (`x`) span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3,
    pub max: Point3,
}

impl Aabb {
    /// Tight bounds of a point set; `None` for an empty slice.
    pub fn from_points(points: &[Point3]) -> Option<Aabb> {
        let first = points.first()?;
        let mut min = *first;
        let mut max = *first;
        for p in &points[1..] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            min.z = min.z.min(p.z);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
            max.z = max.z.max(p.z);
        }
        Some(Aabb { min, max })
    }

    /// Lateral extent (y span).
    pub fn width(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Vertical extent (z span).
    pub fn height(&self) -> f64 {
        self.max.z - self.min.z
    }

    /// Longitudinal extent (x span).
    pub fn depth(&self) -> f64 {
        self.max.x - self.min.x
    }

    /// Largest of the three extents.
    pub fn max_extent(&self) -> f64 {
        self.width().max(self.height()).max(self.depth())
    }

    /// Smallest box containing both.
    pub fn union(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: Point3::new(
                self.min.x.min(other.min.x),
                self.min.y.min(other.min.y),
                self.min.z.min(other.min.z),
            ),
            max: Point3::new(
                self.max.x.max(other.max.x),
                self.max.y.max(other.max.y),
                self.max.z.max(other.max.z),
            ),
        }
    }

    /// Closed-boundary containment test.
    pub fn contains(&self, p: &Point3) -> bool {
        self.min.x <= p.x
            && p.x <= self.max.x
            && self.min.y <= p.y
            && p.y <= self.max.y
            && self.min.z <= p.z
            && p.z <= self.max.z
    }

    /// Box widened laterally by `amount` in total (half on each side).
    pub fn widened_laterally(&self, amount: f64) -> Aabb {
        let half = amount * 0.5;
        Aabb {
            min: Point3::new(self.min.x, self.min.y - half, self.min.z),
            max: Point3::new(self.max.x, self.max.y + half, self.max.z),
        }
    }
}
