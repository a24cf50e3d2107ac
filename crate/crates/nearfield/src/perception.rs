//! Corridor filtering, Euclidean clustering, and the size-based hazard filter.
//!
//! Clustering is defined declaratively: clusters are exactly the connected
//! components of the graph linking points within the Euclidean tolerance.
//! The implementation accelerates the neighbour search with a uniform grid,
//! but its output must (and does -- see the oracle tests) equal brute-force
//! connected components.

use std::collections::HashMap;

use crate::corridor::MonitorZone;
use crate::geometry::{Aabb, Point3};
use crate::lidar::Frame;

/// A segmented point group with its tight bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub points: Vec<Point3>,
    pub aabb: Aabb,
}

impl Cluster {
    /// Build from a non-empty point list.
    pub fn from_points(points: Vec<Point3>) -> Option<Cluster> {
        let aabb = Aabb::from_points(&points)?;
        Some(Cluster { points, aabb })
    }

    /// Mean of the member points.
    pub fn centroid(&self) -> Point3 {
        let n = self.points.len() as f64;
        let mut c = Point3::new(0.0, 0.0, 0.0);
        for p in &self.points {
            c.x += p.x;
            c.y += p.y;
            c.z += p.z;
        }
        Point3::new(c.x / n, c.y / n, c.z / n)
    }

    /// Longitudinal coordinate of the nearest member point.
    pub fn nearest_x(&self) -> f64 {
        self.aabb.min.x
    }
}

/// Keep exactly the points inside the corridor, preserving order.
pub fn filter_to_corridor(frame: &Frame, zone: &MonitorZone) -> Frame {
    Frame {
        timestamp: frame.timestamp,
        points: frame
            .points
            .iter()
            .copied()
            .filter(|p| zone.contains(p))
            .collect(),
    }
}

/// Bounding box of a point set (componentwise min/max).
pub fn compute_aabb(points: &[Point3]) -> Option<Aabb> {
    Aabb::from_points(points)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, keeping component labels input-ordered.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Connected components under the Euclidean tolerance.
///
/// Components smaller than `min_points` are dropped. Clusters are ordered by
/// their bounding-box minimum corner (x, then y, then z); points inside a
/// cluster keep their input order.
///
/// Acceleration: a uniform grid with cells of side just under
/// `tolerance/√3`. Any two points in one cell are then within the tolerance,
/// so each cell is a clique and needs a single union; for a pair of nearby
/// cells one connecting point pair suffices (both cells are already
/// internally connected), and cell pairs sharing a component are skipped
/// outright. Dense LiDAR surfaces collapse to a handful of unions per frame.
pub fn euclidean_cluster(frame: &Frame, tolerance: f64, min_points: usize) -> Vec<Cluster> {
    assert!(tolerance > 0.0, "tolerance must be > 0");
    assert!(min_points >= 1, "min_points must be >= 1");
    let pts = &frame.points;
    if pts.is_empty() {
        return Vec::new();
    }

    // 0.5773 < 1/sqrt(3): same-cell distances stay strictly below tolerance.
    let cell_size = tolerance * 0.5773;
    let cell = |v: f64| (v / cell_size).floor() as i64;
    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in pts.iter().enumerate() {
        grid.entry((cell(p.x), cell(p.y), cell(p.z)))
            .or_default()
            .push(i);
    }

    let tol2 = tolerance * tolerance;
    let mut uf = UnionFind::new(pts.len());

    // Each cell is a clique.
    for bucket in grid.values() {
        for &i in &bucket[1..] {
            uf.union(bucket[0], i);
        }
    }

    // Cross-cell edges: cells up to two apart can hold points within the
    // tolerance (2·sqrt(3)·cell > tolerance > sqrt(3)·cell). Visit each
    // unordered cell pair once via lexicographically positive offsets.
    let mut offsets: Vec<(i64, i64, i64)> = Vec::new();
    for dx in -2i64..=2 {
        for dy in -2i64..=2 {
            for dz in -2i64..=2 {
                if (dx, dy, dz) > (0, 0, 0) {
                    offsets.push((dx, dy, dz));
                }
            }
        }
    }

    let mut keys: Vec<(i64, i64, i64)> = grid.keys().copied().collect();
    keys.sort_unstable();
    for key in &keys {
        let a = &grid[key];
        for (dx, dy, dz) in &offsets {
            let Some(b) = grid.get(&(key.0 + dx, key.1 + dy, key.2 + dz)) else {
                continue;
            };
            // Already one component: nothing a direct edge could change.
            if uf.find(a[0]) == uf.find(b[0]) {
                continue;
            }
            'search: for &i in a {
                for &j in b {
                    let (p, q) = (&pts[i], &pts[j]);
                    let (ex, ey, ez) = (p.x - q.x, p.y - q.y, p.z - q.z);
                    if ex * ex + ey * ey + ez * ez <= tol2 {
                        uf.union(i, j);
                        break 'search;
                    }
                }
            }
        }
    }

    // Gather components in input order of their first member.
    let mut by_root: HashMap<usize, Vec<Point3>> = HashMap::new();
    let mut roots_in_order: Vec<usize> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let r = uf.find(i);
        let entry = by_root.entry(r).or_insert_with(|| {
            roots_in_order.push(r);
            Vec::new()
        });
        entry.push(*p);
    }

    let mut clusters: Vec<Cluster> = roots_in_order
        .into_iter()
        .filter_map(|r| {
            let points = by_root.remove(&r)?;
            if points.len() < min_points {
                return None;
            }
            Cluster::from_points(points)
        })
        .collect();

    clusters.sort_by(|a, b| {
        let ka = (a.aabb.min.x, a.aabb.min.y, a.aabb.min.z);
        let kb = (b.aabb.min.x, b.aabb.min.y, b.aabb.min.z);
        ka.partial_cmp(&kb).expect("finite coordinates")
    });
    clusters
}

/// Widen a cluster's bounding box laterally by one beam footprint.
///
/// Sampled extents underestimate the true object size: member points are ray
/// centres, so the surface extends up to one sample spacing past the
/// outermost returns. Along the scan direction the azimuth pitch is fine
/// enough (0.192° ≈ 3 mm/m) for the correction to be accurate, so the width
/// is widened by `range · azimuth_step`. The vertical axis is left alone: at
/// a 2° ring pitch the same correction would dwarf the measurement.
pub fn compensate_azimuth_footprint(cluster: &Cluster, azimuth_step: f64) -> Cluster {
    let c = cluster.centroid();
    let range = (c.x * c.x + c.y * c.y).sqrt();
    Cluster {
        points: cluster.points.clone(),
        aabb: cluster.aabb.widened_laterally(range * azimuth_step),
    }
}

/// Keep exactly the clusters whose largest extent reaches `d_max`.
///
/// A cluster is discarded only if all three extents are below the threshold.
pub fn size_filter(clusters: Vec<Cluster>, d_max: f64) -> Vec<Cluster> {
    clusters
        .into_iter()
        .filter(|c| c.aabb.max_extent() >= d_max)
        .collect()
}
