//! Frame-to-frame data association and relative-velocity estimation.
//!
//! Clusters from consecutive frames are matched by minimum-total-cost
//! assignment (Hungarian algorithm) over gate-feasible pairs, where the cost
//! is the Euclidean distance between the cluster centroid and the track's
//! ego-motion-compensated position. Matched tracks estimate longitudinal
//! relative velocity from the raw inter-frame centroid displacement,
//! optionally smoothed by a short moving average.

use std::collections::VecDeque;

use crate::geometry::{Aabb, Point3};
use crate::perception::Cluster;

/// A tracked object.
#[derive(Debug, Clone)]
pub struct Track {
    pub id: u64,
    pub last_centroid: Point3,
    pub last_aabb: Aabb,
    /// Longitudinal relative velocity in m/s (positive = receding).
    /// `None` until the first inter-frame displacement is observed.
    pub rel_velocity_x: Option<f64>,
    pub age_frames: u32,
    pub last_seen_frame: u64,
    velocity_samples: VecDeque<f64>,
}

impl Track {
    /// Longitudinal coordinate of the nearest extent.
    pub fn nearest_x(&self) -> f64 {
        self.last_aabb.min.x
    }
}

/// Gate parameters: the largest centroid displacement a physically plausible
/// object can produce between consecutive frames.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    /// Maximum plausible object speed in m/s.
    pub v_max: f64,
    /// Frame period in seconds.
    pub dt: f64,
}

impl Default for GateSpec {
    /// 60 km/h at 10 Hz: a 1.67 m gate.
    fn default() -> Self {
        Self {
            v_max: 16.7,
            dt: 0.1,
        }
    }
}

impl GateSpec {
    pub fn radius(&self) -> f64 {
        self.v_max * self.dt
    }
}

/// Track position predicted under the hypothesis that the object is
/// stationary in the world while the ego moved `ego_displacement_x` forward.
fn predicted_position(track: &Track, ego_displacement_x: f64) -> Point3 {
    Point3::new(
        track.last_centroid.x - ego_displacement_x,
        track.last_centroid.y,
        track.last_centroid.z,
    )
}

/// Association cost: distance between the compensated track position and the
/// cluster centroid.
fn pair_cost(track: &Track, cluster: &Cluster, ego_displacement_x: f64) -> f64 {
    predicted_position(track, ego_displacement_x).distance(&cluster.centroid())
}

/// All gate-feasible `(track_index, cluster_index)` pairs.
pub fn gate(
    tracks: &[Track],
    clusters: &[Cluster],
    gs: &GateSpec,
    ego_displacement_x: f64,
) -> Vec<(usize, usize)> {
    let radius = gs.radius();
    let mut feasible = Vec::new();
    for (ti, t) in tracks.iter().enumerate() {
        for (ci, c) in clusters.iter().enumerate() {
            if pair_cost(t, c, ego_displacement_x) <= radius {
                feasible.push((ti, ci));
            }
        }
    }
    feasible
}

/// Result of one assignment round.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    /// Matched `(track_index, cluster_index)` pairs.
    pub matches: Vec<(usize, usize)>,
    pub unmatched_tracks: Vec<usize>,
    pub unmatched_clusters: Vec<usize>,
}

/// Cost stand-in for forbidden pairs; far above any feasible total, so the
/// optimizer always prefers real pairs (maximum cardinality first).
const FORBIDDEN: f64 = 1e9;

/// Square-matrix Hungarian algorithm (shortest augmenting path with
/// potentials, O(n³)). Returns, for each row, the assigned column.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based potentials; p[j] = row assigned to column j.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    row_to_col
}

/// Minimum-total-cost maximum matching over the feasible pairs.
///
/// Costs are the gate costs (compensated centroid distances). Ties are broken
/// deterministically towards the lower track id, then the earlier cluster, by
/// adding an index-ordered perturbation far below any meaningful cost
/// difference.
pub fn assign(
    tracks: &[Track],
    clusters: &[Cluster],
    feasible: &[(usize, usize)],
    ego_displacement_x: f64,
) -> Assignment {
    let nt = tracks.len();
    let nc = clusters.len();
    if nt == 0 || nc == 0 || feasible.is_empty() {
        return Assignment {
            matches: Vec::new(),
            unmatched_tracks: (0..nt).collect(),
            unmatched_clusters: (0..nc).collect(),
        };
    }

    let n = nt.max(nc);
    let mut cost = vec![vec![FORBIDDEN; n]; n];
    for &(ti, ci) in feasible {
        let tie = (ti * nc + ci) as f64 * 1e-12;
        cost[ti][ci] = pair_cost(&tracks[ti], &clusters[ci], ego_displacement_x) + tie;
    }

    let row_to_col = hungarian(&cost);
    let mut matches = Vec::new();
    let mut track_matched = vec![false; nt];
    let mut cluster_matched = vec![false; nc];
    for (ti, &ci) in row_to_col.iter().enumerate() {
        if ti < nt && ci < nc && cost[ti][ci] < FORBIDDEN {
            matches.push((ti, ci));
            track_matched[ti] = true;
            cluster_matched[ci] = true;
        }
    }

    Assignment {
        matches,
        unmatched_tracks: (0..nt).filter(|&i| !track_matched[i]).collect(),
        unmatched_clusters: (0..nc).filter(|&i| !cluster_matched[i]).collect(),
    }
}

/// Fold one frame's assignment into a new track list.
///
/// Matched tracks take the cluster's centroid/box, push a raw displacement
/// velocity sample `(new_x − old_x)/dt`, and report the mean of the last
/// `velocity_window` samples. Unmatched tracks are dropped (no coasting).
/// Unmatched clusters spawn new tracks; a spawned track inherits the velocity
/// of a gate-feasible existing track when one explains it (a cluster fragment
/// of an object already under track), otherwise its velocity starts unknown.
#[allow(clippy::too_many_arguments)]
pub fn update_tracks(
    tracks: &[Track],
    clusters: &[Cluster],
    assignment: &Assignment,
    frame_index: u64,
    dt: f64,
    ego_displacement_x: f64,
    gs: &GateSpec,
    velocity_window: usize,
    next_id: &mut u64,
) -> Vec<Track> {
    assert!(dt > 0.0, "dt must be > 0");
    let window = velocity_window.max(1);
    let mut out =
        Vec::with_capacity(assignment.matches.len() + assignment.unmatched_clusters.len());

    for &(ti, ci) in &assignment.matches {
        let old = &tracks[ti];
        let cluster = &clusters[ci];
        let centroid = cluster.centroid();
        let sample = (centroid.x - old.last_centroid.x) / dt;
        let mut samples = old.velocity_samples.clone();
        samples.push_back(sample);
        while samples.len() > window {
            samples.pop_front();
        }
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        out.push(Track {
            id: old.id,
            last_centroid: centroid,
            last_aabb: cluster.aabb,
            rel_velocity_x: Some(mean),
            age_frames: old.age_frames + 1,
            last_seen_frame: frame_index,
            velocity_samples: samples,
        });
    }

    for &ci in &assignment.unmatched_clusters {
        let cluster = &clusters[ci];
        // Fragment check: a pre-update track within the gate explains this
        // cluster, so its motion carries over instead of triggering the
        // unknown-velocity fail-safe.
        let inherited = tracks
            .iter()
            .map(|t| (pair_cost(t, cluster, ego_displacement_x), t))
            .filter(|(d, _)| *d <= gs.radius())
            .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite cost"))
            .and_then(|(_, t)| t.rel_velocity_x);
        let mut samples = VecDeque::new();
        if let Some(v) = inherited {
            samples.push_back(v);
        }
        out.push(Track {
            id: *next_id,
            last_centroid: cluster.centroid(),
            last_aabb: cluster.aabb,
            rel_velocity_x: inherited,
            age_frames: 1,
            last_seen_frame: frame_index,
            velocity_samples: samples,
        });
        *next_id += 1;
    }

    out
}

/// Owning tracker for one pipeline instance.
#[derive(Debug, Clone)]
pub struct Tracker {
    pub gate_spec: GateSpec,
    pub velocity_window: usize,
    tracks: Vec<Track>,
    next_id: u64,
}

impl Tracker {
    pub fn new(gate_spec: GateSpec, velocity_window: usize) -> Self {
        Self {
            gate_spec,
            velocity_window,
            tracks: Vec::new(),
            next_id: 1,
        }
    }

    pub fn tracks(&self) -> &[Track] {
        &self.tracks
    }

    /// Run gate → assign → update for one frame of clusters.
    pub fn step(
        &mut self,
        clusters: &[Cluster],
        frame_index: u64,
        ego_displacement_x: f64,
    ) -> &[Track] {
        let feasible = gate(&self.tracks, clusters, &self.gate_spec, ego_displacement_x);
        let assignment = assign(&self.tracks, clusters, &feasible, ego_displacement_x);
        self.tracks = update_tracks(
            &self.tracks,
            clusters,
            &assignment,
            frame_index,
            self.gate_spec.dt,
            ego_displacement_x,
            &self.gate_spec,
            self.velocity_window,
            &mut self.next_id,
        );
        &self.tracks
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn cluster_at(x: f64, y: f64, z: f64) -> Cluster {
        Cluster::from_points(vec![Point3::new(x, y, z)]).unwrap()
    }

    fn track_at(id: u64, x: f64, y: f64, z: f64) -> Track {
        let c = cluster_at(x, y, z);
        Track {
            id,
            last_centroid: c.centroid(),
            last_aabb: c.aabb,
            rel_velocity_x: None,
            age_frames: 1,
            last_seen_frame: 0,
            velocity_samples: VecDeque::new(),
        }
    }

    #[test]
    fn gate_examples() {
        let gs = GateSpec::default();
        let tracks = vec![track_at(1, 3.0, 0.0, 0.6)];
        let close = vec![cluster_at(3.1, 0.0, 0.6)];
        assert_eq!(gate(&tracks, &close, &gs, 0.0), vec![(0, 0)]);
        let far = vec![cluster_at(5.0, 0.0, 0.6)];
        assert!(gate(&tracks, &far, &gs, 0.0).is_empty());
        assert!(gate(&[], &close, &gs, 0.0).is_empty());
    }

    #[test]
    fn gate_compensates_ego_motion() {
        let gs = GateSpec::default();
        // World-stationary object 3 m ahead; ego advanced 0.6 m this frame.
        let tracks = vec![track_at(1, 3.0, 0.0, 0.6)];
        let clusters = vec![cluster_at(2.4, 0.0, 0.6)];
        let feasible = gate(&tracks, &clusters, &gs, 0.6);
        assert_eq!(feasible, vec![(0, 0)]);
        let a = assign(&tracks, &clusters, &feasible, 0.6);
        // Compensated cost is ~0.
        assert_eq!(a.matches, vec![(0, 0)]);
    }

    #[test]
    fn assign_identity_on_identical_sets() {
        let tracks = vec![track_at(1, 1.0, 0.0, 0.6), track_at(2, 2.0, 0.5, 0.6)];
        let clusters = vec![cluster_at(1.0, 0.0, 0.6), cluster_at(2.0, 0.5, 0.6)];
        let feasible = gate(&tracks, &clusters, &GateSpec::default(), 0.0);
        let a = assign(&tracks, &clusters, &feasible, 0.0);
        assert_eq!(a.matches, vec![(0, 0), (1, 1)]);
        assert!(a.unmatched_tracks.is_empty());
        assert!(a.unmatched_clusters.is_empty());
    }

    #[test]
    fn assign_tie_prefers_lower_track_id() {
        let tracks = vec![track_at(1, 2.0, -0.5, 0.6), track_at(2, 2.0, 0.5, 0.6)];
        let clusters = vec![cluster_at(2.0, 0.0, 0.6)]; // equidistant
        let feasible = gate(&tracks, &clusters, &GateSpec::default(), 0.0);
        assert_eq!(feasible.len(), 2);
        let a = assign(&tracks, &clusters, &feasible, 0.0);
        assert_eq!(a.matches, vec![(0, 0)]);
        assert_eq!(a.unmatched_tracks, vec![1]);
    }

    #[test]
    fn assign_empty_inputs() {
        let a = assign(&[], &[], &[], 0.0);
        assert!(a.matches.is_empty());
        let tracks = vec![track_at(1, 1.0, 0.0, 0.6)];
        let a = assign(&tracks, &[], &[], 0.0);
        assert_eq!(a.unmatched_tracks, vec![0]);
    }

    /// Brute-force oracle: minimum total over all permutations of the padded
    /// square matrix (maximum cardinality falls out of the FORBIDDEN cost).
    fn brute_min_total(cost: &[Vec<f64>]) -> f64 {
        let n = cost.len();
        let mut cols: Vec<usize> = (0..n).collect();
        let mut best = f64::INFINITY;
        permute(&mut cols, 0, &mut |perm| {
            let total: f64 = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
            if total < best {
                best = total;
            }
        });
        best
    }

    fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }

    #[test]
    fn hungarian_matches_brute_force() {
        let mut rng = SplitMix64::new(505);
        for case in 0..200 {
            let nt = 1 + (rng.next_u64() % 6) as usize;
            let nc = 1 + (rng.next_u64() % 6) as usize;
            let n = nt.max(nc);
            let mut cost = vec![vec![FORBIDDEN; n]; n];
            for row in cost.iter_mut().take(nt) {
                for c in row.iter_mut().take(nc) {
                    if rng.next_f64() < 0.8 {
                        *c = rng.next_range(0.0, 2.0);
                    }
                }
            }
            let row_to_col = hungarian(&cost);
            let total: f64 = row_to_col
                .iter()
                .enumerate()
                .map(|(i, &j)| cost[i][j])
                .sum();
            let best = brute_min_total(&cost);
            assert!(
                (total - best).abs() <= 1e-6 * best.max(1.0),
                "case {case}: hungarian {total} vs brute {best}"
            );
        }
    }

    #[test]
    fn matched_pairs_respect_gate_and_injectivity() {
        let mut rng = SplitMix64::new(99);
        let gs = GateSpec::default();
        for _ in 0..50 {
            let tracks: Vec<Track> = (0..(1 + rng.next_u64() % 5))
                .map(|i| {
                    track_at(
                        i + 1,
                        rng.next_range(0.5, 8.0),
                        rng.next_range(-1.0, 1.0),
                        0.6,
                    )
                })
                .collect();
            let clusters: Vec<Cluster> = (0..(1 + rng.next_u64() % 5))
                .map(|_| cluster_at(rng.next_range(0.5, 8.0), rng.next_range(-1.0, 1.0), 0.6))
                .collect();
            let feasible = gate(&tracks, &clusters, &gs, 0.0);
            let a = assign(&tracks, &clusters, &feasible, 0.0);
            let mut seen_t = std::collections::HashSet::new();
            let mut seen_c = std::collections::HashSet::new();
            for &(ti, ci) in &a.matches {
                assert!(seen_t.insert(ti), "track matched twice");
                assert!(seen_c.insert(ci), "cluster matched twice");
                let d = tracks[ti].last_centroid.distance(&clusters[ci].centroid());
                assert!(d <= gs.radius() + 1e-9, "gate violated: {d}");
            }
        }
    }

    #[test]
    fn update_velocity_examples() {
        let gs = GateSpec::default();
        let mut next_id = 1;
        // Stationary object across two frames.
        let tracks = vec![track_at(1, 3.0, 0.0, 0.6)];
        let clusters = vec![cluster_at(3.0, 0.0, 0.6)];
        let a = assign(&tracks, &clusters, &gate(&tracks, &clusters, &gs, 0.0), 0.0);
        let updated = update_tracks(&tracks, &clusters, &a, 1, 0.1, 0.0, &gs, 3, &mut next_id);
        assert_eq!(updated[0].rel_velocity_x, Some(0.0));
        assert_eq!(updated[0].age_frames, 2);

        // Gap opening at 0.5 km/h: +0.01389 m over 0.1 s.
        let clusters = vec![cluster_at(3.01389, 0.0, 0.6)];
        let a = assign(
            &updated,
            &clusters,
            &gate(&updated, &clusters, &gs, 0.0),
            0.0,
        );
        let updated = update_tracks(&updated, &clusters, &a, 2, 0.1, 0.0, &gs, 1, &mut next_id);
        let v = updated[0].rel_velocity_x.unwrap();
        assert!((v - 0.1389).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn unmatched_cluster_spawns_track() {
        let gs = GateSpec::default();
        let mut next_id = 5;
        let clusters = vec![cluster_at(4.0, 0.0, 0.6)];
        let a = assign(&[], &clusters, &[], 0.0);
        let updated = update_tracks(&[], &clusters, &a, 0, 0.1, 0.0, &gs, 3, &mut next_id);
        assert_eq!(updated.len(), 1);
        assert_eq!(updated[0].id, 5);
        assert_eq!(updated[0].age_frames, 1);
        assert_eq!(updated[0].rel_velocity_x, None);
        assert_eq!(next_id, 6);
    }

    #[test]
    fn unmatched_track_dropped_after_one_miss() {
        let mut tracker = Tracker::new(GateSpec::default(), 3);
        tracker.step(&[cluster_at(3.0, 0.0, 0.6)], 0, 0.0);
        assert_eq!(tracker.tracks().len(), 1);
        tracker.step(&[], 1, 0.0);
        assert!(tracker.tracks().is_empty());
    }

    #[test]
    fn fragment_inherits_velocity() {
        let mut tracker = Tracker::new(GateSpec::default(), 3);
        // Two frames to establish velocity +1.0 m/s.
        tracker.step(&[cluster_at(5.0, 0.0, 0.6)], 0, 0.0);
        tracker.step(&[cluster_at(5.1, 0.0, 0.6)], 1, 0.0);
        assert!((tracker.tracks()[0].rel_velocity_x.unwrap() - 1.0).abs() < 1e-9);
        // The cluster splits into two fragments near the old position.
        let frags = vec![cluster_at(5.2, -0.2, 0.6), cluster_at(5.2, 0.2, 0.5)];
        tracker.step(&frags, 2, 0.0);
        assert_eq!(tracker.tracks().len(), 2);
        for t in tracker.tracks() {
            assert!(
                t.rel_velocity_x.is_some(),
                "fragment should inherit velocity"
            );
        }
    }

    #[test]
    fn velocity_converges_in_constant_relative_motion() {
        let mut tracker = Tracker::new(GateSpec::default(), 3);
        let v_true = -1.2;
        for i in 0..6u64 {
            let x = 6.0 + v_true * 0.1 * i as f64;
            tracker.step(&[cluster_at(x, 0.0, 0.6)], i, 0.0);
        }
        let v = tracker.tracks()[0].rel_velocity_x.unwrap();
        assert!((v - v_true).abs() <= 0.05, "got {v}");
    }
}
