//! Near-field LiDAR collision monitoring.
//!
//! A low-mounted LiDAR watches the blind spot directly ahead of an
//! autonomous vehicle and can command emergency braking on its own. The
//! naive policy -- brake on any return inside the monitored volume -- reacts
//! fast but brakes for insects, debris, and a lead car that is simply close.
//! This crate implements that monitor together with the two refinements that
//! make it usable, and a deterministic simulation harness that quantifies
//! the difference:
//!
//! * [`corridor`] -- the speed-dependent keep-out volume: reaction plus
//!   safety-margin plus friction-limited braking distance ahead, vehicle
//!   silhouette sideways and vertically.
//! * [`lidar`] -- a deterministic ray-casting model of a 16-channel spinning
//!   LiDAR with seeded Gaussian range noise.
//! * [`perception`] -- corridor filtering, Euclidean clustering, bounding
//!   boxes, and the size-based hazard filter.
//! * [`tracking`] -- gated Hungarian association across frames and
//!   longitudinal relative-velocity estimation.
//! * [`monitor`] -- the three braking strategies: single-point hit,
//!   size-based, and motion-aware.
//! * [`harness`] -- scenario grids, the per-frame pipeline, FPR/TPR/F1
//!   metrics, and CSV/JSON reports. The `nfm` binary exposes it all on the
//!   command line.
//!
//! ```
//! use nearfield::corridor::{build_zone, CorridorSpec};
//!
//! let spec = CorridorSpec::default();
//! let zone = build_zone(8.3333, &spec).unwrap(); // 30 km/h
//! assert!((zone.longitudinal_limit - 7.2192).abs() < 1e-3);
//! assert_eq!(zone.lateral_halfwidth, 1.0);
//! ```

pub mod corridor;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod lidar;
pub mod monitor;
pub mod perception;
pub mod rng;
pub mod tracking;

pub use error::{Error, Result};

// The guide chapters double as doc-tests so the book's snippets always
// compile against the current API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(corridor, "../../../book/src/corridor.md");
    chapter!(sensor_model, "../../../book/src/sensor-model.md");
    chapter!(perception, "../../../book/src/perception.md");
    chapter!(tracking, "../../../book/src/tracking.md");
    chapter!(strategies, "../../../book/src/strategies.md");
    chapter!(evaluation, "../../../book/src/evaluation.md");
}
