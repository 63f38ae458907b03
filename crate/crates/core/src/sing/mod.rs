//! Discrepancies and log canonical thresholds of a plane curve germ on a
//! smooth surface, via clusters of infinitely near points.

mod cluster;
mod resolve;

pub use cluster::{is_lc_at, lct, BlowupCluster, Center, ClusterPoint, PairThresholdReport};
pub use resolve::{resolve_plane_curve, DEFAULT_DEPTH};
