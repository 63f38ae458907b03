//! Plane Cremona maps: homaloidal types and their Noether-Castelnuovo
//! factorization, concrete maps given by forms, and the factorization of
//! concrete maps into quadratic and linear pieces.

mod factor;
mod homaloidal;
mod plane_map;
mod trace;
mod verify;

pub use factor::{factor_map, BasePoint};
pub use homaloidal::{
    factor_type, noether_fano_point, quadratic_untwist, validate_type, HomaloidalType,
};
pub use plane_map::{
    compose, degree_ceiling, format_point, normalize_point, PlaneMap, Point, VARS,
};
pub use trace::{FactorizationTrace, LinkState, Step};
pub use verify::{verify_equal, VerifyReport, START_HEIGHT};
