//! Exact birational geometry of rational surfaces: Picard lattices, the
//! surface MMP, plane Cremona maps, log canonical thresholds of plane
//! curve germs, and a handful of numerical bounds for polarized varieties.

pub mod bounds;
pub mod cremona;
pub mod error;
pub mod exact;
pub mod lattice;
mod lp;
pub mod mmp;
pub mod poly;
pub mod sing;

pub use error::{Error, Result};
