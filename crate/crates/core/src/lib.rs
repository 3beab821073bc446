//! Exact computation of triangulation counts, mixed subdivisions and sumset
//! bounds for finite planar point sets.

pub mod geometry;
pub mod harness;
pub mod io;
pub mod mixed;
pub mod rat;
pub mod sumset;
pub mod svg;
pub mod triangulation;

pub use geometry::{Point, PointSet};
pub use rat::Rat;
