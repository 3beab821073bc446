//! Exact planar primitives.

mod hull;
mod lattice;
mod point;
mod pointset;
mod shadow;

pub use hull::{
    convex_hull, convex_interiors_disjoint, hull_decompose, locate_in_convex, max_side_points, polygon_area2,
    HullDecomposition, Location,
};
pub use lattice::{is_saturated, lattice_of, Lattice2};
pub use point::{
    area2, in_open_segment, on_segment, orientation, segments_conflict, segments_cross, Orientation, Point,
};
pub use pointset::{affine_dim, cover_lines, line_cover_count, minkowski_sum, sumset_size, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("point set is empty")]
    Empty,
    #[error("duplicate point {0}")]
    DuplicatePoint(Point),
    #[error("input must be 2-dimensional, got dimension {dim}")]
    DegenerateInput { dim: u8 },
    #[error("direction must be nonzero")]
    ZeroDirection,
}
pub use shadow::{segment_shadows_disjoint, shadows_disjoint};
