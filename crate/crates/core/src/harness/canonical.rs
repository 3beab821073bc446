//! Canonical forms under the eight symmetries of the square lattice and translation.

use crate::geometry::{Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("canonical forms need integer coordinates, got {0}")]
pub struct NonIntegerInput(pub Point);

type Symmetry = fn(i64, i64) -> (i64, i64);

/// The dihedral group of the square acting on integer vectors.
const SYMMETRIES: [Symmetry; 8] = [
    |x, y| (x, y),
    |x, y| (-x, y),
    |x, y| (x, -y),
    |x, y| (-x, -y),
    |x, y| (y, x),
    |x, y| (-y, x),
    |x, y| (y, -x),
    |x, y| (-y, -x),
];

fn integer_coords(a: &PointSet) -> Result<Vec<(i64, i64)>, NonIntegerInput> {
    a.iter().map(|p| p.to_i64().ok_or_else(|| NonIntegerInput(p.clone()))).collect()
}

/// Image under `g`, translated so the bounding box starts at the origin, sorted.
fn normalized(pts: &[(i64, i64)], g: fn(i64, i64) -> (i64, i64)) -> Vec<(i64, i64)> {
    let mut img: Vec<(i64, i64)> = pts.iter().map(|&(x, y)| g(x, y)).collect();
    let x0 = img.iter().map(|p| p.0).min().expect("nonempty");
    let y0 = img.iter().map(|p| p.1).min().expect("nonempty");
    for p in &mut img {
        *p = (p.0 - x0, p.1 - y0);
    }
    img.sort_unstable();
    img
}

fn to_set(pts: &[(i64, i64)]) -> PointSet {
    PointSet::from_ints(pts).expect("images of distinct points are distinct")
}

/// Lexicographically least image of `a` over the symmetry group, with the bounding box
/// translated to the origin.
pub fn canonicalize(a: &PointSet) -> Result<PointSet, NonIntegerInput> {
    let pts = integer_coords(a)?;
    let best = SYMMETRIES.iter().map(|&g| normalized(&pts, g)).min().expect("group is nonempty");
    Ok(to_set(&best))
}

/// Canonical form of a pair: one symmetry applied to both sets, each translated on its own.
/// Sum invariants such as `tr(A + B)` do not change under this action.
pub fn canonicalize_pair(a: &PointSet, b: &PointSet) -> Result<(PointSet, PointSet), NonIntegerInput> {
    let (pa, pb) = (integer_coords(a)?, integer_coords(b)?);
    let (ca, cb) =
        SYMMETRIES.iter().map(|&g| (normalized(&pa, g), normalized(&pb, g))).min().expect("group is nonempty");
    Ok((to_set(&ca), to_set(&cb)))
}
