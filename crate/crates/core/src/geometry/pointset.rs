use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::point::{area2, Point};
use super::GeometryError;
use crate::rat::Rat;

/// A finite set of distinct planar points, stored in lexicographic order.
///
/// Indices into a `PointSet` refer to this sorted order and are stable for the
/// lifetime of the value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
    dim: u8,
}

impl PointSet {
    /// Builds a set from distinct points; duplicates are an error.
    pub fn new(mut points: Vec<Point>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::Empty);
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::DuplicatePoint(w[0].clone()));
        }
        let dim = affine_dim(&points);
        Ok(PointSet { points, dim })
    }

    /// Builds a set, silently merging repeated points.
    pub fn from_points_dedup<I: IntoIterator<Item = Point>>(iter: I) -> Result<Self, GeometryError> {
        let mut points: Vec<Point> = iter.into_iter().collect();
        points.sort();
        points.dedup();
        PointSet::new(points)
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        PointSet::new(coords.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    /// `{x0..x0+w-1} x {y0..y0+h-1}`.
    pub fn grid(x0: i64, y0: i64, w: i64, h: i64) -> Self {
        let pts = (x0..x0 + w).flat_map(|x| (y0..y0 + h).map(move |y| Point::int(x, y))).collect();
        PointSet::new(pts).expect("grid is nonempty")
    }

    /// `{(t, s) in Z^2 : t, s >= 0, t + s <= k}`.
    pub fn simplex(k: i64) -> Self {
        let pts = (0..=k).flat_map(|t| (0..=k - t).map(move |s| Point::int(t, s))).collect();
        PointSet::new(pts).expect("simplex set is nonempty")
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine dimension: 0, 1 or 2.
    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn translate(&self, t: &Point) -> PointSet {
        // Translation preserves order and distinctness.
        PointSet { points: self.points.iter().map(|p| p + t).collect(), dim: self.dim }
    }

    /// Image under a map that must be injective on this set.
    pub fn map<F: FnMut(&Point) -> Point>(&self, f: F) -> Result<PointSet, GeometryError> {
        PointSet::new(self.points.iter().map(f).collect())
    }

    pub fn with_point(&self, p: Point) -> Result<PointSet, GeometryError> {
        let mut pts = self.points.clone();
        pts.push(p);
        PointSet::new(pts)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet::from_points_dedup(self.points.iter().chain(other.points.iter()).cloned())
            .expect("union of nonempty sets")
    }

    /// Errors unless the set spans the plane.
    pub fn require_planar(&self) -> Result<(), GeometryError> {
        if self.dim < 2 {
            return Err(GeometryError::DegenerateInput { dim: self.dim });
        }
        Ok(())
    }

    pub fn all_integral(&self) -> bool {
        self.points.iter().all(Point::is_integral)
    }
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.points.iter()).finish()
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = GeometryError;
    fn try_from(v: Vec<Point>) -> Result<Self, Self::Error> {
        PointSet::new(v)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(s: PointSet) -> Self {
        s.points
    }
}

/// Affine dimension of a nonempty point list.
pub fn affine_dim(points: &[Point]) -> u8 {
    let Some(p0) = points.first() else { return 0 };
    let Some(p1) = points.iter().find(|p| *p != p0) else { return 0 };
    if points.iter().any(|r| !area2(p0, p1, r).is_zero()) {
        2
    } else {
        1
    }
}

/// `{a + b : a in A, b in B}`.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> PointSet {
    let mut seen: HashSet<Point> = HashSet::with_capacity(a.len() * b.len());
    for p in a.iter() {
        for q in b.iter() {
            seen.insert(p + q);
        }
    }
    PointSet::new(seen.into_iter().collect()).expect("sum of nonempty sets is nonempty")
}

/// `|A + B|`, computed without materialising exact points when coordinates are small integers.
pub fn sumset_size(a: &PointSet, b: &PointSet) -> usize {
    let ai: Option<Vec<(i64, i64)>> = a.iter().map(Point::to_i64).collect();
    let bi: Option<Vec<(i64, i64)>> = b.iter().map(Point::to_i64).collect();
    if let (Some(ai), Some(bi)) = (ai, bi) {
        let bound = ai.iter().chain(bi.iter()).all(|&(x, y)| x.abs() < 1 << 30 && y.abs() < 1 << 30);
        if bound {
            let mut seen: HashSet<(i64, i64)> = HashSet::with_capacity(ai.len() * bi.len());
            for &(x, y) in &ai {
                for &(u, v) in &bi {
                    seen.insert((x + u, y + v));
                }
            }
            return seen.len();
        }
    }
    minkowski_sum(a, b).len()
}

fn line_key(direction: &Point, p: &Point) -> Rat {
    direction.cross(p)
}

/// Groups point indices by the line parallel to `direction` that contains them,
/// in increasing order of the signed offset `direction x p`.
pub fn cover_lines(a: &PointSet, direction: &Point) -> Result<Vec<Vec<usize>>, GeometryError> {
    if direction.is_origin() {
        return Err(GeometryError::ZeroDirection);
    }
    let mut lines: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    for (i, p) in a.iter().enumerate() {
        lines.entry(line_key(direction, p)).or_default().push(i);
    }
    Ok(lines.into_values().collect())
}

/// Number of lines parallel to `direction` needed to cover `A`.
pub fn line_cover_count(a: &PointSet, direction: &Point) -> Result<usize, GeometryError> {
    Ok(cover_lines(a, direction)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_rejected() {
        let err = PointSet::from_ints(&[(0, 0), (1, 1), (0, 0)]).unwrap_err();
        assert!(matches!(err, GeometryError::DuplicatePoint(_)));
    }

    #[test]
    fn dimension() {
        assert_eq!(PointSet::from_ints(&[(1, 1)]).unwrap().dim(), 0);
        assert_eq!(PointSet::from_ints(&[(0, 0), (3, 0), (5, 0)]).unwrap().dim(), 1);
        assert_eq!(PointSet::grid(0, 0, 3, 3).dim(), 2);
    }

    #[test]
    fn sums() {
        let t = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let s = minkowski_sum(&t, &t);
        assert_eq!(s, PointSet::from_ints(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]).unwrap());
        let g = minkowski_sum(&PointSet::grid(0, 0, 3, 3), &PointSet::grid(0, 0, 4, 4));
        assert_eq!(g, PointSet::grid(0, 0, 6, 6));
        let single = PointSet::from_ints(&[(5, -2)]).unwrap();
        let b = PointSet::grid(0, 0, 2, 3);
        assert_eq!(minkowski_sum(&single, &b), b.translate(&Point::int(5, -2)));
        assert_eq!(sumset_size(&PointSet::grid(0, 0, 3, 3), &PointSet::grid(0, 0, 3, 3)), 25);
    }

    #[test]
    fn cover_counts() {
        let g = PointSet::grid(0, 0, 3, 3);
        assert_eq!(line_cover_count(&g, &Point::int(0, 1)).unwrap(), 3);
        assert_eq!(line_cover_count(&g, &Point::int(1, 1)).unwrap(), 5);
        let line = PointSet::from_ints(&[(0, 0), (2, 1), (4, 2)]).unwrap();
        assert_eq!(line_cover_count(&line, &Point::int(2, 1)).unwrap(), 1);
        assert!(matches!(line_cover_count(&g, &Point::origin()), Err(GeometryError::ZeroDirection)));
    }
}
