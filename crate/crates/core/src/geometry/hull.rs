use serde::Serialize;

use super::point::{area2, on_segment, Point};
use super::pointset::PointSet;
use super::GeometryError;
use crate::rat::Rat;

/// Where a point sits relative to a closed convex region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Strict convex hull vertices (no collinear points), counterclockwise from the
/// lexicographic minimum. Collinear or smaller inputs yield their extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<&Point> = points.iter().collect();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().cloned().collect();
    }
    let mut lower: Vec<&Point> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && !area2(lower[lower.len() - 2], lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !area2(upper[upper.len() - 2], upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().cloned().collect()
}

/// Location of `p` relative to the convex polygon with CCW vertices `poly` (at least 3).
pub fn locate_in_convex(poly: &[Point], p: &Point) -> Location {
    let n = poly.len();
    let mut on_edge = false;
    for i in 0..n {
        match area2(&poly[i], &poly[(i + 1) % n], p).signum() {
            -1 => return Location::Exterior,
            0 => on_edge = true,
            _ => {}
        }
    }
    if on_edge {
        Location::Boundary
    } else {
        Location::Interior
    }
}

/// Twice the area of a simple polygon with CCW vertices.
pub fn polygon_area2(poly: &[Point]) -> Rat {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(&poly[(i + 1) % n])).sum()
}

/// The interiors of two convex polygons (CCW vertex lists, at least 3 vertices each) are disjoint.
///
/// Separating-axis test over the edge lines of both polygons.
pub fn convex_interiors_disjoint(p: &[Point], q: &[Point]) -> bool {
    separated_by_edge_of(p, q) || separated_by_edge_of(q, p)
}

fn separated_by_edge_of(p: &[Point], q: &[Point]) -> bool {
    let n = p.len();
    (0..n).any(|i| {
        let (u, v) = (&p[i], &p[(i + 1) % n]);
        q.iter().all(|x| !area2(u, v, x).is_positive())
    })
}

/// Partition of a planar point set into hull boundary and interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullDecomposition {
    /// Strict hull vertices, CCW from the lexicographic minimum.
    pub vertices: Vec<Point>,
    /// Every point of the set on the hull boundary, in CCW cyclic order starting at `vertices[0]`.
    pub boundary: Vec<Point>,
    /// Remaining points, in lexicographic order.
    pub interior: Vec<Point>,
}

impl HullDecomposition {
    pub fn delta(&self) -> usize {
        self.boundary.len()
    }

    pub fn omega(&self) -> usize {
        self.interior.len()
    }

    pub fn locate(&self, p: &Point) -> Location {
        locate_in_convex(&self.vertices, p)
    }

    /// Twice the hull area.
    pub fn area2(&self) -> Rat {
        polygon_area2(&self.vertices)
    }

    /// Hull edges as `(start, end)` vertex pairs in CCW order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// For each hull edge, the set points on it in CCW order, both endpoints included.
    pub fn sides(&self) -> Vec<Vec<Point>> {
        let n = self.boundary.len();
        let starts: Vec<usize> = self
            .vertices
            .iter()
            .map(|v| self.boundary.iter().position(|b| b == v).expect("vertex on boundary"))
            .collect();
        let h = starts.len();
        (0..h)
            .map(|k| {
                let s = starts[k];
                let e = if k + 1 == h { n } else { starts[k + 1] };
                (s..=e).map(|i| self.boundary[i % n].clone()).collect()
            })
            .collect()
    }

    pub fn is_boundary(&self, p: &Point) -> bool {
        self.boundary.contains(p)
    }
}

/// Splits a 2-dimensional set into boundary and interior points of its hull.
pub fn hull_decompose(a: &PointSet) -> Result<HullDecomposition, GeometryError> {
    a.require_planar()?;
    let vertices = convex_hull(a.points());
    let h = vertices.len();
    let mut on_boundary = vec![false; a.len()];
    let mut boundary = Vec::new();
    for k in 0..h {
        let (u, v) = (&vertices[k], &vertices[(k + 1) % h]);
        let dir = v - u;
        let mut side: Vec<(Rat, usize)> = a
            .iter()
            .enumerate()
            .filter(|(_, p)| *p != v && on_segment(p, u, v))
            .map(|(i, p)| ((p - u).dot(&dir), i))
            .collect();
        side.sort();
        for (_, i) in side {
            on_boundary[i] = true;
            boundary.push(a.get(i).clone());
        }
    }
    let interior = a.iter().zip(&on_boundary).filter(|(_, b)| !**b).map(|(p, _)| p.clone()).collect();
    Ok(HullDecomposition { vertices, boundary, interior })
}

/// Largest number of points of `A` on a single hull side.
pub fn max_side_points(a: &PointSet) -> Result<usize, GeometryError> {
    let hull = hull_decompose(a)?;
    Ok(hull.sides().iter().map(Vec::len).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_boundary(a: &PointSet) -> Vec<bool> {
        // A point is on the boundary iff some line through two points of the set
        // contains it and leaves the whole set in one closed half-plane.
        a.iter()
            .map(|p| {
                a.iter().any(|q| {
                    a.iter().any(|r| {
                        q != r
                            && on_segment(p, q, r)
                            && (a.iter().all(|x| !area2(q, r, x).is_negative())
                                || a.iter().all(|x| !area2(q, r, x).is_positive()))
                    })
                })
            })
            .collect()
    }

    #[test]
    fn grid_and_triangle() {
        let h = hull_decompose(&PointSet::grid(0, 0, 3, 3)).unwrap();
        assert_eq!((h.delta(), h.omega()), (8, 1));
        assert_eq!(h.vertices, vec![Point::int(0, 0), Point::int(2, 0), Point::int(2, 2), Point::int(0, 2)]);
        let t = PointSet::from_ints(&[(0, 0), (4, 0), (0, 4), (1, 1)]).unwrap();
        let h = hull_decompose(&t).unwrap();
        assert_eq!((h.delta(), h.omega()), (3, 1));
        let c = PointSet::from_ints(&[(0, 0), (2, 0), (4, 0), (0, 3)]).unwrap();
        let h = hull_decompose(&c).unwrap();
        assert_eq!((h.delta(), h.omega()), (4, 0));
        assert_eq!(h.boundary[1], Point::int(2, 0));
    }

    #[test]
    fn interiors() {
        let t = |c: &[(i64, i64)]| c.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>();
        let a = t(&[(0, 0), (2, 0), (0, 2)]);
        assert!(convex_interiors_disjoint(&a, &t(&[(2, 0), (2, 2), (0, 2)])));
        assert!(!convex_interiors_disjoint(&a, &t(&[(1, 0), (3, 0), (1, 2)])));
        assert!(convex_interiors_disjoint(&a, &t(&[(5, 5), (6, 5), (5, 6)])));
        assert!(!convex_interiors_disjoint(&a, &a));
    }

    #[test]
    fn degenerate_rejected() {
        let l = PointSet::from_ints(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(matches!(hull_decompose(&l), Err(GeometryError::DegenerateInput { dim: 1 })));
    }

    #[test]
    fn side_counts() {
        assert_eq!(max_side_points(&PointSet::grid(0, 0, 3, 3)).unwrap(), 3);
        let t = PointSet::from_ints(&[(0, 0), (2, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(max_side_points(&t).unwrap(), 3);
        let hex = PointSet::from_ints(&[(0, 0), (2, 0), (3, 1), (2, 3), (0, 2), (-1, 1)]).unwrap();
        assert_eq!(max_side_points(&hex).unwrap(), 2);
    }

    proptest! {
        #[test]
        fn matches_brute_force(pts in proptest::collection::btree_set((0i64..6, 0i64..6), 3..=12)) {
            let v: Vec<(i64, i64)> = pts.into_iter().collect();
            let a = PointSet::from_ints(&v).unwrap();
            prop_assume!(a.dim() == 2);
            let h = hull_decompose(&a).unwrap();
            let brute = brute_boundary(&a);
            for (p, b) in a.iter().zip(brute) {
                prop_assert_eq!(h.is_boundary(p), b);
            }
            prop_assert_eq!(h.delta() + h.omega(), a.len());
            for v in &h.vertices {
                prop_assert!(h.is_boundary(v));
            }
        }
    }
}
