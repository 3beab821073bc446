//! Triangulations of `[A]` that use every point of `A` as a vertex.

mod build;
mod paths;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::geometry::{
    area2, convex_interiors_disjoint, hull_decompose, in_open_segment, locate_in_convex, GeometryError, Location,
    Point, PointSet,
};
use crate::rat::Rat;

pub use build::{constrained_triangulation, triangulate};
pub use paths::{find_hv_path, hv_bound_met, longest_transversal_path, validate_hv_path, HvPath};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("edge ({0}, {1}) is not flippable")]
    NotFlippable(usize, usize),
    #[error("constraint segments ({0}, {1}) and ({2}, {3}) conflict")]
    ConflictingConstraints(usize, usize, usize, usize),
    #[error("constraint segment ({0}, {1}) passes through another point")]
    BlockedConstraint(usize, usize),
}

/// First violated condition found by [`Triangulation::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TriangulationDefect {
    IndexOutOfRange { triangle: usize },
    DegenerateTriangle { triangle: usize },
    UncoveredVertex { point: usize },
    PointInsideTriangle { point: usize, triangle: usize },
    ImproperFaceIntersection { point: usize, triangle: usize },
    Overlap { first: usize, second: usize },
    AreaMismatch { covered: Rat, hull: Rat },
    NotPlanar,
}

impl fmt::Display for TriangulationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::IndexOutOfRange { triangle } => write!(f, "index out of range in triangle {triangle}"),
            Self::DegenerateTriangle { triangle } => write!(f, "degenerate triangle {triangle}"),
            Self::UncoveredVertex { point } => write!(f, "uncovered vertex {point}"),
            Self::PointInsideTriangle { point, triangle } => {
                write!(f, "point {point} inside triangle {triangle}")
            }
            Self::ImproperFaceIntersection { point, triangle } => {
                write!(f, "improper face intersection: point {point} on an edge of triangle {triangle}")
            }
            Self::Overlap { first, second } => write!(f, "overlapping triangles {first} and {second}"),
            Self::AreaMismatch { covered, hull } => write!(f, "area mismatch: covered {covered}, hull {hull}"),
            Self::NotPlanar => write!(f, "base set is not 2-dimensional"),
        }
    }
}

/// Triangles over an index set; each triple is stored counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    base: PointSet,
    triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Wraps triangles without validation; non-degenerate triples are reoriented counterclockwise.
    pub fn new(base: PointSet, triangles: Vec<[usize; 3]>) -> Self {
        let n = base.len();
        let triangles = triangles
            .into_iter()
            .map(|t| {
                if t.iter().all(|&i| i < n) && area2(base.get(t[0]), base.get(t[1]), base.get(t[2])).is_negative() {
                    [t[0], t[2], t[1]]
                } else {
                    t
                }
            })
            .collect();
        Triangulation { base, triangles }
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, t: usize) -> [Point; 3] {
        self.triangles[t].map(|i| self.base.get(i).clone())
    }

    /// Undirected edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.into_iter().collect()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.triangles.iter().any(|t| t.contains(&i) && t.contains(&j) && i != j)
    }

    /// Checks every triangulation invariant exactly; reports the first failure.
    pub fn validate(&self) -> Result<(), TriangulationDefect> {
        let n = self.base.len();
        if self.base.dim() < 2 {
            return Err(TriangulationDefect::NotPlanar);
        }
        let mut covered = vec![false; n];
        for (k, t) in self.triangles.iter().enumerate() {
            if t.iter().any(|&i| i >= n) {
                return Err(TriangulationDefect::IndexOutOfRange { triangle: k });
            }
            let [a, b, c] = self.corners(k);
            if !area2(&a, &b, &c).is_positive() {
                return Err(TriangulationDefect::DegenerateTriangle { triangle: k });
            }
            for &i in t {
                covered[i] = true;
            }
        }
        if let Some(point) = covered.iter().position(|c| !c) {
            return Err(TriangulationDefect::UncoveredVertex { point });
        }
        let corners: Vec<[Point; 3]> = (0..self.triangles.len()).map(|k| self.corners(k)).collect();
        for (k, tri) in corners.iter().enumerate() {
            for (i, p) in self.base.iter().enumerate() {
                if self.triangles[k].contains(&i) {
                    continue;
                }
                match locate_in_convex(tri, p) {
                    Location::Interior => {
                        return Err(TriangulationDefect::PointInsideTriangle { point: i, triangle: k })
                    }
                    Location::Boundary => {
                        if (0..3).any(|e| in_open_segment(p, &tri[e], &tri[(e + 1) % 3])) {
                            return Err(TriangulationDefect::ImproperFaceIntersection { point: i, triangle: k });
                        }
                    }
                    Location::Exterior => {}
                }
            }
        }
        let boxes: Vec<(Rat, Rat, Rat, Rat)> = corners.iter().map(bbox).collect();
        for i in 0..corners.len() {
            for j in i + 1..corners.len() {
                let (a, b) = (&boxes[i], &boxes[j]);
                if a.1 <= b.0 || b.1 <= a.0 || a.3 <= b.2 || b.3 <= a.2 {
                    continue;
                }
                if !convex_interiors_disjoint(&corners[i], &corners[j]) {
                    return Err(TriangulationDefect::Overlap { first: i, second: j });
                }
            }
        }
        let covered: Rat = corners.iter().map(|t| area2(&t[0], &t[1], &t[2])).sum();
        let hull = hull_decompose(&self.base).expect("planar base").area2();
        if covered != hull {
            return Err(TriangulationDefect::AreaMismatch { covered, hull });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Replaces the diagonal `(u, v)` of a strictly convex quadrilateral by the other diagonal.
    pub fn edge_flip(&self, u: usize, v: usize) -> Result<Triangulation, TriangulationError> {
        let owners: Vec<usize> = (0..self.triangles.len())
            .filter(|&k| self.triangles[k].contains(&u) && self.triangles[k].contains(&v))
            .collect();
        let [t1, t2] = owners[..] else {
            return Err(TriangulationError::NotFlippable(u, v));
        };
        let apex =
            |k: usize| *self.triangles[k].iter().find(|&&i| i != u && i != v).expect("triangle has a third vertex");
        let (w1, w2) = (apex(t1), apex(t2));
        let p = |i: usize| self.base.get(i);
        if !crate::geometry::segments_cross(p(u), p(v), p(w1), p(w2)) {
            return Err(TriangulationError::NotFlippable(u, v));
        }
        let mut triangles: Vec<[usize; 3]> =
            self.triangles.iter().enumerate().filter(|(k, _)| *k != t1 && *k != t2).map(|(_, t)| *t).collect();
        triangles.push([w1, w2, u]);
        triangles.push([w1, w2, v]);
        Ok(Triangulation::new(self.base.clone(), triangles))
    }

    /// `A ∪ {midpoints of edges}`.
    pub fn midpoint_set(&self) -> PointSet {
        let mids = self.edges().into_iter().map(|(i, j)| self.base.get(i).midpoint(self.base.get(j)));
        PointSet::from_points_dedup(self.base.iter().cloned().chain(mids)).expect("nonempty")
    }
}

fn bbox(t: &[Point; 3]) -> (Rat, Rat, Rat, Rat) {
    let xs = t.iter().map(|p| &p.x);
    let ys = t.iter().map(|p| &p.y);
    (
        xs.clone().min().expect("3 points").clone(),
        xs.max().expect("3 points").clone(),
        ys.clone().min().expect("3 points").clone(),
        ys.max().expect("3 points").clone(),
    )
}

/// `tr(A) = 2|A| - Δ_A - 2`.
pub fn tr(a: &PointSet) -> Result<usize, GeometryError> {
    let hull = hull_decompose(a)?;
    Ok(2 * a.len() - hull.delta() - 2)
}
