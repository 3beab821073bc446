//! Planar mixed subdivisions of `[A + B]` and the constructions that produce them.

mod convex;
mod counterexample;
mod format;
mod selfsum;
mod star;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::geometry::{
    convex_hull, convex_interiors_disjoint, in_open_segment, polygon_area2, GeometryError, Point, PointSet,
};
use crate::rat::Rat;
use crate::triangulation::{Triangulation, TriangulationError};

pub use convex::{convex_position_mixed, is_convex_position, is_strange_pair, staircase_mixed};
pub use counterexample::{build_counterexample, verify_counterexample_structure, Counterexample};
pub use format::{parse_mixed, ParseMixedError};
pub use selfsum::{self_sum_nd, self_sum_subdivision, SelfSumNd, SimplicialComplex, SimplicialDefect};
pub use star::{find_proper_star, mixed_from_star, triangle_mixed, validate_star, ProperStar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("invalid proper star: {0}")]
    InvalidStar(String),
    #[error("star edge ({0}, {1}) is not an edge of the triangulation")]
    StarEdgesNotInTriangulation(usize, usize),
    #[error("no proper star reaches the bound (best total length {best}, {triangles} triangles)")]
    SearchFailed { best: usize, triangles: usize },
    #[error("point set is not in convex position")]
    NotConvexPosition,
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("constructed subdivision is invalid: {0}")]
    Construction(MixedDefect),
}

/// A cell `F + G` with `F` a face of `T_A` and `G` a face of `T_B`, both as sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MixedCell {
    pub a_face: Vec<usize>,
    pub b_face: Vec<usize>,
}

impl MixedCell {
    pub fn new(mut a_face: Vec<usize>, mut b_face: Vec<usize>) -> Self {
        a_face.sort_unstable();
        b_face.sort_unstable();
        MixedCell { a_face, b_face }
    }

    /// `(dim F, dim G)`.
    pub fn kind(&self) -> (usize, usize) {
        (self.a_face.len().saturating_sub(1), self.b_face.len().saturating_sub(1))
    }

    pub fn is_parallelogram(&self) -> bool {
        self.kind() == (1, 1)
    }

    /// Binomial weight of a 2-cell: 2 for a parallelogram, 1 for a translated triangle.
    pub fn weight(&self) -> usize {
        if self.is_parallelogram() {
            2
        } else {
            1
        }
    }
}

/// First failed invariant of a mixed subdivision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MixedDefect {
    IndexOutOfRange { cell: usize },
    NotTwoDimensional { cell: usize },
    NotAFace { cell: usize },
    DegenerateCell { cell: usize },
    UniquenessViolated { triangle: usize, side: char, count: usize },
    TilingGap { covered: Rat, hull: Rat },
    Overlap { first: usize, second: usize },
    ImproperFaceIntersection { cell: usize, other: usize },
}

impl fmt::Display for MixedDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedDefect::IndexOutOfRange { cell } => write!(f, "cell {cell}: index out of range"),
            MixedDefect::NotTwoDimensional { cell } => write!(f, "cell {cell}: not two-dimensional"),
            MixedDefect::NotAFace { cell } => write!(f, "cell {cell}: summand is not a face of its triangulation"),
            MixedDefect::DegenerateCell { cell } => write!(f, "cell {cell}: degenerate"),
            MixedDefect::UniquenessViolated { triangle, side, count } => {
                write!(f, "uniqueness (ii) violated: triangle {triangle} of T_{side} appears {count} times")
            }
            MixedDefect::TilingGap { covered, hull } => write!(f, "tiling gap: cells cover {covered}, hull has {hull}"),
            MixedDefect::Overlap { first, second } => write!(f, "overlapping cells {first} and {second}"),
            MixedDefect::ImproperFaceIntersection { cell, other } => {
                write!(f, "improper face intersection between cells {cell} and {other}")
            }
        }
    }
}

/// A planar mixed subdivision with its two triangulations. Areas are doubled throughout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedSubdivision {
    pub ta: Triangulation,
    pub tb: Triangulation,
    pub cells: Vec<MixedCell>,
}

impl MixedSubdivision {
    pub fn new(ta: Triangulation, tb: Triangulation, cells: Vec<MixedCell>) -> Self {
        MixedSubdivision { ta, tb, cells }
    }

    pub fn a(&self) -> &PointSet {
        self.ta.base()
    }

    pub fn b(&self) -> &PointSet {
        self.tb.base()
    }

    pub fn m11(&self) -> usize {
        self.cells.iter().filter(|c| c.is_parallelogram()).count()
    }

    pub fn weight(&self) -> usize {
        self.cells.iter().map(MixedCell::weight).sum()
    }

    /// Counterclockwise vertices of a cell.
    pub fn polygon(&self, cell: &MixedCell) -> Vec<Point> {
        let sums: Vec<Point> = cell
            .a_face
            .iter()
            .flat_map(|&i| cell.b_face.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.a().get(i) + self.b().get(j))
            .collect();
        convex_hull(&sums)
    }

    /// Swaps the roles of the two summands.
    pub fn swapped(self) -> MixedSubdivision {
        let cells = self.cells.into_iter().map(|c| MixedCell { a_face: c.b_face, b_face: c.a_face }).collect();
        MixedSubdivision { ta: self.tb, tb: self.ta, cells }
    }

    /// Checks every invariant exactly and names the first failure.
    pub fn validate(&self) -> Result<(), MixedDefect> {
        self.check_cells()?;
        self.check_uniqueness()?;
        let polys: Vec<Vec<Point>> = self.cells.iter().map(|c| self.polygon(c)).collect();
        let covered: Rat = polys.iter().map(|p| polygon_area2(p)).sum();
        let sum_hull = {
            let ha = convex_hull(self.a().points());
            let hb = convex_hull(self.b().points());
            let sums: Vec<Point> = ha.iter().flat_map(|p| hb.iter().map(move |q| p + q)).collect();
            polygon_area2(&convex_hull(&sums))
        };
        if covered < sum_hull {
            return Err(MixedDefect::TilingGap { covered, hull: sum_hull });
        }
        let boxes: Vec<BBox> = polys.iter().map(|p| BBox::of(p)).collect();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if boxes[i].overlaps_open(&boxes[j]) && !convex_interiors_disjoint(&polys[i], &polys[j]) {
                    return Err(MixedDefect::Overlap { first: i, second: j });
                }
            }
        }
        if covered != sum_hull {
            return Err(MixedDefect::TilingGap { covered, hull: sum_hull });
        }
        // With interiors disjoint and the hull covered, the cells meet face to face iff no
        // vertex of one cell lies inside an edge of another.
        for (i, poly) in polys.iter().enumerate() {
            for (j, other) in polys.iter().enumerate() {
                if i == j || !boxes[i].overlaps_closed(&boxes[j]) {
                    continue;
                }
                for v in poly {
                    if !boxes[j].contains(v) {
                        continue;
                    }
                    let n = other.len();
                    if (0..n).any(|e| in_open_segment(v, &other[e], &other[(e + 1) % n])) {
                        return Err(MixedDefect::ImproperFaceIntersection { cell: i, other: j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn check_cells(&self) -> Result<(), MixedDefect> {
        let (na, nb) = (self.a().len(), self.b().len());
        let a_faces = FaceIndex::new(&self.ta);
        let b_faces = FaceIndex::new(&self.tb);
        for (k, c) in self.cells.iter().enumerate() {
            if c.a_face.is_empty() || c.b_face.is_empty() {
                return Err(MixedDefect::IndexOutOfRange { cell: k });
            }
            if c.a_face.iter().any(|&i| i >= na) || c.b_face.iter().any(|&j| j >= nb) {
                return Err(MixedDefect::IndexOutOfRange { cell: k });
            }
            let (i, j) = c.kind();
            if i + j != 2 {
                return Err(MixedDefect::NotTwoDimensional { cell: k });
            }
            if !a_faces.contains(&c.a_face) || !b_faces.contains(&c.b_face) {
                return Err(MixedDefect::NotAFace { cell: k });
            }
            if c.is_parallelogram() {
                let e = self.a().get(c.a_face[1]) - self.a().get(c.a_face[0]);
                let f = self.b().get(c.b_face[1]) - self.b().get(c.b_face[0]);
                if e.cross(&f).is_zero() {
                    return Err(MixedDefect::DegenerateCell { cell: k });
                }
            }
        }
        Ok(())
    }

    fn check_uniqueness(&self) -> Result<(), MixedDefect> {
        for (side, t, pick) in [
            ('A', &self.ta, (|c: &MixedCell| &c.a_face) as fn(&MixedCell) -> &Vec<usize>),
            ('B', &self.tb, |c: &MixedCell| &c.b_face),
        ] {
            let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for c in &self.cells {
                let f = pick(c);
                if f.len() == 3 {
                    *count.entry(f.clone()).or_default() += 1;
                }
            }
            for (k, tri) in t.triangles().iter().enumerate() {
                let mut key = tri.to_vec();
                key.sort_unstable();
                let n = count.get(&key).copied().unwrap_or(0);
                if n != 1 {
                    return Err(MixedDefect::UniquenessViolated { triangle: k, side, count: n });
                }
            }
        }
        Ok(())
    }

    /// Splits each parallelogram along a diagonal: `weight()` triangles that tile `[A + B]`.
    pub fn refine(&self) -> Vec<[Point; 3]> {
        let mut out = Vec::new();
        for c in &self.cells {
            let p = self.polygon(c);
            for k in 1..p.len() - 1 {
                out.push([p[0].clone(), p[k].clone(), p[k + 1].clone()]);
            }
        }
        out
    }
}

impl fmt::Display for MixedSubdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::to_text(self))
    }
}

/// Sorted faces (vertices, edges, triangles) of a triangulation.
struct FaceIndex {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    triangles: BTreeSet<[usize; 3]>,
}

impl FaceIndex {
    fn new(t: &Triangulation) -> Self {
        let triangles = t
            .triangles()
            .iter()
            .map(|tri| {
                let mut s = *tri;
                s.sort_unstable();
                s
            })
            .collect();
        FaceIndex { n: t.base().len(), edges: t.edges().into_iter().collect(), triangles }
    }

    fn contains(&self, face: &[usize]) -> bool {
        match *face {
            [i] => i < self.n,
            [i, j] => self.edges.contains(&(i, j)),
            [i, j, k] => self.triangles.contains(&[i, j, k]),
            _ => false,
        }
    }
}

struct BBox {
    x0: Rat,
    x1: Rat,
    y0: Rat,
    y1: Rat,
}

impl BBox {
    fn of(p: &[Point]) -> Self {
        let mut b = BBox { x0: p[0].x.clone(), x1: p[0].x.clone(), y0: p[0].y.clone(), y1: p[0].y.clone() };
        for q in &p[1..] {
            if q.x < b.x0 {
                b.x0 = q.x.clone();
            }
            if q.x > b.x1 {
                b.x1 = q.x.clone();
            }
            if q.y < b.y0 {
                b.y0 = q.y.clone();
            }
            if q.y > b.y1 {
                b.y1 = q.y.clone();
            }
        }
        b
    }

    fn overlaps_open(&self, o: &BBox) -> bool {
        self.x0 < o.x1 && o.x0 < self.x1 && self.y0 < o.y1 && o.y0 < self.y1
    }

    fn overlaps_closed(&self, o: &BBox) -> bool {
        self.x0 <= o.x1 && o.x0 <= self.x1 && self.y0 <= o.y1 && o.y0 <= self.y1
    }

    fn contains(&self, p: &Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }
}
