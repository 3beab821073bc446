//! The self-sum subdivision of `A + A`: for each simplex with vertices `a_0 < ... < a_d` in
//! index order, the cells `[a_0..a_m] + [a_m..a_d]` for `m = 0..=d`. Weights sum to `2^d`
//! per simplex because the cell for `m` has weight `binom(d, m)`.

use std::collections::BTreeMap;

use num_integer::binomial;
use serde::Serialize;

use super::{MixedCell, MixedError, MixedSubdivision};
use crate::geometry::{convex_hull, Point};
use crate::rat::Rat;
use crate::triangulation::Triangulation;

fn staircase_cells(simplex: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut s = simplex.to_vec();
    s.sort_unstable();
    (0..s.len()).map(|m| (s[..=m].to_vec(), s[m..].to_vec())).collect()
}

/// Planar self-sum with `T_B = T_A`; `‖M‖ = 4 |T_A|`.
pub fn self_sum_subdivision(ta: &Triangulation) -> Result<MixedSubdivision, MixedError> {
    ta.validate().map_err(|d| MixedError::InvalidTriangulation(d.to_string()))?;
    let cells = ta.triangles().iter().flat_map(|t| staircase_cells(t)).map(|(f, g)| MixedCell::new(f, g)).collect();
    let m = MixedSubdivision::new(ta.clone(), ta.clone(), cells);
    m.validate().map_err(MixedError::Construction)?;
    Ok(m)
}

/// A pure simplicial complex in `R^dim` given by vertex coordinates and simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    pub dim: usize,
    pub points: Vec<Vec<Rat>>,
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialDefect {
    #[error("point {0} does not have the ambient dimension")]
    WrongDimension(usize),
    #[error("simplex {0} has the wrong number of vertices or repeats one")]
    BadSimplex(usize),
    #[error("simplex {0} references a missing vertex")]
    IndexOutOfRange(usize),
    #[error("simplex {0} is degenerate")]
    Degenerate(usize),
    #[error("vertex {0} is not used")]
    UncoveredVertex(usize),
    #[error("facet {0:?} is shared by more than two simplices")]
    OverfullFacet(Vec<usize>),
    #[error("the simplices on both sides of facet {0:?} overlap")]
    FoldedFacet(Vec<usize>),
    #[error("free facet {0:?} is not on the boundary of the hull")]
    InnerFreeFacet(Vec<usize>),
    #[error("simplex volumes sum to {covered}, hull volume is {hull} (both scaled by 3!)")]
    VolumeMismatch { covered: Rat, hull: Rat },
}

/// Determinant by Gaussian elimination over the rationals.
fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = &d * &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = v;
            }
        }
    }
    d
}

impl SimplicialComplex {
    fn diff(&self, p: usize, o: usize) -> Vec<Rat> {
        self.points[p].iter().zip(&self.points[o]).map(|(x, y)| x - y).collect()
    }

    /// `d!` times the signed volume of the simplex `(base, tip...)`.
    fn signed_volume(&self, base: usize, others: &[usize]) -> Rat {
        det(others.iter().map(|&v| self.diff(v, base)).collect())
    }

    /// Orientation of `x` relative to the hyperplane through `facet`.
    fn side(&self, facet: &[usize], x: usize) -> i32 {
        let mut rows: Vec<Vec<Rat>> = facet[1..].iter().map(|&v| self.diff(v, facet[0])).collect();
        rows.push(self.diff(x, facet[0]));
        det(rows).signum()
    }

    /// Pseudomanifold checks: nondegenerate simplices covering every vertex, each facet shared
    /// by at most two simplices lying on opposite sides, free facets on hull hyperplanes. For
    /// `dim = 3` the simplex volumes must also add up to the hull volume.
    pub fn validate(&self) -> Result<(), SimplicialDefect> {
        let d = self.dim;
        let n = self.points.len();
        if let Some(i) = self.points.iter().position(|p| p.len() != d) {
            return Err(SimplicialDefect::WrongDimension(i));
        }
        let mut used = vec![false; n];
        let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, s) in self.simplices.iter().enumerate() {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != d + 1 {
                return Err(SimplicialDefect::BadSimplex(k));
            }
            if sorted.iter().any(|&v| v >= n) {
                return Err(SimplicialDefect::IndexOutOfRange(k));
            }
            if self.signed_volume(sorted[0], &sorted[1..]).is_zero() {
                return Err(SimplicialDefect::Degenerate(k));
            }
            for &v in &sorted {
                used[v] = true;
            }
            for skip in 0..=d {
                let f: Vec<usize> = sorted.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                facets.entry(f).or_default().push(sorted[skip]);
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(SimplicialDefect::UncoveredVertex(v));
        }
        for (f, apexes) in &facets {
            match apexes[..] {
                [x] => {
                    let s = self.side(f, x);
                    if (0..n).any(|y| self.side(f, y) == -s) {
                        return Err(SimplicialDefect::InnerFreeFacet(f.clone()));
                    }
                }
                [x, y] => {
                    if self.side(f, x) * self.side(f, y) >= 0 {
                        return Err(SimplicialDefect::FoldedFacet(f.clone()));
                    }
                }
                _ => return Err(SimplicialDefect::OverfullFacet(f.clone())),
            }
        }
        if d == 3 {
            let covered: Rat = self.simplices.iter().map(|s| self.signed_volume(s[0], &s[1..]).abs()).sum();
            let hull = self.hull_volume3();
            if covered != hull {
                return Err(SimplicialDefect::VolumeMismatch { covered, hull });
            }
        }
        Ok(())
    }

    /// `3!` times the volume of the convex hull of a 3-dimensional point set, from its
    /// supporting planes.
    fn hull_volume3(&self) -> Rat {
        let n = self.points.len();
        let centroid: Vec<Rat> =
            (0..3).map(|c| self.points.iter().map(|p| p[c].clone()).sum::<Rat>() / Rat::from_int(n as i64)).collect();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        let mut total = Rat::zero();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let tri = [i, j, k];
                    let sides: Vec<i32> = (0..n).map(|x| self.side(&tri, x)).collect();
                    let on: Vec<usize> = (0..n).filter(|&x| sides[x] == 0).collect();
                    // Collinear triples give no plane: every point would be "on" it.
                    if on.len() == n || sides.iter().any(|&s| s > 0) && sides.iter().any(|&s| s < 0) {
                        continue;
                    }
                    if faces.contains(&on) {
                        continue;
                    }
                    faces.push(on.clone());
                    for t in self.fan(&tri, &on) {
                        let rows: Vec<Vec<Rat>> = t
                            .iter()
                            .map(|&v| self.points[v].iter().zip(&centroid).map(|(x, c)| x - c).collect())
                            .collect();
                        total = &total + &det(rows).abs();
                    }
                }
            }
        }
        total
    }

    /// Fan triangulation of the planar face through `on`, ordered by projecting away the
    /// coordinate with the largest normal component.
    fn fan(&self, plane: &[usize; 3], on: &[usize]) -> Vec<[usize; 3]> {
        let u = self.diff(plane[1], plane[0]);
        let v = self.diff(plane[2], plane[0]);
        let normal = [
            &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
            &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
            &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
        ];
        let drop = (0..3).max_by(|&a, &b| normal[a].abs().cmp(&normal[b].abs())).expect("three axes");
        let keep: Vec<usize> = (0..3).filter(|&c| c != drop).collect();
        let proj: Vec<Point> =
            on.iter().map(|&x| Point::new(self.points[x][keep[0]].clone(), self.points[x][keep[1]].clone())).collect();
        let cycle: Vec<usize> =
            convex_hull(&proj).iter().map(|p| on[proj.iter().position(|q| q == p).expect("hull vertex")]).collect();
        (1..cycle.len().saturating_sub(1)).map(|k| [cycle[0], cycle[k], cycle[k + 1]]).collect()
    }
}

/// Self-sum cells of a `d`-dimensional complex as `(F, G)` vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfSumNd {
    pub dim: usize,
    pub cells: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SelfSumNd {
    /// `Σ binom(dim, dim F)`.
    pub fn weight(&self) -> u64 {
        self.cells.iter().map(|(f, _)| binomial(self.dim as u64, (f.len() - 1) as u64)).sum()
    }
}

pub fn self_sum_nd(complex: &SimplicialComplex) -> Result<SelfSumNd, MixedError> {
    complex.validate().map_err(|d| MixedError::InvalidTriangulation(d.to_string()))?;
    let cells = complex.simplices.iter().flat_map(|s| staircase_cells(s)).collect();
    Ok(SelfSumNd { dim: complex.dim, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointSet;
    use crate::triangulation::triangulate;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn planar_counts() {
        let t = triangulate(&PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap()).unwrap();
        let m = self_sum_subdivision(&t).unwrap();
        assert_eq!(m.cells.len(), 3);
        assert_eq!(m.weight(), 4);
        let grid = triangulate(&PointSet::grid(0, 0, 3, 3)).unwrap();
        assert_eq!(self_sum_subdivision(&grid).unwrap().weight(), 32);
    }

    #[test]
    fn tetrahedron() {
        let c = SimplicialComplex {
            dim: 3,
            points: vec![r(&[0, 0, 0]), r(&[1, 0, 0]), r(&[0, 1, 0]), r(&[0, 0, 1])],
            simplices: vec![vec![0, 1, 2, 3]],
        };
        let s = self_sum_nd(&c).unwrap();
        assert_eq!(s.cells.len(), 4);
        assert_eq!(s.weight(), 8);
    }

    #[test]
    fn cube_split_into_six() {
        // The staircase triangulation of the unit cube: one tetrahedron per permutation.
        let mut points = Vec::new();
        for m in 0..8 {
            points.push(r(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]));
        }
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let simplices = perms
            .iter()
            .map(|p| {
                let mut v = vec![0usize];
                let mut cur = 0usize;
                for &axis in p {
                    cur |= 1 << axis;
                    v.push(cur);
                }
                v
            })
            .collect();
        let c = SimplicialComplex { dim: 3, points, simplices };
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(self_sum_nd(&c).unwrap().weight(), 48);
        let mut missing = c.clone();
        missing.simplices.pop();
        assert!(missing.validate().is_err());
        let mut doubled = c.clone();
        doubled.simplices.push(c.simplices[0].clone());
        // Each facet of the repeated tetrahedron sees the same apex twice.
        assert!(matches!(
            doubled.validate(),
            Err(SimplicialDefect::FoldedFacet(_) | SimplicialDefect::OverfullFacet(_))
        ));
    }

    #[test]
    fn overlapping_tetrahedra_rejected() {
        let c = SimplicialComplex {
            dim: 3,
            points: vec![r(&[0, 0, 0]), r(&[2, 0, 0]), r(&[0, 2, 0]), r(&[0, 0, 2]), r(&[1, 1, 1])],
            simplices: vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]],
        };
        assert!(matches!(c.validate(), Err(SimplicialDefect::FoldedFacet(_))));
    }
}
