//! Constructions for summands in convex position.
//!
//! The staircase construction works for any pair: for a direction `d` in general position,
//! `a1` maximizes `<d, .>` on `A` and `b0` minimizes it on `B`. The cells `T_A + b0` and
//! `a1 + T_B` touch at `a1 + b0`, and the two gaps between them and `∂[A + B]` are tiled by
//! the parallelograms of a merge of boundary edges: one per pair of edges whose order along
//! the boundary of `[A + B]` is inverted.

use std::cmp::Ordering;

use super::star::search_stars;
use super::{mixed_from_star, triangle_mixed, MixedCell, MixedError, MixedSubdivision};
use crate::geometry::{convex_hull, hull_decompose, on_segment, GeometryError, Point, PointSet};
use crate::triangulation::{constrained_triangulation, triangulate, Triangulation};

/// Angular order of nonzero vectors starting from the positive x-axis.
fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    let half = |p: &Point| if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) { 0 } else { 1 };
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&u.cross(v).signum()))
}

/// Outward normals of the hull edges of `a`.
fn edge_normals(a: &PointSet) -> Vec<Point> {
    let h = convex_hull(a.points());
    (0..h.len())
        .map(|i| {
            let e = &h[(i + 1) % h.len()] - &h[i];
            Point::new(e.y.clone(), -e.x.clone())
        })
        .collect()
}

fn same_direction(u: &Point, v: &Point) -> bool {
    u.cross(v).is_zero() && u.dot(v).is_positive()
}

/// One direction strictly inside each open arc between consecutive edge normals of `[A]`
/// and `[B]` and their negatives, so that both extremes of every direction are unique;
/// within an arc the staircase construction does not change.
fn scan_directions(a: &PointSet, b: &PointSet) -> Vec<Point> {
    let mut normals: Vec<Point> = edge_normals(a).into_iter().chain(edge_normals(b)).collect();
    let negated: Vec<Point> = normals.iter().map(|n| -n).collect();
    normals.extend(negated);
    normals.sort_by(angle_cmp);
    normals.dedup_by(|x, y| same_direction(x, y));
    let n = normals.len();
    (0..n).map(|i| &normals[i] + &normals[(i + 1) % n]).collect()
}

/// Boundary cycle of `a` as indices, counterclockwise.
fn boundary_cycle(a: &PointSet) -> Result<Vec<usize>, GeometryError> {
    let hull = hull_decompose(a)?;
    Ok(hull.boundary.iter().map(|p| a.index_of(p).expect("boundary point of the set")).collect())
}

/// The counterclockwise and clockwise boundary chains from the minimizer to the maximizer
/// of `<d, .>`. Requires both extremes to be unique.
fn chains(a: &PointSet, d: &Point) -> Result<(Vec<usize>, Vec<usize>), GeometryError> {
    let cyc = boundary_cycle(a)?;
    let h = |i: usize| a.get(cyc[i]).dot(d);
    let n = cyc.len();
    let lo = (0..n).min_by(|&i, &j| h(i).cmp(&h(j))).expect("nonempty");
    let hi = (0..n).max_by(|&i, &j| h(i).cmp(&h(j))).expect("nonempty");
    let ccw: Vec<usize> = (0..n).map(|k| cyc[(lo + k) % n]).collect();
    let split = (hi + n - lo) % n;
    let forward = ccw[..=split].to_vec();
    let mut backward: Vec<usize> = ccw[split..].to_vec();
    backward.push(ccw[0]);
    backward.reverse();
    Ok((forward, backward))
}

/// Parallelograms between the chain of `A` followed by the chain of `B` and their merge.
/// `sign` is the sign of `cross(e, f)` marking an inverted pair.
fn gap_cells(a: &PointSet, ca: &[usize], b: &PointSet, cb: &[usize], sign: i32, out: &mut Vec<MixedCell>) {
    for ea in ca.windows(2) {
        let e = a.get(ea[1]) - a.get(ea[0]);
        for eb in cb.windows(2) {
            let f = b.get(eb[1]) - b.get(eb[0]);
            if e.cross(&f).signum() == sign {
                out.push(MixedCell::new(ea.to_vec(), eb.to_vec()));
            }
        }
    }
}

fn unique_extremes(a: &PointSet, d: &Point) -> bool {
    let h: Vec<_> = a.iter().map(|p| p.dot(d)).collect();
    let max = h.iter().max().expect("nonempty");
    let min = h.iter().min().expect("nonempty");
    h.iter().filter(|x| *x == max).count() == 1 && h.iter().filter(|x| *x == min).count() == 1
}

/// The staircase subdivision for direction `d`; `d` must have unique extremes on both sets.
pub fn staircase_mixed(ta: &Triangulation, tb: &Triangulation, d: &Point) -> Result<MixedSubdivision, MixedError> {
    let (a, b) = (ta.base(), tb.base());
    if !unique_extremes(a, d) || !unique_extremes(b, d) {
        return Err(GeometryError::ZeroDirection.into());
    }
    let (a_low, a_up) = chains(a, d)?;
    let (b_low, b_up) = chains(b, d)?;
    let a1 = *a_low.last().expect("nonempty");
    let b0 = b_low[0];
    let mut cells: Vec<MixedCell> = ta.triangles().iter().map(|t| MixedCell::new(t.to_vec(), vec![b0])).collect();
    cells.extend(tb.triangles().iter().map(|t| MixedCell::new(vec![a1], t.to_vec())));
    gap_cells(a, &a_low, b, &b_low, -1, &mut cells);
    gap_cells(a, &a_up, b, &b_up, 1, &mut cells);
    let m = MixedSubdivision::new(ta.clone(), tb.clone(), cells);
    m.validate().map_err(MixedError::Construction)?;
    Ok(m)
}

fn staircase_count(a: &PointSet, b: &PointSet, d: &Point) -> Result<usize, GeometryError> {
    let (a_low, a_up) = chains(a, d)?;
    let (b_low, b_up) = chains(b, d)?;
    let mut cells = Vec::new();
    gap_cells(a, &a_low, b, &b_low, -1, &mut cells);
    gap_cells(a, &a_up, b, &b_up, 1, &mut cells);
    Ok(cells.len())
}

/// Every point of `a` lies on the boundary of its hull.
pub fn is_convex_position(a: &PointSet) -> Result<bool, GeometryError> {
    Ok(hull_decompose(a)?.omega() == 0)
}

fn require_convex_position(a: &PointSet) -> Result<(), MixedError> {
    if !is_convex_position(a)? {
        return Err(MixedError::NotConvexPosition);
    }
    Ok(())
}

/// `[B]` is a triangle and each of its outward edge normals is an outward edge normal of `[A]`.
pub fn is_strange_pair(a: &PointSet, b: &PointSet) -> Result<bool, MixedError> {
    a.require_planar()?;
    b.require_planar()?;
    let nb = edge_normals(b);
    if nb.len() != 3 {
        return Ok(false);
    }
    let na = edge_normals(a);
    Ok(nb.iter().all(|u| na.iter().any(|v| same_direction(u, v))))
}

/// Star construction for a `B` whose hull is a triangle with subdivided sides; the score of a
/// star is its parallelogram count `Σ |σ_i| s_i`.
fn triangle_hull_star(a: &PointSet, b: &PointSet) -> Result<Option<MixedSubdivision>, MixedError> {
    let hull = convex_hull(b.points());
    let [v1, v2, v3] = &hull[..] else { return Ok(None) };
    let corners = [v1.clone(), v2.clone(), v3.clone()];
    let segments =
        |c: &[Point; 3], i: usize| b.iter().filter(|p| on_segment(p, &c[(i + 1) % 3], &c[(i + 2) % 3])).count() - 1;
    let score = |c: &[Point; 3], l: [usize; 3]| (0..3).map(|i| l[i] * segments(c, i)).sum();
    let Some(star) = search_stars(a, &corners, &score, &|_| false) else { return Ok(None) };
    if star.total_len() == 0 {
        return Ok(None);
    }
    let ta = constrained_triangulation(a, &star.edges())?;
    let tb = triangulate(b)?;
    mixed_from_star(&ta, &tb, &star).map(Some)
}

/// A validated subdivision of `A + B` for summands in convex position, maximizing `m11` over
/// the staircase directions and, when a hull is a triangle, the star constructions.
pub fn convex_position_mixed(a: &PointSet, b: &PointSet) -> Result<MixedSubdivision, MixedError> {
    a.require_planar()?;
    b.require_planar()?;
    require_convex_position(a)?;
    require_convex_position(b)?;
    if b.len() == 3 {
        return triangle_mixed(a, b);
    }
    if a.len() == 3 {
        return Ok(triangle_mixed(b, a)?.swapped());
    }
    let mut best: Option<MixedSubdivision> = None;
    let mut keep = |m: MixedSubdivision| {
        if best.as_ref().is_none_or(|b| m.m11() > b.m11()) {
            best = Some(m);
        }
    };
    let mut dirs: Vec<(usize, Point)> = scan_directions(a, b)
        .into_iter()
        .map(|d| staircase_count(a, b, &d).map(|c| (c, d)))
        .collect::<Result<_, _>>()?;
    dirs.sort_by_key(|x| std::cmp::Reverse(x.0));
    let ta = triangulate(a)?;
    let tb = triangulate(b)?;
    if let Some((_, d)) = dirs.first() {
        keep(staircase_mixed(&ta, &tb, d)?);
    }
    if let Some(m) = triangle_hull_star(a, b)? {
        keep(m);
    }
    if let Some(m) = triangle_hull_star(b, a)? {
        keep(m.swapped());
    }
    Ok(best.expect("at least one staircase direction"))
}
