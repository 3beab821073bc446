use std::collections::BTreeSet;

use super::{Triangulation, TriangulationError};
use crate::geometry::{area2, in_open_segment, segments_cross, Location, PointSet};

/// Placing triangulation in lexicographic order.
///
/// Each new point is lexicographically larger than every earlier one, hence strictly
/// outside their hull; it is joined to every hull edge it sees strictly.
pub fn triangulate(a: &PointSet) -> Result<Triangulation, TriangulationError> {
    a.require_planar()?;
    let p = |i: usize| a.get(i);
    let n = a.len();
    // Points 0..k-1 are collinear and in order along their line; point k leaves the line.
    let k = (2..n).find(|&k| !area2(p(0), p(1), p(k)).is_zero()).expect("planar set has a non-collinear point");
    let mut triangles: Vec<[usize; 3]> = (0..k - 1).map(|i| [i, i + 1, k]).collect();
    // Hull cycle, counterclockwise, keeping collinear boundary points.
    let mut hull: Vec<usize> = if area2(p(0), p(k - 1), p(k)).is_positive() {
        (0..=k).collect()
    } else {
        std::iter::once(0).chain((1..=k).rev()).collect()
    };
    for q in k + 1..n {
        let h = hull.len();
        let visible: Vec<bool> = (0..h).map(|e| area2(p(hull[e]), p(hull[(e + 1) % h]), p(q)).is_negative()).collect();
        // Visible edges form one cyclic run; find its first edge.
        let start = (0..h).find(|&e| visible[e] && !visible[(e + h - 1) % h]).expect("exterior point sees an edge");
        let mut end = start;
        while visible[end % h] {
            let e = end % h;
            triangles.push([hull[e], q, hull[(e + 1) % h]]);
            end += 1;
        }
        // Vertices strictly inside the visible chain leave the hull.
        let first = hull[start];
        let last = hull[end % h];
        let mut next = Vec::with_capacity(h + 1);
        let mut i = end % h;
        loop {
            next.push(hull[i]);
            if hull[i] == first {
                break;
            }
            i = (i + 1) % h;
        }
        debug_assert_eq!(next.first(), Some(&last));
        next.push(q);
        hull = next;
    }
    Ok(Triangulation::new(a.clone(), triangles))
}

/// A triangulation of `A` containing every segment in `required`.
///
/// Builds a maximal non-crossing set of empty segments, inserting the required ones first and
/// the rest by increasing length, then reads off the empty triangles.
pub fn constrained_triangulation(
    a: &PointSet,
    required: &[(usize, usize)],
) -> Result<Triangulation, TriangulationError> {
    a.require_planar()?;
    let n = a.len();
    let p = |i: usize| a.get(i);
    let blocked = |i: usize, j: usize| (0..n).any(|m| m != i && m != j && in_open_segment(p(m), p(i), p(j)));
    let mut accepted: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j) in required {
        let e = (i.min(j), i.max(j));
        if i == j || !seen.insert(e) {
            continue;
        }
        if blocked(e.0, e.1) {
            return Err(TriangulationError::BlockedConstraint(e.0, e.1));
        }
        if let Some(&(c, d)) = accepted.iter().find(|&&(c, d)| segments_cross(p(e.0), p(e.1), p(c), p(d))) {
            return Err(TriangulationError::ConflictingConstraints(e.0, e.1, c, d));
        }
        accepted.push(e);
    }
    let mut candidates: Vec<(crate::rat::Rat, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !seen.contains(&(i, j)) && !blocked(i, j) {
                let d = p(j) - p(i);
                candidates.push((d.dot(&d), i, j));
            }
        }
    }
    candidates.sort();
    for (_, i, j) in candidates {
        if !accepted.iter().any(|&(c, d)| segments_cross(p(i), p(j), p(c), p(d))) {
            accepted.push((i, j));
        }
    }
    let mut adj = vec![BTreeSet::new(); n];
    for &(i, j) in &accepted {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    let mut triangles = Vec::new();
    for &(i, j) in &accepted {
        for &k in adj[i].intersection(&adj[j]) {
            if k <= j {
                continue;
            }
            let tri = [p(i).clone(), p(j).clone(), p(k).clone()];
            let ccw = if area2(&tri[0], &tri[1], &tri[2]).is_positive() {
                tri.clone()
            } else {
                [tri[0].clone(), tri[2].clone(), tri[1].clone()]
            };
            let empty = (0..n).all(|m| {
                m == i || m == j || m == k || crate::geometry::locate_in_convex(&ccw, p(m)) != Location::Interior
            });
            if empty {
                triangles.push([i, j, k]);
            }
        }
    }
    Ok(Triangulation::new(a.clone(), triangles))
}
