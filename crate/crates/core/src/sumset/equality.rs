use serde::Serialize;

use super::{tr_of_sum, SumsetError};
use crate::geometry::{convex_hull, hull_decompose, is_saturated, locate_in_convex, Location, Point, PointSet};
use crate::triangulation::tr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EqualityKind {
    /// `A = [A] ∩ Λ(A)`.
    SaturatedA,
    /// Triangle plus an equally spaced chain ending at a corner.
    CaseB,
    NotEqual,
    /// Assigned by callers to inputs outside the classifier's domain.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityClass {
    pub kind: EqualityKind,
    /// For `CaseB`: the chain `z_1, ..., z_{k-2}` ending at a hull corner.
    pub chain: Vec<Point>,
    pub tr: usize,
    pub tr_double: usize,
    /// `kind ∈ {SaturatedA, CaseB}` agrees with `tr(A+A) = 4 tr(A)`.
    pub consistent: bool,
}

/// The chain `z_1, .., z_{k-2}` if `A` is a triangle with every other point interior and those
/// points, followed by one corner, form an arithmetic progression.
pub fn find_case_b_chain(a: &PointSet) -> Result<Option<Vec<Point>>, SumsetError> {
    let hull = hull_decompose(a)?;
    if hull.vertices.len() != 3 || hull.delta() != 3 || hull.omega() == 0 {
        return Ok(None);
    }
    for corner in &hull.vertices {
        let mut chain: Vec<Point> = hull.interior.clone();
        chain.sort_by_key(|p| {
            let d = p - corner;
            d.dot(&d)
        });
        let step = &chain[0] - corner;
        let progression =
            chain.iter().enumerate().all(|(j, p)| *p == corner + &step.scale(&crate::rat::Rat::from(j + 1)));
        if progression {
            chain.reverse();
            chain.push(corner.clone());
            return Ok(Some(chain));
        }
    }
    Ok(None)
}

/// Classifies `A` against the two equality configurations for `tr(A+A) = 4 tr(A)`, and
/// cross-checks the verdict against the count itself.
pub fn classify_equality(a: &PointSet) -> Result<EqualityClass, SumsetError> {
    a.require_planar()?;
    let (kind, chain) = if is_saturated(a)? {
        (EqualityKind::SaturatedA, vec![])
    } else if let Some(chain) = find_case_b_chain(a)? {
        (EqualityKind::CaseB, chain)
    } else {
        (EqualityKind::NotEqual, vec![])
    };
    let t = tr(a)?;
    let t2 = tr_of_sum(a, a)?;
    let consistent = (kind != EqualityKind::NotEqual) == (t2 == 4 * t);
    Ok(EqualityClass { kind, chain, tr: t, tr_double: t2, consistent })
}

/// On every hull side, the points of `A` are equally spaced.
pub fn sides_are_progressions(a: &PointSet) -> Result<bool, SumsetError> {
    let hull = hull_decompose(a)?;
    Ok(hull.sides().iter().all(|side| {
        let step = &side[1] - &side[0];
        side.windows(2).all(|w| &w[1] - &w[0] == step)
    }))
}

/// Every convex quadrangle with vertices in `A` and no other point of `A` in its closed hull
/// is a parallelogram.
pub fn empty_quadrangles_are_parallelograms(a: &PointSet) -> bool {
    let n = a.len();
    let pts = a.points();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let quad = [pts[i].clone(), pts[j].clone(), pts[k].clone(), pts[l].clone()];
                    // Three collinear corners leave fewer than four strict hull vertices.
                    let hull = convex_hull(&quad);
                    if hull.len() != 4 {
                        continue;
                    }
                    let empty = pts
                        .iter()
                        .enumerate()
                        .all(|(m, p)| [i, j, k, l].contains(&m) || locate_in_convex(&hull, p) == Location::Exterior);
                    if empty && &hull[0] + &hull[2] != &hull[1] + &hull[3] {
                        return false;
                    }
                }
            }
        }
    }
    true
}
