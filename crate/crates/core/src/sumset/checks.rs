use super::{tr_of_sum, BoundReport, Comparison, SumsetError};
use crate::geometry::{area2, hull_decompose, Location, Point, PointSet};
use crate::rat::Rat;
use crate::triangulation::tr;

fn r(n: usize) -> Rat {
    Rat::from(n)
}

/// `tr(A+B) >= (sqrt(tr A) + sqrt(tr B))^2`, decided on `x = tr(A+B) - tr A - tr B`
/// through `sign(x) x^2 >= 4 tr(A) tr(B)`.
///
/// Both sets must be 2-dimensional; collinear inputs are rejected.
pub fn check_conjecture1(a: &PointSet, b: &PointSet) -> Result<BoundReport, SumsetError> {
    a.require_planar()?;
    b.require_planar()?;
    let (ta, tb) = (tr(a)?, tr(b)?);
    let tab = tr_of_sum(a, b)?;
    let x = r(tab) - r(ta) - r(tb);
    let lhs = if x.is_negative() { -(&x * &x) } else { &x * &x };
    let rhs = Rat::from_int(4) * r(ta) * r(tb);
    Ok(BoundReport::with_comparison("conj1", lhs, rhs, Comparison::SignedSquare)
        .witness("tr_a", ta)
        .witness("tr_b", tb)
        .witness("tr_sum", tab))
}

/// `tr(A+B) >= 2 tr(A) + 2 tr(B)`.
pub fn check_strong(a: &PointSet, b: &PointSet) -> Result<BoundReport, SumsetError> {
    a.require_planar()?;
    b.require_planar()?;
    let (ta, tb) = (tr(a)?, tr(b)?);
    let tab = tr_of_sum(a, b)?;
    Ok(BoundReport::new("strong", r(tab), r(2 * ta + 2 * tb)).witness("tr_a", ta).witness("tr_b", tb))
}

/// 1 on the hull boundary, 2 in the interior; the weights sum to `tr(X) + 2`.
pub fn boundary_weight(x: &PointSet, z: &Point) -> Result<u8, SumsetError> {
    if !x.contains(z) {
        return Err(SumsetError::PointNotInSet(z.clone()));
    }
    let hull = hull_decompose(x)?;
    Ok(if hull.is_boundary(z) { 1 } else { 2 })
}

/// Points `x` of `A` with `[b, x] ∩ [A] = {x}`.
///
/// `x` qualifies iff it lies on the line of a hull edge that strictly separates `b`.
pub fn visible_points(a: &PointSet, b: &Point) -> Result<PointSet, SumsetError> {
    let hull = hull_decompose(a)?;
    if hull.locate(b) != Location::Exterior {
        return Err(SumsetError::PointInsideHull(b.clone()));
    }
    let seen: Vec<Point> = a
        .iter()
        .filter(|x| hull.edges().any(|(u, v)| area2(u, v, x).is_zero() && area2(u, v, b).is_negative()))
        .cloned()
        .collect();
    Ok(PointSet::new(seen).expect("an exterior point sees a hull vertex"))
}

/// With `a = tr(A)` and `k = tr(A ∪ {b}) - a`: `tr(A + (A ∪ {b})) >= 4a + 2k`.
pub fn one_extra_check(a: &PointSet, b: &Point) -> Result<BoundReport, SumsetError> {
    a.require_planar()?;
    if a.contains(b) {
        return Err(SumsetError::PointAlreadyInSet(b.clone()));
    }
    let big = a.with_point(b.clone())?;
    let ta = tr(a)?;
    let k = tr(&big)? - ta;
    let lhs = tr_of_sum(a, &big)?;
    Ok(BoundReport::new("one-extra", r(lhs), r(4 * ta + 2 * k)).witness("a", ta).witness("k", k).witness("tr_sum", lhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjecture_equalities() {
        let rep = check_conjecture1(&PointSet::grid(0, 0, 3, 3), &PointSet::grid(0, 0, 4, 4)).unwrap();
        assert!(rep.holds && rep.equality, "{rep}");
        let t = PointSet::simplex(1);
        let rep = check_conjecture1(&t, &t).unwrap();
        assert!(rep.equality);
        let rep = check_conjecture1(&PointSet::simplex(2), &PointSet::simplex(3)).unwrap();
        assert!(rep.equality);
        assert_eq!(rep.witness[2], ("tr_sum".to_string(), "25".to_string()));
    }

    #[test]
    fn strong_cases() {
        let g = PointSet::grid(0, 0, 3, 3);
        let rep = check_strong(&g, &g).unwrap();
        assert_eq!((rep.lhs.clone(), rep.rhs.clone()), (Rat::from_int(32), Rat::from_int(32)));
        assert!(rep.equality);
        let rep = check_strong(&PointSet::simplex(1), &PointSet::simplex(2)).unwrap();
        assert_eq!((rep.lhs.to_i64(), rep.rhs.to_i64(), rep.holds), (Some(9), Some(10), false));
        let t = PointSet::simplex(1);
        assert!(check_strong(&t, &t).unwrap().equality);
    }

    #[test]
    fn weights() {
        let g = PointSet::grid(0, 0, 3, 3);
        assert_eq!(boundary_weight(&g, &Point::int(0, 0)).unwrap(), 1);
        assert_eq!(boundary_weight(&g, &Point::int(1, 1)).unwrap(), 2);
        let total: usize = g.iter().map(|z| boundary_weight(&g, z).unwrap() as usize).sum();
        assert_eq!(total, 10);
        assert_eq!(total - 2, tr(&g).unwrap());
        assert!(boundary_weight(&g, &Point::int(7, 7)).is_err());
    }

    #[test]
    fn visibility() {
        let sq = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        let v = visible_points(&sq, &Point::int(100, 0)).unwrap();
        assert_eq!(v, PointSet::from_ints(&[(1, 0), (1, 1)]).unwrap());
        let g = PointSet::grid(0, 0, 3, 3);
        let v = visible_points(&g, &Point::int(5, 1)).unwrap();
        assert_eq!(v, PointSet::from_ints(&[(2, 0), (2, 1), (2, 2)]).unwrap());
        let t = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let v = visible_points(&t, &Point::int(2, -1)).unwrap();
        assert!(v.contains(&Point::int(1, 0)));
        assert!(matches!(visible_points(&g, &Point::int(1, 1)), Err(SumsetError::PointInsideHull(_))));
        assert!(matches!(visible_points(&g, &Point::int(2, 1)), Err(SumsetError::PointInsideHull(_))));
    }

    /// Visibility by sampling the segment `[b, x]` at many rational parameters.
    fn visible_by_sampling(a: &PointSet, b: &Point, x: &Point) -> bool {
        let hull = hull_decompose(a).unwrap();
        (0..64).all(|i| {
            let t = Rat::new(i, 64);
            let p = b + &(x - b).scale(&t);
            hull.locate(&p) == Location::Exterior
        })
    }

    #[test]
    fn visibility_matches_sampling() {
        let a = PointSet::from_ints(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 2), (2, 2), (2, 0)]).unwrap();
        for b in [Point::int(8, 1), Point::int(-3, -3), Point::int(2, 9), Point::int(6, 6), Point::int(9, 0)] {
            let v = visible_points(&a, &b).unwrap();
            for x in a.iter() {
                assert_eq!(v.contains(x), visible_by_sampling(&a, &b, x), "b={b} x={x}");
            }
        }
    }

    #[test]
    fn one_extra() {
        let t = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let rep = one_extra_check(&t, &Point::int(5, 5)).unwrap();
        assert!(rep.holds && !rep.equality);
        let g = PointSet::grid(0, 0, 4, 4);
        assert!(one_extra_check(&g, &Point::int(4, 1)).unwrap().holds);
        let sq = PointSet::from_ints(&[(0, 0), (2, 0), (0, 2), (2, 2)]).unwrap();
        let rep = one_extra_check(&sq, &Point::int(1, 1)).unwrap();
        // Interior point case: tr(A+B) >= 4a + 4.
        assert!(rep.lhs >= Rat::from_int(4 * 2 + 4));
        assert!(matches!(one_extra_check(&g, &Point::int(1, 1)), Err(SumsetError::PointAlreadyInSet(_))));
    }
}
