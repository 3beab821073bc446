//! A triangle `A` and a family `B_k` whose fixed triangulation `T_B` admits no mixed
//! subdivision with `m11^2 >= |T_A| |T_B|` once `4k > 24^2`.
//!
//! Only the point-membership facts behind that bound and the numeric threshold are checked
//! here; the nonexistence statement itself is not enumerated.

use crate::geometry::{convex_hull, hull_decompose, in_open_segment, locate_in_convex, Location, Point, PointSet};
use crate::rat::Rat;
use crate::sumset::BoundReport;
use crate::triangulation::{tr, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub k: i64,
    pub a: PointSet,
    pub b: PointSet,
    pub tb: Triangulation,
}

fn a_points() -> [Point; 3] {
    [Point::int(0, 0), Point::int(-1, -2), Point::int(2, 1)]
}

fn l(i: i64) -> Point {
    Point::int(i, i)
}

fn r(i: i64) -> Point {
    Point::int(i, i + 1)
}

/// `B = {p, q, l_0..l_k, r_0..r_{k-1}}` with `p = (-1, k+1)`, `q = (k+1, -1)`, `l_i = (i, i)`,
/// `r_i = (i, i+1)`; `T_B` fans the strip of small triangles to `p` and `q`.
///
/// # Panics
/// If `k < 2`.
pub fn build_counterexample(k: i64) -> Counterexample {
    assert!(k >= 2, "the construction needs k >= 2");
    let a = PointSet::new(a_points().to_vec()).expect("distinct points");
    let p = Point::int(-1, k + 1);
    let q = Point::int(k + 1, -1);
    let mut pts = vec![p.clone(), q.clone()];
    pts.extend((0..=k).map(l));
    pts.extend((0..k).map(r));
    let b = PointSet::new(pts).expect("distinct points");
    let ix = |x: &Point| b.index_of(x).expect("point of B");
    let mut triangles = Vec::new();
    for i in 0..k {
        for apex in [&p, &q] {
            triangles.push([ix(apex), ix(&l(i)), ix(&r(i))]);
        }
    }
    for i in 1..=k {
        for apex in [&p, &q] {
            triangles.push([ix(apex), ix(&l(i)), ix(&r(i - 1))]);
        }
    }
    let tb = Triangulation::new(b.clone(), triangles);
    Counterexample { k, a, b, tb }
}

/// Counts how many of `checks` hold, as a report with `rhs` the number of checks.
fn tally(name: &str, checks: impl Iterator<Item = bool>) -> BoundReport {
    let (mut ok, mut all) = (0i64, 0i64);
    for c in checks {
        all += 1;
        ok += c as i64;
    }
    BoundReport::new(name, Rat::from_int(ok), Rat::from_int(all))
}

fn in_interior(poly: &[Point], p: &Point) -> bool {
    locate_in_convex(&convex_hull(poly), p) == Location::Interior
}

/// The structural facts for `k`, one report per family, then the threshold `4k > 576`.
pub fn verify_counterexample_structure(k: i64) -> Vec<BoundReport> {
    let ce = build_counterexample(k);
    let [a0, a1, a2] = a_points();
    let sum_has = |x: &Point| ce.a.iter().any(|a| ce.b.contains(&(x - a)));
    let mut out = Vec::new();
    let tb_ok = ce.tb.is_valid() as i64;
    out.push(BoundReport::new("tb-valid", Rat::from_int(tb_ok), Rat::one()));
    let hull = hull_decompose(&ce.b).expect("planar");
    let tr_b = tr(&ce.b).expect("planar");
    out.push(
        BoundReport::new("tb-size", Rat::from_int(ce.tb.len() as i64), Rat::from_int(tr_b as i64))
            .witness("delta_b", hull.delta())
            .witness("hull_vertices", hull.vertices.len()),
    );
    // [a1, a2] + l_i contains a1 + l_{i+1} (i < k) or a2 + l_{i-1} (i > 0) in its relative interior.
    let open = |x: Point, c: &Point| sum_has(&x) && in_open_segment(&x, &(&a1 + c), &(&a2 + c));
    out.push(tally(
        "a1a2-plus-l-not-edge",
        (0..=k).map(|i| (i < k && open(&a1 + &l(i + 1), &l(i))) || (i > 0 && open(&a2 + &l(i - 1), &l(i)))),
    ));
    out.push(tally(
        "a1a2-plus-r-not-edge",
        (0..k).map(|i| (i + 1 < k && open(&a1 + &r(i + 1), &r(i))) || (i > 0 && open(&a2 + &r(i - 1), &r(i)))),
    ));
    out.push(tally(
        "a0a2-lr-not-cell",
        (0..k).map(|i| in_interior(&[&a0 + &l(i), &a2 + &l(i), &a2 + &r(i), &a0 + &r(i)], &l(i + 1))),
    ));
    out.push(tally(
        "a0a1-rl-not-cell",
        (0..k).map(|i| in_interior(&[&a0 + &r(i), &a1 + &r(i), &a1 + &l(i + 1), &a0 + &l(i + 1)], &l(i))),
    ));
    // Strict 24 < sqrt(|T_A| |T_B|) over the integers: |T_A| |T_B| >= 24^2 + 1.
    let product = ce.tb.len() as i64;
    out.push(BoundReport::new("threshold", Rat::from_int(product), Rat::from_int(24 * 24 + 1)).witness("m11_max", 24));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let ce = build_counterexample(2);
        assert_eq!(ce.b.len(), 7);
        assert_eq!(ce.tb.len(), 8);
        assert!(ce.tb.is_valid());
        for k in [3, 10, 145] {
            let ce = build_counterexample(k);
            assert_eq!(ce.tb.len() as i64, 4 * k);
            assert_eq!(tr(&ce.b).unwrap() as i64, 4 * k);
            assert_eq!(hull_decompose(&ce.b).unwrap().delta(), 4);
        }
    }

    #[test]
    fn structure() {
        for k in [2, 5, 144, 145] {
            let reports = verify_counterexample_structure(k);
            let (threshold, facts) = reports.split_last().unwrap();
            for r in facts {
                assert!(r.holds, "k={k}: {}", r.line());
            }
            assert_eq!(threshold.holds, k >= 145, "k={k}");
        }
    }
}
