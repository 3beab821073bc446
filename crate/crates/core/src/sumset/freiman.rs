use super::{BoundReport, SumsetError};
use crate::geometry::{cover_lines, hull_decompose, sumset_size, Point, PointSet};
use crate::rat::Rat;

fn r(n: usize) -> Rat {
    Rat::from(n)
}

/// The three planar lower bounds for `|A+A|`: `3|A| - 3`, `4|A| - Δ - 3`, and
/// `Δ²/4 - Δ(m - 1)/2` with `m` the largest number of points on a hull side.
pub fn doubling_bounds(a: &PointSet) -> Result<Vec<BoundReport>, SumsetError> {
    let hull = hull_decompose(a)?;
    let n = a.len();
    let delta = hull.delta();
    let m = hull.sides().iter().map(Vec::len).max().unwrap_or(0);
    let ss = r(sumset_size(a, a));
    let d = r(delta);
    let boundary = &(&d * &d) / &Rat::from_int(4) - &(&d * &r(m - 1)) / &Rat::from_int(2);
    Ok(vec![
        BoundReport::new("planar-3n-3", ss.clone(), r(3 * n - 3)),
        BoundReport::new("boundary-4n", ss.clone(), r(4 * n) - d.clone() - Rat::from_int(3)).witness("delta", delta),
        BoundReport::new("boundary-square", ss, boundary).witness("delta", delta).witness("m", m),
    ])
}

/// Both cover-line bounds for `direction`: `2|A| + (s-1)m - s` and `(4 - 2/s)|A| - (2s - 1)`,
/// where `s` counts cover lines and `m` is the largest number of points on one of them.
pub fn scover_bounds(a: &PointSet, direction: &Point) -> Result<Vec<BoundReport>, SumsetError> {
    let lines = cover_lines(a, direction)?;
    let s = lines.len();
    let m = lines.iter().map(Vec::len).max().expect("nonempty set");
    let n = r(a.len());
    let ss = r(sumset_size(a, a));
    let sr = r(s);
    let weak = Rat::from_int(2) * n.clone() + r((s - 1) * m) - sr.clone();
    let strong = (Rat::from_int(4) - Rat::from_int(2) / sr.clone()) * n - (Rat::from_int(2) * sr - Rat::one());
    Ok(vec![
        BoundReport::new("scover-weak", ss.clone(), weak).witness("s", s).witness("m", m),
        BoundReport::new("scover-strong", ss, strong).witness("s", s),
    ])
}

/// Checks the stability hypotheses `|A| >= 48/ε²` and `|A+A| <= (4-ε)|A|`; when they hold,
/// compares the cover count `s` along a maximal side against `(2/ε)(1 + 32/(|A| ε²))`.
///
/// The report is `bound >= s`.
pub fn stability_check(a: &PointSet, eps: &Rat) -> Result<BoundReport, SumsetError> {
    if !eps.is_positive() || *eps >= Rat::one() {
        return Err(SumsetError::InvalidEpsilon(eps.clone()));
    }
    let hull = hull_decompose(a)?;
    let n = r(a.len());
    let eps2 = eps * eps;
    let min_size = Rat::from_int(48) / eps2.clone();
    if n < min_size {
        return Ok(BoundReport::not_applicable("stability", "|A| < 48/eps^2").witness("size", a.len()));
    }
    let ss = sumset_size(a, a);
    let cap = (Rat::from_int(4) - eps.clone()) * n.clone();
    if r(ss) > cap {
        return Ok(BoundReport::not_applicable("stability", "|A+A| > (4-eps)|A|").witness("sumset", ss));
    }
    let sides = hull.sides();
    let longest = sides.iter().map(Vec::len).max().expect("polygon has sides");
    let side = sides.iter().find(|s| s.len() == longest).expect("maximum is attained");
    let direction = &side[side.len() - 1] - &side[0];
    let s = cover_lines(a, &direction)?.len();
    let bound = (Rat::from_int(2) / eps.clone()) * (Rat::one() + Rat::from_int(32) / (n * eps2));
    Ok(BoundReport::new("stability", bound, r(s))
        .witness("size", a.len())
        .witness("sumset", ss)
        .witness("cap", cap)
        .witness("direction", direction)
        .witness("s", s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(reps: &[BoundReport]) -> Vec<(String, String)> {
        reps.iter().map(|r| (r.lhs.to_string(), r.rhs.to_string())).collect()
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn grid_doubling() {
        let reps = doubling_bounds(&PointSet::grid(0, 0, 3, 3)).unwrap();
        assert_eq!(values(&reps), pairs(&[("25", "24"), ("25", "25"), ("25", "8")]));
        assert!(reps[1].equality);
        assert!(reps.iter().all(|r| r.holds));
    }

    #[test]
    fn triangle_doubling() {
        let reps = doubling_bounds(&PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap()).unwrap();
        assert_eq!(values(&reps), pairs(&[("6", "6"), ("6", "6"), ("6", "3/4")]));
    }

    #[test]
    fn case_b_is_extremal_for_boundary_bound() {
        let a = PointSet::from_ints(&[(0, 0), (8, 0), (2, 8), (1, 1), (2, 2)]).unwrap();
        let reps = doubling_bounds(&a).unwrap();
        assert!(reps[1].equality, "{}", reps[1]);
    }

    #[test]
    fn cover_bounds() {
        let reps = scover_bounds(&PointSet::grid(0, 0, 3, 3), &Point::int(0, 1)).unwrap();
        assert_eq!(values(&reps), pairs(&[("25", "21"), ("25", "25")]));
        assert!(reps[1].equality);
        let reps = scover_bounds(&PointSet::grid(1, 1, 4, 16), &Point::int(0, 1)).unwrap();
        assert!(reps.iter().all(|r| r.holds));
        assert_eq!(reps[0].witness[0], ("s".to_string(), "4".to_string()));
        let line = PointSet::from_ints(&[(0, 0), (0, 1), (0, 3), (0, 7)]).unwrap();
        let reps = scover_bounds(&line, &Point::int(0, 1)).unwrap();
        assert_eq!(reps[1].rhs, Rat::from_int(2 * 4 - 1));
    }

    #[test]
    fn stability_not_applicable_on_small_sets() {
        let rep = stability_check(&PointSet::grid(0, 0, 3, 3), &Rat::new(1, 2)).unwrap();
        assert!(!rep.applicable);
        assert!(stability_check(&PointSet::grid(0, 0, 3, 3), &Rat::one()).is_err());
    }
}
