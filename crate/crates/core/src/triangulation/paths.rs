use serde::Serialize;

use super::TriangulationError;
use crate::geometry::{cover_lines, in_open_segment, shadows_disjoint, GeometryError, Point, PointSet};
use crate::rat::Rat;

/// A path transversal to `w`: one point per line parallel to `w`, in sweep order.
pub fn longest_transversal_path(a: &PointSet, w: &Point) -> Result<Vec<usize>, GeometryError> {
    let lines = cover_lines(a, w)?;
    // Within a line, the point extreme along w keeps consecutive segments free of other points
    // only generically; walking the lowest-index point is enough for transversality.
    Ok(lines.into_iter().map(|l| l[0]).collect())
}

/// A pair of transversal paths meeting at `center`.
///
/// `sigma1` runs left to right and ends at the center; `sigma2` starts at the center and
/// runs downward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HvPath {
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub center: usize,
}

impl HvPath {
    pub fn horizontal_len(&self) -> usize {
        self.sigma1.len() - 1
    }

    pub fn vertical_len(&self) -> usize {
        self.sigma2.len() - 1
    }

    pub fn total_len(&self) -> usize {
        self.horizontal_len() + self.vertical_len()
    }

    /// Whether `(2L + 1)^2 >= 4 (t + 1)`, i.e. `L >= sqrt(t + 1) - 1/2`, for `t` triangles.
    pub fn meets_bound(&self, triangles: usize) -> bool {
        hv_bound_met(self.total_len(), triangles)
    }
}

pub fn hv_bound_met(len: usize, triangles: usize) -> bool {
    let l = len as u128;
    (2 * l + 1) * (2 * l + 1) >= 4 * (triangles as u128 + 1)
}

/// Column-sweep candidates in one orientation: `(chain, column)` pairs for columns `1..=k`,
/// where `chain` holds the top points of columns `0..=i` and `column` is column `i` from top down.
fn sweep_candidates(a: &PointSet, col: fn(&Point) -> &Rat, row: fn(&Point) -> &Rat) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut idx: Vec<usize> = (0..a.len()).collect();
    idx.sort_by(|&i, &j| col(a.get(i)).cmp(col(a.get(j))).then(row(a.get(j)).cmp(row(a.get(i)))));
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match columns.last_mut() {
            Some(c) if col(a.get(c[0])) == col(a.get(i)) => c.push(i),
            _ => columns.push(vec![i]),
        }
    }
    let tops: Vec<usize> = columns.iter().map(|c| c[0]).collect();
    (1..columns.len()).map(|i| (tops[..=i].to_vec(), columns[i].clone())).collect()
}

fn px(p: &Point) -> &Rat {
    &p.x
}

fn py(p: &Point) -> &Rat {
    &p.y
}

/// All candidate horizontal-vertical paths, original coordinates first, then the reflection
/// through the diagonal; within each, by increasing column index.
pub(crate) fn hv_candidates(a: &PointSet) -> Vec<HvPath> {
    let mut out = Vec::new();
    for (chain, column) in sweep_candidates(a, px, py) {
        let center = column[0];
        out.push(HvPath { sigma1: chain, sigma2: column, center });
    }
    // Reflected: rows by y, rightmost point of each row; the row itself becomes the
    // horizontal branch (left to right) and the chain of row ends the vertical branch.
    for (chain, row) in sweep_candidates(a, py, px) {
        let center = row[0];
        let sigma1: Vec<usize> = row.into_iter().rev().collect();
        let sigma2: Vec<usize> = chain.into_iter().rev().collect();
        out.push(HvPath { sigma1, sigma2, center });
    }
    out
}

/// The longest column-sweep horizontal-vertical path.
pub fn find_hv_path(a: &PointSet) -> Result<HvPath, TriangulationError> {
    a.require_planar()?;
    let mut best: Option<HvPath> = None;
    for c in hv_candidates(a) {
        if best.as_ref().is_none_or(|b| c.total_len() > b.total_len()) {
            best = Some(c);
        }
    }
    Ok(best.expect("planar set has at least two columns"))
}

/// Independent check of the horizontal-vertical path conditions.
pub fn validate_hv_path(a: &PointSet, path: &HvPath) -> Result<(), String> {
    let pts = |v: &[usize]| -> Result<Vec<Point>, String> {
        v.iter().map(|&i| a.points().get(i).cloned().ok_or_else(|| format!("index {i} out of range"))).collect()
    };
    let s1 = pts(&path.sigma1)?;
    let s2 = pts(&path.sigma2)?;
    if s1.is_empty() || s2.is_empty() {
        return Err("empty branch".into());
    }
    if path.sigma1.last() != Some(&path.center) || path.sigma2.first() != Some(&path.center) {
        return Err("branches do not meet at the center".into());
    }
    if s1.windows(2).any(|w| w[0].x >= w[1].x) {
        return Err("horizontal branch not transversal to vertical lines".into());
    }
    if s2.windows(2).any(|w| w[0].y <= w[1].y) {
        return Err("vertical branch not transversal to horizontal lines".into());
    }
    for branch in [&s1, &s2] {
        for w in branch.windows(2) {
            if a.iter().any(|p| in_open_segment(p, &w[0], &w[1])) {
                return Err("segment passes through a point of the set".into());
            }
        }
    }
    if s1.len() > 1 && s2.len() > 1 {
        let h: Vec<Point> = s1.iter().rev().cloned().collect();
        if !shadows_disjoint(&h, &Point::int(0, 1), &s2, &Point::int(1, 0)) {
            return Err("shadow condition violated".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::line_cover_count;
    use crate::triangulation::tr;
    use proptest::prelude::*;

    /// Saturated set with hull (0,0),(0,k),(k-1,0),(k-1,1) plus the point (k+t, 0).
    fn example_one(k: i64, t: i64) -> PointSet {
        let mut pts = vec![];
        for x in 0..k {
            for y in 0..=k {
                // Below the segment from (0,k) to (k-1,1): y <= k - x.
                if y <= k - x {
                    pts.push(Point::int(x, y));
                }
            }
        }
        pts.push(Point::int(k + t, 0));
        PointSet::new(pts).unwrap()
    }

    #[test]
    fn transversal_lengths() {
        let g = PointSet::grid(0, 0, 3, 3);
        assert_eq!(longest_transversal_path(&g, &Point::int(0, 1)).unwrap().len() - 1, 2);
        assert_eq!(longest_transversal_path(&g, &Point::int(1, 1)).unwrap().len() - 1, 4);
        let line = PointSet::from_ints(&[(0, 0), (1, 2), (2, 4)]).unwrap();
        assert_eq!(longest_transversal_path(&line, &Point::int(1, 2)).unwrap().len() - 1, 0);
    }

    #[test]
    fn hv_examples() {
        let g = PointSet::grid(0, 0, 3, 3);
        let p = find_hv_path(&g).unwrap();
        assert_eq!(p.total_len(), 4);
        validate_hv_path(&g, &p).unwrap();
        let l = PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(find_hv_path(&l).unwrap().total_len(), 1);
        assert_eq!(brute_force_best(&l), 1);
    }

    fn subsets_in_order(a: &PointSet, key: fn(&Point) -> &Rat, desc: bool) -> Vec<Vec<usize>> {
        let n = a.len();
        let mut out = vec![];
        for mask in 1u32..(1 << n) {
            let mut v: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            v.sort_by(|&i, &j| key(a.get(i)).cmp(key(a.get(j))));
            if desc {
                v.reverse();
            }
            out.push(v);
        }
        out
    }

    /// Longest horizontal-vertical path by exhaustive enumeration of both branches.
    fn brute_force_best(a: &PointSet) -> usize {
        let horizontal = subsets_in_order(a, px, false);
        let vertical = subsets_in_order(a, py, true);
        let mut best = 0;
        for s1 in &horizontal {
            for s2 in &vertical {
                let center = *s1.last().unwrap();
                if s2[0] != center {
                    continue;
                }
                let p = HvPath { sigma1: s1.clone(), sigma2: s2.clone(), center };
                if validate_hv_path(a, &p).is_ok() {
                    best = best.max(p.total_len());
                }
            }
        }
        best
    }

    #[test]
    fn sweep_is_within_brute_force_optimum() {
        let sets: [&[(i64, i64)]; 4] = [
            &[(0, 0), (1, 0), (0, 1), (1, 1)],
            &[(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)],
            &[(0, 0), (3, 1), (1, 3), (2, 2), (1, 1)],
            &[(0, 2), (1, 0), (2, 3), (3, 1), (4, 4), (2, 1)],
        ];
        for s in sets {
            let a = PointSet::from_ints(s).unwrap();
            let found = find_hv_path(&a).unwrap().total_len();
            let best = brute_force_best(&a);
            assert!(found <= best);
            assert!(hv_bound_met(found, tr(&a).unwrap()));
        }
    }

    #[test]
    fn example_one_instance() {
        let a = example_one(5, 1);
        assert_eq!(a.len(), 21);
        assert_eq!(tr(&a).unwrap(), 29);
        let p = find_hv_path(&a).unwrap();
        validate_hv_path(&a, &p).unwrap();
        assert_eq!(p.total_len(), 5);
        assert!(p.meets_bound(29));
        assert!(!hv_bound_met(4, 29));
    }

    proptest! {
        #[test]
        fn transversal_matches_cover(pts in proptest::collection::btree_set((-4i64..5, -4i64..5), 2..14), wx in -3i64..4, wy in -3i64..4) {
            prop_assume!(wx != 0 || wy != 0);
            let a = PointSet::from_ints(&pts.into_iter().collect::<Vec<_>>()).unwrap();
            let w = Point::int(wx, wy);
            let path = longest_transversal_path(&a, &w).unwrap();
            prop_assert_eq!(path.len() - 1, line_cover_count(&a, &w).unwrap() - 1);
            let keys: Vec<Rat> = path.iter().map(|&i| w.cross(a.get(i))).collect();
            prop_assert!(keys.windows(2).all(|k| k[0] < k[1]));
        }

        #[test]
        fn hv_path_meets_bound(pts in proptest::collection::btree_set((0i64..8, 0i64..8), 3..20)) {
            let a = PointSet::from_ints(&pts.into_iter().collect::<Vec<_>>()).unwrap();
            prop_assume!(a.dim() == 2);
            let p = find_hv_path(&a).unwrap();
            prop_assert!(validate_hv_path(&a, &p).is_ok(), "{:?}", validate_hv_path(&a, &p));
            prop_assert!(p.meets_bound(tr(&a).unwrap()));
        }
    }
}
