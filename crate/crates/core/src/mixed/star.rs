//! Proper stars for a triangle `B` and the mixed subdivisions they induce.

use serde::Serialize;

use super::{MixedCell, MixedError, MixedSubdivision};
use crate::geometry::{
    affine_dim, in_open_segment, on_segment, segment_shadows_disjoint, segments_conflict, Point, PointSet,
};
use crate::rat::Rat;
use crate::triangulation::{constrained_triangulation, tr, triangulate, Triangulation};

/// Three paths leaving a common center, each listed from the center outward, together with
/// the labelled corners `v1, v2, v3` of the triangle they refer to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperStar {
    pub center: usize,
    pub paths: [Vec<usize>; 3],
    pub corners: [Point; 3],
}

impl ProperStar {
    /// `|σ_i|` for `i` in `0..3`.
    pub fn len(&self, i: usize) -> usize {
        self.paths[i].len().saturating_sub(1)
    }

    pub fn total_len(&self) -> usize {
        (0..3).map(|i| self.len(i)).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1]))).collect()
    }
}

/// Outward normal of the side of the triangle opposite corner `i`.
fn exterior_normal(c: &[Point; 3], i: usize) -> Point {
    let (vj, vk) = (&c[(i + 1) % 3], &c[(i + 2) % 3]);
    let n = (vk - vj).perp();
    if n.dot(&(&c[i] - vj)).is_positive() {
        -&n
    } else {
        n
    }
}

/// Checks conditions (i)-(iii) in the coordinates of `a`. Paths may share vertices but no segment.
pub fn validate_star(a: &PointSet, star: &ProperStar) -> Result<(), String> {
    let c = &star.corners;
    if affine_dim(c) != 2 {
        return Err("corners are affinely dependent".into());
    }
    let n = a.len();
    if star.center >= n {
        return Err("center out of range".into());
    }
    for (i, path) in star.paths.iter().enumerate() {
        if path.first() != Some(&star.center) {
            return Err(format!("path {} does not start at the center", i + 1));
        }
        if path.iter().any(|&v| v >= n) {
            return Err(format!("path {} has an index out of range", i + 1));
        }
    }
    let pts: Vec<Vec<Point>> = star.paths.iter().map(|p| p.iter().map(|&v| a.get(v).clone()).collect()).collect();
    for path in &pts {
        for w in path.windows(2) {
            if a.iter().any(|p| in_open_segment(p, &w[0], &w[1])) {
                return Err("a path segment passes through a point of the set".into());
            }
        }
    }
    for i in 0..3 {
        let u = exterior_normal(c, i);
        let h: Vec<Rat> = pts[i].iter().map(|p| p.dot(&u)).collect();
        // (i) and the minimum in (ii): the height along u_i increases strictly from the center.
        if h.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("path {} is not transversal", i + 1));
        }
        let top = a.iter().map(|p| p.dot(&u)).max().expect("nonempty");
        if h.last() != Some(&top) {
            return Err(format!("path {} does not end on its supporting face", i + 1));
        }
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        for ej in pts[j].windows(2) {
            for ek in pts[k].windows(2) {
                if segments_conflict(&ej[0], &ej[1], &ek[0], &ek[1]) {
                    return Err("paths cross".into());
                }
                let dj = &c[k] - &c[i];
                let dk = &c[j] - &c[i];
                if !segment_shadows_disjoint((&ej[0], &ej[1]), &dj, (&ek[0], &ek[1]), &dk) {
                    return Err(format!("shadow condition fails for paths {} and {}", j + 1, k + 1));
                }
            }
        }
    }
    Ok(())
}

/// Builds the subdivision of a star: translates of the triangles of `T_A` sorted by ray
/// parity, the copy `a + T_B`, and one parallelogram per star edge and side segment of `B`.
///
/// `B` may carry extra points on the sides of the triangle `[v1, v2, v3]`; each side then
/// contributes one parallelogram per segment, so `m11 = Σ |σ_i| s_i` with `s_i` the number of
/// segments on the side opposite `v_i`.
pub fn mixed_from_star(
    ta: &Triangulation,
    tb: &Triangulation,
    star: &ProperStar,
) -> Result<MixedSubdivision, MixedError> {
    let a = ta.base();
    let b = tb.base();
    validate_star(a, star).map_err(MixedError::InvalidStar)?;
    if star.total_len() == 0 {
        return Err(MixedError::InvalidStar("all paths are single points".into()));
    }
    for (u, v) in star.edges() {
        if !ta.has_edge(u, v) {
            return Err(MixedError::StarEdgesNotInTriangulation(u.min(v), u.max(v)));
        }
    }
    let corner_idx: Vec<usize> = star
        .corners
        .iter()
        .map(|v| b.index_of(v).ok_or_else(|| MixedError::InvalidStar(format!("corner {v} is not a point of B"))))
        .collect::<Result<_, _>>()?;
    let c = &star.corners;
    if b.iter().any(|p| !(0..3).any(|i| on_segment(p, &c[(i + 1) % 3], &c[(i + 2) % 3]))) {
        return Err(MixedError::InvalidStar("B has points off the sides of its corner triangle".into()));
    }
    let pts: Vec<Vec<Point>> = star.paths.iter().map(|p| p.iter().map(|&v| a.get(v).clone()).collect()).collect();
    let verts: Vec<&Point> = pts.iter().flatten().collect();
    let d1 = &c[0] - &c[2];
    let d2 = &c[1] - &c[2];
    let mut cells = Vec::new();
    for k in 0..ta.len() {
        let tri = ta.corners(k);
        let side = if odd_parity(&tri, &d1, &verts, &[&pts[1], &pts[2]]) {
            0
        } else if odd_parity(&tri, &d2, &verts, &[&pts[0], &pts[2]]) {
            1
        } else {
            2
        };
        cells.push(MixedCell::new(ta.triangles()[k].to_vec(), vec![corner_idx[side]]));
    }
    for t in tb.triangles() {
        cells.push(MixedCell::new(vec![star.center], t.to_vec()));
    }
    for i in 0..3 {
        let (vj, vk) = (&c[(i + 1) % 3], &c[(i + 2) % 3]);
        let dir = vk - vj;
        let mut side: Vec<usize> = (0..b.len()).filter(|&m| on_segment(b.get(m), vj, vk)).collect();
        side.sort_by_key(|&m| (b.get(m) - vj).dot(&dir));
        for e in star.paths[i].windows(2) {
            for f in side.windows(2) {
                cells.push(MixedCell::new(e.to_vec(), f.to_vec()));
            }
        }
    }
    let m = MixedSubdivision::new(ta.clone(), tb.clone(), cells);
    m.validate().map_err(MixedError::Construction)?;
    Ok(m)
}

/// Whether the ray `p - R+ d` from a generic interior point `p` of `tri` crosses `paths` an
/// odd number of times. Generic: `p` lies on no line through a path vertex parallel to `d`.
fn odd_parity(tri: &[Point; 3], d: &Point, verts: &[&Point], paths: &[&Vec<Point>]) -> bool {
    let p = witness(tri, d, verts);
    let mut count = 0usize;
    for path in paths {
        for w in path.windows(2) {
            let (s, t) = (&w[0], &w[1]);
            let ss = d.cross(&(s - &p)).signum();
            let st = d.cross(&(t - &p)).signum();
            if ss == st {
                continue;
            }
            let g = t - s;
            let det = d.cross(&g).signum();
            if (&p - s).cross(&g).signum() == det {
                count += 1;
            }
        }
    }
    count % 2 == 1
}

/// The centroid, or the first of a fixed sequence of rational interior points avoiding the
/// excluded lines.
fn witness(tri: &[Point; 3], d: &Point, verts: &[&Point]) -> Point {
    let ok = |p: &Point| verts.iter().all(|w| !d.cross(&(*w - p)).is_zero());
    for total in 3i64.. {
        for i in 1..total - 1 {
            for j in 1..total - i {
                let k = total - i - j;
                let p = Point::new(
                    (&(&tri[0].x * &Rat::from_int(i))
                        + &(&tri[1].x * &Rat::from_int(j))
                        + &tri[2].x * &Rat::from_int(k))
                        / Rat::from_int(total),
                    (&(&tri[0].y * &Rat::from_int(i))
                        + &(&tri[1].y * &Rat::from_int(j))
                        + &tri[2].y * &Rat::from_int(k))
                        / Rat::from_int(total),
                );
                if ok(&p) {
                    return p;
                }
            }
        }
    }
    unreachable!("finitely many excluded lines")
}

/// Search state for one labelling of the corners: `q` holds the points of `A` in coordinates
/// where `v1 = (1,0)`, `v2 = (0,1)`, `v3 = (0,0)`, indexed like `A`.
struct Frame<'a> {
    q: Vec<Point>,
    empty: &'a [Vec<bool>],
    corners: [Point; 3],
}

impl Frame<'_> {
    fn seg(&self, u: usize, v: usize) -> (&Point, &Point) {
        (&self.q[u], &self.q[v])
    }

    /// Column sweep: `(σ1, σ2 prefix)` for each column `i >= 1`, both from the center out.
    fn candidates(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut idx: Vec<usize> = (0..self.q.len()).collect();
        idx.sort_by(|&i, &j| self.q[i].x.cmp(&self.q[j].x).then(self.q[j].y.cmp(&self.q[i].y)));
        let mut columns: Vec<Vec<usize>> = Vec::new();
        for i in idx {
            match columns.last_mut() {
                Some(col) if self.q[col[0]].x == self.q[i].x => col.push(i),
                _ => columns.push(vec![i]),
            }
        }
        let tops: Vec<usize> = columns.iter().map(|c| c[0]).collect();
        (1..columns.len()).map(|i| (tops[..=i].iter().rev().copied().collect(), columns[i].clone())).collect()
    }

    /// Longest continuation of a path from `start` with `key` strictly increasing, ending where
    /// `key` attains its maximum over `A`. Vertices of other paths are only admitted as that
    /// final point. Returns the continuation including `start`.
    fn extend(
        &self,
        start: usize,
        key: fn(&Point) -> Rat,
        used: &[bool],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        let keys: Vec<Rat> = self.q.iter().map(key).collect();
        let top = keys.iter().max().expect("nonempty").clone();
        let mut order: Vec<usize> =
            (0..self.q.len()).filter(|&v| (!used[v] || keys[v] == top) && keys[v] > keys[start]).collect();
        order.sort_by(|&u, &v| keys[u].cmp(&keys[v]).then(u.cmp(&v)));
        let n = self.q.len();
        let mut best: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut reached = vec![start];
        let mut depth = vec![0usize; n];
        for &v in &order {
            for &u in &reached {
                if keys[u] < keys[v] && self.empty[u][v] && ok(u, v) {
                    let cand = depth[u] + 1;
                    if best[v].is_none_or(|(d, _)| cand > d) {
                        best[v] = Some((cand, u));
                    }
                }
            }
            if let Some((d, _)) = best[v] {
                depth[v] = d;
                reached.push(v);
            }
        }
        let end = std::iter::once(start)
            .chain(order.iter().copied().filter(|&v| best[v].is_some()))
            .filter(|&v| keys[v] == top)
            .max_by(|&u, &v| depth[u].cmp(&depth[v]).then(v.cmp(&u)))?;
        let mut path = vec![end];
        let mut cur = end;
        while cur != start {
            cur = best[cur].expect("reached").1;
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    fn sigma2_ok(&self, s1: &[usize], s3: &[usize], u: usize, v: usize) -> bool {
        let g = self.seg(u, v);
        s1.windows(2).all(|w| {
            let e = self.seg(w[0], w[1]);
            !segments_conflict(e.0, e.1, g.0, g.1)
                && segment_shadows_disjoint(e, &Point::int(0, 1), g, &Point::int(1, 0))
        }) && s3.windows(2).all(|w| {
            let e = self.seg(w[0], w[1]);
            !segments_conflict(e.0, e.1, g.0, g.1)
                && segment_shadows_disjoint(g, &Point::int(-1, 0), e, &Point::int(-1, 1))
        })
    }

    fn sigma3_ok(&self, s1: &[usize], s2: &[usize], u: usize, v: usize) -> bool {
        let g = self.seg(u, v);
        s2.windows(2).all(|w| {
            let e = self.seg(w[0], w[1]);
            !segments_conflict(e.0, e.1, g.0, g.1)
                && segment_shadows_disjoint(e, &Point::int(-1, 0), g, &Point::int(-1, 1))
        }) && s1.windows(2).all(|w| {
            let e = self.seg(w[0], w[1]);
            !segments_conflict(e.0, e.1, g.0, g.1)
                && segment_shadows_disjoint(g, &Point::int(1, -1), e, &Point::int(0, -1))
        })
    }

    fn used(&self, paths: &[&[usize]]) -> Vec<bool> {
        let mut used = vec![false; self.q.len()];
        for p in paths {
            for &v in *p {
                used[v] = true;
            }
        }
        used
    }

    /// Extends a horizontal-vertical pair to a star: the longest admissible continuation of σ2
    /// down to the lowest level, then the longest σ3 up to the top level of `x + y`; if that
    /// order blocks, σ3 is routed first.
    fn complete(&self, s1: &[usize], s2: &[usize]) -> Option<[Vec<usize>; 3]> {
        let center = s1[0];
        let neg_y: fn(&Point) -> Rat = |p| -p.y.clone();
        let sum: fn(&Point) -> Rat = |p| &p.x + &p.y;
        let start2 = *s2.last().expect("nonempty");
        let try_order = |second_first: bool| -> Option<[Vec<usize>; 3]> {
            if second_first {
                let used = self.used(&[s1, s2]);
                let ext = self.extend(start2, neg_y, &used, &|u, v| self.sigma2_ok(s1, &[center], u, v))?;
                let full2: Vec<usize> = s2.iter().copied().chain(ext[1..].iter().copied()).collect();
                let used = self.used(&[s1, &full2]);
                let s3 = self.extend(center, sum, &used, &|u, v| self.sigma3_ok(s1, &full2, u, v))?;
                Some([s1.to_vec(), full2, s3])
            } else {
                let used = self.used(&[s1, s2]);
                let s3 = self.extend(center, sum, &used, &|u, v| self.sigma3_ok(s1, s2, u, v))?;
                let used = self.used(&[s1, s2, &s3]);
                let ext = self.extend(start2, neg_y, &used, &|u, v| self.sigma2_ok(s1, &s3, u, v))?;
                let full2: Vec<usize> = s2.iter().copied().chain(ext[1..].iter().copied()).collect();
                Some([s1.to_vec(), full2, s3])
            }
        };
        try_order(true).or_else(|| try_order(false))
    }
}

fn normalize(a: &PointSet, c: &[Point; 3]) -> Vec<Point> {
    let e1 = &c[0] - &c[2];
    let e2 = &c[1] - &c[2];
    let det = e1.cross(&e2);
    a.iter()
        .map(|p| {
            let r = p - &c[2];
            Point::new(&r.cross(&e2) / &det, &e1.cross(&r) / &det)
        })
        .collect()
}

fn emptiness(a: &PointSet) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut e = vec![vec![true; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let free = (0..n).all(|m| m == i || m == j || !in_open_segment(a.get(m), a.get(i), a.get(j)));
            e[i][j] = free;
            e[j][i] = free;
        }
    }
    e
}

const LABELLINGS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]];

/// Scans every labelling of `corners` and every column candidate. `score` ranks stars by
/// their labelled corners and three lengths; the scan stops at the first star for which
/// `enough` holds.
pub(crate) fn search_stars(
    a: &PointSet,
    corners: &[Point; 3],
    score: &dyn Fn(&[Point; 3], [usize; 3]) -> usize,
    enough: &dyn Fn([usize; 3]) -> bool,
) -> Option<ProperStar> {
    let empty = emptiness(a);
    let frames: Vec<Frame<'_>> = LABELLINGS
        .iter()
        .map(|l| {
            let c = [corners[l[0]].clone(), corners[l[1]].clone(), corners[l[2]].clone()];
            Frame { q: normalize(a, &c), empty: &empty, corners: c }
        })
        .collect();
    let mut queue: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for (f, frame) in frames.iter().enumerate() {
        for (s1, s2) in frame.candidates() {
            let hv = s1.len() + s2.len() - 2;
            queue.push((hv, f, s1, s2));
        }
    }
    // Longest horizontal-vertical prefixes first; ties keep labelling and column order.
    queue.sort_by_key(|x| std::cmp::Reverse(x.0));
    let mut best: Option<(usize, ProperStar)> = None;
    for (_, f, s1, s2) in queue {
        let frame = &frames[f];
        let Some(paths) = frame.complete(&s1, &s2) else { continue };
        let lens = [paths[0].len() - 1, paths[1].len() - 1, paths[2].len() - 1];
        let star = ProperStar { center: s1[0], paths, corners: frame.corners.clone() };
        let s = score(&star.corners, lens);
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, star));
        }
        if enough(lens) {
            break;
        }
    }
    best.map(|(_, s)| s)
}

fn triangle_corners(b: &PointSet) -> Result<[Point; 3], MixedError> {
    if b.len() != 3 || b.dim() != 2 {
        return Err(MixedError::Geometry(crate::geometry::GeometryError::DegenerateInput { dim: b.dim() }));
    }
    Ok([b.get(0).clone(), b.get(1).clone(), b.get(2).clone()])
}

/// A star of total length `L` with `L^2 >= |T_A|`, and a triangulation of `A` containing its edges.
pub fn find_proper_star(a: &PointSet, b: &PointSet) -> Result<(Triangulation, ProperStar), MixedError> {
    a.require_planar()?;
    let corners = triangle_corners(b)?;
    let triangles = tr(a)?;
    let total = |l: [usize; 3]| l.iter().sum::<usize>();
    let star = search_stars(a, &corners, &|_, l| total(l), &|l| total(l) * total(l) >= triangles);
    let best = star.as_ref().map_or(0, ProperStar::total_len);
    match star {
        Some(s) if best * best >= triangles => {
            let ta = constrained_triangulation(a, &s.edges())?;
            Ok((ta, s))
        }
        _ => Err(MixedError::SearchFailed { best, triangles }),
    }
}

/// A validated mixed subdivision of `A + B` for a triangle `B` with `m11^2 >= |T_A|`.
pub fn triangle_mixed(a: &PointSet, b: &PointSet) -> Result<MixedSubdivision, MixedError> {
    let (ta, star) = find_proper_star(a, b)?;
    let tb = triangulate(b)?;
    mixed_from_star(&ta, &tb, &star)
}
