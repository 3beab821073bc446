//! Instance streams. Everything here is sequential so that a seed fixes the stream.

use std::collections::BTreeSet;

use num_integer::binomial;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canonical::{canonicalize, canonicalize_pair};
use super::config::{CampaignSpec, Generator, Partner};
use super::{CampaignError, Instance};
use crate::geometry::{convex_hull, hull_decompose, locate_in_convex, on_segment, Location, Point, PointSet};

/// Instances a campaign would produce before deduplication.
pub(crate) fn planned_count(spec: &CampaignSpec) -> u128 {
    let partners = match spec.partner {
        Partner::Triangles { w, h } => triangles_in(w, h).len() as u128,
        _ => 1,
    };
    let firsts = match spec.generator {
        Generator::ExhaustiveGrid { w, h, min_points, max_points } => {
            let n = (w * h) as u128;
            (min_points as u128..=max_points.min(n as usize) as u128).map(|k| binomial(n, k)).sum()
        }
        Generator::Random { count, .. } | Generator::ConvexRandom { count, .. } => count as u128,
        Generator::Named(_) => 1,
    };
    firsts * partners
}

/// Every 3-subset of `{0..w-1} x {0..h-1}` spanning a triangle, in lexicographic order.
pub(crate) fn triangles_in(w: i64, h: i64) -> Vec<PointSet> {
    let cells = PointSet::grid(0, 0, w, h);
    let p = cells.points();
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            for k in j + 1..p.len() {
                let t = PointSet::new(vec![p[i].clone(), p[j].clone(), p[k].clone()]).expect("distinct");
                if t.dim() == 2 {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn exhaustive(w: i64, h: i64, lo: usize, hi: usize) -> Vec<PointSet> {
    let cells = PointSet::grid(0, 0, w, h);
    let n = cells.len();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        if k < lo || k > hi {
            continue;
        }
        let pts: Vec<Point> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| cells.get(i).clone()).collect();
        let a = PointSet::new(pts).expect("distinct grid points");
        if a.dim() == 2 {
            out.push(a);
        }
    }
    out
}

fn random_set(rng: &mut ChaCha8Rng, bound: i64, lo: usize, hi: usize) -> PointSet {
    loop {
        let n = rng.gen_range(lo..=hi);
        let mut pts = BTreeSet::new();
        while pts.len() < n {
            pts.insert((rng.gen_range(0..=bound), rng.gen_range(0..=bound)));
        }
        let a = PointSet::from_ints(&pts.into_iter().collect::<Vec<_>>()).expect("distinct");
        if a.dim() == 2 {
            return a;
        }
    }
}

/// A random set with every point on its hull boundary: some strict hull vertices of a random
/// cloud, topped up with lattice points on the sides.
fn convex_set(rng: &mut ChaCha8Rng, bound: i64, lo: usize, hi: usize) -> PointSet {
    loop {
        let n = rng.gen_range(lo..=hi);
        let cloud: Vec<Point> =
            (0..4 * hi).map(|_| Point::int(rng.gen_range(0..=bound), rng.gen_range(0..=bound))).collect();
        let mut vertices = convex_hull(&cloud);
        if vertices.len() < 3 {
            continue;
        }
        vertices.shuffle(rng);
        vertices.truncate(n.max(3));
        let hull = convex_hull(&vertices);
        let mut sides: Vec<Point> = Vec::new();
        for i in 0..hull.len() {
            let (p, q) = (&hull[i], &hull[(i + 1) % hull.len()]);
            sides.extend(lattice_box(bound).filter(|r| on_segment(r, p, q) && r != p && r != q));
        }
        sides.shuffle(rng);
        let missing = n.saturating_sub(hull.len());
        if sides.len() < missing {
            continue;
        }
        let mut pts = hull;
        pts.extend(sides.into_iter().take(missing));
        return PointSet::new(pts).expect("distinct");
    }
}

fn lattice_box(bound: i64) -> impl Iterator<Item = Point> {
    (0..=bound).flat_map(move |x| (0..=bound).map(move |y| Point::int(x, y)))
}

fn same_hull(rng: &mut ChaCha8Rng, a: &PointSet, bound: i64) -> PointSet {
    let hull = hull_decompose(a).expect("planar");
    let mut pts = hull.vertices.clone();
    for r in lattice_box(bound) {
        if locate_in_convex(&hull.vertices, &r) != Location::Exterior && !pts.contains(&r) && rng.gen_bool(0.4) {
            pts.push(r);
        }
    }
    PointSet::new(pts).expect("distinct")
}

fn extra_point(rng: &mut ChaCha8Rng, a: &PointSet, bound: i64) -> PointSet {
    loop {
        let b = Point::int(rng.gen_range(-1..=bound + 1), rng.gen_range(-1..=bound + 1));
        if !a.contains(&b) {
            return a.with_point(b).expect("new point");
        }
    }
}

/// The instance list for `spec`, deduplicated when asked.
pub(crate) fn instances(spec: &CampaignSpec) -> Result<Vec<Instance>, CampaignError> {
    let planned = planned_count(spec);
    if planned > spec.ceiling as u128 {
        return Err(CampaignError::CeilingExceeded { planned, ceiling: spec.ceiling });
    }
    let mut out: Vec<Instance> = match &spec.generator {
        Generator::ExhaustiveGrid { w, h, min_points, max_points } => {
            let mut firsts = exhaustive(*w, *h, *min_points, *max_points);
            if spec.dedup {
                let mut seen = BTreeSet::new();
                firsts = firsts
                    .into_iter()
                    .map(|a| canonicalize(&a).expect("integer grid"))
                    .filter(|c| seen.insert(c.clone()))
                    .collect();
            }
            pair_up(firsts, &spec.partner)
        }
        Generator::Random { seed, count, bound, min_points, max_points } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let draw = |rng: &mut ChaCha8Rng| random_set(rng, *bound, *min_points, *max_points);
            seeded(&mut rng, *count, *bound, &spec.partner, draw)
        }
        Generator::ConvexRandom { seed, count, bound, min_points, max_points } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let draw = |rng: &mut ChaCha8Rng| convex_set(rng, *bound, *min_points, *max_points);
            seeded(&mut rng, *count, *bound, &spec.partner, draw)
        }
        // A named second summand is used unless the config asks for another partner.
        Generator::Named(id) => match (id.build(), &spec.partner) {
            ((a, Some(b)), Partner::None) => vec![Instance { a, b: Some(b) }],
            ((a, _), partner) => pair_up(vec![a], partner),
        },
    };
    if spec.dedup && !matches!(spec.generator, Generator::ExhaustiveGrid { .. }) {
        let mut seen = BTreeSet::new();
        out.retain(|inst| match &inst.b {
            Some(b) => canonicalize_pair(&inst.a, b).map_or(true, |k| seen.insert((k.0, Some(k.1)))),
            None => canonicalize(&inst.a).map_or(true, |k| seen.insert((k, None))),
        });
    }
    Ok(out)
}

fn seeded(
    rng: &mut ChaCha8Rng,
    count: usize,
    bound: i64,
    partner: &Partner,
    draw: impl Fn(&mut ChaCha8Rng) -> PointSet,
) -> Vec<Instance> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = draw(rng);
        let b = match partner {
            Partner::Independent => Some(draw(rng)),
            Partner::SameHull => Some(same_hull(rng, &a, bound)),
            Partner::ExtraPoint => Some(extra_point(rng, &a, bound)),
            _ => None,
        };
        match b {
            Some(b) => out.push(Instance { a, b: Some(b) }),
            None => out.extend(pair_up(vec![a], partner)),
        }
    }
    out
}

fn pair_up(firsts: Vec<PointSet>, partner: &Partner) -> Vec<Instance> {
    match partner {
        Partner::Triangles { w, h } => {
            let tris = triangles_in(*w, *h);
            firsts
                .into_iter()
                .flat_map(|a| {
                    tris.iter().map(move |b| Instance { a: a.clone(), b: Some(b.clone()) }).collect::<Vec<_>>()
                })
                .collect()
        }
        Partner::SelfSum => firsts.into_iter().map(|a| Instance { b: Some(a.clone()), a }).collect(),
        _ => firsts.into_iter().map(|a| Instance { a, b: None }).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Check;
    use crate::mixed::is_convex_position;

    #[test]
    fn exhaustive_counts() {
        // All 3..9-subsets of the 3x3 grid, minus the 8 collinear triples.
        assert_eq!(exhaustive(3, 3, 3, 9).len(), 466 - 8);
        assert_eq!(triangles_in(3, 3).len(), 76);
    }

    #[test]
    fn streams_are_reproducible_and_shaped() {
        let gen = Generator::ConvexRandom { seed: 3, count: 40, bound: 12, min_points: 4, max_points: 12 };
        let spec = CampaignSpec::new(gen, Partner::Independent, vec![Check::ConvexMixed]);
        let first = instances(&spec).unwrap();
        assert_eq!(first, instances(&spec).unwrap());
        for inst in &first {
            for s in [&inst.a, inst.b.as_ref().unwrap()] {
                assert!(is_convex_position(s).unwrap() && (4..=12).contains(&s.len()), "{:?}", s.points());
            }
        }
        let gen = Generator::Random { seed: 9, count: 30, bound: 6, min_points: 3, max_points: 10 };
        for inst in instances(&CampaignSpec::new(gen, Partner::SameHull, vec![Check::Strong])).unwrap() {
            let b = inst.b.unwrap();
            assert_eq!(convex_hull(inst.a.points()), convex_hull(b.points()));
        }
    }

    #[test]
    fn ceiling_is_enforced_before_work() {
        let gen = Generator::ExhaustiveGrid { w: 5, h: 5, min_points: 3, max_points: 25 };
        let mut spec = CampaignSpec::new(gen, Partner::None, vec![Check::Conj1]);
        spec.ceiling = 1000;
        assert!(matches!(instances(&spec), Err(CampaignError::CeilingExceeded { .. })));
    }
}
