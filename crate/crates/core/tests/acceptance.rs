//! Acceptance run: one line per criterion, nonzero exit if any criterion fails.
//!
//! Expected values here come from closed forms or brute-force oracles written independently
//! of the library's own algorithms.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trisum::geometry::PointSet;
use trisum::harness::{case_b, example_one, run_campaign, CampaignReport, CampaignSpec, Check, Generator, Partner};
use trisum::io::{parse_exchange, parse_points_nd};
use trisum::mixed::{build_counterexample, self_sum_nd, verify_counterexample_structure, SimplicialComplex};
use trisum::sumset::{check_conjecture1, stability_check};
use trisum::triangulation::{find_hv_path, hv_bound_met, tr, triangulate, validate_hv_path};
use trisum::Rat;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn ints(a: &PointSet) -> Vec<(i64, i64)> {
    a.iter().map(|p| p.to_i64().expect("integer input")).collect()
}

fn cross(o: (i64, i64), p: (i64, i64), q: (i64, i64)) -> i64 {
    (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
}

/// Boundary count by brute force: `p` is on the hull boundary iff some line through `p` and
/// another point has the whole set on one closed side.
fn boundary_count(pts: &[(i64, i64)]) -> usize {
    pts.iter()
        .filter(|&&p| {
            pts.iter().any(|&q| {
                q != p && (pts.iter().all(|&r| cross(p, q, r) >= 0) || pts.iter().all(|&r| cross(p, q, r) <= 0))
            })
        })
        .count()
}

fn sumset_count(a: &[(i64, i64)], b: &[(i64, i64)]) -> usize {
    a.iter().flat_map(|p| b.iter().map(move |q| (p.0 + q.0, p.1 + q.1))).collect::<HashSet<_>>().len()
}

fn random_planar(rng: &mut ChaCha8Rng, bound: i64, lo: usize, hi: usize) -> PointSet {
    loop {
        let n = rng.gen_range(lo..=hi);
        let pts: HashSet<(i64, i64)> = (0..n).map(|_| (rng.gen_range(0..=bound), rng.gen_range(0..=bound))).collect();
        let a = PointSet::from_ints(&pts.into_iter().collect::<Vec<_>>()).unwrap();
        if a.dim() == 2 {
            return a;
        }
    }
}

fn campaign(generator: Generator, partner: Partner, checks: Vec<Check>, dedup: bool) -> Result<CampaignReport, String> {
    run_campaign(&CampaignSpec::new(generator, partner, checks).dedup(dedup)).map_err(|e| e.to_string())
}

/// Clean report whose listed checks never skipped.
fn clean(report: &CampaignReport, checks: &[Check]) -> (bool, String) {
    let mut ok = report.is_clean();
    let mut parts = vec![format!("{} instances", report.instances_run)];
    for &c in checks {
        let t = report.tally(c).expect("requested check");
        ok &= t.skipped == 0 && t.passed == t.run;
        parts.push(format!("{c} {}/{} passed", t.passed, t.run));
    }
    if let Some(f) = report.findings.first() {
        parts.push(format!("first finding {}: {}", f.check, f.detail));
    }
    (ok, parts.join(", "))
}

fn euler_identity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..500 {
        let a = random_planar(&mut rng, 20, 3, 40);
        let t = triangulate(&a).unwrap();
        let expected = 2 * a.len() - boundary_count(&ints(&a)) - 2;
        if t.len() != expected || !t.is_valid() {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("500 sets in {{0..20}}^2, {bad} mismatches against 2|A| - boundary - 2"))
}

fn equality_oracle() -> Verdict {
    let gen = Generator::ExhaustiveGrid { w: 3, h: 3, min_points: 3, max_points: 9 };
    match campaign(gen, Partner::None, vec![Check::EqualityClass], true) {
        Ok(r) => {
            let (ok, d) = clean(&r, &[Check::EqualityClass]);
            verdict(ok, format!("{d} (classifier vs brute-force tr(A+A) = 4 tr(A))"))
        }
        Err(e) => verdict(false, e),
    }
}

fn strong_equal_hulls() -> Verdict {
    let gen = Generator::Random { seed: 3, count: 200, bound: 8, min_points: 3, max_points: 14 };
    match campaign(gen, Partner::SameHull, vec![Check::Strong], false) {
        Ok(r) => {
            let (ok, d) = clean(&r, &[Check::Strong]);
            verdict(ok && r.instances_run == 200, d)
        }
        Err(e) => verdict(false, e),
    }
}

fn one_extra_point() -> Verdict {
    let gen = Generator::Random { seed: 4, count: 300, bound: 8, min_points: 3, max_points: 14 };
    match campaign(gen, Partner::ExtraPoint, vec![Check::OneExtra], false) {
        Ok(r) => {
            let (ok, d) = clean(&r, &[Check::OneExtra]);
            verdict(ok && r.instances_run == 300, d)
        }
        Err(e) => verdict(false, e),
    }
}

fn triangle_campaign() -> Verdict {
    let gen = Generator::ExhaustiveGrid { w: 4, h: 4, min_points: 3, max_points: 8 };
    match campaign(gen, Partner::Triangles { w: 3, h: 3 }, vec![Check::TriangleMixed], true) {
        Ok(r) => {
            let (ok, d) = clean(&r, &[Check::TriangleMixed]);
            verdict(ok, format!("{d} (validated, m11^2 >= |T_A|)"))
        }
        Err(e) => verdict(false, e),
    }
}

fn convex_campaign() -> Verdict {
    let gen = Generator::ConvexRandom { seed: 6, count: 200, bound: 14, min_points: 4, max_points: 12 };
    match campaign(gen, Partner::Independent, vec![Check::ConvexMixed, Check::Conj1], false) {
        Ok(r) => {
            let (ok, d) = clean(&r, &[Check::ConvexMixed, Check::Conj1]);
            verdict(ok && r.instances_run == 200, format!("{d} (2 m11 >= tr(A) + tr(B))"))
        }
        Err(e) => verdict(false, e),
    }
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    std::fs::read_to_string(p).expect("test data")
}

fn self_sum() -> Verdict {
    let gen = Generator::Random { seed: 7, count: 100, bound: 10, min_points: 3, max_points: 25 };
    let planar = match campaign(gen, Partner::None, vec![Check::SelfSum], false) {
        Ok(r) => clean(&r, &[Check::SelfSum]),
        Err(e) => (false, e),
    };
    let points = parse_points_nd(&data("tetrahedron.pts"), None).unwrap();
    let list = parse_exchange(&data("tetrahedron.simplices")).unwrap();
    let complex = SimplicialComplex { dim: list.dim, points, simplices: list.simplices };
    let weight = self_sum_nd(&complex).map(|m| m.weight());
    let ok = planar.0 && weight == Ok(8);
    verdict(ok, format!("{}; tetrahedron weight {:?}", planar.1, weight))
}

fn counterexample() -> Verdict {
    let ce = build_counterexample(145);
    let delta = boundary_count(&ints(&ce.b));
    let t = tr(&ce.b).unwrap();
    let reports = verify_counterexample_structure(145);
    let all = reports.iter().all(|r| r.holds);
    let below = verify_counterexample_structure(144);
    let (threshold_144, facts_144) = below.split_last().unwrap();
    let ok = ce.tb.len() == 580
        && ce.tb.is_valid()
        && delta == 4
        && t == 580
        && all
        && !threshold_144.holds
        && facts_144.iter().all(|r| r.holds);
    verdict(
        ok,
        format!(
            "|T_B| = {}, boundary {delta}, tr(B) = {t}, k=145 checks {}, k=144 threshold {}",
            ce.tb.len(),
            if all { "all hold" } else { "FAIL" },
            if threshold_144.holds { "holds (unexpected)" } else { "fails as expected" }
        ),
    )
}

fn freiman_suite() -> Verdict {
    let gen = Generator::Random { seed: 9, count: 300, bound: 10, min_points: 3, max_points: 30 };
    let random = match campaign(gen, Partner::None, vec![Check::Doubling, Check::Scover], false) {
        Ok(r) => clean(&r, &[Check::Doubling, Check::Scover]),
        Err(e) => (false, e),
    };
    let a = case_b();
    let pts = ints(&a);
    let boundary_bound = 4 * a.len() - boundary_count(&pts) - 3;
    let actual = sumset_count(&pts, &pts);
    verdict(
        random.0 && actual == boundary_bound,
        format!("{}; case-(b) |A+A| = {actual} vs 4|A| - boundary - 3 = {boundary_bound}", random.1),
    )
}

fn stability() -> Verdict {
    let a = PointSet::grid(1, 1, 12, 144);
    let r = match stability_check(&a, &Rat::new(1, 6)) {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    let w = |k: &str| r.witness.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone()).unwrap_or_default();
    // |A+A| of a product of two progressions is the product of 2k - 1 and 2k^2 - 1.
    let expected_sum = (2 * 12 - 1) * (2 * 144 - 1);
    let ok = r.applicable
        && r.holds
        && a.len() == 1728
        && w("sumset") == expected_sum.to_string()
        && w("s") == "12"
        && r.lhs == Rat::from_int(20);
    verdict(
        ok,
        format!(
            "|A| = {}, |A+A| = {} (expected {expected_sum}), s = {} <= bound {}",
            a.len(),
            w("sumset"),
            w("s"),
            r.lhs
        ),
    )
}

fn equality_family() -> Verdict {
    let square = |k: i64| PointSet::grid(0, 0, k + 1, k + 1);
    let mut parts = Vec::new();
    let mut ok = true;
    let pairs: Vec<(String, PointSet, PointSet)> = [(2, 3), (3, 4), (2, 5)]
        .iter()
        .map(|&(k, m)| (format!("square {k},{m}"), square(k), square(m)))
        .chain(
            [(2, 3), (1, 4)]
                .iter()
                .map(|&(k, l)| (format!("simplex {k},{l}"), PointSet::simplex(k), PointSet::simplex(l))),
        )
        .collect();
    for (name, a, b) in pairs {
        let r = check_conjecture1(&a, &b).unwrap();
        ok &= r.equality;
        parts.push(format!("{name} {}", if r.equality { "equality" } else { "not equal" }));
    }
    let trs = (tr(&square(2)).unwrap(), tr(&square(3)).unwrap(), tr(&square(5)).unwrap());
    ok &= trs == (8, 18, 50);
    verdict(ok, format!("{}; tr = {}, {}, {}", parts.join(", "), trs.0, trs.1, trs.2))
}

fn hv_paths() -> Verdict {
    let a = example_one(5, 1);
    let t = tr(&a).unwrap();
    let p = find_hv_path(&a).unwrap();
    let instance_ok =
        p.total_len() == 5 && validate_hv_path(&a, &p).is_ok() && !hv_bound_met(4, t) && hv_bound_met(5, t);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut bad = 0;
    for _ in 0..200 {
        let b = random_planar(&mut rng, 12, 3, 40);
        let q = find_hv_path(&b).unwrap();
        if validate_hv_path(&b, &q).is_err() || !q.meets_bound(tr(&b).unwrap()) {
            bad += 1;
        }
    }
    verdict(
        instance_ok && bad == 0,
        format!("example instance tr = {t}, L = {}; 200 random sets, {bad} below bound", p.total_len()),
    )
}

type Criterion = (&'static str, u64, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("triangle count identity", 10, euler_identity),
        ("equality classifier", 30, equality_oracle),
        ("strong inequality for equal hulls", 60, strong_equal_hulls),
        ("one extra point", 60, one_extra_point),
        ("triangle summand campaign", 600, triangle_campaign),
        ("convex position", 300, convex_campaign),
        ("self sums", 60, self_sum),
        ("fixed-triangulation family", 5, counterexample),
        ("doubling and cover-line bounds", 120, freiman_suite),
        ("line-cover stability", 60, stability),
        ("equality families", 5, equality_family),
        ("horizontal-vertical paths", 60, hv_paths),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*budget);
        let pass = v.pass && in_time;
        failed += !pass as usize;
        println!(
            "criterion {:>2} {}: {} ({:.1}s of {budget}s) {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            took.as_secs_f64(),
            v.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
