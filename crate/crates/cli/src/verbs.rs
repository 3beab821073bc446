use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use trisum::geometry::{hull_decompose, minkowski_sum, Point, PointSet};
use trisum::harness::{run_campaign, CampaignSpec};
use trisum::io::{format_point_set, parse_exchange, parse_point_set, parse_points_nd, parse_triangulation};
use trisum::mixed::{
    build_counterexample, convex_position_mixed, find_proper_star, parse_mixed, self_sum_nd, self_sum_subdivision,
    triangle_mixed, verify_counterexample_structure, MixedSubdivision, SimplicialComplex,
};
use trisum::sumset::{
    check_conjecture1, check_strong, classify_equality, doubling_bounds, one_extra_check, scover_bounds,
    stability_check, visible_points, BoundReport,
};
use trisum::svg::{counterexample_svg, hull_svg, mixed_svg, triangulation_svg};
use trisum::triangulation::{find_hv_path, hv_bound_met, tr, triangulate};
use trisum::Rat;

use crate::{Cli, Inequality, Verb};

/// What a verb produced: text and JSON renderings of the same result.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub holds: bool,
    pub stderr: Option<String>,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, holds: true, stderr: None }
    }

    fn holds(mut self, holds: bool) -> Self {
        self.holds = holds;
        self
    }
}

/// A one-line diagnostic; exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct CliError(String);

fn fail(msg: impl std::fmt::Display) -> CliError {
    CliError(msg.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PointSet, CliError> {
    parse_point_set(&read(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

/// Loads a set that must span the plane.
fn load_planar(path: &Path) -> Result<PointSet, CliError> {
    let a = load(path)?;
    a.require_planar().map_err(|e| fail(format!("{}: {e}", path.display())))?;
    Ok(a)
}

fn parse_xy(flag: &str, v: &str) -> Result<Point, CliError> {
    let bad = || fail(format!("--{flag}: expected X,Y with rational coordinates, got {v:?}"));
    let (x, y) = v.split_once(',').ok_or_else(bad)?;
    let x: Rat = x.trim().parse().map_err(|_| bad())?;
    let y: Rat = y.trim().parse().map_err(|_| bad())?;
    Ok(Point::new(x, y))
}

fn write_svg(path: Option<&Path>, svg: impl FnOnce() -> String) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, svg()).map_err(|e| fail(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn verdict(r: &BoundReport) -> &'static str {
    match (r.applicable, r.holds, r.equality) {
        (false, _, _) => "not applicable",
        (true, true, true) => "equality",
        (true, true, false) => "holds",
        (true, false, _) => "fails",
    }
}

fn report_text(r: &BoundReport) -> String {
    let mut s = if r.applicable {
        format!("{}: {} >= {} {}", r.name, r.lhs, r.rhs, verdict(r))
    } else {
        format!("{}: {}", r.name, verdict(r))
    };
    for (k, v) in &r.witness {
        let _ = write!(s, " {k}={v}");
    }
    s.push('\n');
    s
}

fn reports_output(reports: Vec<BoundReport>) -> Output {
    let text = reports.iter().map(report_text).collect();
    let holds = reports.iter().all(|r| r.holds);
    Output::new(text, json!(reports)).holds(holds)
}

fn mixed_output(m: &MixedSubdivision, svg: Option<&Path>, thick: &[(usize, usize)]) -> Result<Output, CliError> {
    write_svg(svg, || mixed_svg(m, thick))?;
    let valid = m.validate();
    let mut text = m.to_string();
    match &valid {
        Ok(()) => text.push_str("valid\n"),
        Err(d) => {
            let _ = writeln!(text, "invalid: {d}");
        }
    }
    let json = json!({
        "m11": m.m11(),
        "weight": m.weight(),
        "ta": m.ta.len(),
        "tb": m.tb.len(),
        "valid": valid.is_ok(),
        "subdivision": m,
    });
    Ok(Output::new(text, json).holds(valid.is_ok()))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.verb {
        Verb::Tr { set } => {
            let a = load(set)?;
            let t = tr(&a).map_err(fail)?;
            Ok(Output::new(format!("tr = {t}\n"), json!({ "tr": t, "points": a.len() })))
        }
        Verb::Hull { set, svg } => {
            let a = load_planar(set)?;
            let h = hull_decompose(&a).map_err(fail)?;
            write_svg(svg.as_deref(), || hull_svg(&a))?;
            let verts: Vec<String> = h.vertices.iter().map(|p| p.to_string()).collect();
            let text = format!("vertices {}\nboundary = {}\ninterior = {}\n", verts.join(" "), h.delta(), h.omega());
            Ok(Output::new(text, json!(h)))
        }
        Verb::Sum { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let s = minkowski_sum(&a, &b);
            let text = format!("# |A+B| = {}\n{}", s.len(), format_point_set(&s));
            Ok(Output::new(text, json!({ "size": s.len(), "points": s })))
        }
        Verb::Check { inequality, a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let r = match inequality {
                Inequality::Conj1 => check_conjecture1(&a, &b),
                Inequality::Strong => check_strong(&a, &b),
            }
            .map_err(fail)?;
            Ok(reports_output(vec![r]))
        }
        Verb::Classify { set } => {
            let a = load(set)?;
            let c = classify_equality(&a).map_err(fail)?;
            let text = format!("{:?} tr = {} tr(A+A) = {}\n", c.kind, c.tr, c.tr_double);
            Ok(Output::new(text, json!(c)).holds(c.consistent))
        }
        Verb::Visible { set, point } => {
            let a = load(set)?;
            let b = parse_xy("point", point)?;
            let v = visible_points(&a, &b).map_err(fail)?;
            Ok(Output::new(format_point_set(&v), json!(v)))
        }
        Verb::OneExtra { set, point } => {
            let a = load(set)?;
            let b = parse_xy("point", point)?;
            Ok(reports_output(vec![one_extra_check(&a, &b).map_err(fail)?]))
        }
        Verb::MixedTriangle { a, b, svg } => {
            let m = triangle_mixed(&load(a)?, &load(b)?).map_err(fail)?;
            mixed_output(&m, svg.as_deref(), &[])
        }
        Verb::MixedConvex { a, b, svg } => {
            let m = convex_position_mixed(&load(a)?, &load(b)?).map_err(fail)?;
            mixed_output(&m, svg.as_deref(), &[])
        }
        Verb::MixedSelf { points, triangulation, svg } => mixed_self(points, triangulation.as_deref(), svg.as_deref()),
        Verb::Star { a, b, svg } => {
            let (a, b) = (load(a)?, load(b)?);
            let (ta, star) = find_proper_star(&a, &b).map_err(fail)?;
            let tb = triangulate(&b).map_err(fail)?;
            let m = trisum::mixed::mixed_from_star(&ta, &tb, &star).map_err(fail)?;
            write_svg(svg.as_deref(), || mixed_svg(&m, &star.edges()))?;
            let mut text = format!("center {}\n", a.get(star.center));
            for (i, path) in star.paths.iter().enumerate() {
                let pts: Vec<String> = path.iter().map(|&k| a.get(k).to_string()).collect();
                let _ = writeln!(text, "sigma{} length {}: {}", i + 1, star.len(i), pts.join(" "));
            }
            let l = star.total_len();
            let _ = writeln!(text, "total {l}, squared {} >= |T_A| = {}", l * l, ta.len());
            let holds = l * l >= ta.len();
            Ok(Output::new(text, json!({ "star": star, "total": l, "triangles": ta.len() })).holds(holds))
        }
        Verb::Hvpath { set } => {
            let a = load(set)?;
            let p = find_hv_path(&a).map_err(fail)?;
            let t = tr(&a).map_err(fail)?;
            let ok = hv_bound_met(p.total_len(), t);
            let show = |v: &[usize]| v.iter().map(|&k| a.get(k).to_string()).collect::<Vec<_>>().join(" ");
            let text = format!(
                "horizontal {}: {}\nvertical {}: {}\ntotal {} vs sqrt(tr+1) - 1/2 with tr = {t}: {}\n",
                p.horizontal_len(),
                show(&p.sigma1),
                p.vertical_len(),
                show(&p.sigma2),
                p.total_len(),
                if ok { "met" } else { "not met" }
            );
            Ok(Output::new(text, json!({ "path": p, "total": p.total_len(), "tr": t, "bound_met": ok })).holds(ok))
        }
        Verb::Counterexample { k, verify, svg } => counterexample(*k, *verify, svg.as_deref()),
        Verb::Freiman { set, direction } => {
            let a = load_planar(set)?;
            let dir = match direction {
                Some(d) => parse_xy("direction", d)?,
                None => longest_side(&a)?,
            };
            let mut reports = doubling_bounds(&a).map_err(fail)?;
            reports.extend(scover_bounds(&a, &dir).map_err(fail)?);
            Ok(reports_output(reports))
        }
        Verb::Stability { set, eps } => {
            let a = load(set)?;
            let eps: Rat = eps.parse().map_err(|_| fail(format!("--eps: invalid rational {eps:?}")))?;
            Ok(reports_output(vec![stability_check(&a, &eps).map_err(fail)?]))
        }
        Verb::Campaign { config } => {
            let mut spec =
                CampaignSpec::parse(&read(config)?).map_err(|e| fail(format!("{}: {e}", config.display())))?;
            if spec.threads == 0 {
                spec.threads = cli.threads;
            }
            let report = run_campaign(&spec).map_err(fail)?;
            let json = json!({
                "instances": report.instances_run,
                "clean": report.is_clean(),
                "checks": report.tallies.iter().map(|(c, t)| json!({
                    "check": c.name(), "run": t.run, "passed": t.passed, "skipped": t.skipped,
                    "findings": t.findings, "near": t.near,
                })).collect::<Vec<_>>(),
                "findings": report.findings.iter().map(|f| json!({
                    "index": f.index, "check": f.check.name(), "instance": f.instance, "detail": f.detail,
                })).collect::<Vec<_>>(),
            });
            let mut out = Output::new(report.render(), json).holds(report.is_clean());
            out.stderr = Some(format!("elapsed {:.2}s\n", report.elapsed.as_secs_f64()));
            Ok(out)
        }
        Verb::Svg { input, out } => {
            let text = read(input)?;
            let svg = if text.trim_start().starts_with("mixed") {
                let m = parse_mixed(&text).map_err(|e| fail(format!("{}: {e}", input.display())))?;
                mixed_svg(&m, &[])
            } else {
                let a = load_planar(input)?;
                triangulation_svg(&triangulate(&a).map_err(fail)?)
            };
            write_svg(Some(out), || svg)?;
            Ok(Output::new(format!("wrote {}\n", out.display()), json!({ "written": out })))
        }
    }
}

fn longest_side(a: &PointSet) -> Result<Point, CliError> {
    let sides = hull_decompose(a).map_err(fail)?.sides();
    let side = sides.iter().max_by_key(|s| s.len()).ok_or_else(|| fail("hull has no sides"))?;
    Ok(&side[side.len() - 1] - &side[0])
}

fn mixed_self(points: &Path, triangulation: Option<&Path>, svg: Option<&Path>) -> Result<Output, CliError> {
    let text = read(points)?;
    let at = |e: &dyn std::fmt::Display, p: &Path| fail(format!("{}: {e}", p.display()));
    let coords = parse_points_nd(&text, None).map_err(|e| at(&e, points))?;
    let dim = coords[0].len();
    if dim == 2 {
        let a = parse_point_set(&text).map_err(|e| at(&e, points))?;
        let ta = match triangulation {
            Some(t) => parse_triangulation(&a, &read(t)?).map_err(|e| at(&e, t))?,
            None => triangulate(&a).map_err(fail)?,
        };
        let m = self_sum_subdivision(&ta).map_err(fail)?;
        return mixed_output(&m, svg, &[]);
    }
    let t = triangulation.ok_or_else(|| fail(format!("{dim}-dimensional points need --triangulation")))?;
    let list = parse_exchange(&read(t)?).map_err(|e| at(&e, t))?;
    if list.dim != dim {
        return Err(fail(format!("{}: simplices have dimension {}, points {dim}", t.display(), list.dim)));
    }
    let complex = SimplicialComplex { dim, points: coords, simplices: list.simplices };
    let m = self_sum_nd(&complex).map_err(fail)?;
    let (w, n) = (m.weight(), complex.simplices.len());
    let expected = (1u64 << dim) * n as u64;
    let text = format!("dim {dim} simplices {n} cells {} weight {w} (2^{dim} * {n} = {expected})\n", m.cells.len());
    Ok(Output::new(text, json!({ "dim": dim, "simplices": n, "cells": m.cells.len(), "weight": w }))
        .holds(w == expected))
}

fn counterexample(k: i64, verify: bool, svg: Option<&Path>) -> Result<Output, CliError> {
    if k < 2 {
        return Err(fail(format!("--k: need k >= 2, got {k}")));
    }
    let ce = build_counterexample(k);
    write_svg(svg, || counterexample_svg(&ce.a, &ce.tb))?;
    let mut text =
        format!("k = {k}: |B| = {}, |T_B| = {}, tr(B) = {}\n", ce.b.len(), ce.tb.len(), tr(&ce.b).map_err(fail)?);
    let mut json = json!({ "k": k, "b": ce.b.len(), "tb": ce.tb.len() });
    let mut holds = true;
    if verify {
        let reports = verify_counterexample_structure(k);
        let (threshold, facts) = reports.split_last().expect("threshold report is last");
        for r in facts {
            let _ = writeln!(text, "{} {}/{} {}", r.name, r.lhs, r.rhs, if r.holds { "pass" } else { "FAIL" });
        }
        let sign = if threshold.holds { ">" } else { "<=" };
        let _ = writeln!(text, "sqrt(|T_A| |T_B|) = sqrt({}) {sign} 24", ce.tb.len());
        holds = reports.iter().all(|r| r.holds);
        json["reports"] = json!(reports);
        json["threshold"] = json!(threshold.holds);
    }
    Ok(Output::new(text, json).holds(holds))
}
