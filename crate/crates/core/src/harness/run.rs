use std::time::Instant;

use rayon::prelude::*;

use super::config::{CampaignSpec, Check};
use super::generate::instances;
use super::{CampaignError, CampaignReport, CheckTally, Finding, Instance};
use crate::geometry::{convex_hull, hull_decompose, minkowski_sum, Point};
use crate::mixed::{convex_position_mixed, is_convex_position, self_sum_subdivision, triangle_mixed, MixedSubdivision};
use crate::rat::Rat;
use crate::sumset::{
    check_conjecture1, check_strong, classify_equality, doubling_bounds, one_extra_check, scover_bounds,
    stability_check, BoundReport, EqualityKind,
};
use crate::triangulation::{tr, triangulate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Skipped(String),
    /// `theorem` marks failures that contradict a proved statement.
    Violation {
        theorem: bool,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub verdict: Verdict,
    /// Smallest slack among the inequality reports that held.
    pub slack: Option<Rat>,
    pub detail: String,
}

impl CheckOutcome {
    fn skipped(check: Check, why: impl ToString) -> Self {
        CheckOutcome { check, verdict: Verdict::Skipped(why.to_string()), slack: None, detail: String::new() }
    }

    fn theorem_failure(check: Check, detail: impl ToString) -> Self {
        let detail = detail.to_string();
        CheckOutcome {
            check,
            verdict: Verdict::Violation { theorem: true, detail: detail.clone() },
            slack: None,
            detail,
        }
    }

    /// Every applicable report must hold; `theorem` says what a failure means.
    fn from_reports(check: Check, reports: &[BoundReport], theorem: bool) -> Self {
        let applicable: Vec<&BoundReport> = reports.iter().filter(|r| r.applicable).collect();
        if applicable.is_empty() {
            let why = reports.first().map_or("no report".to_string(), |r| r.to_string());
            return CheckOutcome::skipped(check, why);
        }
        let detail = applicable.iter().map(|r| r.line()).collect::<Vec<_>>().join("; ");
        if let Some(bad) = applicable.iter().find(|r| !r.holds) {
            let verdict = Verdict::Violation { theorem, detail: bad.line() };
            return CheckOutcome { check, verdict, slack: None, detail };
        }
        let slack = applicable.iter().map(|r| r.slack()).min();
        CheckOutcome { check, verdict: Verdict::Pass, slack, detail }
    }
}

fn mixed_outcome(check: Check, m: MixedSubdivision, bound: BoundReport) -> CheckOutcome {
    match m.validate() {
        Err(defect) => CheckOutcome::theorem_failure(check, format!("invalid subdivision: {defect}")),
        Ok(()) => CheckOutcome::from_reports(check, &[bound.witness("weight", m.weight())], true),
    }
}

fn product_bound(m: &MixedSubdivision) -> BoundReport {
    let m11 = m.m11() as i64;
    let product = (m.ta.len() * m.tb.len()) as i64;
    BoundReport::new("m11-squared", Rat::from_int(m11 * m11), Rat::from_int(product)).witness("m11", m11)
}

/// Runs one check on one instance.
pub fn evaluate(check: Check, inst: &Instance, epsilon: &Rat) -> CheckOutcome {
    let (a, b) = (&inst.a, inst.second());
    match check {
        Check::Conj1 => match check_conjecture1(a, b) {
            Ok(r) => CheckOutcome::from_reports(check, &[r], false),
            Err(e) => CheckOutcome::skipped(check, e),
        },
        // Only equal hulls put the strong inequality under a theorem.
        Check::Strong => match check_strong(a, b) {
            Ok(r) => CheckOutcome::from_reports(check, &[r], convex_hull(a.points()) == convex_hull(b.points())),
            Err(e) => CheckOutcome::skipped(check, e),
        },
        Check::EqualityClass => {
            let class = match classify_equality(a) {
                Ok(c) => c,
                Err(e) => return CheckOutcome::skipped(check, e),
            };
            let (t, t2) = (tr(a).expect("planar"), tr(&minkowski_sum(a, a)).expect("planar"));
            let claimed = matches!(class.kind, EqualityKind::SaturatedA | EqualityKind::CaseB);
            let detail = format!("{:?} tr {t} tr(A+A) {t2}", class.kind);
            if claimed != (t2 == 4 * t) {
                return CheckOutcome::theorem_failure(check, detail);
            }
            CheckOutcome { check, verdict: Verdict::Pass, slack: None, detail }
        }
        Check::OneExtra => {
            let Some(p) = inst.b.as_ref().and_then(|b| b.iter().find(|p| !a.contains(p))) else {
                return CheckOutcome::skipped(check, "no point of B outside A");
            };
            match one_extra_check(a, p) {
                Ok(r) => CheckOutcome::from_reports(check, &[r], true),
                Err(e) => CheckOutcome::skipped(check, e),
            }
        }
        Check::TriangleMixed => {
            if b.len() != 3 || b.dim() != 2 || a.dim() != 2 {
                return CheckOutcome::skipped(check, "B is not a triangle");
            }
            match triangle_mixed(a, b) {
                Ok(m) => {
                    let bound = product_bound(&m);
                    mixed_outcome(check, m, bound)
                }
                Err(e) => CheckOutcome::theorem_failure(check, e),
            }
        }
        Check::ConvexMixed => {
            let convex = |s| a.dim() == 2 && b.dim() == 2 && is_convex_position(s).unwrap_or(false);
            if !convex(a) || !convex(b) {
                return CheckOutcome::skipped(check, "not in convex position");
            }
            let m = match convex_position_mixed(a, b) {
                Ok(m) => m,
                Err(e) => return CheckOutcome::theorem_failure(check, e),
            };
            let bound = if a.len() >= 4 && b.len() >= 4 {
                let need = tr(a).expect("planar") + tr(b).expect("planar");
                BoundReport::new("twice-m11", Rat::from(2 * m.m11()), Rat::from(need))
            } else {
                product_bound(&m)
            };
            mixed_outcome(check, m, bound)
        }
        Check::SelfSum => {
            let ta = match triangulate(a) {
                Ok(t) => t,
                Err(e) => return CheckOutcome::skipped(check, e),
            };
            let m = match self_sum_subdivision(&ta) {
                Ok(m) => m,
                Err(e) => return CheckOutcome::theorem_failure(check, e),
            };
            let weight = m.weight();
            let detail = format!("weight {weight} triangles {}", ta.len());
            if weight != 4 * ta.len() {
                return CheckOutcome::theorem_failure(check, detail);
            }
            // An identity, not an inequality: keep it out of the near-equality list.
            let bound = BoundReport::new("self-sum-weight", Rat::from(weight), Rat::from(4 * ta.len()));
            CheckOutcome { slack: None, ..mixed_outcome(check, m, bound) }
        }
        Check::Doubling => match doubling_bounds(a) {
            Ok(rs) => CheckOutcome::from_reports(check, &rs, true),
            Err(e) => CheckOutcome::skipped(check, e),
        },
        Check::Scover => {
            let Ok(hull) = hull_decompose(a) else { return CheckOutcome::skipped(check, "not planar") };
            let sides = hull.sides();
            let side = sides.iter().max_by_key(|s| s.len()).expect("polygon has sides");
            let direction: Point = &side[side.len() - 1] - &side[0];
            match scover_bounds(a, &direction) {
                Ok(rs) => CheckOutcome::from_reports(check, &rs, true),
                Err(e) => CheckOutcome::skipped(check, e),
            }
        }
        Check::Stability => match stability_check(a, epsilon) {
            Ok(r) => CheckOutcome::from_reports(check, &[r], true),
            Err(e) => CheckOutcome::skipped(check, e),
        },
    }
}

/// Instances are evaluated in parallel blocks and folded in stream order, so the report and
/// the reported first failure do not depend on the thread count.
pub fn run_campaign(spec: &CampaignSpec) -> Result<CampaignReport, CampaignError> {
    let start = Instant::now();
    let list = instances(spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads)
        .build()
        .map_err(|e| CampaignError::ThreadPool(e.to_string()))?;
    let mut tallies: Vec<(Check, CheckTally)> = spec.checks.iter().map(|&c| (c, CheckTally::default())).collect();
    let mut findings = Vec::new();
    let mut near_equality = Vec::new();
    const BLOCK: usize = 1024;
    for (block, chunk) in list.chunks(BLOCK).enumerate() {
        let outcomes: Vec<Vec<CheckOutcome>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|inst| spec.checks.iter().map(|&c| evaluate(c, inst, &spec.epsilon)).collect())
                .collect()
        });
        for (offset, (inst, row)) in chunk.iter().zip(outcomes).enumerate() {
            let index = block * BLOCK + offset;
            for (outcome, (_, tally)) in row.into_iter().zip(tallies.iter_mut()) {
                tally.run += 1;
                let finding =
                    |detail: String| Finding { index, check: outcome.check, instance: inst.to_string(), detail };
                match outcome.verdict {
                    Verdict::Skipped(_) => tally.skipped += 1,
                    Verdict::Violation { theorem: true, detail } => {
                        return Err(CampaignError::TheoremViolation {
                            check: outcome.check,
                            index,
                            instance: inst.to_string(),
                            detail,
                        });
                    }
                    Verdict::Violation { theorem: false, detail } => {
                        tally.findings += 1;
                        findings.push(finding(detail));
                    }
                    Verdict::Pass => {
                        tally.passed += 1;
                        if let Some(slack) = outcome.slack.filter(|s| *s <= spec.near_threshold) {
                            tally.near += 1;
                            if near_equality.len() < spec.near_limit {
                                near_equality.push((finding(outcome.detail.clone()), slack));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CampaignReport {
        generator: spec.generator.kind().to_string(),
        instances_run: list.len(),
        tallies,
        findings,
        near_equality,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{Generator, Partner};
    use crate::harness::named::NamedInstance;
    use crate::PointSet;

    #[test]
    fn named_equality_instance() {
        let spec =
            CampaignSpec::new(Generator::Named(NamedInstance::Grids { k: 2, m: 3 }), Partner::None, vec![Check::Conj1]);
        let report = run_campaign(&spec).unwrap();
        assert_eq!(report.instances_run, 1);
        assert_eq!(report.near_equality.len(), 1);
        assert_eq!(report.near_equality[0].1, Rat::zero());
        assert!(report.render().contains("RESULT status clean"));
    }

    #[test]
    fn strong_failure_is_a_finding_off_equal_hulls() {
        let spec = CampaignSpec::new(
            Generator::Named(NamedInstance::Simplices { k: 1, l: 2 }),
            Partner::None,
            vec![Check::Strong],
        );
        let report = run_campaign(&spec).unwrap();
        assert_eq!(report.findings.len(), 1);
        assert!(report.render().contains("RESULT finding strong 0"));
    }

    #[test]
    fn theorem_checks_on_a_grid() {
        let inst = Instance {
            a: PointSet::grid(0, 0, 3, 3),
            b: Some(PointSet::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap()),
        };
        for c in [Check::TriangleMixed, Check::SelfSum, Check::Doubling, Check::Scover, Check::EqualityClass] {
            let o = evaluate(c, &inst, &Rat::new(1, 6));
            assert_eq!(o.verdict, Verdict::Pass, "{c}: {}", o.detail);
        }
        assert!(matches!(evaluate(Check::OneExtra, &inst, &Rat::new(1, 6)).verdict, Verdict::Skipped(_)));
        let extra = Instance { b: Some(inst.a.with_point(Point::int(5, 1)).unwrap()), ..inst.clone() };
        assert_eq!(evaluate(Check::OneExtra, &extra, &Rat::new(1, 6)).verdict, Verdict::Pass);
        assert!(matches!(evaluate(Check::Stability, &inst, &Rat::new(1, 6)).verdict, Verdict::Skipped(_)));
        assert!(matches!(evaluate(Check::ConvexMixed, &inst, &Rat::new(1, 6)).verdict, Verdict::Skipped(_)));
    }

    #[test]
    fn reports_ignore_thread_count() {
        let gen = Generator::Random { seed: 5, count: 60, bound: 6, min_points: 3, max_points: 9 };
        let spec = CampaignSpec::new(gen, Partner::Independent, vec![Check::Conj1, Check::OneExtra, Check::Doubling]);
        let one = run_campaign(&spec.clone().threads(1)).unwrap().render();
        let two = run_campaign(&spec.threads(2)).unwrap().render();
        assert_eq!(one, two);
    }
}
