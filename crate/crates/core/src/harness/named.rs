//! Fixed instances addressable by id from a campaign config or the command line.

use std::fmt;
use std::str::FromStr;

use crate::geometry::{Point, PointSet};
use crate::mixed::build_counterexample;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedInstance {
    /// `grid-K-M`: the lattice points of the `K`- and `M`-dilated unit square.
    Grids { k: i64, m: i64 },
    /// `simplex-K-L`: the lattice points of the `K`- and `L`-dilated unit triangle.
    Simplices { k: i64, l: i64 },
    /// `stability-grid-K`: `{1..K} x {1..K^2}`, summed with itself.
    StabilityGrid { k: i64 },
    /// `case-b`: a triangle with an equally spaced interior chain ending at a corner.
    CaseB,
    /// `example-one-K-T`: a saturated staircase set plus one far point on the base line.
    ExampleOne { k: i64, t: i64 },
    /// `counterexample-K`: the triangle `A` and the set `B_K` of the fixed-triangulation family.
    Counterexample { k: i64 },
}

impl NamedInstance {
    /// The summands; `None` for `B` means the instance is a single set.
    pub fn build(self) -> (PointSet, Option<PointSet>) {
        match self {
            NamedInstance::Grids { k, m } => {
                (PointSet::grid(0, 0, k + 1, k + 1), Some(PointSet::grid(0, 0, m + 1, m + 1)))
            }
            NamedInstance::Simplices { k, l } => (PointSet::simplex(k), Some(PointSet::simplex(l))),
            NamedInstance::StabilityGrid { k } => (PointSet::grid(1, 1, k, k * k), None),
            NamedInstance::CaseB => (case_b(), None),
            NamedInstance::ExampleOne { k, t } => (example_one(k, t), None),
            NamedInstance::Counterexample { k } => {
                let ce = build_counterexample(k);
                (ce.a, Some(ce.b))
            }
        }
    }
}

/// `{(0,0),(8,0),(2,8),(1,1),(2,2)}`: the chain `(2,2),(1,1),(0,0)` is equally spaced.
pub fn case_b() -> PointSet {
    PointSet::from_ints(&[(0, 0), (8, 0), (2, 8), (1, 1), (2, 2)]).expect("distinct points")
}

/// Lattice points of `{x, y >= 0, x <= k-1, x + y <= k}` together with `(k+t, 0)`.
pub fn example_one(k: i64, t: i64) -> PointSet {
    let mut pts: Vec<Point> = (0..k).flat_map(|x| (0..=k - x).map(move |y| Point::int(x, y))).collect();
    pts.push(Point::int(k + t, 0));
    PointSet::new(pts).expect("distinct points")
}

impl fmt::Display for NamedInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedInstance::Grids { k, m } => write!(f, "grid-{k}-{m}"),
            NamedInstance::Simplices { k, l } => write!(f, "simplex-{k}-{l}"),
            NamedInstance::StabilityGrid { k } => write!(f, "stability-grid-{k}"),
            NamedInstance::CaseB => f.write_str("case-b"),
            NamedInstance::ExampleOne { k, t } => write!(f, "example-one-{k}-{t}"),
            NamedInstance::Counterexample { k } => write!(f, "counterexample-{k}"),
        }
    }
}

impl FromStr for NamedInstance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("unknown instance `{s}`");
        let nums = |rest: &str, n: usize, min: i64| -> Result<Vec<i64>, String> {
            let v: Vec<i64> = rest.split('-').map(|w| w.parse::<i64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
            if v.len() != n || v.iter().any(|&x| x < min || x > 1000) {
                return Err(bad());
            }
            Ok(v)
        };
        if s == "case-b" {
            return Ok(NamedInstance::CaseB);
        }
        if let Some(rest) = s.strip_prefix("grid-") {
            let v = nums(rest, 2, 1)?;
            return Ok(NamedInstance::Grids { k: v[0], m: v[1] });
        }
        if let Some(rest) = s.strip_prefix("simplex-") {
            let v = nums(rest, 2, 1)?;
            return Ok(NamedInstance::Simplices { k: v[0], l: v[1] });
        }
        if let Some(rest) = s.strip_prefix("stability-grid-") {
            let v = nums(rest, 1, 2)?;
            return Ok(NamedInstance::StabilityGrid { k: v[0] });
        }
        if let Some(rest) = s.strip_prefix("example-one-") {
            let v = nums(rest, 2, 1)?;
            return Ok(NamedInstance::ExampleOne { k: v[0], t: v[1] });
        }
        if let Some(rest) = s.strip_prefix("counterexample-") {
            let v = nums(rest, 1, 2)?;
            return Ok(NamedInstance::Counterexample { k: v[0] });
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ["grid-3-4", "simplex-2-3", "stability-grid-12", "case-b", "example-one-5-1", "counterexample-145"] {
            let n: NamedInstance = id.parse().unwrap();
            assert_eq!(n.to_string(), id);
        }
        for bad in ["grid-3", "grid-0-4", "simplex-a-b", "counterexample-1", "nothing"] {
            assert!(bad.parse::<NamedInstance>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(example_one(5, 1).len(), 21);
        let (a, b) = NamedInstance::Counterexample { k: 2 }.build();
        assert_eq!((a.len(), b.unwrap().len()), (3, 7));
        assert_eq!(NamedInstance::StabilityGrid { k: 12 }.build().0.len(), 1728);
    }
}
