//! Sumset inequality checkers, the equality classifier and the Freiman bound suite.

mod checks;
mod equality;
mod freiman;

use std::fmt;

use serde::Serialize;

use crate::geometry::{GeometryError, Point};
use crate::rat::Rat;

pub use checks::{boundary_weight, check_conjecture1, check_strong, one_extra_check, visible_points};
pub use equality::{
    classify_equality, empty_quadrangles_are_parallelograms, find_case_b_chain, sides_are_progressions, EqualityClass,
    EqualityKind,
};
pub use freiman::{doubling_bounds, scover_bounds, stability_check};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SumsetError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("point {0} lies in the convex hull")]
    PointInsideHull(Point),
    #[error("point {0} is not in the set")]
    PointNotInSet(Point),
    #[error("point {0} is already in the set")]
    PointAlreadyInSet(Point),
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(Rat),
}

/// How `lhs` and `rhs` of a [`BoundReport`] relate to the underlying inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// The inequality is `lhs >= rhs` as written.
    Direct,
    /// Both sides are squared certificates: `lhs = sign(x) x^2`, `rhs = y^2` with `y >= 0`,
    /// so `lhs >= rhs` iff `x >= y`.
    SignedSquare,
}

/// One evaluated inequality instance. `holds` iff `lhs >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: Rat,
    pub rhs: Rat,
    pub comparison: Comparison,
    pub holds: bool,
    pub equality: bool,
    /// False when the hypotheses of the statement fail; `holds` is then vacuously true.
    pub applicable: bool,
    pub witness: Vec<(String, String)>,
}

impl BoundReport {
    pub fn new(name: &str, lhs: Rat, rhs: Rat) -> Self {
        Self::with_comparison(name, lhs, rhs, Comparison::Direct)
    }

    pub fn with_comparison(name: &str, lhs: Rat, rhs: Rat, comparison: Comparison) -> Self {
        let holds = lhs >= rhs;
        let equality = lhs == rhs;
        BoundReport { name: name.to_string(), lhs, rhs, comparison, holds, equality, applicable: true, witness: vec![] }
    }

    pub fn not_applicable(name: &str, reason: &str) -> Self {
        BoundReport {
            name: name.to_string(),
            lhs: Rat::zero(),
            rhs: Rat::zero(),
            comparison: Comparison::Direct,
            holds: true,
            equality: false,
            applicable: false,
            witness: vec![("reason".into(), reason.into())],
        }
    }

    pub fn witness(mut self, key: &str, value: impl ToString) -> Self {
        self.witness.push((key.to_string(), value.to_string()));
        self
    }

    pub fn slack(&self) -> Rat {
        &self.lhs - &self.rhs
    }

    /// Line form: `name lhs rhs holds equality`.
    pub fn line(&self) -> String {
        format!("{} {} {} {} {}", self.name, self.lhs, self.rhs, self.holds, self.equality)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.applicable {
            return write!(f, "{} not-applicable", self.name);
        }
        f.write_str(&self.line())
    }
}

/// `tr(A + B)` for planar inputs.
pub(crate) fn tr_of_sum(a: &crate::geometry::PointSet, b: &crate::geometry::PointSet) -> Result<usize, GeometryError> {
    crate::triangulation::tr(&crate::geometry::minkowski_sum(a, b))
}
