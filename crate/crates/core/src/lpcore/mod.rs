//! Linear programs over edge-size counts `n_{s-1}, ..., n_m`.
//!
//! [`build_program`] assembles the Roman program and its strengthenings,
//! [`simplex_solve`] solves them exactly and [`verify_certificate`] re-checks
//! the primal/dual pair without touching solver state.

mod build;
mod certificate;
mod lpformat;
mod matrix;
mod simplex;

use num_rational::BigRational;
use serde::Serialize;

pub use build::{build_constraint, build_program, ConstraintKind, ConstraintSpec, Variant};
pub use certificate::verify_certificate;
pub use lpformat::write_lp;
pub use simplex::{simplex_solve, simplex_solve_with, PivotRule, SolveStats};

use crate::bounds::{BoundResult, Method};
use crate::error::{Error, Result};
use crate::exactmath::ZParams;

/// One linear row `coeffs . x (op) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub label: String,
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

/// `maximize objective . x` subject to the equality rows, the `<=` rows and
/// `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    /// Size index of variable 0; variable `j` stands for `n_{first_index + j}`.
    pub first_index: u32,
    pub objective: Vec<BigRational>,
    pub equalities: Vec<Row>,
    pub inequalities: Vec<Row>,
}

impl LinearProgram {
    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn row_count(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    /// Rows in certificate order: equalities first, then inequalities.
    pub fn rows(&self) -> impl Iterator<Item = (&Row, bool)> {
        self.equalities
            .iter()
            .map(|r| (r, true))
            .chain(self.inequalities.iter().map(|r| (r, false)))
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        let width = self.variable_count();
        for (row, _) in self.rows() {
            if row.coeffs.len() != width {
                return Err(Error::MalformedProgram(format!(
                    "row {} has {} coefficients, expected {width}",
                    row.label,
                    row.coeffs.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: BigRational,
    pub primal: Vec<BigRational>,
    /// One multiplier per row, equalities first.
    pub dual: Vec<BigRational>,
    /// Basic columns: `j < variable_count` is structural, otherwise the
    /// slack of inequality `j - variable_count`.
    pub basis: Vec<usize>,
    pub stats: SolveStats,
}

/// Solves the requested program and reports the floored optimum.
pub fn opt_bound(p: &ZParams, variant: Variant) -> Result<BoundResult> {
    let (result, _) = opt_bound_with_solution(p, variant)?;
    Ok(result)
}

pub fn opt_bound_with_solution(p: &ZParams, variant: Variant) -> Result<(BoundResult, LpSolution)> {
    let lp = build_program(p, variant)?;
    let sol = simplex_solve(&lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::Infeasible),
        LpStatus::Unbounded => return Err(Error::Unbounded),
    }
    let (method, k) = match variant {
        Variant::Roman => (Method::RomanLp, None),
        Variant::EStarK(k) => (Method::LpStarK, Some(k)),
        Variant::EStar => (Method::LpStar, None),
        Variant::EFull => (Method::LpFull, None),
    };
    Ok((BoundResult::exact(method, k, None, sol.value.clone()), sol))
}
