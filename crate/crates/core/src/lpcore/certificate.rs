use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{LinearProgram, LpSolution, LpStatus};

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Re-checks an optimal solution from the program data alone.
///
/// Holds iff the primal point is feasible, the multipliers are dual feasible
/// (nonnegative on `<=` rows, free on equalities, covering the objective
/// column by column) and both objectives agree with the reported value.
pub fn verify_certificate(lp: &LinearProgram, sol: &LpSolution) -> bool {
    if sol.status != LpStatus::Optimal {
        return false;
    }
    let n = lp.variable_count();
    if sol.primal.len() != n || sol.dual.len() != lp.row_count() {
        return false;
    }
    if sol.primal.iter().any(|x| x.is_negative()) {
        return false;
    }
    for (row, eq) in lp.rows() {
        if row.coeffs.len() != n {
            return false;
        }
        let lhs = dot(&row.coeffs, &sol.primal);
        let ok = if eq { lhs == row.rhs } else { lhs <= row.rhs };
        if !ok {
            return false;
        }
    }
    for ((_, eq), y) in lp.rows().zip(&sol.dual) {
        if !eq && y.is_negative() {
            return false;
        }
    }
    for j in 0..n {
        let cover = lp
            .rows()
            .zip(&sol.dual)
            .fold(BigRational::zero(), |acc, ((row, _), y)| acc + y * &row.coeffs[j]);
        if cover < lp.objective[j] {
            return false;
        }
    }
    let primal_value = dot(&lp.objective, &sol.primal);
    let dual_value = lp
        .rows()
        .zip(&sol.dual)
        .fold(BigRational::zero(), |acc, ((row, _), y)| acc + y * &row.rhs);
    primal_value == sol.value && dual_value == sol.value
}
