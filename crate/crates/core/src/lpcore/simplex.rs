//! Exact two-phase revised simplex.
//!
//! The basis is stored implicitly: every row either has a basic auxiliary
//! column (its slack or its artificial) or is *tight*. With `T` the tight
//! rows and `J` the basic structural columns, `|T| = |J|` and the basis
//! matrix is block-triangular around `A[T][J]`, so each iteration only
//! inverts that small block. All arithmetic is on integers scaled by the
//! block determinant; no rounding happens anywhere.
//!
//! Entering columns follow Dantzig's rule after a nondegenerate pivot and
//! Bland's rule after a degenerate one, which rules out cycling: a cycle
//! would consist of degenerate pivots only, all chosen by Bland's rule.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::scaled_inverse;
use super::{LinearProgram, LpSolution, LpStatus};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving columns throughout.
    Bland,
    /// Largest reduced cost, switching to Bland after degenerate pivots.
    #[default]
    DantzigBland,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub pivots: u64,
    pub degenerate_pivots: u64,
}

pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution> {
    simplex_solve_with(lp, PivotRule::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RowState {
    Tight,
    Slack,
    Artificial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

struct Work {
    n: usize,
    a: Vec<Vec<BigInt>>,
    b: Vec<BigInt>,
    is_eq: Vec<bool>,
    /// Sign of the artificial column of each row.
    art_sign: Vec<i8>,
    c: Vec<BigInt>,
    state: Vec<RowState>,
    tight: Vec<usize>,
    basic: Vec<usize>,
}

/// Positive factor turning a rational row into coprime integers.
fn integer_scale(values: &[&BigRational]) -> BigRational {
    let lcm = values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let gcd = values
        .iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(&(q.numer() * (&lcm / q.denom()))));
    if gcd.is_zero() {
        BigRational::one()
    } else {
        BigRational::new(lcm, gcd)
    }
}

fn scaled_ints(values: &[BigRational], f: &BigRational) -> Vec<BigInt> {
    values
        .iter()
        .map(|q| {
            let v = q * f;
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect()
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    /// Fixed ordering for Bland's rule; artificials first so they leave
    /// ahead of anything else on ties.
    fn key(&self, var: Var) -> usize {
        let r = self.rows();
        match var {
            Var::Artificial(i) => i,
            Var::Structural(j) => r + j,
            Var::Slack(i) => r + self.n + i,
        }
    }

    fn kappa(&self, row: usize) -> i8 {
        match self.state[row] {
            RowState::Slack => 1,
            RowState::Artificial => self.art_sign[row],
            RowState::Tight => 0,
        }
    }

    fn aux_cost(&self, row: usize, phase: Phase) -> i64 {
        match (self.state[row], phase) {
            (RowState::Artificial, Phase::One) => -1,
            _ => 0,
        }
    }
}

struct Iterate {
    det: BigInt,
    /// `det * x_J`, aligned with `basic`.
    x: Vec<BigInt>,
    /// `det * aux value` for non-tight rows (zero for tight ones).
    u: Vec<BigInt>,
    /// `det * y`.
    y: Vec<BigInt>,
    inv: super::matrix::ScaledInverse,
}

fn evaluate(w: &Work, phase: Phase) -> Result<Iterate> {
    let block: Vec<Vec<BigInt>> = w
        .tight
        .iter()
        .map(|&r| w.basic.iter().map(|&j| w.a[r][j].clone()).collect())
        .collect();
    let inv = scaled_inverse(&block)
        .ok_or_else(|| Error::MalformedProgram("singular basis encountered".into()))?;
    let det = inv.det.clone();
    let b_t: Vec<BigInt> = w.tight.iter().map(|&r| w.b[r].clone()).collect();
    let x = inv.apply(&b_t);

    let mut u = vec![BigInt::zero(); w.rows()];
    let mut y = vec![BigInt::zero(); w.rows()];
    for r in 0..w.rows() {
        if w.state[r] == RowState::Tight {
            continue;
        }
        let mut val = &det * &w.b[r];
        for (j, xj) in w.basic.iter().zip(&x) {
            if !w.a[r][*j].is_zero() {
                val -= &w.a[r][*j] * xj;
            }
        }
        let kappa = w.kappa(r);
        u[r] = if kappa < 0 { -val } else { val };
        y[r] = &det * BigInt::from(w.aux_cost(r, phase) * kappa as i64);
    }

    let costs: Vec<BigInt> = w
        .basic
        .iter()
        .map(|&j| {
            let mut g = match phase {
                Phase::One => BigInt::zero(),
                Phase::Two => w.c[j].clone(),
            } * &det;
            for r in 0..w.rows() {
                if !y[r].is_zero() {
                    g -= &y[r] * &w.a[r][j];
                }
            }
            g
        })
        .collect();
    // `costs` carries a factor det; strip it before the transpose solve.
    let costs: Vec<BigInt> = costs.into_iter().map(|g| g / &det).collect();
    let y_t = inv.apply_transpose(&costs);
    for (&r, v) in w.tight.iter().zip(y_t) {
        y[r] = v;
    }
    Ok(Iterate { det, x, u, y, inv })
}

fn reduced_cost(w: &Work, it: &Iterate, var: Var, phase: Phase) -> BigInt {
    match var {
        Var::Structural(j) => {
            let mut d = match phase {
                Phase::One => BigInt::zero(),
                Phase::Two => &w.c[j] * &it.det,
            };
            for r in 0..w.rows() {
                if !it.y[r].is_zero() && !w.a[r][j].is_zero() {
                    d -= &it.y[r] * &w.a[r][j];
                }
            }
            d
        }
        Var::Slack(r) => -&it.y[r],
        Var::Artificial(_) => BigInt::from(-1),
    }
}

fn choose_entering(w: &Work, it: &Iterate, phase: Phase, bland: bool) -> Option<Var> {
    let in_basis: Vec<bool> = {
        let mut v = vec![false; w.n];
        for &j in &w.basic {
            v[j] = true;
        }
        v
    };
    let candidates = (0..w.n)
        .filter(|&j| !in_basis[j])
        .map(Var::Structural)
        .chain(
            w.tight
                .iter()
                .filter(|&&r| !w.is_eq[r])
                .map(|&r| Var::Slack(r)),
        );
    let mut best: Option<(Var, BigInt)> = None;
    for var in candidates {
        let d = reduced_cost(w, it, var, phase);
        if !d.is_positive() {
            continue;
        }
        best = match best {
            None => Some((var, d)),
            Some((bv, bd)) => {
                let better = if bland {
                    w.key(var) < w.key(bv)
                } else {
                    match d.cmp(&bd) {
                        Ordering::Greater => true,
                        Ordering::Equal => w.key(var) < w.key(bv),
                        Ordering::Less => false,
                    }
                };
                if better {
                    Some((var, d))
                } else {
                    Some((bv, bd))
                }
            }
        };
    }
    best.map(|(v, _)| v)
}

enum Leaving {
    Structural(usize),
    Aux(usize),
}

fn pivot_column(w: &Work, var: Var) -> Vec<BigInt> {
    match var {
        Var::Structural(q) => w.a.iter().map(|row| row[q].clone()).collect(),
        Var::Slack(r0) => (0..w.rows())
            .map(|r| if r == r0 { BigInt::one() } else { BigInt::zero() })
            .collect(),
        Var::Artificial(_) => unreachable!("artificials never re-enter"),
    }
}

/// Ratio test. Returns the leaving variable and whether the step is zero.
fn choose_leaving(
    w: &Work,
    it: &Iterate,
    entering: Var,
    phase: Phase,
) -> Option<(Leaving, bool)> {
    let col = pivot_column(w, entering);
    let col_t: Vec<BigInt> = w.tight.iter().map(|&r| col[r].clone()).collect();
    let dir = it.inv.apply(&col_t);

    let mut best: Option<(BigRational, usize, Leaving)> = None;
    let mut consider = |theta: BigRational, key: usize, leave: Leaving| {
        let replace = match &best {
            None => true,
            Some((bt, bk, _)) => match theta.cmp(bt) {
                Ordering::Less => true,
                Ordering::Equal => key < *bk,
                Ordering::Greater => false,
            },
        };
        if replace {
            best = Some((theta, key, leave));
        }
    };

    for (pos, (&j, dj)) in w.basic.iter().zip(&dir).enumerate() {
        if dj.is_positive() {
            let theta = BigRational::new(it.x[pos].clone(), dj.clone());
            consider(theta, w.key(Var::Structural(j)), Leaving::Structural(pos));
        }
    }
    for r in 0..w.rows() {
        let state = w.state[r];
        if state == RowState::Tight {
            continue;
        }
        let mut val = &it.det * &col[r];
        for (j, dj) in w.basic.iter().zip(&dir) {
            if !w.a[r][*j].is_zero() && !dj.is_zero() {
                val -= &w.a[r][*j] * dj;
            }
        }
        let du = if w.kappa(r) < 0 { -val } else { val };
        let var = match state {
            RowState::Slack => Var::Slack(r),
            _ => Var::Artificial(r),
        };
        match (state, phase) {
            (RowState::Artificial, Phase::Two) => {
                if !du.is_zero() {
                    debug_assert!(it.u[r].is_zero());
                    consider(BigRational::zero(), w.key(var), Leaving::Aux(r));
                }
            }
            _ => {
                if du.is_positive() {
                    let theta = BigRational::new(it.u[r].clone(), du);
                    consider(theta, w.key(var), Leaving::Aux(r));
                }
            }
        }
    }
    best.map(|(theta, _, leave)| (leave, theta.is_zero()))
}

fn pivot(w: &mut Work, entering: Var, leaving: Leaving) {
    match (entering, leaving) {
        (Var::Structural(q), Leaving::Structural(pos)) => {
            w.basic[pos] = q;
        }
        (Var::Structural(q), Leaving::Aux(r)) => {
            w.state[r] = RowState::Tight;
            w.tight.push(r);
            w.basic.push(q);
        }
        (Var::Slack(r0), Leaving::Structural(pos)) => {
            let tpos = w.tight.iter().position(|&r| r == r0).expect("slack row is tight");
            w.tight.swap_remove(tpos);
            w.basic.swap_remove(pos);
            w.state[r0] = RowState::Slack;
        }
        (Var::Slack(r0), Leaving::Aux(r)) => {
            let tpos = w.tight.iter().position(|&x| x == r0).expect("slack row is tight");
            w.tight[tpos] = r;
            w.state[r0] = RowState::Slack;
            w.state[r] = RowState::Tight;
        }
        (Var::Artificial(_), _) => unreachable!("artificials never re-enter"),
    }
}

enum PhaseOutcome {
    Optimal(Iterate),
    Unbounded,
}

fn run_phase(
    w: &mut Work,
    phase: Phase,
    rule: PivotRule,
    stats: &mut SolveStats,
) -> Result<PhaseOutcome> {
    let mut last_degenerate = false;
    loop {
        let it = evaluate(w, phase)?;
        let bland = rule == PivotRule::Bland || last_degenerate;
        let Some(entering) = choose_entering(w, &it, phase, bland) else {
            return Ok(PhaseOutcome::Optimal(it));
        };
        let Some((leaving, degenerate)) = choose_leaving(w, &it, entering, phase) else {
            return Ok(PhaseOutcome::Unbounded);
        };
        pivot(w, entering, leaving);
        stats.pivots += 1;
        if degenerate {
            stats.degenerate_pivots += 1;
        }
        last_degenerate = degenerate;
    }
}

pub fn simplex_solve_with(lp: &LinearProgram, rule: PivotRule) -> Result<LpSolution> {
    lp.check_shape()?;
    let n = lp.variable_count();
    let mut scales = Vec::with_capacity(lp.row_count());
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut is_eq = Vec::new();
    for (row, eq) in lp.rows() {
        let mut all: Vec<&BigRational> = row.coeffs.iter().collect();
        all.push(&row.rhs);
        let f = integer_scale(&all);
        a.push(scaled_ints(&row.coeffs, &f));
        b.push((&row.rhs * &f).to_integer());
        is_eq.push(eq);
        scales.push(f);
    }
    let obj_refs: Vec<&BigRational> = lp.objective.iter().collect();
    let obj_scale = integer_scale(&obj_refs);
    let c = scaled_ints(&lp.objective, &obj_scale);

    let rows = a.len();
    let art_sign: Vec<i8> = b.iter().map(|v| if v.is_negative() { -1 } else { 1 }).collect();
    let state: Vec<RowState> = (0..rows)
        .map(|r| {
            if is_eq[r] || b[r].is_negative() {
                RowState::Artificial
            } else {
                RowState::Slack
            }
        })
        .collect();
    let needs_phase_one = state.contains(&RowState::Artificial);
    let mut w = Work { n, a, b, is_eq, art_sign, c, state, tight: Vec::new(), basic: Vec::new() };
    let mut stats = SolveStats::default();

    let empty = |status, stats| LpSolution {
        status,
        value: BigRational::zero(),
        primal: Vec::new(),
        dual: Vec::new(),
        basis: Vec::new(),
        stats,
    };

    if needs_phase_one {
        let PhaseOutcome::Optimal(it) = run_phase(&mut w, Phase::One, rule, &mut stats)? else {
            unreachable!("phase one is bounded by zero");
        };
        let residual = (0..rows)
            .filter(|&r| w.state[r] == RowState::Artificial)
            .any(|r| !it.u[r].is_zero());
        if residual {
            return Ok(empty(LpStatus::Infeasible, stats));
        }
    }

    let it = match run_phase(&mut w, Phase::Two, rule, &mut stats)? {
        PhaseOutcome::Optimal(it) => it,
        PhaseOutcome::Unbounded => return Ok(empty(LpStatus::Unbounded, stats)),
    };

    let det = BigRational::from_integer(it.det.clone());
    let mut primal = vec![BigRational::zero(); n];
    for (&j, xj) in w.basic.iter().zip(&it.x) {
        primal[j] = BigRational::from_integer(xj.clone()) / &det;
    }
    let dual: Vec<BigRational> = it
        .y
        .iter()
        .zip(&scales)
        .map(|(y, f)| BigRational::from_integer(y.clone()) / &det * f / &obj_scale)
        .collect();
    let value = lp
        .objective
        .iter()
        .zip(&primal)
        .map(|(c, x)| c * x)
        .fold(BigRational::zero(), |acc, v| acc + v);
    let n_eq = lp.equalities.len();
    let mut basis: Vec<usize> = w.basic.clone();
    basis.extend(
        (n_eq..rows)
            .filter(|&r| w.state[r] == RowState::Slack)
            .map(|r| n + r - n_eq),
    );
    basis.sort_unstable();
    Ok(LpSolution { status: LpStatus::Optimal, value, primal, dual, basis, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, ratio};
    use crate::lpcore::Row;

    fn row(coeffs: &[i64], rhs: i64) -> Row {
        Row { label: "r".into(), coeffs: coeffs.iter().map(|&c| int(c)).collect(), rhs: int(rhs) }
    }

    fn lp(obj: &[i64], eqs: Vec<Row>, ineqs: Vec<Row>) -> LinearProgram {
        LinearProgram {
            first_index: 0,
            objective: obj.iter().map(|&c| int(c)).collect(),
            equalities: eqs,
            inequalities: ineqs,
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let p = lp(&[3, 5], vec![], vec![row(&[1, 0], 4), row(&[0, 2], 12), row(&[3, 2], 18)]);
        let sol = simplex_solve(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, int(36));
        assert_eq!(sol.primal, vec![int(2), int(6)]);
        assert_eq!(sol.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // max x + y, x + y = 3, -x <= -1 (x >= 1), x <= 2
        let p = lp(&[1, 2], vec![row(&[1, 1], 3)], vec![row(&[-1, 0], -1), row(&[1, 0], 2)]);
        let sol = simplex_solve(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.primal, vec![int(1), int(2)]);
        assert_eq!(sol.value, int(5));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(&[1], vec![row(&[1], 3)], vec![row(&[1], 2)]);
        assert_eq!(simplex_solve(&p).unwrap().status, LpStatus::Infeasible);
        let p = lp(&[1, 1], vec![], vec![row(&[1, -1], 2)]);
        assert_eq!(simplex_solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn rational_rows_are_rescaled() {
        let mut p = lp(&[1, 1], vec![], vec![]);
        p.inequalities.push(Row {
            label: "r".into(),
            coeffs: vec![ratio(1, 3), ratio(1, 6)],
            rhs: ratio(1, 2),
        });
        let sol = simplex_solve(&p).unwrap();
        // y alone: y <= 3
        assert_eq!(sol.value, int(3));
        assert_eq!(sol.dual, vec![int(6)]);
    }

    #[test]
    fn redundant_equalities() {
        let p = lp(&[1, 1], vec![row(&[1, 1], 2), row(&[2, 2], 4)], vec![row(&[1, 0], 1)]);
        let sol = simplex_solve(&p).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, int(2));
    }

    #[test]
    fn bland_only_agrees() {
        let p = lp(&[3, 5], vec![], vec![row(&[1, 0], 4), row(&[0, 2], 12), row(&[3, 2], 18)]);
        let a = simplex_solve_with(&p, PivotRule::Bland).unwrap();
        assert_eq!(a.value, int(36));
    }

    #[test]
    fn scale_factor() {
        let f = integer_scale(&[&ratio(2, 3), &ratio(4, 9), &int(0)]);
        assert_eq!(f, ratio(9, 2));
        assert_eq!(integer_scale(&[&int(0)]), int(1));
    }
}
