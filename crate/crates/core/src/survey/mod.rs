//! Batch evaluation over `(m, n)` grids.
//!
//! Every cell is independent, so grids are evaluated in parallel and
//! reassembled in `(m, n)` order; output never depends on the thread count.

pub mod render;

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{closed_form_best, closed_form_best_value, roman_best, roman_best_value};
use crate::error::{Error, Result};
use crate::exactmath::{floor, roman_points, to_f64_lossy, ZParams};
use crate::lpcore::{opt_bound, Variant};

/// How two bounds are judged equal when counting matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Exact rational optima.
    Exact,
    /// Floors of the optima.
    Floored,
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Convention::Exact),
            "floored" => Ok(Convention::Floored),
            other => Err(format!("unknown convention {other:?} (expected exact or floored)")),
        }
    }
}

impl Convention {
    fn same(&self, a: &BigRational, b: &BigRational) -> bool {
        match self {
            Convention::Exact => a == b,
            Convention::Floored => floor(a) == floor(b),
        }
    }
}

/// All bounds for one `(m, n; s, t)`, kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct CellEval {
    pub params: ZParams,
    pub roman: BigRational,
    pub roman_k: u32,
    pub closed: Option<(u32, BigRational)>,
    pub lp_star: BigRational,
    pub lp_full: BigRational,
}

impl CellEval {
    pub fn star_matches(&self, conv: Convention) -> bool {
        conv.same(&self.lp_star, &self.lp_full)
    }

    pub fn thm_matches(&self, conv: Convention) -> bool {
        self.closed.as_ref().is_some_and(|(_, c)| conv.same(c, &self.lp_full))
    }
}

pub fn evaluate_cell(p: &ZParams) -> Result<CellEval> {
    let roman = roman_best(p);
    let closed = match closed_form_best(p) {
        Ok(b) => Some((b.k_used.expect("best carries k"), b.rational().expect("exact").clone())),
        Err(Error::EmptyRange(_)) => None,
        Err(e) => return Err(e),
    };
    let lp_star = opt_bound(p, Variant::EStar)?;
    let lp_full = opt_bound(p, Variant::EFull)?;
    Ok(CellEval {
        params: *p,
        roman: roman.rational().expect("exact").clone(),
        roman_k: roman.k_used.expect("best carries k"),
        closed,
        lp_star: lp_star.rational().expect("exact").clone(),
        lp_full: lp_full.rational().expect("exact").clone(),
    })
}

/// Runs `f` on a dedicated pool when `jobs` is given, otherwise on the
/// global pool (all cores).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// `(m, n)` pairs with `s <= m <= m_max` and `m <= n <= n_max`.
pub fn triangle(s: u32, m_max: u32, n_max: u32) -> Vec<(u32, u32)> {
    (s..=m_max).flat_map(|m| (m..=n_max).map(move |n| (m, n))).collect()
}

pub fn evaluate_grid(s: u32, t: u32, cells: &[(u32, u32)]) -> Result<Vec<CellEval>> {
    cells
        .par_iter()
        .map(|&(m, n)| evaluate_cell(&ZParams::new(m, n, s, t)?))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchCountRow {
    pub s: u32,
    pub t: u32,
    pub total_cases: u64,
    pub star_matches: u64,
    pub thm_matches: u64,
    pub convention: Convention,
}

impl MatchCountRow {
    pub fn from_cells(s: u32, t: u32, cells: &[CellEval], convention: Convention) -> Self {
        Self {
            s,
            t,
            total_cases: cells.len() as u64,
            star_matches: cells.iter().filter(|c| c.star_matches(convention)).count() as u64,
            thm_matches: cells.iter().filter(|c| c.thm_matches(convention)).count() as u64,
            convention,
        }
    }
}

/// `sum_{m=s}^{m_max} (n_max - m + 1)` for `m_max <= n_max`.
pub fn expected_case_count(s: u32, m_max: u32, n_max: u32) -> u64 {
    (s..=m_max).map(|m| (n_max - m + 1) as u64).sum()
}

/// Counts over `m in s..=m_max`, `n in m..=n_max`.
pub fn match_counts(s: u32, t: u32, m_max: u32, n_max: u32, convention: Convention) -> Result<MatchCountRow> {
    if !(s <= m_max && m_max <= n_max) {
        return Err(Error::InvalidParams(format!(
            "requires s <= m_max <= n_max (got s={s}, m_max={m_max}, n_max={n_max})"
        )));
    }
    let cells = evaluate_grid(s, t, &triangle(s, m_max, n_max))?;
    Ok(MatchCountRow::from_cells(s, t, &cells, convention))
}

/// One improved entry of an improvement table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyCell {
    pub s: u32,
    pub t: u32,
    pub m: u32,
    pub n: u32,
    #[serde(serialize_with = "render::ser_bigint")]
    pub roman: BigInt,
    #[serde(serialize_with = "render::ser_opt_bigint")]
    pub closed: Option<BigInt>,
    #[serde(serialize_with = "render::ser_bigint")]
    pub lp_star: BigInt,
    #[serde(serialize_with = "render::ser_bigint")]
    pub lp_full: BigInt,
    pub improvement: u64,
    /// The closed form does not reach the full program's floor.
    pub needs_full_lp: bool,
    /// The closed form's floor equals the full program's floor.
    pub thm_matches: bool,
    /// The baseline is Roman's bound; for `s = t` a catalogued exact value
    /// may already be smaller.
    pub roman_baseline: bool,
    #[serde(serialize_with = "render::ser_rational")]
    pub lp_full_exact: BigRational,
    #[serde(serialize_with = "render::ser_opt_rational")]
    pub closed_exact: Option<BigRational>,
}

impl SurveyCell {
    pub fn from_eval(e: &CellEval) -> Self {
        let roman = floor(&e.roman);
        let lp_full = floor(&e.lp_full);
        let closed = e.closed.as_ref().map(|(_, c)| floor(c));
        let improvement = (&roman - &lp_full).to_u64().unwrap_or(0);
        let needs_full_lp = closed.as_ref().is_none_or(|c| lp_full < *c);
        Self {
            s: e.params.s,
            t: e.params.t,
            m: e.params.m,
            n: e.params.n,
            roman,
            thm_matches: closed.as_ref() == Some(&lp_full),
            closed,
            lp_star: floor(&e.lp_star),
            lp_full,
            improvement,
            needs_full_lp,
            roman_baseline: e.params.s == e.params.t,
            lp_full_exact: e.lp_full.clone(),
            closed_exact: e.closed.as_ref().map(|(_, c)| c.clone()),
        }
    }
}

/// Cells of the grid where the full program's floor beats Roman's floor.
/// Only `n >= m` is considered, matching the survey triangle.
pub fn improvement_table(
    s: u32,
    t: u32,
    m_range: RangeInclusive<u32>,
    n_range: RangeInclusive<u32>,
) -> Result<Vec<SurveyCell>> {
    if m_range.is_empty() || n_range.is_empty() || *m_range.start() < s {
        return Err(Error::InvalidParams(format!(
            "requires s <= m_min <= m_max and n_min <= n_max (got s={s}, m={m_range:?}, n={n_range:?})"
        )));
    }
    let grid: Vec<(u32, u32)> = m_range
        .clone()
        .flat_map(|m| n_range.clone().filter(move |&n| n >= m).map(move |n| (m, n)))
        .collect();
    let evals = evaluate_grid(s, t, &grid)?;
    Ok(evals
        .iter()
        .map(SurveyCell::from_eval)
        .filter(|c| c.lp_full < c.roman)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    #[serde(serialize_with = "render::ser_rational")]
    pub n: BigRational,
    /// Lossy copy of `delta_exact`, for plotting.
    pub delta: f64,
    #[serde(serialize_with = "render::ser_rational")]
    pub delta_exact: BigRational,
    pub roman_point: bool,
}

/// Improvement of `min_k B_k` over Roman's envelope at real `n`, clamped at
/// zero. Samples are `n_from + j * step` plus every Roman point in range.
pub fn improvement_curve(
    s: u32,
    t: u32,
    m: u32,
    n_from: &BigRational,
    n_to: &BigRational,
    step: &BigRational,
) -> Result<Vec<CurvePoint>> {
    if n_from > n_to || !step.is_positive() {
        return Err(Error::InvalidParams("requires n_from <= n_to and step > 0".into()));
    }
    let p = ZParams::new(m, 1, s, t)?;
    let points: Vec<BigRational> = roman_points(&p)
        .into_iter()
        .map(|r| r.n_point)
        .filter(|x| x >= n_from && x <= n_to)
        .collect();
    let mut samples = Vec::new();
    let mut x = n_from.clone();
    while x <= *n_to {
        samples.push(x.clone());
        x += step;
    }
    samples.extend(points.iter().cloned());
    samples.sort();
    samples.dedup();
    samples
        .into_iter()
        .map(|n| {
            let (_, roman) = roman_best_value(&p, &n);
            let (_, closed) = closed_form_best_value(&p, &n)?;
            let diff = roman - closed;
            let delta_exact = if diff.is_positive() { diff } else { BigRational::zero() };
            Ok(CurvePoint {
                roman_point: points.contains(&n),
                delta: to_f64_lossy(&delta_exact),
                delta_exact,
                n,
            })
        })
        .collect()
}
