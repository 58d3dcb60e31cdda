//! Closed-form upper bounds.
//!
//! Roman's family is linear in `n` for every `k >= s-1`. The closed form
//! `B_k` strengthens it by combining the edge-count row, the `s`-degree row
//! and one `v = s-1` deficiency row with the multipliers of
//! [`CoefficientTriple`]. The Kővári–Sós–Turán and Reiman bounds are
//! irrational and only reported for comparison.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{alpha_decompose, beta, binom, binom_rational, floor, int, ZParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    RomanK,
    RomanBest,
    ClosedK,
    ClosedBest,
    Kst,
    Reiman,
    /// Optimum of the Roman linear program itself.
    RomanLp,
    LpStarK,
    LpStar,
    LpFull,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::RomanK => "ROMAN_K",
            Method::RomanBest => "ROMAN_BEST",
            Method::ClosedK => "CLOSED_K",
            Method::ClosedBest => "CLOSED_BEST",
            Method::Kst => "KST",
            Method::Reiman => "REIMAN",
            Method::RomanLp => "ROMAN_LP",
            Method::LpStarK => "LP_STAR_K",
            Method::LpStar => "LP_STAR",
            Method::LpFull => "LP_FULL",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    /// Comparison-only bounds involving roots.
    Real(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub method: Method,
    pub k_used: Option<u32>,
    pub v_used: Option<u32>,
    pub value: BoundValue,
    /// Largest integer the bound admits for `z`.
    pub floor_value: BigInt,
}

impl BoundResult {
    pub fn exact(method: Method, k_used: Option<u32>, v_used: Option<u32>, value: BigRational) -> Self {
        let floor_value = floor(&value);
        Self { method, k_used, v_used, value: BoundValue::Exact(value), floor_value }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match &self.value {
            BoundValue::Exact(q) => Some(q),
            BoundValue::Real(_) => None,
        }
    }
}

/// `(t-1) C(m, s) / C(k, s-1) + (k+1)(s-1) n / s`, with `n` rational.
pub fn roman_value(p: &ZParams, k: u32, n: &BigRational) -> BigRational {
    let s = p.s;
    BigRational::new(p.s_degree_capacity(), binom(k as u64, (s - 1) as i64))
        + BigRational::new(BigInt::from((k + 1) * (s - 1)), BigInt::from(s)) * n
}

pub fn roman_bound_k(p: &ZParams, k: u32) -> Result<BoundResult> {
    if k + 1 < p.s {
        return Err(Error::OutOfRange(format!("Roman bound needs k >= s-1 (got k={k}, s={})", p.s)));
    }
    Ok(BoundResult::exact(Method::RomanK, Some(k), None, roman_value(p, k, &int(p.n))))
}

/// Minimizing `k` over `s-1..=m` and the Roman value at rational `n`.
pub fn roman_best_value(p: &ZParams, n: &BigRational) -> (u32, BigRational) {
    let mut best: Option<(u32, BigRational)> = None;
    for k in (p.s - 1)..=p.m {
        let v = roman_value(p, k, n);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((k, v));
        }
    }
    best.expect("k range is nonempty since s <= m")
}

pub fn roman_best(p: &ZParams) -> BoundResult {
    let (k, v) = roman_best_value(p, &int(p.n));
    BoundResult::exact(Method::RomanBest, Some(k), None, v)
}

/// `(t-1)^{1/s} m n^{1-1/s} + (s-1) n`; the inequality is strict.
pub fn kst_bound(p: &ZParams) -> BoundResult {
    let (m, n, s, t) = (p.m as f64, p.n as f64, p.s as f64, p.t as f64);
    let value = (t - 1.0).powf(1.0 / s) * m * n.powf(1.0 - 1.0 / s) + (s - 1.0) * n;
    let floor_value = BigInt::from(value.ceil() as i64 - 1);
    BoundResult { method: Method::Kst, k_used: None, v_used: None, value: BoundValue::Real(value), floor_value }
}

/// `n/2 + sqrt(n^2 + 4(t-1) n m (m-1)) / 2`, valid for `s = 2`.
pub fn reiman_bound(p: &ZParams) -> Result<BoundResult> {
    if p.s != 2 {
        return Err(Error::OutOfRange(format!("Reiman bound needs s = 2 (got s={})", p.s)));
    }
    let (m, n, t) = (p.m as f64, p.n as f64, p.t as f64);
    let value = 0.5 * n + 0.5 * (n * n + 4.0 * (t - 1.0) * n * m * (m - 1.0)).sqrt();
    Ok(BoundResult {
        method: Method::Reiman,
        k_used: None,
        v_used: None,
        value: BoundValue::Real(value),
        floor_value: BigInt::from(value.floor() as i64),
    })
}

/// Admissible `k` for the closed form: `max{2, s^2-2s, s} <= k <= m`.
pub fn closed_k_range(p: &ZParams) -> Option<RangeInclusive<u32>> {
    let s = p.s;
    let lo = 2.max(s * s - 2 * s).max(s);
    (lo <= p.m).then_some(lo..=p.m)
}

fn check_closed_k(p: &ZParams, k: u32) -> Result<()> {
    match closed_k_range(p) {
        Some(r) if r.contains(&k) => Ok(()),
        _ => Err(Error::OutOfRange(format!(
            "closed form needs max{{2, s^2-2s, s}} <= k <= m (got k={k}, s={}, m={})",
            p.s, p.m
        ))),
    }
}

/// Quantities shared by `B_k`, the multipliers and `f`, `g`.
#[derive(Clone, Debug)]
struct ClosedParts {
    alpha: BigRational,
    beta: BigRational,
    c_k: BigRational,
}

fn closed_parts(p: &ZParams, k: u32) -> Result<ClosedParts> {
    check_closed_k(p, k)?;
    let dec = alpha_decompose(p, p.s - 1, k)?;
    let b = beta(p.s, k, &dec.alpha)?;
    Ok(ClosedParts {
        alpha: BigRational::from_integer(dec.alpha),
        beta: b,
        c_k: int(binom(k as u64, (p.s - 1) as i64)),
    })
}

/// Multipliers for the edge-count, `s`-degree and `v = s-1` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTriple {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

pub fn coefficient_triple(p: &ZParams, k: u32) -> Result<CoefficientTriple> {
    let parts = closed_parts(p, k)?;
    Ok(triple_from(p, k, &parts))
}

fn triple_from(p: &ZParams, k: u32, parts: &ClosedParts) -> CoefficientTriple {
    let s = int(p.s);
    let s1 = int(p.s - 1);
    let beta = &parts.beta;
    let a = int(k + 1) * (&s1 - beta) / &s;
    let b = (BigRational::one() - &s1 * beta) / &parts.c_k;
    let c = int(k - p.s + 2) * beta / &parts.c_k;
    CoefficientTriple { a, b, c }
}

/// Common tail `(C(i,s-1)/C(k,s-1)) (1-(s-1)beta)(i-s+1)/s`.
fn degree_part(p: &ZParams, parts: &ClosedParts, i: &BigRational) -> (BigRational, BigRational) {
    let s1 = int(p.s - 1);
    let ratio = binom_rational(i, (p.s - 1) as u64) / &parts.c_k;
    let lin = (BigRational::one() - &s1 * &parts.beta) * (i - &s1) / int(p.s);
    (ratio, lin)
}

pub fn f_eval(i: &BigRational, p: &ZParams, k: u32) -> Result<BigRational> {
    let parts = closed_parts(p, k)?;
    if *i < int(p.s - 1) || *i > int(k - 1) {
        return Err(Error::OutOfRange(format!("f is defined on [s-1, k-1] (got i={i})")));
    }
    let triple = triple_from(p, k, &parts);
    let (ratio, lin) = degree_part(p, &parts, i);
    let kk = int(k - p.s + 2);
    let shortfall = (i - int(p.s - 1) - &parts.alpha) / (int(k - p.s + 1) - &parts.alpha);
    Ok(triple.a + ratio * (lin + &parts.beta * kk * shortfall))
}

pub fn g_eval(i: &BigRational, p: &ZParams, k: u32) -> Result<BigRational> {
    let parts = closed_parts(p, k)?;
    if *i < int(k) || *i > int(p.m) {
        return Err(Error::OutOfRange(format!("g is defined on [k, m] (got i={i})")));
    }
    let triple = triple_from(p, k, &parts);
    let (ratio, lin) = degree_part(p, &parts, i);
    Ok(triple.a + ratio * (lin + &parts.beta * int(k - p.s + 2)))
}

/// `B_k` as a function of a rational `n`.
pub fn closed_form_value(p: &ZParams, k: u32, n: &BigRational) -> Result<BigRational> {
    let parts = closed_parts(p, k)?;
    let (s, m, t) = (p.s, p.m, p.t);
    let beta = &parts.beta;
    let width = int(k - s + 1);
    let lead = int(binom(m as u64, (s - 1) as i64)) / &parts.c_k;
    let inner = int((t - 1) * (m - s + 1)) / int(s) * (beta * int(k + 1) / &width + BigRational::one())
        - &parts.alpha * beta * int(k - s + 2) / &width;
    let slope = int(k + 1) * (int(s - 1) - beta) / int(s);
    Ok(lead * inner + slope * n)
}

pub fn closed_form_bk(p: &ZParams, k: u32) -> Result<BoundResult> {
    let v = closed_form_value(p, k, &int(p.n))?;
    Ok(BoundResult::exact(Method::ClosedK, Some(k), Some(p.s - 1), v))
}

/// Minimizing `k` and `min_k B_k` at rational `n`.
pub fn closed_form_best_value(p: &ZParams, n: &BigRational) -> Result<(u32, BigRational)> {
    let range = closed_k_range(p).ok_or_else(|| {
        Error::EmptyRange(format!(
            "closed form needs m >= max{{2, s^2-2s, s}} (got m={}, s={})",
            p.m, p.s
        ))
    })?;
    let mut best: Option<(u32, BigRational)> = None;
    for k in range {
        let v = closed_form_value(p, k, n)?;
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((k, v));
        }
    }
    Ok(best.expect("range is nonempty"))
}

pub fn closed_form_best(p: &ZParams) -> Result<BoundResult> {
    let (k, v) = closed_form_best_value(p, &int(p.n))?;
    Ok(BoundResult::exact(Method::ClosedBest, Some(k), Some(p.s - 1), v))
}
