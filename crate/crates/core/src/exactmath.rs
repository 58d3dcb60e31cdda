//! Exact integer and rational kernel.
//!
//! Every quantity that ends up in a bound is computed here with arbitrary
//! precision. Floating point never enters this module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Binomial coefficient `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binom(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for j in 0..b {
        acc *= a - j;
        acc /= j + 1;
    }
    acc
}

/// Binomial with a signed top argument; `C(a, b) = 0` for `a < 0` as well,
/// which is the only extension the constraint builders rely on.
pub fn binom_signed(a: i64, b: i64) -> BigInt {
    if a < 0 {
        BigInt::zero()
    } else {
        binom(a as u64, b)
    }
}

/// Falling factorial `i (i-1) ... (i-r+1)`; 1 when `r == 0`.
pub fn falling(i: u64, r: u64) -> BigInt {
    if r > i {
        return BigInt::zero();
    }
    (0..r).fold(BigInt::one(), |acc, j| acc * (i - j))
}

/// `x (x-1) ... (x-r+1) / r!` evaluated at a rational point.
///
/// Agrees with [`binom`] whenever `x` is a nonnegative integer.
pub fn binom_rational(x: &BigRational, r: u64) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..r {
        acc *= x - BigRational::from_integer(BigInt::from(j));
        acc /= BigRational::from_integer(BigInt::from(j + 1));
    }
    acc
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Floor of an exact rational.
pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Lossy conversion used only when emitting plot data or human-facing
/// decimals.
pub fn to_f64_lossy(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // Shift both parts down to a common scale before dividing.
            let bits = q.numer().bits().max(q.denom().bits());
            let shift = bits.saturating_sub(1000) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// The quadruple `(m, n; s, t)`: `m` vertices, `n` edges, forbidden
/// `s`-sets of multiplicity `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZParams {
    pub m: u32,
    pub n: u32,
    pub s: u32,
    pub t: u32,
}

impl ZParams {
    pub fn new(m: u32, n: u32, s: u32, t: u32) -> Result<Self> {
        if s < 2 || s > m {
            return Err(Error::InvalidParams(format!(
                "requires 2 <= s <= m (got s={s}, m={m})"
            )));
        }
        if t < 2 {
            return Err(Error::InvalidParams(format!("requires t >= 2 (got t={t})")));
        }
        if n < 1 {
            return Err(Error::InvalidParams(format!("requires n >= 1 (got n={n})")));
        }
        Ok(Self { m, n, s, t })
    }

    pub fn m64(&self) -> u64 {
        self.m as u64
    }
    pub fn s64(&self) -> u64 {
        self.s as u64
    }
    /// `t - 1`, the multiplicity every `s`-set may reach.
    pub fn lambda(&self) -> u64 {
        self.t as u64 - 1
    }

    /// `(t-1) C(m, s)`: the largest Roman point and the right side of the
    /// total `s`-degree constraint.
    pub fn s_degree_capacity(&self) -> BigInt {
        binom(self.m64(), self.s as i64) * self.lambda()
    }

    pub fn with_n(&self, n: u32) -> Self {
        Self { n, ..*self }
    }
}

impl fmt::Display for ZParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.m, self.n, self.s, self.t)
    }
}

/// Remainder `alpha` and quotient `c` of `(t-1) C(m-v, s-v)` by `C(k-v, s-v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaDecomposition {
    pub v: u32,
    pub k: u32,
    pub alpha: BigInt,
    pub c: BigInt,
}

impl AlphaDecomposition {
    /// The modulus `C(k-v, s-v)`.
    pub fn modulus(&self, s: u32) -> BigInt {
        binom((self.k - self.v) as u64, (s - self.v) as i64)
    }
}

pub fn alpha_decompose(p: &ZParams, v: u32, k: u32) -> Result<AlphaDecomposition> {
    if !(1 <= v && v < p.s && p.s <= k && k <= p.m) {
        return Err(Error::OutOfRange(format!(
            "alpha needs 1 <= v < s <= k <= m (got v={v}, s={}, k={k}, m={})",
            p.s, p.m
        )));
    }
    let total = binom((p.m - v) as u64, (p.s - v) as i64) * p.lambda();
    let modulus = binom((k - v) as u64, (p.s - v) as i64);
    let (c, alpha) = total.div_mod_floor(&modulus);
    Ok(AlphaDecomposition { v, k, alpha, c })
}

/// `((s-1)(k-s+1) - alpha(s-1)) / ((k+1)(k-s+1) - alpha(s-1))`.
pub fn beta(s: u32, k: u32, alpha: &BigInt) -> Result<BigRational> {
    if s < 2 || k < s {
        return Err(Error::OutOfRange(format!(
            "beta needs 2 <= s <= k (got s={s}, k={k})"
        )));
    }
    let width = BigInt::from(k - s + 1);
    if alpha.is_negative() || *alpha >= width {
        return Err(Error::OutOfRange(format!(
            "beta needs 0 <= alpha <= k-s (got alpha={alpha}, k-s={})",
            k - s
        )));
    }
    let s1 = BigInt::from(s - 1);
    let num = &s1 * &width - alpha * &s1;
    let den = BigInt::from(k + 1) * &width - alpha * &s1;
    Ok(BigRational::new(num, den))
}

/// A critical point of the Roman envelope: all `n` edges of size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RomanPoint {
    pub k: u32,
    #[serde(serialize_with = "crate::survey::render::ser_rational")]
    pub n_point: BigRational,
    #[serde(serialize_with = "crate::survey::render::ser_rational")]
    pub value: BigRational,
}

impl RomanPoint {
    pub fn is_integral(&self) -> bool {
        self.n_point.is_integer()
    }
}

/// Roman points for `k = s..=m`, sorted by increasing `n_point`.
pub fn roman_points(p: &ZParams) -> Vec<RomanPoint> {
    let cap = p.s_degree_capacity();
    let mut pts: Vec<RomanPoint> = (p.s..=p.m)
        .map(|k| {
            let n_point = BigRational::new(cap.clone(), binom(k as u64, p.s as i64));
            let value = &n_point * int(k);
            RomanPoint { k, n_point, value }
        })
        .collect();
    pts.sort_by(|a, b| a.n_point.cmp(&b.n_point));
    pts
}
