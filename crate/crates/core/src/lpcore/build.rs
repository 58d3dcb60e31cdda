use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{LinearProgram, Row};
use crate::error::{Error, Result};
use crate::exactmath::{alpha_decompose, binom, binom_signed, int, ZParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    /// `sum n_i = n`.
    EdgeCount,
    /// `sum C(i, s) n_i <= (t-1) C(m, s)`.
    TotalSDegree,
    /// The deficiency-weighted `v`-degree constraint for a given `(v, k)`.
    Generalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintSpec {
    pub kind: ConstraintKind,
    pub v: Option<u32>,
    pub k: Option<u32>,
}

impl ConstraintSpec {
    pub const EDGE_COUNT: Self = Self { kind: ConstraintKind::EdgeCount, v: None, k: None };
    pub const TOTAL_S_DEGREE: Self =
        Self { kind: ConstraintKind::TotalSDegree, v: None, k: None };

    pub fn generalized(v: u32, k: u32) -> Self {
        Self { kind: ConstraintKind::Generalized, v: Some(v), k: Some(k) }
    }

    pub fn label(&self) -> String {
        match (self.kind, self.v, self.k) {
            (ConstraintKind::EdgeCount, ..) => "edges".to_string(),
            (ConstraintKind::TotalSDegree, ..) => "s_degree".to_string(),
            (ConstraintKind::Generalized, Some(v), Some(k)) => format!("gen_v{v}_k{k}"),
            (ConstraintKind::Generalized, ..) => "gen".to_string(),
        }
    }
}

/// Which program to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Edge count and total `s`-degree only.
    Roman,
    /// Roman plus the `v = s-1` generalized row at a single `k`.
    EStarK(u32),
    /// Roman plus the `v = s-1` rows for every `k` in `s..=m`.
    EStar,
    /// Roman plus every generalized row, `v` in `1..s`, `k` in `s..=m`.
    EFull,
}

/// Coefficients for variables `n_{s-1}, ..., n_m` and the right side.
pub fn build_constraint(p: &ZParams, spec: ConstraintSpec) -> Result<(Vec<BigRational>, BigRational)> {
    let sizes = (p.s - 1)..=p.m;
    match spec.kind {
        ConstraintKind::EdgeCount => {
            if spec.v.is_some() || spec.k.is_some() {
                return Err(Error::OutOfRange("edge-count row takes no (v, k)".into()));
            }
            Ok((sizes.map(|_| BigRational::one()).collect(), int(p.n)))
        }
        ConstraintKind::TotalSDegree => {
            if spec.v.is_some() || spec.k.is_some() {
                return Err(Error::OutOfRange("s-degree row takes no (v, k)".into()));
            }
            let row = sizes.map(|i| int(binom(i as u64, p.s as i64))).collect();
            Ok((row, int(p.s_degree_capacity())))
        }
        ConstraintKind::Generalized => {
            let (v, k) = match (spec.v, spec.k) {
                (Some(v), Some(k)) => (v, k),
                _ => return Err(Error::OutOfRange("generalized row needs (v, k)".into())),
            };
            let dec = alpha_decompose(p, v, k)?;
            let s = p.s as i64;
            let (v64, k64) = (v as i64, k as i64);
            let modulus = binom_signed(k64 - v64, s - v64);
            let shortfall_den: BigInt = &modulus - &dec.alpha;
            let row = sizes
                .map(|i| {
                    let c_iv = binom(i as u64, v64);
                    if i < k {
                        let top = binom_signed(i as i64 - v64, s - v64) - &dec.alpha;
                        BigRational::new(top * c_iv, shortfall_den.clone())
                    } else {
                        int(c_iv)
                    }
                })
                .collect();
            // C(m, v) ((t-1) C(m-v, s-v) - alpha) / C(k-v, s-v) = C(m, v) c
            let rhs = int(binom(p.m64(), v64) * &dec.c);
            Ok((row, rhs))
        }
    }
}

fn row(p: &ZParams, spec: ConstraintSpec) -> Result<Row> {
    let (coeffs, rhs) = build_constraint(p, spec)?;
    Ok(Row { label: spec.label(), coeffs, rhs })
}

pub fn build_program(p: &ZParams, variant: Variant) -> Result<LinearProgram> {
    let objective = ((p.s - 1)..=p.m).map(int).collect();
    let mut inequalities = vec![row(p, ConstraintSpec::TOTAL_S_DEGREE)?];
    match variant {
        Variant::Roman => {}
        Variant::EStarK(k) => {
            if !(p.s <= k && k <= p.m) {
                return Err(Error::OutOfRange(format!(
                    "E*_k needs s <= k <= m (got k={k}, s={}, m={})",
                    p.s, p.m
                )));
            }
            inequalities.push(row(p, ConstraintSpec::generalized(p.s - 1, k))?);
        }
        Variant::EStar => {
            for k in p.s..=p.m {
                inequalities.push(row(p, ConstraintSpec::generalized(p.s - 1, k))?);
            }
        }
        Variant::EFull => {
            for v in 1..p.s {
                for k in p.s..=p.m {
                    inequalities.push(row(p, ConstraintSpec::generalized(v, k))?);
                }
            }
        }
    }
    Ok(LinearProgram {
        first_index: p.s - 1,
        objective,
        equalities: vec![row(p, ConstraintSpec::EDGE_COUNT)?],
        inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;
    use num_traits::{Signed, Zero};

    fn zp(m: u32, n: u32, s: u32, t: u32) -> ZParams {
        ZParams::new(m, n, s, t).unwrap()
    }

    #[test]
    fn generalized_row_at_smallest_size() {
        for (m, s, t) in [(10, 3, 3), (12, 4, 5), (9, 2, 2), (16, 5, 5)] {
            let p = zp(m, 7, s, t);
            for v in 1..s {
                for k in s..=m {
                    let (row, rhs) = build_constraint(&p, ConstraintSpec::generalized(v, k)).unwrap();
                    let dec = alpha_decompose(&p, v, k).unwrap();
                    let den = binom((k - v) as u64, (s - v) as i64) - &dec.alpha;
                    let expect =
                        BigRational::new(-&dec.alpha * binom((s - 1) as u64, v as i64), den);
                    assert_eq!(row[0], expect);
                    assert!(!row[0].is_positive());
                    assert!(!rhs.is_negative());
                }
            }
        }
    }

    #[test]
    fn v_equals_s_minus_one_matches_specialised_form() {
        let p = zp(14, 20, 4, 5);
        let s = p.s;
        for k in s..=p.m {
            let (row, rhs) = build_constraint(&p, ConstraintSpec::generalized(s - 1, k)).unwrap();
            let alpha = alpha_decompose(&p, s - 1, k).unwrap().alpha;
            for (j, i) in ((s - 1)..=p.m).enumerate() {
                let c = int(binom(i as u64, (s - 1) as i64));
                let expect = if i < k {
                    BigRational::new(
                        BigInt::from(i as i64 - s as i64 + 1) - &alpha,
                        BigInt::from(k - s + 1) - &alpha,
                    ) * c
                } else {
                    c
                };
                assert_eq!(row[j], expect, "k={k} i={i}");
            }
            let expect_rhs = int(binom(p.m64(), (s - 1) as i64))
                * BigRational::new(
                    BigInt::from((p.t - 1) * (p.m - s + 1)) - &alpha,
                    BigInt::from(k - s + 1),
                );
            assert_eq!(rhs, expect_rhs);
        }
    }

    #[test]
    fn s_degree_row_vanishes_at_s_minus_one() {
        let p = zp(10, 22, 3, 3);
        let (row, rhs) = build_constraint(&p, ConstraintSpec::TOTAL_S_DEGREE).unwrap();
        assert!(row[0].is_zero());
        assert_eq!(row[1], int(1));
        assert_eq!(rhs, int(240));
    }

    #[test]
    fn row_counts() {
        let p = zp(10, 22, 3, 3);
        let full = build_program(&p, Variant::EFull).unwrap();
        assert_eq!(full.equalities.len(), 1);
        assert_eq!(full.inequalities.len(), 17);
        let star = build_program(&p, Variant::EStar).unwrap();
        assert_eq!(star.inequalities.len(), 9);
        let roman = build_program(&p, Variant::Roman).unwrap();
        assert_eq!((roman.equalities.len(), roman.inequalities.len()), (1, 1));
        assert_eq!(full.variable_count(), 9);
        assert_eq!(full.objective[0], int(2));
        assert!(build_program(&p, Variant::EStarK(2)).is_err());
        assert!(build_program(&p, Variant::EStarK(11)).is_err());
        assert_eq!(build_program(&p, Variant::EStarK(5)).unwrap().inequalities.len(), 2);
    }

    #[test]
    fn invalid_specs_rejected() {
        let p = zp(10, 22, 3, 3);
        assert!(build_constraint(&p, ConstraintSpec::generalized(3, 5)).is_err());
        assert!(build_constraint(&p, ConstraintSpec::generalized(0, 5)).is_err());
        assert!(build_constraint(&p, ConstraintSpec::generalized(1, 2)).is_err());
        let bad = ConstraintSpec { kind: ConstraintKind::EdgeCount, v: Some(1), k: None };
        assert!(build_constraint(&p, bad).is_err());
    }

    #[test]
    fn deficiency_example_row() {
        // s=3, v=2, k=5, m=10, t=3: alpha = 1, C(3,1) - alpha = 2.
        let p = zp(10, 22, 3, 3);
        let (row, rhs) = build_constraint(&p, ConstraintSpec::generalized(2, 5)).unwrap();
        // i = 4: (C(2,1) - 1)/2 * C(4,2) = 3
        assert_eq!(row[2], int(3));
        // i = 2: -1/2 * C(2,2)
        assert_eq!(row[0], ratio(-1, 2));
        // rhs = C(10,2) * 5
        assert_eq!(rhs, int(225));
    }
}
