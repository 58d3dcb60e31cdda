//! Fraction-free dense linear algebra over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `adj . M = det . I` with `det > 0`, so `M^{-1} = adj / det`.
#[derive(Clone, Debug)]
pub(crate) struct ScaledInverse {
    pub adj: Vec<Vec<BigInt>>,
    pub det: BigInt,
}

impl ScaledInverse {
    /// `adj . v`, i.e. `det . M^{-1} v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `adj^T . v`, i.e. `det . M^{-T} v`.
    pub fn apply_transpose(&self, v: &[BigInt]) -> Vec<BigInt> {
        let k = self.adj.len();
        let mut out = vec![BigInt::zero(); k];
        for (row, x) in self.adj.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * x;
            }
        }
        out
    }
}

/// Fraction-free Gauss-Jordan elimination on `[M | I]`.
///
/// Every intermediate entry is a minor of the augmented matrix, so each
/// division by the previous pivot is exact. Returns `None` when `M` is
/// singular.
pub(crate) fn scaled_inverse(m: &[Vec<BigInt>]) -> Option<ScaledInverse> {
    let k = m.len();
    if k == 0 {
        return Some(ScaledInverse { adj: Vec::new(), det: BigInt::one() });
    }
    let mut aug: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), k);
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for p in 0..k {
        let pivot_row = (p..k).find(|&r| !aug[r][p].is_zero())?;
        aug.swap(p, pivot_row);
        let (pivot_slice, rest) = aug.split_at_mut(p + 1);
        let pivot = pivot_slice[p].clone();
        let pp = pivot[p].clone();
        let update = |row: &mut Vec<BigInt>| {
            let factor = row[p].clone();
            for j in 0..2 * k {
                if j == p {
                    continue;
                }
                let mut v = &pp * &row[j];
                if !factor.is_zero() && !pivot[j].is_zero() {
                    v -= &factor * &pivot[j];
                }
                row[j] = v / &prev;
            }
            row[p] = BigInt::zero();
        };
        for row in pivot_slice[..p].iter_mut() {
            update(row);
        }
        for row in rest.iter_mut() {
            update(row);
        }
        prev = pp;
    }
    let mut det = prev;
    let mut adj: Vec<Vec<BigInt>> = aug.into_iter().map(|r| r[k..].to_vec()).collect();
    if det.is_negative() {
        det = -det;
        for row in adj.iter_mut() {
            for a in row.iter_mut() {
                *a = -&*a;
            }
        }
    }
    Some(ScaledInverse { adj, det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let k = a.len();
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn random_inverses_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let k = rng.gen_range(1..7);
            let m: Vec<Vec<BigInt>> = (0..k)
                .map(|_| (0..k).map(|_| BigInt::from(rng.gen_range(-4..5))).collect())
                .collect();
            match scaled_inverse(&m) {
                Some(inv) => {
                    assert!(inv.det.is_positive());
                    let prod = mul(&inv.adj, &m);
                    for i in 0..k {
                        for j in 0..k {
                            let want = if i == j { inv.det.clone() } else { BigInt::zero() };
                            assert_eq!(prod[i][j], want);
                        }
                    }
                }
                None => {
                    // singular: some nontrivial combination must vanish; check via
                    // rank of a perturbed copy is out of scope, so confirm det = 0 by
                    // cofactor expansion for these tiny sizes.
                    assert!(cofactor_det(&m).is_zero());
                }
            }
        }
    }

    fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        let k = m.len();
        if k == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..k {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn transpose_application() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3)],
        ];
        let inv = scaled_inverse(&m).unwrap();
        assert_eq!(inv.det, BigInt::from(5));
        // M^T y = (1, 0) -> y = (3, -1)/5
        let y = inv.apply_transpose(&[BigInt::from(1), BigInt::from(0)]);
        assert_eq!(y, vec![BigInt::from(3), BigInt::from(-1)]);
        let x = inv.apply(&[BigInt::from(1), BigInt::from(0)]);
        assert_eq!(x, vec![BigInt::from(3), BigInt::from(-1)]);
    }
}
