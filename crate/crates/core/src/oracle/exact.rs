//! Branch and bound for `z(m, n; s, t)` on 0/1 matrices.
//!
//! Rows are bitmasks over the narrower side. Row and column permutations
//! preserve the forbidden pattern, so rows are kept in nonincreasing order
//! of `(popcount, mask)` and the first row is fixed to the top bits.

use crate::error::{Error, Result};
use crate::exactmath::ZParams;

/// Default tractability guard on `m * n`.
pub const DEFAULT_CELL_GUARD: u64 = 36;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExactSearch {
    /// Node budget; `None` searches to completion.
    pub budget: Option<u64>,
    /// Skip the `m * n` guard.
    pub allow_large: bool,
}

struct Search {
    rows: usize,
    width: u32,
    /// A set of `rows_per_pattern` rows may share at most `max_common` columns.
    rows_per_pattern: usize,
    max_common: u32,
    by_weight: Vec<Vec<u64>>,
    budget: Option<u64>,
    nodes: u64,
    best: u64,
}

impl Search {
    /// `layers[j]` holds intersections of `j` chosen rows that still have
    /// more than `max_common` columns; `layers[0]` is the full mask.
    fn admissible(&self, layers: &[Vec<u64>], mask: u64) -> bool {
        let guard = &layers[self.rows_per_pattern - 1];
        guard.iter().all(|&i| (i & mask).count_ones() <= self.max_common)
    }

    fn extend(&self, layers: &[Vec<u64>], mask: u64) -> Vec<Vec<u64>> {
        let mut next = layers.to_vec();
        for j in 1..self.rows_per_pattern {
            for &i in &layers[j - 1] {
                let both = i & mask;
                if both.count_ones() > self.max_common {
                    next[j].push(both);
                }
            }
        }
        next
    }

    fn descend(&mut self, depth: usize, prev: (u32, u64), edges: u64, layers: &[Vec<u64>]) -> Result<()> {
        if edges > self.best {
            self.best = edges;
        }
        if depth == self.rows {
            return Ok(());
        }
        let remaining = (self.rows - depth) as u64;
        for w in (0..=prev.0).rev() {
            if edges + w as u64 * remaining <= self.best {
                break;
            }
            let cands = &self.by_weight[w as usize];
            let cands: Vec<u64> = if depth == 0 {
                // canonical first row: the top `w` columns
                cands.first().copied().into_iter().collect()
            } else if w == prev.0 {
                cands.iter().copied().filter(|&c| c <= prev.1).collect()
            } else {
                cands.clone()
            };
            for mask in cands {
                if edges + w as u64 * remaining <= self.best {
                    break;
                }
                if !self.admissible(layers, mask) {
                    continue;
                }
                self.nodes += 1;
                if let Some(limit) = self.budget {
                    if self.nodes > limit {
                        return Err(Error::BudgetExhausted { nodes: self.nodes - 1, best: self.best });
                    }
                }
                let next = self.extend(layers, mask);
                self.descend(depth + 1, (w, mask), edges + w as u64, &next)?;
            }
        }
        Ok(())
    }
}

/// Largest number of ones in an `m x n` 0/1 matrix with no all-ones
/// `s x t` submatrix (`s` rows from the `m` side).
pub fn exact_z(p: &ZParams, search: ExactSearch) -> Result<u64> {
    let cells = p.m as u64 * p.n as u64;
    if !search.allow_large && cells > DEFAULT_CELL_GUARD {
        return Err(Error::Intractable(format!(
            "m*n = {cells} exceeds the guard {DEFAULT_CELL_GUARD}; pass an explicit override"
        )));
    }
    // Put the wider side on rows so masks stay narrow.
    let (rows, width, a, b) = if p.n <= p.m {
        (p.m, p.n, p.s, p.t)
    } else {
        (p.n, p.m, p.t, p.s)
    };
    if width > 24 {
        return Err(Error::Intractable(format!("narrow side {width} exceeds 24 columns")));
    }
    let full = (1u64 << width) - 1;
    let mut by_weight: Vec<Vec<u64>> = vec![Vec::new(); width as usize + 1];
    for mask in (0..=full).rev() {
        by_weight[mask.count_ones() as usize].push(mask);
    }
    let mut s = Search {
        rows: rows as usize,
        width,
        rows_per_pattern: a as usize,
        max_common: b - 1,
        by_weight,
        budget: search.budget,
        nodes: 0,
        best: 0,
    };
    let mut layers = vec![Vec::new(); a as usize];
    if full.count_ones() > s.max_common {
        layers[0].push(full);
    }
    s.descend(0, (s.width, full), 0, &layers)?;
    Ok(s.best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, n: u32, s: u32, t: u32) -> u64 {
        exact_z(&ZParams::new(m, n, s, t).unwrap(), ExactSearch::default()).unwrap()
    }

    /// Enumerates every matrix; only usable for `m * n <= 16`.
    fn brute(m: u32, n: u32, s: u32, t: u32) -> u64 {
        use crate::oracle::subsets_of_size;
        let cells = m * n;
        let row_sets = subsets_of_size(m, s);
        let col_sets = subsets_of_size(n, t);
        let mut best = 0;
        for bits in 0u64..(1 << cells) {
            let ones = bits.count_ones() as u64;
            if ones <= best {
                continue;
            }
            let at = |r: u32, c: u32| bits >> (r * n + c) & 1 == 1;
            let bad = row_sets.iter().any(|&rs| {
                col_sets.iter().any(|&cs| {
                    (0..m).filter(|r| rs >> r & 1 == 1).all(|r| (0..n).filter(|c| cs >> c & 1 == 1).all(|c| at(r, c)))
                })
            });
            if !bad {
                best = ones;
            }
        }
        best
    }

    #[test]
    fn pinned_values() {
        assert_eq!(z(2, 2, 2, 2), 3);
        assert_eq!(z(3, 3, 2, 2), 6);
        assert_eq!(z(4, 4, 2, 2), 9);
        assert_eq!(z(5, 5, 2, 2), 12);
        assert_eq!(z(6, 6, 2, 2), 16);
    }

    #[test]
    fn agrees_with_full_enumeration() {
        for m in 2..=4u32 {
            for n in 1..=4u32 {
                if m * n > 16 {
                    continue;
                }
                for s in 2..=m.min(3) {
                    for t in 2..=3 {
                        assert_eq!(z(m, n, s, t), brute(m, n, s, t), "z({m},{n};{s},{t})");
                    }
                }
            }
        }
    }

    #[test]
    fn guard_and_budget() {
        let p = ZParams::new(20, 20, 3, 3).unwrap();
        assert!(matches!(exact_z(&p, ExactSearch::default()), Err(Error::Intractable(_))));
        let p = ZParams::new(6, 6, 3, 3).unwrap();
        let r = exact_z(&p, ExactSearch { budget: Some(3), allow_large: false });
        match r {
            Err(Error::BudgetExhausted { best, .. }) => assert!(best > 0),
            other => panic!("{other:?}"),
        }
    }
}
