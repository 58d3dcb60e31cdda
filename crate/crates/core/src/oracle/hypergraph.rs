use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{binom_signed, int, BigRational, ZParams};
use crate::lpcore::{build_constraint, ConstraintSpec};

/// Vertices `0..vertex_count`; each edge is a bitmask over them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertex_count: u32,
    pub edges: Vec<u64>,
}

impl Hypergraph {
    pub fn new(vertex_count: u32, edges: Vec<u64>) -> Result<Self> {
        if vertex_count > 64 {
            return Err(Error::InvalidHypergraph("at most 64 vertices".into()));
        }
        let full = if vertex_count == 64 { u64::MAX } else { (1u64 << vertex_count) - 1 };
        for &e in &edges {
            if e == 0 || e & !full != 0 {
                return Err(Error::InvalidHypergraph(format!("edge {e:#b} is empty or out of range")));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn empty(vertex_count: u32) -> Self {
        Self { vertex_count, edges: Vec::new() }
    }

    /// Number of edges containing every vertex of `set`.
    pub fn degree(&self, set: u64) -> usize {
        self.edges.iter().filter(|&&e| e & set == set).count()
    }
}

/// All `size`-subsets of `0..n` as bitmasks, in increasing order.
pub fn subsets_of_size(n: u32, size: u32) -> Vec<u64> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    if size == 0 {
        return vec![0];
    }
    let mut idx: Vec<u32> = (0..size).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | (1 << i)));
        let mut pos = size as usize;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < n - size + pos as u32 {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..size as usize {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every `s`-set of vertices lies in at most `lambda` edges.
pub fn is_linear(h: &Hypergraph, s: u32, lambda: u32) -> bool {
    let mut counts: HashMap<u64, u32> = HashMap::new();
    for &e in &h.edges {
        let verts: Vec<u32> = (0..h.vertex_count).filter(|&v| e >> v & 1 == 1).collect();
        for sub in subsets_of_size(verts.len() as u32, s) {
            let mask = (0..verts.len()).filter(|&j| sub >> j & 1 == 1).fold(0u64, |acc, j| acc | 1 << verts[j]);
            let c = counts.entry(mask).or_insert(0);
            *c += 1;
            if *c > lambda {
                return false;
            }
        }
    }
    true
}

/// Counts `n_{s-1}, ..., n_m` of edges by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub first_size: u32,
    pub counts: Vec<u64>,
}

impl DegreeProfile {
    pub fn zero(m: u32, s: u32) -> Self {
        Self { first_size: s - 1, counts: vec![0; (m - s + 2) as usize] }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, size: u32) -> u64 {
        size.checked_sub(self.first_size)
            .and_then(|j| self.counts.get(j as usize).copied())
            .unwrap_or(0)
    }
}

pub fn degree_profile(h: &Hypergraph, s: u32) -> Result<DegreeProfile> {
    if s < 2 || s > h.vertex_count {
        return Err(Error::InvalidParams(format!("requires 2 <= s <= m (got s={s})")));
    }
    let mut prof = DegreeProfile::zero(h.vertex_count, s);
    for &e in &h.edges {
        let size = e.count_ones();
        if size + 1 < s {
            return Err(Error::InvalidHypergraph(format!("edge of size {size} is smaller than s-1 = {}", s - 1)));
        }
        prof.counts[(size - (s - 1)) as usize] += 1;
    }
    Ok(prof)
}

/// `(k, s, v)`-deficiency of an edge: zero for `|E| >= k`, otherwise
/// `C(k-v, s-v) - C(|E|-v, s-v)`.
pub fn deficiency(edge_size: u32, k: u32, s: u32, v: u32) -> BigInt {
    assert!(v < s, "deficiency needs v < s");
    if edge_size >= k {
        return BigInt::zero();
    }
    let (k, s, v, e) = (k as i64, s as i64, v as i64, edge_size as i64);
    binom_signed(k - v, s - v) - binom_signed(e - v, s - v)
}

/// Checks the `s`-degree row and every deficiency row against a profile.
pub fn check_profile_feasible(profile: &DegreeProfile, m: u32, s: u32, t: u32) -> bool {
    if profile.first_size + 1 != s || profile.counts.len() != (m - s + 2) as usize {
        return false;
    }
    let total = profile.total();
    let Ok(total32) = u32::try_from(total) else { return false };
    // The edge-count row holds by construction for n = total; the other rows
    // do not depend on n.
    let p = ZParams { m, n: total32.max(1), s, t };
    if ZParams::new(m, p.n, s, t).is_err() {
        return false;
    }
    let x: Vec<BigRational> = profile.counts.iter().map(|&c| int(c)).collect();
    let mut specs = vec![ConstraintSpec::TOTAL_S_DEGREE];
    for v in 1..s {
        for k in s..=m {
            specs.push(ConstraintSpec::generalized(v, k));
        }
    }
    specs.into_iter().all(|spec| {
        let (row, rhs) = build_constraint(&p, spec).expect("valid spec");
        let lhs = row.iter().zip(&x).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
        lhs <= rhs
    })
}

/// Greedy seeded construction of an `(s, lambda)`-linear hypergraph whose
/// edges all have size at least `s-1`.
///
/// Random candidate edges are tried first; when none fits, a random
/// `(s-1)`-set is added, which never creates an `s`-subset.
pub fn random_linear_hypergraph(m: u32, s: u32, lambda: u32, edge_target: usize, seed: u64) -> Hypergraph {
    assert!(s >= 1 && m >= s && m <= 64, "requires 1 <= s <= m <= 64");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: HashMap<u64, u32> = HashMap::new();
    let mut edges = Vec::with_capacity(edge_target);
    let vertices: Vec<u32> = (0..m).collect();
    const ATTEMPTS: usize = 48;
    while edges.len() < edge_target {
        let mut placed = false;
        for _ in 0..ATTEMPTS {
            let size = rng.gen_range(s - 1..=m).max(1);
            let chosen: Vec<u32> = vertices.choose_multiple(&mut rng, size as usize).copied().collect();
            let subs: Vec<u64> = subsets_of_size(size, s)
                .into_iter()
                .map(|sub| (0..size as usize).filter(|&j| sub >> j & 1 == 1).fold(0u64, |acc, j| acc | 1 << chosen[j]))
                .collect();
            if subs.iter().all(|x| counts.get(x).copied().unwrap_or(0) < lambda) {
                for x in subs {
                    *counts.entry(x).or_insert(0) += 1;
                }
                edges.push(chosen.iter().fold(0u64, |acc, &v| acc | 1 << v));
                placed = true;
                break;
            }
        }
        if !placed {
            let size = (s - 1).max(1);
            let chosen: Vec<u32> = vertices.choose_multiple(&mut rng, size as usize).copied().collect();
            if size >= s {
                // s = 1: nothing small enough is always safe.
                break;
            }
            edges.push(chosen.iter().fold(0u64, |acc, &v| acc | 1 << v));
        }
    }
    Hypergraph { vertex_count: m, edges }
}
