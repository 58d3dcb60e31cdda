//! Invariant suites.
//!
//! Each suite sweeps a fixed parameter grid (or a seeded random sample) and
//! records every violated check. `zbound verify` runs them all and exits
//! nonzero when any suite reports a failure.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    closed_form_value, closed_k_range, coefficient_triple, f_eval, g_eval, roman_best, roman_best_value,
    roman_value,
};
use crate::error::{Error, Result};
use crate::exactmath::{alpha_decompose, beta, binom, binom_signed, int, ratio, ZParams};
use crate::lpcore::{
    build_constraint, build_program, opt_bound, simplex_solve_with, verify_certificate, ConstraintSpec,
    LinearProgram, LpStatus, PivotRule, Row, Variant,
};
use crate::oracle::{
    check_profile_feasible, deficiency, degree_profile, exact_z, is_linear, random_linear_hypergraph,
    subsets_of_size, ExactSearch,
};

pub const SUITES: [&str; 8] =
    ["fg", "alpha0", "beta-bounds", "certificate", "simplex", "lemma31", "sandwich", "roman-envelope"];

/// Deliberate defects used to check that the suites catch them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Shifts every `beta` seen by the bracket suite up by `1/(k+1)`.
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub random_lps: usize,
    pub hypergraphs: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 20240611, random_lps: 1000, hypergraphs: 500, fault: None }
    }
}

const MAX_RECORDED: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failed: u64,
    /// The first few failing instances.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failed: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(what());
            }
        }
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match name {
        "fg" => Ok(fg_suite()),
        "alpha0" => Ok(alpha0_suite()),
        "beta-bounds" => Ok(beta_suite(cfg.fault)),
        "certificate" => certificate_suite(),
        "simplex" => simplex_suite(cfg.seed, cfg.random_lps),
        "lemma31" => lemma_suite(cfg.seed, cfg.hypergraphs),
        "sandwich" => sandwich_suite(),
        "roman-envelope" => envelope_suite(),
        other => Err(Error::InvalidParams(format!(
            "unknown suite {other:?} (expected one of {})",
            SUITES.join(", ")
        ))),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

/// `(s, t, m, k)` with `s, t` in `2..=5`, `m <= 25` and `k` admissible for
/// the closed form.
pub fn closed_form_sweep() -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for s in 2..=5 {
        for t in 2..=5 {
            for m in s..=25 {
                let p = ZParams { m, n: 1, s, t };
                if let Some(ks) = closed_k_range(&p) {
                    out.extend(ks.map(|k| (s, t, m, k)));
                }
            }
        }
    }
    out
}

fn fg_suite() -> SuiteReport {
    let mut r = SuiteReport::new("fg");
    for (s, t, m, k) in closed_form_sweep() {
        let p = ZParams::new(m, m, s, t).expect("sweep params are valid");
        let tag = format!("(m={m}, s={s}, t={t}, k={k})");
        let km1 = int(k - 1);
        r.check(f_eval(&km1, &p, k).ok() == Some(km1.clone()), || format!("f(k-1) != k-1 at {tag}"));
        r.check(g_eval(&int(k), &p, k).ok() == Some(int(k)), || format!("g(k) != k at {tag}"));
        if k < m {
            r.check(g_eval(&int(k + 1), &p, k).ok() == Some(int(k + 1)), || format!("g(k+1) != k+1 at {tag}"));
        }

        let triple = coefficient_triple(&p, k).expect("k is admissible");
        let (lp2, _) = build_constraint(&p, ConstraintSpec::TOTAL_S_DEGREE).expect("valid row");
        let (lp3, _) = build_constraint(&p, ConstraintSpec::generalized(s - 1, k)).expect("valid row");
        for i in (s - 1)..=m {
            let j = (i + 1 - s) as usize;
            let combined = &triple.a + &triple.b * &lp2[j] + &triple.c * &lp3[j];
            let direct = if i < k { f_eval(&int(i), &p, k) } else { g_eval(&int(i), &p, k) };
            let Ok(direct) = direct else {
                r.check(false, || format!("f/g undefined at i={i}, {tag}"));
                continue;
            };
            r.check(direct >= int(i), || format!("f/g({i}) < {i} at {tag}"));
            r.check(combined == direct, || format!("A+B*LP2+C*LP3 differs from f/g at i={i}, {tag}"));
        }
        // The right sides are affine in n, so two values of n pin them down.
        for n in [m, 2 * m + 7] {
            let q = p.with_n(n);
            let (_, rhs2) = build_constraint(&q, ConstraintSpec::TOTAL_S_DEGREE).expect("valid row");
            let (_, rhs3) = build_constraint(&q, ConstraintSpec::generalized(s - 1, k)).expect("valid row");
            let combined = &triple.a * int(n) + &triple.b * rhs2 + &triple.c * rhs3;
            let bk = closed_form_value(&q, k, &int(n)).expect("k is admissible");
            r.check(combined == bk, || format!("combined right side != B_k at n={n}, {tag}"));
        }
    }
    r
}

fn alpha0_suite() -> SuiteReport {
    let mut r = SuiteReport::new("alpha0");
    for (s, t, m, k) in closed_form_sweep() {
        let p = ZParams { m, n: 1, s, t };
        let dec = alpha_decompose(&p, s - 1, k).expect("k is admissible");
        if !dec.alpha.is_zero() {
            continue;
        }
        for n in 1..=30u32 {
            let x = int(n);
            let bk = closed_form_value(&p, k, &x).expect("k is admissible");
            let rom = roman_value(&p, k - 1, &x);
            r.check(bk == rom, || format!("B_k != Roman_(k-1) at (m={m}, n={n}, s={s}, t={t}, k={k})"));
        }
    }
    r
}

fn beta_suite(fault: Option<Fault>) -> SuiteReport {
    let mut r = SuiteReport::new("beta-bounds");
    let seen = |s: u32, k: u32, alpha: &BigInt| -> BigRational {
        let b = beta(s, k, alpha).expect("alpha in range");
        match fault {
            Some(Fault::Beta) => b + ratio(1, k + 1),
            None => b,
        }
    };
    let mut by_sk = BTreeSet::new();
    for (s, t, m, k) in closed_form_sweep() {
        let tag = format!("(m={m}, s={s}, t={t}, k={k})");
        let p = ZParams { m, n: 1, s, t };
        let triple = coefficient_triple(&p, k).expect("k is admissible");
        r.check(!triple.a.is_negative(), || format!("A < 0 at {tag}"));
        r.check(!triple.b.is_negative(), || format!("B < 0 at {tag}"));
        r.check(!triple.c.is_negative(), || format!("C < 0 at {tag}"));
        let dec = alpha_decompose(&p, s - 1, k).expect("k is admissible");
        let b = seen(s, k, &dec.alpha);
        r.check(
            &triple.c * int(binom(k as u64, s as i64 - 2)) == int(s - 1) * &b,
            || format!("C*C(k,s-2) != (s-1)beta at {tag}"),
        );
        r.check(
            &triple.c * int(binom(k as u64, s as i64 - 1)) == int(k - s + 2) * &b,
            || format!("C*C(k,s-1) != (k-s+2)beta at {tag}"),
        );
        by_sk.insert((s, k));
    }
    // Bracket and monotonicity over every admissible alpha.
    for &(s, k) in &by_sk {
        let lo = ratio(s - 1, (k - s) * (k - s + 2) + k + 1);
        let hi = ratio(s - 1, k + 1);
        let mut prev: Option<BigRational> = None;
        for a in 0..=(k - s) {
            let b = seen(s, k, &BigInt::from(a));
            r.check(lo <= b && b <= hi, || format!("beta={b} outside [{lo}, {hi}] at s={s}, k={k}, alpha={a}"));
            if let Some(pb) = &prev {
                r.check(b < *pb, || format!("beta not decreasing in alpha at s={s}, k={k}, alpha={a}"));
            }
            prev = Some(b);
        }
    }
    r
}

fn certificate_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("certificate");
    for s in 2..=5 {
        for t in 2..=5 {
            for m in s..=10 {
                for n in [m, m + 3, 2 * m] {
                    let p = ZParams::new(m, n, s, t)?;
                    let tag = format!("({m},{n};{s},{t})");
                    let mut values = Vec::new();
                    for variant in [Variant::Roman, Variant::EStar, Variant::EFull] {
                        let lp = build_program(&p, variant)?;
                        let sol = simplex_solve_with(&lp, PivotRule::default())?;
                        r.check(sol.status == LpStatus::Optimal, || format!("{variant:?} not optimal at {tag}"));
                        r.check(verify_certificate(&lp, &sol), || format!("{variant:?} certificate rejected at {tag}"));
                        values.push(sol.value);
                    }
                    r.check(values[2] <= values[1] && values[1] <= values[0], || {
                        format!("E_FULL <= E_STAR <= ROMAN violated at {tag}")
                    });
                    if let Some(ks) = closed_k_range(&p) {
                        for k in ks {
                            let star_k = opt_bound(&p, Variant::EStarK(k))?;
                            let bk = closed_form_value(&p, k, &int(n))?;
                            r.check(star_k.rational().is_some_and(|v| *v <= bk), || {
                                format!("B_k below the optimum of its own program at {tag}, k={k}")
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Seeded random program with small integer data: 1 to 6 variables and 1 to
/// 8 rows, roughly a quarter of them equalities. Half the programs get a
/// positive row that keeps them bounded.
pub fn random_small_lp(rng: &mut impl Rng) -> LinearProgram {
    let vars = rng.gen_range(1..=6usize);
    let rows = rng.gen_range(1..=7usize);
    let coeff = |rng: &mut dyn rand::RngCore| -> BigRational {
        if rng.gen_bool(0.3) {
            BigRational::zero()
        } else {
            int(rng.gen_range(-5i64..=5))
        }
    };
    let objective = (0..vars).map(|_| coeff(rng)).collect();
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for i in 0..rows {
        let row = Row {
            label: format!("r{i}"),
            coeffs: (0..vars).map(|_| coeff(rng)).collect(),
            rhs: int(rng.gen_range(-3i64..=12)),
        };
        if rng.gen_bool(0.25) {
            equalities.push(row);
        } else {
            inequalities.push(row);
        }
    }
    if rng.gen_bool(0.5) {
        inequalities.push(Row {
            label: "box".into(),
            coeffs: (0..vars).map(|_| int(rng.gen_range(1i64..=5))).collect(),
            rhs: int(rng.gen_range(5i64..=20)),
        });
    }
    LinearProgram { first_index: 0, objective, equalities, inequalities }
}

/// Outcome of [`enumerate_optimum`].
#[derive(Clone, Debug, PartialEq)]
pub enum Enumerated {
    Infeasible,
    Unbounded,
    Optimal(BigRational),
}

/// Fraction-free Gauss-Jordan on `[A | b]`: returns `det` and `det * x`.
fn cramer(mut a: Vec<Vec<i128>>) -> Option<(i128, Vec<i128>)> {
    let n = a.len();
    let mut prev = 1i128;
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(piv, c);
        for r in 0..n {
            if r == c {
                continue;
            }
            for j in 0..=n {
                if j != c {
                    a[r][j] = (a[c][c] * a[r][j] - a[r][c] * a[c][j]) / prev;
                }
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    // Every diagonal entry now equals `prev`.
    Some((prev, (0..n).map(|i| a[i][n]).collect()))
}

/// Brute-force optimum over basic feasible solutions. Coefficients must be
/// integers. A box row `sum x <= M` with `M` far beyond any vertex of the
/// original polyhedron turns unboundedness into an optimum on the box.
pub fn enumerate_optimum(lp: &LinearProgram) -> Enumerated {
    const BIG: i128 = 1_000_000_000_000;
    let n = lp.variable_count();
    let to_i = |q: &BigRational| -> i128 {
        assert!(q.is_integer(), "enumeration needs integer data");
        q.to_integer().to_i128().expect("small data")
    };
    // (coefficients, rhs, is_equality)
    let mut cons: Vec<(Vec<i128>, i128, bool)> = Vec::new();
    for (row, eq) in lp.rows() {
        cons.push((row.coeffs.iter().map(to_i).collect(), to_i(&row.rhs), eq));
    }
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = -1;
        cons.push((e, 0, false));
    }
    cons.push((vec![1; n], BIG, false));
    let c: Vec<i128> = lp.objective.iter().map(to_i).collect();

    let mut best: Option<(i128, i128)> = None; // value as (num, den)
    let mut best_inner: Option<(i128, i128)> = None;
    let better = |cur: &Option<(i128, i128)>, v: (i128, i128)| cur.is_none_or(|(p, q)| v.0 * q > p * v.1);
    let idx: Vec<usize> = (0..cons.len()).collect();
    for pick in combinations(&idx, n) {
        let system: Vec<Vec<i128>> = pick
            .iter()
            .map(|&i| {
                let mut row = cons[i].0.clone();
                row.push(cons[i].1);
                row
            })
            .collect();
        let Some((det, num)) = cramer(system) else { continue };
        if det == 0 {
            continue;
        }
        let (det, num): (i128, Vec<i128>) =
            if det < 0 { (-det, num.iter().map(|v| -v).collect()) } else { (det, num) };
        let feasible = cons.iter().all(|(a, b, eq)| {
            let lhs: i128 = a.iter().zip(&num).map(|(x, y)| x * y).sum();
            if *eq {
                lhs == b * det
            } else {
                lhs <= b * det
            }
        });
        if !feasible {
            continue;
        }
        let value = (c.iter().zip(&num).map(|(x, y)| x * y).sum::<i128>(), det);
        if better(&best, value) {
            best = Some(value);
        }
        let total: i128 = num.iter().sum();
        if total < BIG * det && better(&best_inner, value) {
            best_inner = Some(value);
        }
    }
    match (best, best_inner) {
        (None, _) => Enumerated::Infeasible,
        (Some(b), Some(i)) if b.0 * i.1 == i.0 * b.1 => Enumerated::Optimal(ratio(i.0, i.1)),
        _ => Enumerated::Unbounded,
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

fn simplex_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("simplex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..count {
        let lp = random_small_lp(&mut rng);
        let expected = enumerate_optimum(&lp);
        for rule in [PivotRule::DantzigBland, PivotRule::Bland] {
            let sol = simplex_solve_with(&lp, rule)?;
            let got = match sol.status {
                LpStatus::Infeasible => Enumerated::Infeasible,
                LpStatus::Unbounded => Enumerated::Unbounded,
                LpStatus::Optimal => Enumerated::Optimal(sol.value.clone()),
            };
            r.check(got == expected, || format!("case {case} ({rule:?}): simplex {got:?}, enumeration {expected:?}"));
            if sol.status == LpStatus::Optimal {
                r.check(verify_certificate(&lp, &sol), || format!("case {case} ({rule:?}): certificate rejected"));
            }
        }
    }
    Ok(r)
}

fn lemma_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lemma31");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for case in 0..count {
        let s = rng.gen_range(2..=4u32);
        let t = rng.gen_range(2..=4u32);
        let m = rng.gen_range(s.max(4)..=11u32);
        let edges = rng.gen_range(1..=3 * m as usize);
        let h = random_linear_hypergraph(m, s, t - 1, edges, rng.gen());
        let tag = format!("case {case} (m={m}, s={s}, t={t}, edges={})", h.edges.len());
        r.check(is_linear(&h, s, t - 1), || format!("{tag}: generator broke linearity"));
        let prof = degree_profile(&h, s)?;
        r.check(prof.total() == h.edges.len() as u64, || format!("{tag}: edge count row"));
        r.check(check_profile_feasible(&prof, m, s, t), || format!("{tag}: profile violates a row"));

        let p = ZParams::new(m, h.edges.len() as u32, s, t)?;
        let size = |e: u64| e.count_ones();
        for v in 1..s {
            let xs = subsets_of_size(m, v);
            for k in s..=m {
                let dec = alpha_decompose(&p, v, k)?;
                let modulus = binom((k - v) as u64, (s - v) as i64);
                let mut tau_total = BigInt::zero();
                for &x in &xs {
                    let through: Vec<u64> = h.edges.iter().copied().filter(|&e| e & x == x).collect();
                    let tau: BigInt = through.iter().map(|&e| deficiency(size(e), k, s, v)).sum();
                    // deg(X) <= c + tau(X) / (C(k-v, s-v) - alpha)
                    let lhs = int(through.len() as u64);
                    let rhs = int(dec.c.clone()) + BigRational::new(tau.clone(), &modulus - &dec.alpha);
                    r.check(lhs <= rhs, || format!("{tag}: degree bound fails at v={v}, k={k}, X={x:#b}"));
                    tau_total += tau;
                }
                let by_size: BigInt = ((s - 1)..k)
                    .map(|i| {
                        (binom_signed((k - v) as i64, (s - v) as i64) - binom_signed(i as i64 - v as i64, (s - v) as i64))
                            * binom(i as u64, v as i64)
                            * BigInt::from(prof.count(i))
                    })
                    .sum();
                r.check(tau_total == by_size, || format!("{tag}: deficiency sum identity fails at v={v}, k={k}"));
            }
        }
        let degree: u64 = h.edges.iter().map(|&e| size(e) as u64).sum();
        let full = opt_bound(&p, Variant::EFull)?;
        r.check(BigInt::from(degree) <= full.floor_value, || format!("{tag}: total degree exceeds the full program"));
    }
    Ok(r)
}

/// All `(m, n; s, t)` with `m * n <= 36`, `s, t` in `{2, 3}` and `s <= m`.
pub fn sandwich_sweep() -> Vec<ZParams> {
    let mut out = Vec::new();
    for s in 2..=3 {
        for t in 2..=3 {
            for m in s..=36 {
                for n in 1..=(36 / m) {
                    out.push(ZParams { m, n, s, t });
                }
            }
        }
    }
    out
}

fn sandwich_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("sandwich");
    for (m, n, want) in [(3, 3, 6u64), (4, 4, 9)] {
        let z = exact_z(&ZParams::new(m, n, 2, 2)?, ExactSearch::default())?;
        r.check(z == want, || format!("z({m},{n};2,2) = {z}, expected {want}"));
    }
    for p in sandwich_sweep() {
        let z = BigInt::from(exact_z(&p, ExactSearch::default())?);
        let full = opt_bound(&p, Variant::EFull)?.floor_value;
        let roman = roman_best(&p).floor_value;
        r.check(z <= full && full <= roman, || format!("{p}: z={z}, E_FULL floor={full}, Roman floor={roman}"));
        if let Ok(c) = crate::bounds::closed_form_best(&p) {
            r.check(full <= c.floor_value, || format!("{p}: E_FULL floor {full} above closed form {}", c.floor_value));
        }
    }
    Ok(r)
}

/// `(m, n; s, t)` with `s, t` in `2..=5`, `s <= m <= 25` and `t <= n <= 40`.
pub fn envelope_sweep() -> Vec<ZParams> {
    let mut out = Vec::new();
    for s in 2..=5 {
        for t in 2..=5 {
            for m in s..=25 {
                for n in t..=40 {
                    out.push(ZParams { m, n, s, t });
                }
            }
        }
    }
    out
}

fn envelope_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("roman-envelope");
    for p in envelope_sweep() {
        let lp = opt_bound(&p, Variant::Roman)?;
        let (_, env) = roman_best_value(&p, &int(p.n));
        r.check(lp.rational() == Some(&env), || format!("{p}: Roman program {:?} != envelope {env}", lp.rational()));
    }
    // Below n = t every matrix is admissible and the program is capped at m*n.
    for s in 2..=5u32 {
        for t in 2..=5u32 {
            for m in s..=25 {
                for n in 1..t {
                    let p = ZParams::new(m, n, s, t)?;
                    let lp = opt_bound(&p, Variant::Roman)?;
                    let (_, env) = roman_best_value(&p, &int(n));
                    let capped = env.min(int(m * n));
                    r.check(lp.rational() == Some(&capped), || format!("{p}: Roman program != min(mn, envelope)"));
                }
            }
        }
    }
    Ok(r)
}
