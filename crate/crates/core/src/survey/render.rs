//! Deterministic CSV, Markdown and JSON serialization.
//!
//! JSON documents have the shape `{"kind": ..., "schema_version": 1, ...}`;
//! rationals are strings `"p"` or `"p/q"`, big integers are decimal strings.

use std::fmt::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;
use serde_json::json;

use super::{CurvePoint, MatchCountRow, SurveyCell};
use crate::bounds::{BoundResult, BoundValue};
use crate::exactmath::{fmt_rational, ZParams};
use crate::verify::SuiteReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv, md or json)")),
        }
    }
}

pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn ser_opt_rational<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_opt_bigint<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn pretty(value: serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("json");
    out.push('\n');
    out
}

pub const CELL_CSV_HEADER: &str =
    "s,t,m,n,roman,closed,lp_star,lp_full,improvement,needs_full_lp,thm_matches";

/// Grid shape for Markdown tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableLayout {
    pub s: u32,
    pub t: u32,
    pub m_range: RangeInclusive<u32>,
    pub n_range: RangeInclusive<u32>,
}

/// Marked-up value: bold for an improvement of 2, bold and underlined for
/// 3 or more, a trailing `*` when the full program is needed.
pub fn cell_label(c: &SurveyCell) -> String {
    let mut text = match c.improvement {
        0 | 1 => c.lp_full.to_string(),
        2 => format!("**{}**", c.lp_full),
        _ => format!("**<u>{}</u>**", c.lp_full),
    };
    if c.needs_full_lp {
        text.push('*');
    }
    text
}

pub fn render_cells(cells: &[SurveyCell], format: Format, layout: &TableLayout) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(CELL_CSV_HEADER);
            out.push('\n');
            for c in cells {
                let closed = c.closed.as_ref().map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    c.s, c.t, c.m, c.n, c.roman, closed, c.lp_star, c.lp_full, c.improvement,
                    c.needs_full_lp, c.thm_matches
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "Improved upper bounds on z(m,n;{},{}).", layout.s, layout.t);
            out.push('\n');
            out.push_str("| m \\ n |");
            for n in layout.n_range.clone() {
                let _ = write!(out, " {n} |");
            }
            out.push('\n');
            out.push_str("|---:|");
            for _ in layout.n_range.clone() {
                out.push_str("---:|");
            }
            out.push('\n');
            for m in layout.m_range.clone() {
                let _ = write!(out, "| {m} |");
                for n in layout.n_range.clone() {
                    match cells.iter().find(|c| c.m == m && c.n == n) {
                        Some(c) => {
                            let _ = write!(out, " {} |", cell_label(c));
                        }
                        None => out.push_str("  |"),
                    }
                }
                out.push('\n');
            }
            out
        }
        Format::Json => pretty(json!({
            "kind": "improvement_table",
            "schema_version": SCHEMA_VERSION,
            "s": layout.s,
            "t": layout.t,
            "m_range": [layout.m_range.start(), layout.m_range.end()],
            "n_range": [layout.n_range.start(), layout.n_range.end()],
            "cells": cells,
        })),
    }
}

pub fn render_match_rows(rows: &[MatchCountRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("s,t,total_cases,star_matches,thm_matches,convention\n");
            for r in rows {
                let conv = serde_json::to_value(r.convention).expect("json");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.s,
                    r.t,
                    r.total_cases,
                    r.star_matches,
                    r.thm_matches,
                    conv.as_str().unwrap_or_default()
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = String::from(
                "| s | t | # cases | # E* matches | # closed-form matches | convention |\n|---|---|---:|---:|---:|---|\n",
            );
            for r in rows {
                let conv = serde_json::to_value(r.convention).expect("json");
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.s,
                    r.t,
                    r.total_cases,
                    r.star_matches,
                    r.thm_matches,
                    conv.as_str().unwrap_or_default()
                );
            }
            out
        }
        Format::Json => pretty(json!({
            "kind": "match_counts",
            "schema_version": SCHEMA_VERSION,
            "rows": rows,
        })),
    }
}

pub fn render_curve(s: u32, t: u32, m: u32, points: &[CurvePoint], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("n,delta,roman_point,n_exact,delta_exact\n");
            for p in points {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    crate::exactmath::to_f64_lossy(&p.n),
                    p.delta,
                    p.roman_point,
                    fmt_rational(&p.n),
                    fmt_rational(&p.delta_exact)
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = format!(
                "Improvement of the closed form over Roman's bound, (s,t)=({s},{t}), m={m}.\n\n| n | delta | Roman point |\n|---:|---:|:---:|\n"
            );
            for p in points {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} |",
                    fmt_rational(&p.n),
                    fmt_rational(&p.delta_exact),
                    if p.roman_point { "yes" } else { "" }
                );
            }
            out
        }
        Format::Json => pretty(json!({
            "kind": "improvement_curve",
            "schema_version": SCHEMA_VERSION,
            "s": s,
            "t": t,
            "m": m,
            "points": points,
        })),
    }
}

fn bound_value_text(b: &BoundResult) -> String {
    match &b.value {
        BoundValue::Exact(q) => fmt_rational(q),
        BoundValue::Real(x) => format!("{x:.6}"),
    }
}

fn opt_text(v: Option<u32>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn render_bounds(p: &ZParams, results: &[BoundResult], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("m,n,s,t,method,k,v,value,floor\n");
            for b in results {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    p.m,
                    p.n,
                    p.s,
                    p.t,
                    b.method,
                    opt_text(b.k_used),
                    opt_text(b.v_used),
                    bound_value_text(b),
                    b.floor_value
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = format!("Upper bounds on z{p}.\n\n| method | k | v | value | floor |\n|---|---:|---:|---:|---:|\n");
            for b in results {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    b.method,
                    opt_text(b.k_used),
                    opt_text(b.v_used),
                    bound_value_text(b),
                    b.floor_value
                );
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|b| {
                    json!({
                        "method": b.method.tag(),
                        "k_used": b.k_used,
                        "v_used": b.v_used,
                        "value": bound_value_text(b),
                        "exact": matches!(b.value, BoundValue::Exact(_)),
                        "floor_value": b.floor_value.to_string(),
                    })
                })
                .collect();
            pretty(json!({
                "kind": "bounds",
                "schema_version": SCHEMA_VERSION,
                "m": p.m, "n": p.n, "s": p.s, "t": p.t,
                "results": items,
            }))
        }
    }
}

pub fn render_oracle(p: &ZParams, z: u64, format: Format) -> String {
    match format {
        Format::Csv => format!("m,n,s,t,z\n{},{},{},{},{z}\n", p.m, p.n, p.s, p.t),
        Format::Markdown => format!("z{p} = {z}\n"),
        Format::Json => pretty(json!({
            "kind": "oracle",
            "schema_version": SCHEMA_VERSION,
            "m": p.m, "n": p.n, "s": p.s, "t": p.t,
            "z": z,
        })),
    }
}

pub fn render_verify(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("suite,checks,failed,passed\n");
            for r in reports {
                let _ = writeln!(out, "{},{},{},{}", r.name, r.checks, r.failed, r.passed());
            }
            out
        }
        Format::Markdown => {
            let mut out = String::new();
            for r in reports {
                if r.passed() {
                    let _ = writeln!(out, "PASS {:<15} {} checks", r.name, r.checks);
                } else {
                    let _ = writeln!(out, "FAIL {:<15} {} of {} checks failed", r.name, r.failed, r.checks);
                    for f in &r.failures {
                        let _ = writeln!(out, "     {f}");
                    }
                }
            }
            out
        }
        Format::Json => {
            let suites: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "checks": r.checks,
                        "failed": r.failed,
                        "passed": r.passed(),
                        "failures": r.failures,
                    })
                })
                .collect();
            pretty(json!({
                "kind": "verify",
                "schema_version": SCHEMA_VERSION,
                "passed": reports.iter().all(SuiteReport::passed),
                "suites": suites,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey::Convention;

    fn layout() -> TableLayout {
        TableLayout { s: 3, t: 3, m_range: 10..=11, n_range: 21..=22 }
    }

    #[test]
    fn empty_outputs_are_header_only() {
        assert_eq!(render_cells(&[], Format::Csv, &layout()), format!("{CELL_CSV_HEADER}\n"));
        let md = render_cells(&[], Format::Markdown, &layout());
        assert!(md.contains("| m \\ n | 21 | 22 |"));
        assert!(md.contains("| 10 |  |  |"));
        let js: serde_json::Value = serde_json::from_str(&render_cells(&[], Format::Json, &layout())).unwrap();
        assert_eq!(js["cells"].as_array().unwrap().len(), 0);
        assert_eq!(render_match_rows(&[], Format::Csv), "s,t,total_cases,star_matches,thm_matches,convention\n");
    }

    #[test]
    fn match_row_json_shape() {
        let row = MatchCountRow { s: 3, t: 3, total_cases: 1711, star_matches: 1697, thm_matches: 1334, convention: Convention::Floored };
        let js: serde_json::Value = serde_json::from_str(&render_match_rows(&[row], Format::Json)).unwrap();
        assert_eq!(js["kind"], "match_counts");
        assert_eq!(js["rows"][0]["total_cases"], 1711);
        assert_eq!(js["rows"][0]["convention"], "floored");
    }

    #[test]
    fn bound_rows() {
        let p = ZParams::new(10, 22, 3, 3).unwrap();
        let rows = vec![crate::bounds::roman_best(&p), crate::bounds::kst_bound(&p)];
        let csv = render_bounds(&p, &rows, Format::Csv);
        assert!(csv.contains("10,22,3,3,ROMAN_BEST,5,,112,112"), "{csv}");
        let js: serde_json::Value = serde_json::from_str(&render_bounds(&p, &rows, Format::Json)).unwrap();
        assert_eq!(js["results"][0]["floor_value"], "112");
        assert_eq!(js["results"][1]["exact"], false);
        assert_eq!(render_oracle(&ZParams::new(3, 3, 2, 2).unwrap(), 6, Format::Markdown), "z(3,3;2,2) = 6\n");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!("xml".parse::<Format>().is_err());
    }
}
