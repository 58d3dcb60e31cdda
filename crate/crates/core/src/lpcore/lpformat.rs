//! CPLEX-style LP text dump with exact rational coefficients.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LinearProgram;
use crate::exactmath::fmt_rational;

fn term(out: &mut String, first: &mut bool, coeff: &BigRational, name: &str) {
    if coeff.is_zero() {
        return;
    }
    let sign = if coeff.is_negative() { "-" } else { "+" };
    let mag = fmt_rational(&coeff.abs());
    if *first {
        if coeff.is_negative() {
            out.push_str("- ");
        }
        *first = false;
    } else {
        let _ = write!(out, " {sign} ");
    }
    let _ = write!(out, "{mag} {name}");
}

fn expr(lp: &LinearProgram, coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (j, c) in coeffs.iter().enumerate() {
        term(&mut out, &mut first, c, &format!("n{}", lp.first_index as usize + j));
    }
    if first {
        out.push_str("0 n0");
    }
    out
}

/// Human-readable rendering; rationals are printed as `p/q`.
pub fn write_lp(lp: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str("Maximize\n");
    let _ = writeln!(out, " obj: {}", expr(lp, &lp.objective));
    out.push_str("Subject To\n");
    for (row, eq) in lp.rows() {
        let op = if eq { "=" } else { "<=" };
        let _ = writeln!(out, " {}: {} {op} {}", row.label, expr(lp, &row.coeffs), fmt_rational(&row.rhs));
    }
    out.push_str("Bounds\n");
    for j in 0..lp.variable_count() {
        let _ = writeln!(out, " n{} >= 0", lp.first_index as usize + j);
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ZParams;
    use crate::lpcore::{build_program, Variant};

    #[test]
    fn roman_dump() {
        let p = ZParams::new(4, 5, 3, 2).unwrap();
        let text = write_lp(&build_program(&p, Variant::Roman).unwrap());
        assert_eq!(
            text,
            "Maximize\n obj: 2 n2 + 3 n3 + 4 n4\nSubject To\n edges: 1 n2 + 1 n3 + 1 n4 = 5\n \
             s_degree: 1 n3 + 4 n4 <= 4\nBounds\n n2 >= 0\n n3 >= 0\n n4 >= 0\nEnd\n"
        );
    }

    #[test]
    fn fractions_and_signs() {
        let p = ZParams::new(10, 22, 3, 3).unwrap();
        let text = write_lp(&build_program(&p, Variant::EStarK(5)).unwrap());
        assert!(text.contains(" gen_v2_k5: - 1/2 n2 + 3 n4 + 10 n5"), "{text}");
    }
}
