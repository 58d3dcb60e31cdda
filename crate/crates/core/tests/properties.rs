use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use zarankiewicz::bounds::{closed_form_best, roman_best};
use zarankiewicz::exactmath::{fmt_rational, parse_rational};
use zarankiewicz::lpcore::{opt_bound, Variant};
use zarankiewicz::ZParams;

fn params() -> impl Strategy<Value = ZParams> {
    (2u32..=5, 2u32..=5)
        .prop_flat_map(|(s, t)| (s..=14u32, 1u32..=30, Just(s), Just(t)))
        .prop_map(|(m, n, s, t)| ZParams::new(m, n, s, t).unwrap())
}

fn opt(p: &ZParams, v: Variant) -> BigRational {
    opt_bound(p, v).unwrap().rational().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn programs_are_nested(p in params()) {
        let roman = opt(&p, Variant::Roman);
        let star = opt(&p, Variant::EStar);
        let full = opt(&p, Variant::EFull);
        prop_assert!(full <= star);
        prop_assert!(star <= roman);
        prop_assert!(roman <= roman_best(&p).rational().unwrap().clone());
    }

    #[test]
    fn closed_form_dominates_full_program(p in params()) {
        if let Ok(b) = closed_form_best(&p) {
            prop_assert!(opt(&p, Variant::EFull) <= *b.rational().unwrap());
        }
    }

    #[test]
    fn roman_best_grows_with_n(p in params()) {
        let q = p.with_n(p.n + 1);
        prop_assert!(roman_best(&p).rational() < roman_best(&q).rational());
    }

    #[test]
    fn single_family_when_s_is_two(m in 2u32..=12, n in 1u32..=30, t in 2u32..=5) {
        let p = ZParams::new(m, n, 2, t).unwrap();
        prop_assert_eq!(opt(&p, Variant::EStar), opt(&p, Variant::EFull));
    }

    #[test]
    fn rational_text_round_trips(num in -10_000i64..10_000, den in 1i64..500) {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assert_eq!(parse_rational(&fmt_rational(&q)), Some(q));
    }
}
