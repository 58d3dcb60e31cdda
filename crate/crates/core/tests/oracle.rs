use zarankiewicz::bounds::roman_best;
use zarankiewicz::lpcore::{opt_bound, Variant};
use zarankiewicz::oracle::{
    check_profile_feasible, degree_profile, exact_z, is_linear, random_linear_hypergraph, ExactSearch,
};
use zarankiewicz::{Error, ZParams};

fn z(m: u32, n: u32, s: u32, t: u32) -> u64 {
    exact_z(&ZParams::new(m, n, s, t).unwrap(), ExactSearch::default()).unwrap()
}

#[test]
fn pinned_small_values() {
    assert_eq!(z(3, 3, 2, 2), 6);
    assert_eq!(z(4, 4, 2, 2), 9);
}

#[test]
fn transposition_symmetry() {
    assert_eq!(z(3, 5, 2, 3), z(5, 3, 3, 2));
}

#[test]
fn guard_rejects_large_search() {
    let p = ZParams::new(20, 20, 3, 3).unwrap();
    assert!(matches!(exact_z(&p, ExactSearch::default()), Err(Error::Intractable(_))));
}

#[test]
fn budget_reports_lower_bound() {
    let p = ZParams::new(5, 6, 2, 2).unwrap();
    let err = exact_z(&p, ExactSearch { budget: Some(10), allow_large: false }).unwrap_err();
    assert!(matches!(err, Error::BudgetExhausted { nodes: 10, .. }));
}

#[test]
fn sandwich_on_small_grid() {
    for (m, n) in [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5)] {
        let p = ZParams::new(m, n, 2, 2).unwrap();
        let exact = exact_z(&p, ExactSearch::default()).unwrap();
        let full = opt_bound(&p, Variant::EFull).unwrap().floor_value;
        assert!(num_bigint::BigInt::from(exact) <= full, "{p}");
        assert!(full <= roman_best(&p).floor_value, "{p}");
    }
}

#[test]
fn random_hypergraph_profiles_are_feasible() {
    for seed in 0..40 {
        let (m, s, t) = (9, 3, 3);
        let h = random_linear_hypergraph(m, s, t - 1, 30, seed);
        assert!(is_linear(&h, s, t - 1));
        let profile = degree_profile(&h, s).unwrap();
        assert!(check_profile_feasible(&profile, m, s, t), "seed {seed}");
    }
}
