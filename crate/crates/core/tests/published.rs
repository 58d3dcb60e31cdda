use std::collections::BTreeMap;

use num_bigint::BigInt;
use zarankiewicz::bounds::{closed_form_best, roman_best};
use zarankiewicz::lpcore::{opt_bound, Variant};
use zarankiewicz::survey::improvement_table;
use zarankiewicz::ZParams;

fn p(m: u32, n: u32, s: u32, t: u32) -> ZParams {
    ZParams::new(m, n, s, t).unwrap()
}

fn full_floor(m: u32, n: u32, s: u32, t: u32) -> BigInt {
    opt_bound(&p(m, n, s, t), Variant::EFull).unwrap().floor_value
}

#[test]
fn full_program_floors() {
    assert_eq!(full_floor(10, 22, 3, 3), 111.into());
    assert_eq!(full_floor(8, 10, 5, 5), 69.into());
    assert_eq!(full_floor(10, 18, 3, 4), 107.into());
    assert_eq!(full_floor(6, 20, 3, 5), 79.into());
    assert_eq!(full_floor(16, 22, 4, 5), 239.into());
}

#[test]
fn roman_and_closed_floors() {
    assert_eq!(roman_best(&p(16, 22, 4, 5)).floor_value, 242.into());
    assert_eq!(closed_form_best(&p(5, 7, 3, 4)).unwrap().floor_value, 27.into());
    assert_eq!(roman_best(&p(15, 17, 3, 3)).floor_value, 134.into());
    assert_eq!(full_floor(15, 17, 3, 3), 132.into());
}

#[test]
fn closed_form_undefined_for_small_m() {
    assert!(closed_form_best(&p(8, 10, 5, 5)).is_err());
}

struct Published {
    s: u32,
    t: u32,
    m: (u32, u32),
    n: (u32, u32),
    cells: BTreeMap<(u32, u32), u64>,
}

fn published() -> Vec<Published> {
    let text = include_str!("fixtures/published_tables.txt");
    let range = |x: &str| {
        let (a, b) = x.split_once('-').unwrap();
        (a.parse().unwrap(), b.parse().unwrap())
    };
    let mut out: Vec<Published> = Vec::new();
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f[0] == "table" {
            out.push(Published {
                s: f[1].parse().unwrap(),
                t: f[2].parse().unwrap(),
                m: range(f[3]),
                n: range(f[4]),
                cells: BTreeMap::new(),
            });
        } else {
            let key = (f[0].parse().unwrap(), f[1].parse().unwrap());
            out.last_mut().unwrap().cells.insert(key, f[2].parse().unwrap());
        }
    }
    out
}

#[test]
fn every_published_value_is_regenerated() {
    for table in published() {
        let cells = improvement_table(table.s, table.t, table.m.0..=table.m.1, table.n.0..=table.n.1).unwrap();
        let ours: BTreeMap<(u32, u32), u64> =
            cells.iter().map(|c| ((c.m, c.n), c.lp_full.to_string().parse().unwrap())).collect();
        for (key, value) in &table.cells {
            assert_eq!(ours.get(key), Some(value), "(s,t)=({},{}) (m,n)={key:?}", table.s, table.t);
        }
        for (key, c) in cells.iter().map(|c| ((c.m, c.n), c)) {
            if !table.cells.contains_key(&key) {
                assert!(c.roman_baseline, "unpublished cell {key:?} without the roman-baseline flag");
            }
        }
    }
}
