use std::collections::HashSet;

use proptest::prelude::*;

use kstates::diagram::{build_diagram, transform, Diagram, Transform};
use kstates::frontend::{build_family, shipped_table, FamilySpec};
use kstates::invariants::{alexander_poly, goeritz_determinant, signature};
use kstates::multifilt::{compare, multifiltration, OrderRelation};
use kstates::reduce::{hfk_report, HfkReport, ReportOptions};
use kstates::states::{enumerate_states, gradings, state_count};
use num_traits::Signed;

fn table_diagram(index: usize, mark: usize, mirror: bool) -> (String, Diagram) {
    let table = shipped_table();
    let e = &table[index % table.len()];
    let edges = e.pd.edge_count().max(1);
    let d = build_diagram(&e.pd, mark % edges).unwrap();
    let d = if mirror { transform(&d, Transform::Mirror).unwrap() } else { d };
    (e.name.clone(), d)
}

fn odd(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = i64> {
    range.prop_map(|k| 2 * k + 1)
}

fn family_diagram() -> impl Strategy<Value = Diagram> {
    prop_oneof![
        (odd(-3..=2), odd(-3..=2), odd(-3..=2)).prop_map(|(p, q, r)| FamilySpec::Pretzel { p, q, r }),
        odd(-5..=4).prop_map(|m| FamilySpec::Torus2 { m }),
        (2i64..=3, 1i64..=2).prop_map(|(r, n)| FamilySpec::Kt { r, n }),
        (2i64..=3, 1i64..=2).prop_map(|(r, n)| FamilySpec::Conway { r, n }),
    ]
    .prop_map(|spec| build_family(spec).unwrap().diagram().clone())
}

fn any_diagram() -> impl Strategy<Value = Diagram> {
    prop_oneof![
        3 => (any::<usize>(), any::<usize>(), any::<bool>()).prop_map(|(i, m, f)| table_diagram(i, m, f).1),
        1 => family_diagram(),
    ]
}

fn exact_levels_symmetric(r: &HfkReport) -> bool {
    r.levels.values().filter(|lv| lv.exact).all(|lv| {
        r.level(-lv.s).map_or(true, |other| {
            !other.exact || lv.ranks.iter().all(|(&m, &k)| other.rank(m - 2 * lv.s) == k || k == (0, 0))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn states_match_matrix_tree_count(d in any_diagram()) {
        let states = enumerate_states(&d).unwrap();
        prop_assert_eq!(states.len() as u128, state_count(&d));
        let ids: HashSet<String> = states.iter().map(|g| g.state.id()).collect();
        prop_assert_eq!(ids.len(), states.len());
        for g in states.iter().take(64) {
            prop_assert_eq!(gradings(&g.state, &d).unwrap(), (g.s, g.m));
        }
    }

    #[test]
    fn alexander_normalized_and_determinant(d in any_diagram()) {
        let delta = alexander_poly(&d).unwrap();
        prop_assert!(delta.is_symmetric());
        prop_assert_eq!(delta.value_at_one(), 1);
        let (re, im) = delta.value_at_minus_one();
        prop_assert_eq!((re.abs() + im.abs()) as u64, goeritz_determinant(&d).abs().try_into().unwrap_or(0u64));
    }

    #[test]
    fn signature_negates_under_mirror(i in any::<usize>(), mark in any::<usize>()) {
        let (_, d) = table_diagram(i, mark, false);
        let m = transform(&d, Transform::Mirror).unwrap();
        prop_assert_eq!(signature(&m).unwrap(), -signature(&d).unwrap());
    }

    #[test]
    fn partial_order_is_transitive(d in any_diagram()) {
        let states = enumerate_states(&d).unwrap();
        let mf: Vec<_> = states.iter().take(40).map(|g| multifiltration(&d, &g.state)).collect();
        for a in &mf {
            for b in &mf {
                if compare(a, b, None) != OrderRelation::Above {
                    continue;
                }
                for c in &mf {
                    if compare(b, c, None) == OrderRelation::Above {
                        prop_assert_eq!(compare(a, c, None), OrderRelation::Above);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_preserves_euler_characteristic(d in any_diagram()) {
        let r = hfk_report(&d, &ReportOptions::default()).unwrap();
        for lv in r.levels.values() {
            prop_assert!(lv.chi_bounds_hold(r.alexander.coeff(lv.s)), "level {}", lv.s);
            for &(lo, hi) in lv.ranks.values() {
                prop_assert!(lo <= hi);
            }
        }
        prop_assert!(exact_levels_symmetric(&r));
        prop_assert!(r.genus_lower <= r.hfk_degree);
    }

    #[test]
    fn essential_filter_keeps_euler_characteristic(d in any_diagram()) {
        let r = hfk_report(&d, &ReportOptions::default()).unwrap();
        for s in r.census.levels() {
            prop_assert_eq!(r.essential_census.chi(s), r.census.chi(s));
        }
    }

    #[test]
    fn moving_the_mark_keeps_the_groups(i in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let (name, da) = table_diagram(i, a, false);
        let (_, db) = table_diagram(i, b, false);
        let table = shipped_table();
        let opts = ReportOptions::default();
        let ra = hfk_report(&da, &opts).unwrap();
        let rb = hfk_report(&db, &opts).unwrap();
        let entry = table.iter().find(|e| e.name == name).unwrap();
        for lv in ra.levels.values().chain(rb.levels.values()) {
            for &m in lv.ranks.keys() {
                let (x, y) = (ra.rank(lv.s, m), rb.rank(lv.s, m));
                prop_assert!(x.0 <= y.1 && y.0 <= x.1, "{} at ({}, {}): {:?} vs {:?}", name, lv.s, m, x, y);
            }
        }
        prop_assert_eq!(signature(&da).unwrap(), entry.sigma);
        prop_assert_eq!(alexander_poly(&db).unwrap(), entry.alexander());
    }
}
