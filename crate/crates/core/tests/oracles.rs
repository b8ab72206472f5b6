//! Reports checked against ranks from an independent knot Floer calculator.

use std::collections::BTreeMap;

use kstates::diagram::Diagram;
use kstates::frontend::{build_family, shipped_table, FamilySpec};
use kstates::reduce::{hfk_report, HfkReport, ReportOptions};

type Cells = BTreeMap<(i64, i64), usize>;

fn parse_cells(text: &str) -> Cells {
    text.split(';')
        .map(|cell| {
            let (sm, k) = cell.split_once(':').unwrap();
            let (s, m) = sm.split_once(',').unwrap();
            ((s.parse().unwrap(), m.parse().unwrap()), k.parse().unwrap())
        })
        .collect()
}

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).map(|l| l.split('\t').collect())
}

/// Every oracle rank lies in the report's bounds, and exact levels agree fully.
fn check_against(name: &str, report: &HfkReport, oracle: &Cells) {
    for (&(s, m), &k) in oracle {
        let (lo, hi) = report.rank(s, m);
        assert!(lo <= k && k <= hi, "{name}: rank at ({s},{m}) is {k}, bounds [{lo},{hi}]");
    }
    for lv in report.levels.values() {
        for (&m, &(lo, _)) in &lv.ranks {
            let k = oracle.get(&(lv.s, m)).copied().unwrap_or(0);
            assert!(lo <= k, "{name}: lower bound {lo} at ({},{m}) exceeds {k}", lv.s);
            if lv.exact {
                assert_eq!(lo, k, "{name}: exact rank at ({},{m})", lv.s);
            }
        }
    }
}

fn genus_of(oracle: &Cells) -> i64 {
    oracle.keys().map(|&(s, _)| s.abs()).max().unwrap_or(0)
}

fn family_diagram(spec: FamilySpec) -> Diagram {
    build_family(spec).unwrap().diagram().clone()
}

#[test]
fn family_reports_match_oracle() {
    let text = include_str!("data/family_hfk.tsv");
    let mut seen = 0;
    for row in rows(text) {
        let spec: FamilySpec = serde_json::from_str(row[0]).unwrap();
        let genus: i64 = row[1].parse().unwrap();
        let oracle = parse_cells(row[2]);
        assert_eq!(genus_of(&oracle), genus);
        let report = hfk_report(&family_diagram(spec), &ReportOptions::default()).unwrap();
        check_against(row[0], &report, &oracle);
        assert!(report.genus_lower <= genus && genus <= report.hfk_degree, "{}", row[0]);
        seen += 1;
    }
    assert!(seen >= 70);
}

#[test]
fn table_reports_match_oracle() {
    let table = shipped_table();
    let text = include_str!("data/table_hfk.tsv");
    let mut seen = 0;
    for row in rows(text) {
        let entry = table.iter().find(|e| e.name == row[0]).unwrap();
        let oracle = parse_cells(row[1]);
        let report = hfk_report(&entry.diagram().unwrap(), &entry.report_options()).unwrap();
        check_against(&entry.name, &report, &oracle);
        seen += 1;
    }
    assert_eq!(seen, table.len());
}

#[test]
fn oracle_euler_characteristics_match_alexander() {
    for e in shipped_table() {
        let oracle = parse_cells(
            rows(include_str!("data/table_hfk.tsv")).find(|r| r[0] == e.name).map(|r| r[1]).unwrap(),
        );
        let delta = e.alexander();
        let mut chi: BTreeMap<i64, i64> = BTreeMap::new();
        for (&(s, m), &k) in &oracle {
            *chi.entry(s).or_default() += if m.rem_euclid(2) == 0 { k as i64 } else { -(k as i64) };
        }
        for (s, c) in chi {
            assert_eq!(c, delta.coeff(s), "{} at s={s}", e.name);
        }
    }
}
