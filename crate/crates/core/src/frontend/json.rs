//! Canonical JSON, CSV and DOT renderings of census and report data.
//!
//! Gradings are plain integers (`"doubled": false`). Map keys that stand for
//! integers are written as decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::diagram::Diagram;
use crate::multifilt::{hasse_dot, multifiltration, MultiFiltration};
use crate::poly::HalfLaurentPoly;
use crate::reduce::{essential_by_level, HfkReport, LevelReport, MutationReport};
use crate::states::{BiGradedCensus, GradedState};

/// Describes the diagram that was analysed.
pub fn input_json(d: &Diagram, source: Value) -> Value {
    json!({
        "source": source,
        "pd": d.pd().to_string(),
        "mark": d.mark(),
        "crossings": d.crossing_count(),
    })
}

/// `[{"s", "m", "count"}]` in ascending (s, m).
pub fn census_json(census: &BiGradedCensus) -> Value {
    census.counts.iter().map(|(&(s, m), &c)| json!({"s": s, "m": m, "count": c})).collect()
}

/// Coefficients by integral exponent.
pub fn alexander_json(delta: &HalfLaurentPoly) -> Value {
    let coeffs: Map<String, Value> = delta.terms().map(|(e2, c)| ((e2 / 2).to_string(), json!(c))).collect();
    json!({ "text": delta.to_string(), "coeffs": coeffs })
}

pub fn level_json(lv: &LevelReport) -> Value {
    let mut v = json!({
        "status": if lv.exact { "exact" } else { "bounded" },
        "source": lv.source,
        "generators": lv.generators,
        "interval": { "backward": lv.interval.backward, "forward": lv.interval.forward },
        "cancelled": lv.cancelled.iter().map(|a| json!({"from": a.from, "to": a.to, "curated": a.curated})).collect::<Vec<_>>(),
    });
    if let Some(ranks) = lv.exact_ranks() {
        v["ranks"] = json!(ranks.into_iter().map(|(m, r)| (m.to_string(), r)).collect::<BTreeMap<_, _>>());
    } else {
        let bounds: BTreeMap<String, [usize; 2]> =
            lv.ranks.iter().map(|(&m, &(lo, hi))| (m.to_string(), [lo, hi])).collect();
        v["bounds"] = json!(bounds);
    }
    v
}

/// Exact levels go to `ranks`, bounded ones to `bounds`; `levels` keeps the detail.
pub fn hfk_json(report: &HfkReport) -> Value {
    let status: Map<String, Value> =
        report.levels.iter().map(|(s, lv)| (s.to_string(), json!(if lv.exact { "exact" } else { "bounded" }))).collect();
    let ranks: Vec<Value> = report
        .levels
        .values()
        .filter_map(|lv| lv.exact_ranks().map(|r| (lv.s, r)))
        .map(|(s, r)| json!({"s": s, "ranks": r.into_iter().map(|(m, k)| (m.to_string(), k)).collect::<BTreeMap<_, _>>()}))
        .collect();
    let bounds: Vec<Value> = report
        .levels
        .values()
        .filter(|lv| !lv.exact)
        .flat_map(|lv| lv.ranks.iter().map(|(&m, &(lo, hi))| json!({"s": lv.s, "m": m, "lower": lo, "upper": hi})))
        .collect();
    let levels: Map<String, Value> = report.levels.iter().map(|(s, lv)| (s.to_string(), level_json(lv))).collect();
    json!({
        "doubled": false,
        "all_exact": report.all_exact(),
        "degree": report.hfk_degree,
        "order_independent": report.order_independent,
        "status-by-s": status,
        "ranks": ranks,
        "bounds": bounds,
        "essential_census": census_json(&report.essential_census),
        "levels": levels,
    })
}

/// The full report object.
pub fn report_json(input: Value, report: &HfkReport, signature: Option<i64>, genus: (i64, i64)) -> Value {
    json!({
        "input": input,
        "states": report.states,
        "census": census_json(&report.census),
        "alexander": alexander_json(&report.alexander),
        "signature": signature,
        "hfk": hfk_json(report),
        "genus": { "lower": genus.0, "upper": genus.1 },
        "warnings": report.warnings,
    })
}

pub fn mutation_json(left: Value, right: Value, m: &MutationReport) -> Value {
    json!({
        "distinguished": m.distinguished,
        "witness": m.witness.map(|(s, m)| json!({"s": s, "m": m})),
        "left": { "input": left, "hfk": hfk_json(&m.left) },
        "right": { "input": right, "hfk": hfk_json(&m.right) },
    })
}

/// `s,m,count` rows.
pub fn census_csv(census: &BiGradedCensus) -> String {
    let mut out = String::from("s,m,count\n");
    for (&(s, m), &c) in &census.counts {
        writeln!(out, "{s},{m},{c}").unwrap();
    }
    out
}

/// `s,m,lower,upper,exact` rows.
pub fn report_csv(report: &HfkReport) -> String {
    let mut out = String::from("s,m,lower,upper,exact\n");
    for lv in report.levels.values() {
        for (&m, &(lo, hi)) in &lv.ranks {
            writeln!(out, "{},{m},{lo},{hi},{}", lv.s, lv.exact).unwrap();
        }
    }
    out
}

/// Hasse diagrams of the essential states, each level under its own interval.
pub fn order_dot(d: &Diagram, states: &[GradedState]) -> String {
    let mut out = String::new();
    for (iv, kept) in essential_by_level(d, states).into_values() {
        let mask = (!iv.is_trivial()).then(|| iv.mask(d.edge_count()));
        let mf: Vec<MultiFiltration> = kept.iter().map(|g| multifiltration(d, &g.state)).collect();
        out.push_str(&hasse_dot(&kept, &mf, mask.as_deref()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, parse_pd};
    use crate::reduce::{hfk_report, ReportOptions};
    use crate::states::enumerate_states;
    use crate::states::tests::TREFOIL;

    #[test]
    fn trefoil_report_shape() {
        let d = build_diagram(&parse_pd(TREFOIL).unwrap(), 0).unwrap();
        let r = hfk_report(&d, &ReportOptions::default()).unwrap();
        let v = report_json(input_json(&d, json!("pd")), &r, Some(-2), (1, 1));
        assert_eq!(v["states"], 3);
        assert_eq!(v["hfk"]["doubled"], false);
        assert_eq!(v["hfk"]["levels"]["1"]["ranks"], json!({"2": 1}));
        assert_eq!(v["hfk"]["ranks"][2], json!({"s": 1, "ranks": {"2": 1}}));
        assert_eq!(v["hfk"]["status-by-s"]["0"], "exact");
        assert_eq!(v["alexander"]["coeffs"], json!({"-1": 1, "0": -1, "1": 1}));
        assert_eq!(v["census"][0], json!({"s": -1, "m": 0, "count": 1}));
        assert!(report_csv(&r).starts_with("s,m,lower,upper,exact\n-1,0,1,1,true"));
        assert_eq!(census_csv(&r.census).lines().count(), 4);
    }

    #[test]
    fn dot_output() {
        let d = build_diagram(&parse_pd(TREFOIL).unwrap(), 0).unwrap();
        let dot = order_dot(&d, &enumerate_states(&d).unwrap());
        assert_eq!(dot.matches("digraph").count(), 3);
    }
}
