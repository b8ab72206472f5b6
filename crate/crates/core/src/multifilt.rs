//! The multi-filtration `M_x`, the induced partial order on states, and
//! elementary polygon detection.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Side};
use crate::states::{GradedState, KauffmanState};

/// `M_x` as a pair of integers per edge, indexed by traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiFiltration {
    pub values: Vec<(i64, i64)>,
}

impl MultiFiltration {
    pub fn get(&self, edge: usize) -> (i64, i64) {
        self.values[edge]
    }
}

/// Step of `M` from edge `i - 1` to edge `i` for a corner at the crossing
/// where the two edges meet.
pub fn step(d: &Diagram, i: usize, corner: usize) -> (i64, i64) {
    let (c, slot) = d.edges()[i].start;
    let side = d.crossing(c).side(slot, corner);
    match (d.passes_over_into(i), side) {
        (true, Side::Right) => (0, 1),
        (true, Side::Left) => (0, -1),
        (false, Side::Left) => (1, 0),
        (false, Side::Right) => (-1, 0),
    }
}

pub fn multifiltration(d: &Diagram, st: &KauffmanState) -> MultiFiltration {
    let n = d.edge_count();
    let mut values = vec![(0, 0); n];
    for i in 1..n {
        let c = d.vertex_before(i);
        let (dt, db) = step(d, i, st.corner(c));
        values[i] = (values[i - 1].0 + dt, values[i - 1].1 + db);
    }
    MultiFiltration { values }
}

/// Half the difference `M_x - M_y`, together with the crossings where the
/// two states differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainSupport {
    pub entries: Vec<(i64, i64)>,
    pub corners: Vec<usize>,
}

impl DomainSupport {
    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Edges with a non-zero entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.entries.len()).filter(|&e| self.entries[e] != (0, 0)).collect()
    }
}

pub fn domain_support(
    x: &KauffmanState,
    mx: &MultiFiltration,
    y: &KauffmanState,
    my: &MultiFiltration,
) -> DomainSupport {
    let entries = mx
        .values
        .iter()
        .zip(&my.values)
        .map(|(a, b)| {
            let (dt, db) = (a.0 - b.0, a.1 - b.1);
            debug_assert!(dt % 2 == 0 && db % 2 == 0, "multi-filtration differences are even");
            (dt / 2, db / 2)
        })
        .collect();
    let corners = (0..x.corners.len()).filter(|&c| x.corners[c] != y.corners[c]).collect();
    DomainSupport { entries, corners }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    Above,
    Below,
    Equal,
    Incomparable,
}

/// Edges taking part in comparisons. `None` entries mean all edges.
pub type Mask<'a> = Option<&'a [bool]>;

fn included(mask: Mask, e: usize) -> bool {
    mask.map_or(true, |m| m[e])
}

/// Compares `M_x` and `M_y` componentwise over the masked edges.
pub fn compare(mx: &MultiFiltration, my: &MultiFiltration, mask: Mask) -> OrderRelation {
    let mut ge = true;
    let mut le = true;
    for (e, (a, b)) in mx.values.iter().zip(&my.values).enumerate() {
        if !included(mask, e) {
            continue;
        }
        ge &= a.0 >= b.0 && a.1 >= b.1;
        le &= a.0 <= b.0 && a.1 <= b.1;
    }
    match (ge, le) {
        (true, true) => OrderRelation::Equal,
        (true, false) => OrderRelation::Above,
        (false, true) => OrderRelation::Below,
        (false, false) => OrderRelation::Incomparable,
    }
}

/// Whether `y` may appear in the differential of `x`.
pub fn may_differ(
    x: &GradedState,
    mx: &MultiFiltration,
    y: &GradedState,
    my: &MultiFiltration,
    mask: Mask,
) -> bool {
    x.s == y.s
        && x.m == y.m + 1
        && x.state != y.state
        && matches!(compare(mx, my, mask), OrderRelation::Above | OrderRelation::Equal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polygon {
    /// a quadrilateral: the differential coefficient is ±1
    ForcedArrow,
    /// a possible higher polygon, needing outside confirmation
    Candidate,
    None,
}

/// Classifies the domain from `x` to `y`; meaningful when `may_differ` holds.
pub fn detect_polygon(d: &Diagram, support: &DomainSupport, mask: Mask) -> Polygon {
    let masked: Vec<usize> = support.support().into_iter().filter(|&e| included(mask, e)).collect();
    let unit = |e: &usize| {
        let (t, b) = support.entries[*e];
        (0..=1).contains(&t) && (0..=1).contains(&b)
    };
    if support.corners.is_empty() || masked.is_empty() || !masked.iter().all(unit) {
        return Polygon::None;
    }
    if support.corners.len() > 2 {
        return Polygon::Candidate;
    }
    if support.corners.len() < 2 || d.is_unknot() {
        return Polygon::None;
    }

    let ends = |e: usize| [d.edges()[e].start.0, d.edges()[e].end.0];
    let touches = |c: usize| masked.iter().any(|&e| ends(e).contains(&c));
    if !support.corners.iter().all(|&c| touches(c)) {
        return Polygon::None;
    }
    // edges are adjacent when they share a crossing
    let mut reached = vec![false; masked.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..masked.len() {
            if !reached[j] && ends(masked[i]).iter().any(|c| ends(masked[j]).contains(c)) {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    if reached.iter().all(|&r| r) {
        Polygon::ForcedArrow
    } else {
        Polygon::None
    }
}

/// Hasse diagrams of the partial order, one digraph per filtration level.
pub fn hasse_dot(states: &[GradedState], filtrations: &[MultiFiltration], mask: Mask) -> String {
    let mut levels: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, g) in states.iter().enumerate() {
        levels.entry(g.s).or_default().push(i);
    }
    let mut out = String::new();
    for (s, idx) in levels {
        let above = |a: usize, b: usize| compare(&filtrations[a], &filtrations[b], mask) == OrderRelation::Above;
        let name = if s < 0 { format!("level_m{}", -s) } else { format!("level_{s}") };
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  label=\"s = {s}\";").unwrap();
        for &i in &idx {
            let g = &states[i];
            writeln!(out, "  \"{}\" [label=\"{}\\nm={}\"];", g.state.id(), g.state.id(), g.m).unwrap();
        }
        for &a in &idx {
            for &b in &idx {
                if a == b || !above(a, b) {
                    continue;
                }
                let covered = idx.iter().any(|&c| c != a && c != b && above(a, c) && above(c, b));
                if !covered {
                    writeln!(out, "  \"{}\" -> \"{}\";", states[a].state.id(), states[b].state.id()).unwrap();
                }
            }
        }
        writeln!(out, "}}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, parse_pd};
    use crate::states::enumerate_states;
    use crate::states::tests::{FIGURE_EIGHT, FIVE_TWO, TREFOIL};

    fn setup(text: &str, mark: usize) -> (Diagram, Vec<GradedState>, Vec<MultiFiltration>) {
        let d = build_diagram(&parse_pd(text).unwrap(), mark).unwrap();
        let states = enumerate_states(&d).unwrap();
        let mf = states.iter().map(|g| multifiltration(&d, &g.state)).collect();
        (d, states, mf)
    }

    #[test]
    fn base_value_and_evenness() {
        for text in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            let (_, states, mf) = setup(text, 1);
            for (i, a) in mf.iter().enumerate() {
                assert_eq!(a.get(0), (0, 0));
                for (j, b) in mf.iter().enumerate() {
                    let sup = domain_support(&states[i].state, a, &states[j].state, b);
                    assert_eq!(sup.is_empty(), i == j);
                }
            }
        }
    }

    #[test]
    fn strict_partial_order() {
        for text in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            let (_, _, mf) = setup(text, 0);
            let n = mf.len();
            for a in 0..n {
                assert_eq!(compare(&mf[a], &mf[a], None), OrderRelation::Equal);
                for b in 0..n {
                    let r = compare(&mf[a], &mf[b], None);
                    if a != b {
                        assert_ne!(r, OrderRelation::Equal);
                    }
                    let back = compare(&mf[b], &mf[a], None);
                    let expected = match r {
                        OrderRelation::Above => OrderRelation::Below,
                        OrderRelation::Below => OrderRelation::Above,
                        other => other,
                    };
                    assert_eq!(back, expected);
                    for c in 0..n {
                        if r == OrderRelation::Above && compare(&mf[b], &mf[c], None) == OrderRelation::Above {
                            assert_eq!(compare(&mf[a], &mf[c], None), OrderRelation::Above);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identical_states_never_differ() {
        let (_, states, mf) = setup(FIVE_TWO, 0);
        for (g, m) in states.iter().zip(&mf) {
            assert!(!may_differ(g, m, g, m, None));
        }
    }

    #[test]
    fn dot_has_one_graph_per_level() {
        let (_, states, mf) = setup(FIGURE_EIGHT, 0);
        let dot = hasse_dot(&states, &mf, None);
        assert_eq!(dot.matches("digraph").count(), 3);
    }
}
