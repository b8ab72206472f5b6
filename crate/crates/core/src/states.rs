//! Kauffman states as spanning trees of the black graph, with their
//! Alexander filtration level and Maslov grading.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Color, CornerKind, Crossing, Diagram};
use crate::error::{Error, Result};

pub const DEFAULT_STATE_CAP: u128 = 10_000_000;

/// Twice the Alexander contribution of corner `k`.
pub fn alexander_contribution2(x: &Crossing, k: usize) -> i64 {
    match x.corner_kind(k) {
        CornerKind::BetweenOutgoing => x.sign as i64,
        CornerKind::BetweenIncoming => -(x.sign as i64),
        CornerKind::Lateral => 0,
    }
}

/// Maslov contribution of corner `k`.
pub fn maslov_contribution(x: &Crossing, k: usize) -> i64 {
    match x.corner_kind(k) {
        CornerKind::BetweenIncoming => -(x.sign as i64),
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub crossing: usize,
    /// node indices of the two faces joined
    pub ends: [usize; 2],
    /// corner (0..4) at the crossing lying in each end face
    pub corners: [usize; 2],
    /// Maslov contribution of the non-neutral corner, or 0
    pub label: i8,
    /// node the arc points toward, for non-neutral arcs
    pub head: Option<usize>,
}

/// Checkerboard graph of one color: a node per face of that color and an
/// arc per crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitGraph {
    pub color: Color,
    /// face id of each node
    pub nodes: Vec<usize>,
    /// indexed by crossing
    pub arcs: Vec<Arc>,
    pub root: usize,
}

impl TaitGraph {
    fn new(d: &Diagram, color: Color) -> Self {
        let mut node_of_face = vec![usize::MAX; d.faces().len()];
        let mut nodes = vec![];
        for (f, face) in d.faces().iter().enumerate() {
            if face.color == color {
                node_of_face[f] = nodes.len();
                nodes.push(f);
            }
        }
        let arcs = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let first = if d.corner_color(c, 0) == color { 0 } else { 1 };
                let corners = [first, first + 2];
                let ends = corners.map(|k| node_of_face[d.corner_face(c, k)]);
                let m = corners.map(|k| maslov_contribution(x, k));
                let (label, head) = match m {
                    [0, 0] => (0, None),
                    [v, 0] => (v as i8, Some(ends[0])),
                    [0, v] => (v as i8, Some(ends[1])),
                    _ => unreachable!("one Maslov corner per crossing"),
                };
                Arc { crossing: c, ends, corners, label, head }
            })
            .collect();
        let region = if color == Color::Black { d.region_a() } else { d.region_b() };
        Self { color, nodes, arcs, root: node_of_face[region] }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of spanning trees (matrix-tree theorem).
    pub fn spanning_tree_count(&self) -> BigInt {
        let n = self.nodes.len();
        if n <= 1 {
            return BigInt::from(1);
        }
        let mut lap = vec![vec![BigInt::zero(); n]; n];
        for arc in &self.arcs {
            let [u, v] = arc.ends;
            if u != v {
                lap[u][u] += 1;
                lap[v][v] += 1;
                lap[u][v] -= 1;
                lap[v][u] -= 1;
            }
        }
        let minor: Vec<Vec<BigInt>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
        bareiss_determinant(minor)
    }

    /// Orients the arcs of a spanning tree away from the root; returns
    /// (arc index, child node) for each tree arc.
    fn orient(&self, tree: &[usize]) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let mut adj = vec![vec![]; n];
        for &a in tree {
            let [u, v] = self.arcs[a].ends;
            adj[u].push((a, v));
            adj[v].push((a, u));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(tree.len());
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(u) = stack.pop() {
            for &(a, v) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    out.push((a, v));
                    stack.push(v);
                }
            }
        }
        out
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    prev * sign
}

/// The black graph together with its dual white graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlackGraph {
    pub black: TaitGraph,
    pub white: TaitGraph,
}

pub fn black_graph(d: &Diagram) -> BlackGraph {
    BlackGraph { black: TaitGraph::new(d, Color::Black), white: TaitGraph::new(d, Color::White) }
}

/// A vertex-to-corner assignment, carried with its black spanning tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KauffmanState {
    /// crossings whose corner is black, ascending
    pub tree: Vec<usize>,
    /// chosen corner (0..4) per crossing
    pub corners: Vec<u8>,
}

impl KauffmanState {
    /// Crossings whose corner is white, ascending.
    pub fn dual_tree(&self) -> Vec<usize> {
        (0..self.corners.len()).filter(|c| self.tree.binary_search(c).is_err()).collect()
    }

    /// One corner digit per crossing in PD order; independent of mark and coloring.
    pub fn id(&self) -> String {
        self.corners.iter().map(|&k| char::from(b'0' + k)).collect()
    }

    pub fn corner(&self, c: usize) -> usize {
        self.corners[c] as usize
    }
}

impl fmt::Display for KauffmanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedState {
    pub state: KauffmanState,
    /// Alexander filtration level
    pub s: i64,
    /// Maslov grading
    pub m: i64,
}

/// Builds the state of a black spanning tree.
pub fn state_from_tree(g: &BlackGraph, tree: &[usize]) -> KauffmanState {
    let n = g.black.arcs.len();
    let mut corners = vec![u8::MAX; n];
    let mut in_tree = vec![false; n];
    for &a in tree {
        in_tree[a] = true;
    }
    let dual: Vec<usize> = (0..n).filter(|&a| !in_tree[a]).collect();
    for (graph, arcs) in [(&g.black, tree), (&g.white, &dual[..])] {
        for (a, child) in graph.orient(arcs) {
            let arc = &graph.arcs[a];
            let i = if arc.ends[0] == child { 0 } else { 1 };
            corners[a] = arc.corners[i] as u8;
        }
    }
    let mut tree = tree.to_vec();
    tree.sort_unstable();
    KauffmanState { tree, corners }
}

/// Filtration level and grading of a state, computed from corner
/// contributions and again from the tree labels; the two must agree.
pub fn gradings(st: &KauffmanState, d: &Diagram) -> Result<(i64, i64)> {
    gradings_with(st, d, &black_graph(d))
}

fn gradings_with(st: &KauffmanState, d: &Diagram, g: &BlackGraph) -> Result<(i64, i64)> {
    let mut s2 = 0;
    let mut m = 0;
    for (c, x) in d.crossings().iter().enumerate() {
        s2 += alexander_contribution2(x, st.corner(c));
        m += maslov_contribution(x, st.corner(c));
    }

    let dual = st.dual_tree();
    let mut tree_s2 = 0;
    let mut tree_m = 0;
    for (graph, arcs) in [(&g.black, &st.tree[..]), (&g.white, &dual[..])] {
        for (a, child) in graph.orient(arcs) {
            let arc = &graph.arcs[a];
            if let Some(head) = arc.head {
                let label = arc.label as i64;
                if head == child {
                    tree_s2 += label;
                    tree_m += label;
                } else {
                    tree_s2 -= label;
                }
            }
        }
    }

    if (s2, m) != (tree_s2, tree_m) {
        return Err(Error::ConventionMismatch(format!(
            "state {st}: corner sums give (2s, m) = ({s2}, {m}), tree sums give ({tree_s2}, {tree_m})"
        )));
    }
    if s2 % 2 != 0 {
        return Err(Error::ConventionMismatch(format!("state {st} has half-integral level {s2}/2")));
    }
    Ok((s2 / 2, m))
}

/// Number of states of `d`, by the matrix-tree theorem.
pub fn state_count(d: &Diagram) -> u128 {
    if d.is_unknot() {
        return 1;
    }
    black_graph(d).black.spanning_tree_count().to_u128().unwrap_or(u128::MAX)
}

pub fn enumerate_states(d: &Diagram) -> Result<Vec<GradedState>> {
    enumerate_states_capped(d, DEFAULT_STATE_CAP)
}

/// All states in lexicographic order of their black trees.
pub fn enumerate_states_capped(d: &Diagram, cap: u128) -> Result<Vec<GradedState>> {
    if d.is_unknot() {
        let state = KauffmanState { tree: vec![], corners: vec![] };
        return Ok(vec![GradedState { state, s: 0, m: 0 }]);
    }
    let count = state_count(d);
    if count > cap {
        return Err(Error::StateExplosion { count, cap });
    }
    let g = black_graph(d);
    let trees = spanning_trees(&g.black);
    debug_assert_eq!(trees.len() as u128, count);
    trees
        .par_iter()
        .map(|t| {
            let state = state_from_tree(&g, t);
            let (s, m) = gradings_with(&state, d, &g)?;
            Ok(GradedState { state, s, m })
        })
        .collect()
}

/// Spanning trees as ascending arc lists, in lexicographic order.
pub fn spanning_trees(g: &TaitGraph) -> Vec<Vec<usize>> {
    let n = g.nodes.len();
    let arcs: Vec<(usize, usize)> = g.arcs.iter().map(|a| (a.ends[0], a.ends[1])).collect();
    let comp: Vec<usize> = (0..n).collect();
    let mut out = vec![];
    let mut chosen = vec![];
    let search = TreeSearch { arcs: &arcs, nodes: n };
    search.run(0, &comp, n, &mut chosen, &mut out, 0);
    out
}

struct TreeSearch<'a> {
    arcs: &'a [(usize, usize)],
    nodes: usize,
}

impl TreeSearch<'_> {
    const PARALLEL_DEPTH: usize = 6;

    fn run(
        &self,
        i: usize,
        comp: &[usize],
        components: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        depth: usize,
    ) {
        if components == 1 {
            out.push(chosen.clone());
            return;
        }
        if i == self.arcs.len() {
            return;
        }
        let (u, v) = self.arcs[i];
        let include = comp[u] != comp[v];
        let exclude = self.connected_without(i, comp);
        let with_arc = |chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>| {
            let (from, to) = (comp[u], comp[v]);
            let merged: Vec<usize> = comp.iter().map(|&c| if c == from { to } else { c }).collect();
            chosen.push(i);
            self.run(i + 1, &merged, components - 1, chosen, out, depth + 1);
            chosen.pop();
        };
        match (include, exclude) {
            (true, true) if depth < Self::PARALLEL_DEPTH => {
                let (mut left, mut right) = (vec![], vec![]);
                let (mut cl, mut cr) = (chosen.clone(), chosen.clone());
                rayon::join(
                    || with_arc(&mut cl, &mut left),
                    || self.run(i + 1, comp, components, &mut cr, &mut right, depth + 1),
                );
                out.append(&mut left);
                out.append(&mut right);
            }
            (true, true) => {
                with_arc(chosen, out);
                self.run(i + 1, comp, components, chosen, out, depth + 1);
            }
            (true, false) => with_arc(chosen, out),
            (false, true) => self.run(i + 1, comp, components, chosen, out, depth + 1),
            (false, false) => {}
        }
    }

    /// Whether the current components can still be joined using arcs after `i`.
    fn connected_without(&self, i: usize, comp: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut groups = 0;
        for (x, &c) in comp.iter().enumerate() {
            if c == x {
                groups += 1;
            }
        }
        for &(u, v) in &self.arcs[i + 1..] {
            let (a, b) = (find(&mut parent, comp[u]), find(&mut parent, comp[v]));
            if a != b {
                parent[a] = b;
                groups -= 1;
                if groups == 1 {
                    return true;
                }
            }
        }
        groups == 1
    }
}

/// Number of states at each (s, m).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiGradedCensus {
    pub counts: BTreeMap<(i64, i64), usize>,
}

impl BiGradedCensus {
    pub fn from_states<'a, I: IntoIterator<Item = &'a GradedState>>(states: I) -> Self {
        let mut counts = BTreeMap::new();
        for g in states {
            *counts.entry((g.s, g.m)).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn get(&self, s: i64, m: i64) -> usize {
        self.counts.get(&(s, m)).copied().unwrap_or(0)
    }

    /// Filtration levels with at least one state, ascending.
    pub fn levels(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.counts.keys().map(|&(s, _)| s).collect();
        v.dedup();
        v
    }

    /// (m, count) pairs at level `s`.
    pub fn level(&self, s: i64) -> Vec<(i64, usize)> {
        self.counts.range((s, i64::MIN)..=(s, i64::MAX)).map(|(&(_, m), &c)| (m, c)).collect()
    }

    /// Euler characteristic `Σ (-1)^m count` at level `s`.
    pub fn chi(&self, s: i64) -> i64 {
        self.level(s).iter().map(|&(m, c)| if m.rem_euclid(2) == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

pub fn census(d: &Diagram) -> Result<BiGradedCensus> {
    Ok(BiGradedCensus::from_states(&enumerate_states(d)?))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::diagram::{build_diagram, parse_pd, transform, Transform};
    use std::collections::HashSet;

    pub const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    pub const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
    pub const FIVE_TWO: &str = "X(1,5,2,4) X(3,9,4,8) X(5,1,6,10) X(7,3,8,2) X(9,7,10,6)";

    fn diagram(text: &str, mark: usize) -> Diagram {
        build_diagram(&parse_pd(text).unwrap(), mark).unwrap()
    }

    pub(crate) fn check_state(d: &Diagram, st: &KauffmanState) {
        let faces: Vec<usize> = (0..d.crossing_count()).map(|c| d.corner_face(c, st.corner(c))).collect();
        let distinct: HashSet<_> = faces.iter().collect();
        assert_eq!(distinct.len(), faces.len());
        assert!(!faces.contains(&d.region_a()) && !faces.contains(&d.region_b()));
        for c in 0..d.crossing_count() {
            let black = d.corner_color(c, st.corner(c)) == Color::Black;
            assert_eq!(black, st.tree.contains(&c));
        }
    }

    #[test]
    fn unknot_single_state() {
        let d = build_diagram(&parse_pd("unknot").unwrap(), 0).unwrap();
        let states = enumerate_states(&d).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!((states[0].s, states[0].m), (0, 0));
    }

    #[test]
    fn trefoil_states() {
        for mark in 0..6 {
            let d = diagram(TREFOIL, mark);
            let g = black_graph(&d);
            assert_eq!(g.black.spanning_tree_count(), BigInt::from(3));
            assert_eq!(g.white.spanning_tree_count(), BigInt::from(3));
            let states = enumerate_states(&d).unwrap();
            assert_eq!(states.len(), 3);
            for st in &states {
                check_state(&d, &st.state);
            }
            // this code is the negative trefoil: states at s = -1, 0, 1 with m = s + 1
            let mut sm: Vec<(i64, i64)> = states.iter().map(|g| (g.s, g.m)).collect();
            sm.sort();
            assert_eq!(sm, vec![(-1, 0), (0, 1), (1, 2)]);
        }
    }

    #[test]
    fn neutral_arcs_are_dual() {
        for text in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            let g = black_graph(&diagram(text, 0));
            for (b, w) in g.black.arcs.iter().zip(&g.white.arcs) {
                assert!((b.label == 0) != (w.label == 0));
            }
        }
    }

    #[test]
    fn figure_eight_census() {
        let d = diagram(FIGURE_EIGHT, 0);
        let c = census(&d).unwrap();
        assert_eq!(c.total(), 5);
        assert_eq!([c.chi(-1), c.chi(0), c.chi(1)].map(i64::abs), [1, 3, 1]);
    }

    #[test]
    fn state_set_independent_of_coloring() {
        for text in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            let pd = parse_pd(text).unwrap();
            let a = Diagram::new(&pd, 1, false).unwrap();
            let b = Diagram::new(&pd, 1, true).unwrap();
            let ids = |d: &Diagram| {
                let mut v: Vec<(String, i64, i64)> =
                    enumerate_states(d).unwrap().into_iter().map(|g| (g.state.id(), g.s, g.m)).collect();
                v.sort();
                v
            };
            assert_eq!(ids(&a), ids(&b));
        }
    }

    #[test]
    fn mirror_preserves_count() {
        let d = diagram(FIVE_TWO, 2);
        let m = transform(&d, Transform::Mirror).unwrap();
        assert_eq!(state_count(&d), state_count(&m));
        assert_eq!(enumerate_states(&m).unwrap().len(), 7);
    }

    #[test]
    fn lexicographic_order() {
        let d = diagram(FIVE_TWO, 0);
        let states = enumerate_states(&d).unwrap();
        assert!(states.windows(2).all(|w| w[0].state.tree < w[1].state.tree));
    }

    #[test]
    fn cap_enforced() {
        let d = diagram(FIVE_TWO, 0);
        assert!(matches!(enumerate_states_capped(&d, 3), Err(Error::StateExplosion { count: 7, cap: 3 })));
    }
}
