//! Essential states, forced cancellations, and the knot Floer report.

use std::collections::{BTreeMap, HashMap};

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::invariants::alexander_from_census;
use crate::multifilt::{detect_polygon, domain_support, may_differ, multifiltration, MultiFiltration, Polygon};
use crate::poly::HalfLaurentPoly;
use crate::states::{enumerate_states_capped, BiGradedCensus, GradedState, DEFAULT_STATE_CAP};

/// The edges `ε_{-ℓ} .. ε_m` around the marked edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialInterval {
    pub backward: usize,
    pub forward: usize,
}

impl EssentialInterval {
    pub fn len(&self) -> usize {
        self.backward + self.forward + 1
    }

    pub fn is_trivial(&self) -> bool {
        self.backward == 0 && self.forward == 0
    }

    /// Traversal indices of the interval edges.
    pub fn edges(&self, edge_count: usize) -> Vec<usize> {
        (0..self.len()).map(|j| (j + edge_count - self.backward) % edge_count).collect()
    }

    /// Comparison mask excluding the interval edges.
    pub fn mask(&self, edge_count: usize) -> Vec<bool> {
        let mut mask = vec![true; edge_count];
        for e in self.edges(edge_count) {
            mask[e] = false;
        }
        mask
    }
}

/// Vertex `v_i` (start of `ε_i`) and whether the knot passes over there.
fn vertex(d: &Diagram, i: isize) -> (usize, bool) {
    let n = d.edge_count() as isize;
    let i = i.rem_euclid(n) as usize;
    (d.vertex_before(i), d.passes_over_into(i))
}

/// Whether first encounters along the sequence of vertex indices share a type.
fn uniform_first_types(d: &Diagram, indices: impl Iterator<Item = isize>) -> bool {
    let mut seen = vec![false; d.crossing_count()];
    let mut kind = None;
    for i in indices {
        let (v, over) = vertex(d, i);
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if *kind.get_or_insert(over) != over {
            return false;
        }
    }
    true
}

fn is_essential_interval(d: &Diagram, backward: usize, forward: usize) -> bool {
    let (l, m) = (backward as isize, forward as isize);
    if backward + forward + 1 > d.edge_count() {
        return false;
    }
    if !uniform_first_types(d, 1..=m) || !uniform_first_types(d, (-l + 1..=0).rev()) {
        return false;
    }
    if backward > 0 && forward > 0 {
        let plus: Vec<usize> = (1..=m + 1).map(|i| vertex(d, i).0).collect();
        if (-l..=0).any(|i| plus.contains(&vertex(d, i).0)) {
            return false;
        }
    }
    true
}

/// The maximal essential intervals, longest first and then by forward length.
pub fn maximal_essential_intervals(d: &Diagram) -> Vec<EssentialInterval> {
    if d.is_unknot() {
        return vec![EssentialInterval { backward: 0, forward: 0 }];
    }
    let n = d.edge_count();
    let valid: Vec<EssentialInterval> = (0..n)
        .flat_map(|b| (0..n - b).map(move |f| EssentialInterval { backward: b, forward: f }))
        .filter(|iv| is_essential_interval(d, iv.backward, iv.forward))
        .collect();
    let mut maximal: Vec<EssentialInterval> = valid
        .iter()
        .filter(|a| {
            !valid.iter().any(|b| b != *a && b.backward >= a.backward && b.forward >= a.forward)
        })
        .copied()
        .collect();
    maximal.sort_by_key(|iv| (std::cmp::Reverse(iv.len()), std::cmp::Reverse(iv.forward)));
    maximal
}

/// The longest maximal essential interval, preferring larger forward
/// length, with a warning when it is not unique.
pub fn essential_interval(d: &Diagram) -> (EssentialInterval, Option<String>) {
    let all = maximal_essential_intervals(d);
    let note = ambiguity_note(&all, &all[0]);
    (all[0], note)
}

fn ambiguity_note(all: &[EssentialInterval], chosen: &EssentialInterval) -> Option<String> {
    (all.len() > 1).then(|| {
        format!(
            "{} maximal essential intervals; using backward {} forward {}",
            all.len(),
            chosen.backward,
            chosen.forward
        )
    })
}

/// Essential states level by level. Each filtration level is a summand of
/// the complex, so each may use its own interval: among the longest maximal
/// intervals, the one keeping the fewest states there, then the larger
/// forward length.
pub fn essential_by_level(
    d: &Diagram,
    states: &[GradedState],
) -> BTreeMap<i64, (EssentialInterval, Vec<GradedState>)> {
    let all = maximal_essential_intervals(d);
    let longest: Vec<&EssentialInterval> = all.iter().collect();
    let mut by_level: BTreeMap<i64, Vec<&GradedState>> = BTreeMap::new();
    for g in states {
        by_level.entry(g.s).or_default().push(g);
    }
    by_level
        .into_iter()
        .map(|(s, gs)| {
            let (_, iv, kept) = longest
                .iter()
                .map(|iv| {
                    let kept: Vec<GradedState> = gs.iter().filter(|g| is_essential(d, iv, g)).map(|g| (*g).clone()).collect();
                    (kept.len(), **iv, kept)
                })
                .min_by_key(|(n, iv, _)| (*n, std::cmp::Reverse(iv.len()), std::cmp::Reverse(iv.forward)))
                .expect("at least one interval");
            (s, (iv, kept))
        })
        .collect()
}

/// Whether `st` is essential for `iv`.
pub fn is_essential(d: &Diagram, iv: &EssentialInterval, st: &GradedState) -> bool {
    if d.is_unknot() {
        return true;
    }
    let touches = |c: usize, slot: usize| {
        let k = st.state.corner(c);
        k == slot || (k + 1) % 4 == slot
    };
    let n = d.edge_count() as isize;
    let edge = |i: isize| &d.edges()[i.rem_euclid(n) as usize];
    let mut seen = vec![false; d.crossing_count()];
    for i in 1..=iv.forward as isize {
        let (c, slot) = edge(i).start;
        if !std::mem::replace(&mut seen[c], true) && !touches(c, slot) {
            return false;
        }
    }
    let mut seen = vec![false; d.crossing_count()];
    for i in (-(iv.backward as isize) + 1..=0).rev() {
        let (c, slot) = edge(i - 1).end;
        if !std::mem::replace(&mut seen[c], true) && !touches(c, slot) {
            return false;
        }
    }
    true
}

/// The chosen interval and the states essential for it.
pub fn essential_states(d: &Diagram, states: &[GradedState]) -> (EssentialInterval, Vec<GradedState>) {
    let (iv, note) = essential_interval(d);
    if let Some(note) = note {
        warn!("{note}");
    }
    let kept = states.iter().filter(|g| is_essential(d, &iv, g)).cloned().collect();
    (iv, kept)
}

/// A differential component known to be ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub curated: bool,
}

/// A state arrow written `"X>Y"` with state ids.
pub fn parse_arrow(text: &str) -> Result<(String, String)> {
    let (a, b) = text
        .split_once('>')
        .ok_or_else(|| Error::BadCuration(format!("`{text}` is not of the form X>Y")))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

/// Generators of one filtration level with their multi-filtrations.
struct Level<'a> {
    gens: Vec<&'a GradedState>,
    mf: Vec<MultiFiltration>,
}

/// Forced arrows among `states`: quadrilaterals plus curated confirmations.
pub fn forced_arrows(
    d: &Diagram,
    states: &[GradedState],
    mask: Option<&[bool]>,
    curated: &[(String, String)],
) -> Result<Vec<Arrow>> {
    let mf: Vec<MultiFiltration> = states.iter().map(|g| multifiltration(d, &g.state)).collect();
    let index: HashMap<String, usize> = states.iter().enumerate().map(|(i, g)| (g.state.id(), i)).collect();
    let mut arrows = vec![];
    for (x, gx) in states.iter().enumerate() {
        for (y, gy) in states.iter().enumerate() {
            if !may_differ(gx, &mf[x], gy, &mf[y], mask) {
                continue;
            }
            let support = domain_support(&gx.state, &mf[x], &gy.state, &mf[y]);
            if detect_polygon(d, &support, mask) == Polygon::ForcedArrow {
                arrows.push(Arrow { from: gx.state.id(), to: gy.state.id(), curated: false });
            }
        }
    }
    for (a, b) in curated {
        let (x, y) = match (index.get(a), index.get(b)) {
            (Some(&x), Some(&y)) => (x, y),
            _ => return Err(Error::BadCuration(format!("{a}>{b}: unknown state"))),
        };
        if !may_differ(&states[x], &mf[x], &states[y], &mf[y], mask) {
            return Err(Error::BadCuration(format!("{a}>{b}")));
        }
        if !arrows.iter().any(|r| r.from == *a && r.to == *b) {
            arrows.push(Arrow { from: a.clone(), to: b.clone(), curated: true });
        }
    }
    Ok(arrows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// computed at this level
    Direct,
    /// transported from level `-s`
    Symmetry,
}

/// Homology ranks at one filtration level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub s: i64,
    pub exact: bool,
    pub source: Source,
    /// generators after the essential filter
    pub generators: usize,
    /// m -> (lower, upper)
    pub ranks: BTreeMap<i64, (usize, usize)>,
    /// arrows cancelled, in order
    pub cancelled: Vec<Arrow>,
    /// essential interval used at this level
    pub interval: EssentialInterval,
}

impl LevelReport {
    pub fn rank(&self, m: i64) -> (usize, usize) {
        self.ranks.get(&m).copied().unwrap_or((0, 0))
    }

    pub fn chi_bounds_hold(&self, chi: i64) -> bool {
        !self.exact
            || self.ranks.iter().map(|(&m, &(lo, _))| if m % 2 == 0 { lo as i64 } else { -(lo as i64) }).sum::<i64>()
                == chi
    }

    /// Exact ranks, when known.
    pub fn exact_ranks(&self) -> Option<BTreeMap<i64, usize>> {
        self.exact.then(|| self.ranks.iter().filter(|(_, r)| r.1 > 0).map(|(&m, &(lo, _))| (m, lo)).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportOptions {
    pub essential: bool,
    pub use_curated: bool,
    pub curated: Vec<(String, String)>,
    pub cap: u128,
    pub symmetry: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { essential: true, use_curated: false, curated: vec![], cap: DEFAULT_STATE_CAP, symmetry: true }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HfkReport {
    pub states: usize,
    pub census: BiGradedCensus,
    pub essential_interval: EssentialInterval,
    pub essential_census: BiGradedCensus,
    pub alexander: HalfLaurentPoly,
    pub levels: BTreeMap<i64, LevelReport>,
    /// largest level whose group may be non-zero
    pub hfk_degree: i64,
    pub genus_lower: i64,
    /// the reduction gave the same survivors when cancelling in reverse order
    pub order_independent: bool,
    pub warnings: Vec<String>,
}

impl HfkReport {
    pub fn level(&self, s: i64) -> Option<&LevelReport> {
        self.levels.get(&s)
    }

    /// (lower, upper) at (s, m); levels without generators are exactly zero.
    pub fn rank(&self, s: i64, m: i64) -> (usize, usize) {
        self.levels.get(&s).map_or((0, 0), |l| l.rank(m))
    }

    pub fn is_exact(&self, s: i64) -> bool {
        self.levels.get(&s).map_or(true, |l| l.exact)
    }

    pub fn all_exact(&self) -> bool {
        self.levels.values().all(|l| l.exact)
    }
}

struct Reduction {
    alive: Vec<bool>,
    possible: Vec<Vec<bool>>,
    forced: Vec<Vec<bool>>,
    cancelled: Vec<(usize, usize)>,
}

impl Reduction {
    fn run(level: &Level, mask: Option<&[bool]>, d: &Diagram, extra: &[(usize, usize)], reverse: bool) -> Self {
        let n = level.gens.len();
        let mut possible = vec![vec![false; n]; n];
        let mut forced = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                if may_differ(level.gens[x], &level.mf[x], level.gens[y], &level.mf[y], mask) {
                    possible[x][y] = true;
                    let sup = domain_support(&level.gens[x].state, &level.mf[x], &level.gens[y].state, &level.mf[y]);
                    forced[x][y] = detect_polygon(d, &sup, mask) == Polygon::ForcedArrow;
                }
            }
        }
        for &(x, y) in extra {
            forced[x][y] = true;
        }
        let mut r = Self { alive: vec![true; n], possible, forced, cancelled: vec![] };
        while let Some((x, y)) = r.next_forced(reverse) {
            r.cancel(x, y);
        }
        r
    }

    fn next_forced(&self, reverse: bool) -> Option<(usize, usize)> {
        let n = self.alive.len();
        let order: Box<dyn Iterator<Item = usize>> = if reverse { Box::new((0..n).rev()) } else { Box::new(0..n) };
        let order: Vec<usize> = order.collect();
        for &x in &order {
            for &y in &order {
                if self.alive[x] && self.alive[y] && self.forced[x][y] {
                    return Some((x, y));
                }
            }
        }
        None
    }

    fn cancel(&mut self, x: usize, y: usize) {
        let n = self.alive.len();
        self.alive[x] = false;
        self.alive[y] = false;
        for h in 0..n {
            if !self.alive[h] || !self.possible[h][y] {
                continue;
            }
            for k in 0..n {
                if self.alive[k] && self.possible[x][k] {
                    self.possible[h][k] = true;
                    self.forced[h][k] = false;
                }
            }
        }
        self.cancelled.push((x, y));
    }

    fn survivors(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&i| self.alive[i]).collect()
    }

    fn isolated(&self, g: usize) -> bool {
        (0..self.alive.len()).all(|h| !self.alive[h] || (!self.possible[h][g] && !self.possible[g][h]))
    }
}

fn reduce_level(
    d: &Diagram,
    s: i64,
    level: &Level,
    mask: Option<&[bool]>,
    curated: &[(usize, usize)],
) -> (LevelReport, bool) {
    let fwd = Reduction::run(level, mask, d, curated, false);
    let rev = Reduction::run(level, mask, d, curated, true);
    let tally = |r: &Reduction| {
        let mut by_m: BTreeMap<i64, usize> = BTreeMap::new();
        for g in r.survivors() {
            *by_m.entry(level.gens[g].m).or_insert(0) += 1;
        }
        by_m
    };
    let same = tally(&fwd) == tally(&rev);

    let mut ranks: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for g in fwd.survivors() {
        let entry = ranks.entry(level.gens[g].m).or_insert((0, 0));
        entry.1 += 1;
        if fwd.isolated(g) {
            entry.0 += 1;
        }
    }
    let survivors = fwd.survivors();
    let exact = survivors.iter().all(|&x| survivors.iter().all(|&y| !fwd.possible[x][y]));
    let cancelled = fwd
        .cancelled
        .iter()
        .map(|&(x, y)| Arrow {
            from: level.gens[x].state.id(),
            to: level.gens[y].state.id(),
            curated: curated.contains(&(x, y)),
        })
        .collect();
    let report = LevelReport {
        s,
        exact,
        source: Source::Direct,
        generators: level.gens.len(),
        ranks,
        cancelled,
        interval: EssentialInterval { backward: 0, forward: 0 },
    };
    (report, same)
}

/// Fills each level from its mirror level `-s` where that is sharper.
fn complete_by_symmetry(levels: &mut BTreeMap<i64, LevelReport>) {
    let snapshot = levels.clone();
    for (&s, lv) in levels.iter_mut() {
        let Some(other) = snapshot.get(&-s) else { continue };
        if s == 0 || lv.exact {
            continue;
        }
        // rank(s, m) = rank(-s, m - 2s)
        let moved: BTreeMap<i64, (usize, usize)> = other.ranks.iter().map(|(&m, &r)| (m + 2 * s, r)).collect();
        if other.exact {
            lv.ranks = moved;
            lv.exact = true;
            lv.source = Source::Symmetry;
            continue;
        }
        let keys: Vec<i64> = lv.ranks.keys().chain(moved.keys()).copied().collect();
        for m in keys {
            let a = lv.ranks.get(&m).copied().unwrap_or((0, 0));
            let b = moved.get(&m).copied().unwrap_or((0, 0));
            let merged = (a.0.max(b.0), a.1.min(b.1));
            if merged == (0, 0) {
                lv.ranks.remove(&m);
            } else {
                lv.ranks.insert(m, merged);
            }
        }
        if lv.ranks.values().all(|r| r.0 == r.1) {
            lv.exact = true;
            lv.source = Source::Symmetry;
        }
    }
}

pub fn hfk_report(d: &Diagram, options: &ReportOptions) -> Result<HfkReport> {
    let states = enumerate_states_capped(d, options.cap)?;
    hfk_report_from_states(d, &states, options)
}

pub fn hfk_report_from_states(d: &Diagram, states: &[GradedState], options: &ReportOptions) -> Result<HfkReport> {
    let census = BiGradedCensus::from_states(states);
    let alexander = alexander_from_census(&census)?;
    let mut warnings = vec![];

    let (interval, note) = essential_interval(d);
    let selected: BTreeMap<i64, (EssentialInterval, Vec<GradedState>)> = if options.essential {
        warnings.extend(note);
        essential_by_level(d, states)
    } else {
        let mut by_level: BTreeMap<i64, Vec<GradedState>> = BTreeMap::new();
        for g in states {
            by_level.entry(g.s).or_default().push(g.clone());
        }
        by_level.into_iter().map(|(s, gs)| (s, (EssentialInterval { backward: 0, forward: 0 }, gs))).collect()
    };
    let essential_census =
        BiGradedCensus::from_states(&selected.values().flat_map(|(_, gs)| gs.iter().cloned()).collect::<Vec<_>>());

    if options.use_curated {
        for (a, b) in &options.curated {
            let found = selected.values().any(|(_, gs)| {
                gs.iter().any(|g| g.state.id() == *a) && gs.iter().any(|g| g.state.id() == *b)
            });
            if !found {
                return Err(Error::BadCuration(format!("{a}>{b}: not a pair of essential states in one level")));
            }
        }
    }

    let results: Vec<(LevelReport, bool)> = selected
        .par_iter()
        .map(|(&s, (iv, gs))| {
            let mask_vec = (!iv.is_trivial()).then(|| iv.mask(d.edge_count()));
            let mask = mask_vec.as_deref();
            let index: HashMap<String, usize> = gs.iter().enumerate().map(|(i, g)| (g.state.id(), i)).collect();
            let curated: Vec<(String, String)> = if options.use_curated {
                options.curated.iter().filter(|(a, b)| index.contains_key(a) && index.contains_key(b)).cloned().collect()
            } else {
                vec![]
            };
            forced_arrows(d, gs, mask, &curated)?;
            let extra: Vec<(usize, usize)> = curated.iter().map(|(a, b)| (index[a], index[b])).collect();
            let level = Level { mf: gs.iter().map(|g| multifiltration(d, &g.state)).collect(), gens: gs.iter().collect() };
            let (mut lv, same) = reduce_level(d, s, &level, mask, &extra);
            lv.interval = *iv;
            Ok((lv, same))
        })
        .collect::<Result<_>>()?;

    let mut order_independent = true;
    let mut levels = BTreeMap::new();
    for (lv, same) in results {
        if !same {
            order_independent = false;
            warnings.push(format!("level {}: reversed cancellation order gives different survivors", lv.s));
        }
        levels.insert(lv.s, lv);
    }
    if options.symmetry {
        // a level with no generators is exactly zero; its mirror may still need it
        let missing: Vec<i64> = levels.keys().map(|s| -s).filter(|s| !levels.contains_key(s)).collect();
        for s in missing {
            levels.insert(
                s,
                LevelReport {
                    s,
                    exact: true,
                    source: Source::Direct,
                    generators: 0,
                    ranks: BTreeMap::new(),
                    cancelled: vec![],
                    interval: EssentialInterval { backward: 0, forward: 0 },
                },
            );
        }
        complete_by_symmetry(&mut levels);
        levels.retain(|_, lv| lv.generators > 0 || !lv.ranks.is_empty());
    }
    for w in &warnings {
        warn!("{w}");
    }

    let hfk_degree = levels
        .values()
        .filter(|lv| lv.ranks.values().any(|r| r.1 > 0))
        .map(|lv| lv.s)
        .max()
        .unwrap_or(0);
    let certain = levels.values().filter(|lv| lv.ranks.values().any(|r| r.0 > 0)).map(|lv| lv.s.abs()).max();
    let genus_lower = certain.unwrap_or(0).max(alexander.degree().unwrap_or(0));

    Ok(HfkReport {
        states: states.len(),
        census,
        essential_interval: interval,
        essential_census,
        alexander,
        levels,
        hfk_degree,
        genus_lower,
        order_independent,
        warnings,
    })
}

/// Two reports side by side.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MutationReport {
    pub left: HfkReport,
    pub right: HfkReport,
    /// some (s, m) has disjoint rank ranges in the two reports
    pub distinguished: bool,
    pub witness: Option<(i64, i64)>,
}

pub fn distinguishing_bigrading(a: &HfkReport, b: &HfkReport) -> Option<(i64, i64)> {
    let mut keys: Vec<(i64, i64)> = vec![];
    for r in [a, b] {
        for lv in r.levels.values() {
            keys.extend(lv.ranks.keys().map(|&m| (lv.s, m)));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().find(|&(s, m)| {
        let (x, y) = (a.rank(s, m), b.rank(s, m));
        x.1 < y.0 || y.1 < x.0
    })
}

pub fn mutation_compare(d1: &Diagram, d2: &Diagram, options: &ReportOptions) -> Result<MutationReport> {
    let left = hfk_report(d1, options)?;
    let right = hfk_report(d2, options)?;
    let witness = distinguishing_bigrading(&left, &right);
    Ok(MutationReport { left, right, distinguished: witness.is_some(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, parse_pd};
    use crate::states::tests::{FIGURE_EIGHT, FIVE_TWO, TREFOIL};

    fn report(text: &str, mark: usize) -> HfkReport {
        let d = build_diagram(&parse_pd(text).unwrap(), mark).unwrap();
        hfk_report(&d, &ReportOptions::default()).unwrap()
    }

    #[test]
    fn unknot_report() {
        let r = report("unknot", 0);
        assert!(r.all_exact());
        assert_eq!(r.rank(0, 0), (1, 1));
        assert_eq!(r.levels.len(), 1);
        assert_eq!(r.genus_lower, 0);
    }

    #[test]
    fn alternating_reports_are_exact() {
        for text in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            for mark in 0..4 {
                let r = report(text, mark);
                assert!(r.all_exact(), "{text} mark {mark}");
                for (s, lv) in &r.levels {
                    assert_eq!(lv.ranks.len(), 1);
                    assert!(lv.chi_bounds_hold(r.alexander.coeff(*s)));
                }
                assert!(r.order_independent);
            }
        }
    }

    #[test]
    fn trefoil_ranks() {
        let r = report(TREFOIL, 0);
        assert_eq!(r.rank(1, 2), (1, 1));
        assert_eq!(r.rank(0, 1), (1, 1));
        assert_eq!(r.rank(-1, 0), (1, 1));
        assert_eq!(r.genus_lower, 1);
        assert_eq!(r.hfk_degree, 1);
    }

    #[test]
    fn intervals_are_valid() {
        for text in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            let pd = parse_pd(text).unwrap();
            for mark in 0..pd.edge_count() {
                let d = build_diagram(&pd, mark).unwrap();
                let (iv, _) = essential_interval(&d);
                assert!(is_essential_interval(&d, iv.backward, iv.forward));
                assert!(!is_essential_interval(&d, iv.backward + 1, iv.forward));
                assert!(!is_essential_interval(&d, iv.backward, iv.forward + 1));
            }
        }
    }

    #[test]
    fn arrow_syntax() {
        assert_eq!(parse_arrow("0123>0132").unwrap(), ("0123".into(), "0132".into()));
        assert!(parse_arrow("0123").is_err());
    }

    #[test]
    fn identical_reports_not_distinguished() {
        let a = report(FIVE_TWO, 0);
        assert_eq!(distinguishing_bigrading(&a, &a), None);
        let b = report(TREFOIL, 0);
        assert!(distinguishing_bigrading(&a, &b).is_some());
    }
}
