//! Planar diagram codes and decorated knot projections.
//!
//! A crossing `X(a,b,c,d)` lists the incoming under-edge first and then the
//! remaining edges counterclockwise. Edge `i` runs into edge `i + 1 (mod N)`.
//! Corner (quadrant) `k` of a crossing is the wedge between slot `k` and slot
//! `k + 1`:
//!
//! ```text
//!            c
//!       q2   |   q1
//!    d ------+------ b
//!       q3   |   q0
//!            a
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<[usize; 4]>,
    edge_count: usize,
}

impl PdCode {
    /// The 0-crossing unknot. PD codes cannot describe it, so it is its own object.
    pub fn unknot() -> Self {
        Self { crossings: vec![], edge_count: 0 }
    }

    /// Validates and normalizes crossings; labels may start at any offset
    /// (e.g. the 1-based codes of published tables) and are shifted to start at 0.
    pub fn new(crossings: Vec<[usize; 4]>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::MalformedPd("no crossings; use the literal `unknot`".into()));
        }
        let n = crossings.len();
        let edge_count = 2 * n;

        for x in &crossings {
            for i in 0..4 {
                if (i + 1..4).any(|j| x[j] == x[i]) {
                    return Err(Error::LabelArity { label: x[i], count: 2 });
                }
            }
        }

        let min = crossings.iter().flatten().copied().min().unwrap();
        let max = crossings.iter().flatten().copied().max().unwrap();
        let mut counts = vec![0usize; max - min + 1];
        for &l in crossings.iter().flatten() {
            counts[l - min] += 1;
        }
        if let Some((i, &c)) = counts.iter().enumerate().find(|(_, &c)| c != 2 && c != 0) {
            return Err(Error::LabelArity { label: i + min, count: c });
        }
        if counts.len() != edge_count || counts.contains(&0) {
            return Err(Error::MalformedPd(format!(
                "labels must form a contiguous range of {edge_count} values, found {min}..={max}"
            )));
        }
        let crossings: Vec<[usize; 4]> = crossings.iter().map(|x| x.map(|l| l - min)).collect();

        let components = count_components(&crossings, edge_count);
        if components > 1 {
            return Err(Error::MultiComponent(components));
        }

        let succ = |e: usize| (e + 1) % edge_count;
        let mut outgoing = vec![0usize; edge_count];
        for x in &crossings {
            if x[2] != succ(x[0]) {
                return Err(Error::MalformedPd(format!(
                    "under-strand {} -> {} does not follow the edge numbering",
                    x[0], x[2]
                )));
            }
            outgoing[x[2]] += 1;
            if x[1] == succ(x[3]) {
                outgoing[x[1]] += 1;
            } else if x[3] == succ(x[1]) {
                outgoing[x[3]] += 1;
            } else {
                return Err(Error::MalformedPd(format!(
                    "over-strand {},{} does not follow the edge numbering",
                    x[1], x[3]
                )));
            }
        }
        if let Some(e) = outgoing.iter().position(|&c| c != 1) {
            return Err(Error::MalformedPd(format!("edge {e} must leave exactly one crossing")));
        }

        let pd = Self { crossings, edge_count };
        let faces = pd.trace_faces().1;
        if n as isize - edge_count as isize + faces as isize != 2 {
            return Err(Error::NonPlanar { v: n, e: edge_count, f: faces });
        }
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_unknot(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Whether the over-strand at crossing `c` runs from slot 3 to slot 1.
    /// That is exactly the positive crossings.
    fn over_runs_3_to_1(&self, c: usize) -> bool {
        let x = self.crossings[c];
        x[1] == (x[3] + 1) % self.edge_count
    }

    pub fn sign(&self, c: usize) -> i8 {
        if self.over_runs_3_to_1(c) {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i32 {
        (0..self.crossing_count()).map(|c| self.sign(c) as i32).sum()
    }

    /// Swaps over- and under-strands at every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = (0..self.crossing_count())
            .map(|c| {
                let [a, b, cc, d] = self.crossings[c];
                // the new incoming under-edge is the old incoming over-edge
                if self.over_runs_3_to_1(c) {
                    [d, a, b, cc]
                } else {
                    [b, cc, d, a]
                }
            })
            .collect();
        Self { crossings, edge_count: self.edge_count }
    }

    /// For each edge label, its two (crossing, slot) occurrences.
    fn label_slots(&self) -> Vec<Vec<(usize, usize)>> {
        let mut slots = vec![vec![]; self.edge_count];
        for (c, x) in self.crossings.iter().enumerate() {
            for (k, &l) in x.iter().enumerate() {
                slots[l].push((c, k));
            }
        }
        slots
    }

    /// Face id of every corner, plus the face count.
    fn trace_faces(&self) -> (Vec<[usize; 4]>, usize) {
        let slots = self.label_slots();
        let other_end = |c: usize, k: usize| {
            let l = self.crossings[c][k];
            let s = &slots[l];
            if s[0] == (c, k) {
                s[1]
            } else {
                s[0]
            }
        };
        let mut face = vec![[usize::MAX; 4]; self.crossing_count()];
        let mut count = 0;
        for c0 in 0..self.crossing_count() {
            for k0 in 0..4 {
                if face[c0][k0] != usize::MAX {
                    continue;
                }
                let (mut c, mut k) = (c0, k0);
                while face[c][k] == usize::MAX {
                    face[c][k] = count;
                    (c, k) = other_end(c, (k + 1) % 4);
                }
                count += 1;
            }
        }
        (face, count)
    }
}

fn count_components(crossings: &[[usize; 4]], edge_count: usize) -> usize {
    let mut parent: Vec<usize> = (0..edge_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in crossings {
        for (i, j) in [(0, 2), (1, 3)] {
            let (ri, rj) = (find(&mut parent, x[i]), find(&mut parent, x[j]));
            parent[ri] = rj;
        }
    }
    (0..edge_count).filter(|&e| find(&mut parent, e) == e).count()
}

impl FromStr for PdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unknot() {
            return write!(f, "unknot");
        }
        let terms: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        write!(f, "{}", terms.join(" "))
    }
}

/// A PD file: the code plus an optional `mark: <int>` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdInput {
    pub pd: PdCode,
    pub mark: usize,
}

/// Parses PD text, ignoring any `mark:` line.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    parse_pd_input(text).map(|input| input.pd)
}

pub fn parse_pd_input(text: &str) -> Result<PdInput> {
    let mut crossings = vec![];
    let mut mark = None;
    let mut unknot = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("mark:") {
            let m = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::MalformedPd(format!("bad mark line `{line}`")))?;
            if mark.replace(m).is_some() {
                return Err(Error::MalformedPd("duplicate mark line".into()));
            }
            continue;
        }
        if line == "unknot" {
            unknot = true;
            continue;
        }
        parse_terms(line, &mut crossings)?;
    }
    let pd = match (unknot, crossings.is_empty()) {
        (true, true) => PdCode::unknot(),
        (true, false) => {
            return Err(Error::MalformedPd("`unknot` cannot be combined with crossings".into()))
        }
        (false, _) => PdCode::new(crossings)?,
    };
    let mark = mark.unwrap_or(0);
    if !pd.is_unknot() && mark >= pd.edge_count() {
        return Err(Error::EdgeOutOfRange { edge: mark, edges: pd.edge_count() });
    }
    Ok(PdInput { pd, mark })
}

fn parse_terms(line: &str, out: &mut Vec<[usize; 4]>) -> Result<()> {
    let mut rest = line;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            return Ok(());
        }
        let body = rest
            .strip_prefix("X(")
            .ok_or_else(|| Error::MalformedPd(format!("expected `X(` at `{}`", preview(rest))))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::MalformedPd(format!("unclosed term at `{}`", preview(rest))))?;
        let labels: Vec<usize> = body[..close]
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::MalformedPd(format!("bad label in `X({})`", &body[..close])))?;
        let labels: [usize; 4] = labels
            .try_into()
            .map_err(|_| Error::MalformedPd(format!("`X({})` needs 4 labels", &body[..close])))?;
        out.push(labels);
        rest = &body[close + 1..];
    }
}

fn preview(s: &str) -> &str {
    &s[..s.len().min(16)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Where a corner sits relative to the two oriented strands of its crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub over: Side,
    pub under: Side,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |side| match side {
            Side::Left => "left",
            Side::Right => "right",
        };
        write!(f, "over-{}/under-{}", s(self.over), s(self.under))
    }
}

/// Which pair of strand ends bounds a corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerKind {
    BetweenIncoming,
    BetweenOutgoing,
    Lateral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Traversal indices of the edges at slots 0..4 (PD order).
    pub slots: [usize; 4],
    pub sign: i8,
    /// Slot where the over-strand leaves (1 for positive, 3 for negative).
    pub over_out: usize,
}

impl Crossing {
    pub fn over_in(&self) -> usize {
        (self.over_out + 2) % 4
    }

    pub fn is_outgoing(&self, slot: usize) -> bool {
        slot == 2 || slot == self.over_out
    }

    /// Side of corner `k` relative to the strand leaving through `out_slot`.
    pub fn side(&self, out_slot: usize, k: usize) -> Side {
        if k == out_slot || k == (out_slot + 1) % 4 {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn position(&self, k: usize) -> Position {
        Position { over: self.side(self.over_out, k), under: self.side(2, k) }
    }

    pub fn corner_kind(&self, k: usize) -> CornerKind {
        match (self.is_outgoing(k), self.is_outgoing((k + 1) % 4)) {
            (false, false) => CornerKind::BetweenIncoming,
            (true, true) => CornerKind::BetweenOutgoing,
            _ => CornerKind::Lateral,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEnds {
    /// (crossing, slot) the edge leaves from
    pub start: (usize, usize),
    /// (crossing, slot) the edge runs into
    pub end: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub color: Color,
    /// (crossing, corner) pairs in boundary order
    pub corners: Vec<(usize, usize)>,
    /// bounding edges with the side of the edge the face lies on
    pub edges: Vec<(usize, Side)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadrant {
    pub crossing: usize,
    pub corner: usize,
    pub face: usize,
    pub position: Position,
}

/// A knot projection with orientation, checkerboard coloring and a
/// distinguished edge. Edges are re-indexed so the marked edge is edge 0 and
/// indices follow the orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pd: PdCode,
    mark: usize,
    flipped: bool,
    crossings: Vec<Crossing>,
    edges: Vec<EdgeEnds>,
    corner_face: Vec<[usize; 4]>,
    faces: Vec<Face>,
    region_a: usize,
    region_b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Mirror,
    /// Move the mark to the given PD label.
    Remark(usize),
}

/// Decorates `pd` with the marked edge `mark` (a PD label) and the default coloring.
pub fn build_diagram(pd: &PdCode, mark: usize) -> Result<Diagram> {
    Diagram::new(pd, mark, false)
}

pub fn transform(d: &Diagram, op: Transform) -> Result<Diagram> {
    match op {
        Transform::Mirror => Diagram::new(&d.pd.mirror(), d.mark, d.flipped),
        Transform::Remark(e) => Diagram::new(&d.pd, e, d.flipped),
    }
}

impl Diagram {
    /// `flip_coloring` makes the face left of the marked edge white instead of black.
    pub fn new(pd: &PdCode, mark: usize, flip_coloring: bool) -> Result<Self> {
        if pd.is_unknot() {
            let (left, right) = if flip_coloring { (Color::White, Color::Black) } else { (Color::Black, Color::White) };
            let faces = vec![
                Face { color: left, corners: vec![], edges: vec![(0, Side::Left)] },
                Face { color: right, corners: vec![], edges: vec![(0, Side::Right)] },
            ];
            let (a, b) = if flip_coloring { (1, 0) } else { (0, 1) };
            return Ok(Self {
                pd: pd.clone(),
                mark: 0,
                flipped: flip_coloring,
                crossings: vec![],
                edges: vec![],
                corner_face: vec![],
                faces,
                region_a: a,
                region_b: b,
            });
        }
        let n_edges = pd.edge_count();
        if mark >= n_edges {
            return Err(Error::EdgeOutOfRange { edge: mark, edges: n_edges });
        }
        let reindex = |l: usize| (l + n_edges - mark) % n_edges;

        let crossings: Vec<Crossing> = (0..pd.crossing_count())
            .map(|c| {
                let sign = pd.sign(c);
                Crossing {
                    slots: pd.crossings()[c].map(reindex),
                    sign,
                    over_out: if sign > 0 { 1 } else { 3 },
                }
            })
            .collect();

        let mut start = vec![None; n_edges];
        let mut end = vec![None; n_edges];
        for (c, x) in crossings.iter().enumerate() {
            for k in 0..4 {
                let slot = if x.is_outgoing(k) { &mut start } else { &mut end };
                slot[x.slots[k]] = Some((c, k));
            }
        }
        let edges: Vec<EdgeEnds> = (0..n_edges)
            .map(|e| EdgeEnds { start: start[e].unwrap(), end: end[e].unwrap() })
            .collect();

        let (corner_face, n_faces) = pd.trace_faces();
        let mut faces: Vec<Face> =
            (0..n_faces).map(|_| Face { color: Color::Black, corners: vec![], edges: vec![] }).collect();
        let mut seen = vec![[false; 4]; crossings.len()];
        for c0 in 0..crossings.len() {
            for k0 in 0..4 {
                if seen[c0][k0] {
                    continue;
                }
                let f = corner_face[c0][k0];
                let (mut c, mut k) = (c0, k0);
                while !seen[c][k] {
                    seen[c][k] = true;
                    faces[f].corners.push((c, k));
                    let exit = (k + 1) % 4;
                    let e = crossings[c].slots[exit];
                    let ends = edges[e];
                    // leaving c through `exit`, the face is on the right of travel
                    let (side, next) = if ends.start == (c, exit) {
                        (Side::Right, ends.end)
                    } else {
                        (Side::Left, ends.start)
                    };
                    faces[f].edges.push((e, side));
                    (c, k) = next;
                }
            }
        }

        let mut d = Self {
            pd: pd.clone(),
            mark,
            flipped: flip_coloring,
            crossings,
            edges,
            corner_face,
            faces,
            region_a: 0,
            region_b: 0,
        };
        d.color_faces(flip_coloring)?;
        Ok(d)
    }

    fn color_faces(&mut self, flip: bool) -> Result<()> {
        let n = self.faces.len();
        let mut color: Vec<Option<Color>> = vec![None; n];
        let seed = self.edge_face(0, Side::Left);
        color[seed] = Some(if flip { Color::White } else { Color::Black });
        let mut stack = vec![seed];
        while let Some(f) = stack.pop() {
            let c = color[f].unwrap();
            for &(e, side) in &self.faces[f].edges {
                let g = self.edge_face(e, if side == Side::Left { Side::Right } else { Side::Left });
                match color[g] {
                    None => {
                        color[g] = Some(c.opposite());
                        stack.push(g);
                    }
                    Some(cg) if cg == c => {
                        return Err(Error::NonPlanar { v: self.crossings.len(), e: self.edges.len(), f: n })
                    }
                    _ => {}
                }
            }
        }
        for (face, c) in self.faces.iter_mut().zip(color) {
            face.color = c.expect("face graph is connected");
        }
        let (l, r) = (self.edge_face(0, Side::Left), self.edge_face(0, Side::Right));
        (self.region_a, self.region_b) = if self.faces[l].color == Color::Black { (l, r) } else { (r, l) };
        Ok(())
    }

    /// The face on the given side of edge `e` (traversal index).
    pub fn edge_face(&self, e: usize, side: Side) -> usize {
        if self.is_unknot() {
            return match side {
                Side::Left => 0,
                Side::Right => 1,
            };
        }
        let (c, s) = self.edges[e].start;
        match side {
            Side::Left => self.corner_face[c][s],
            Side::Right => self.corner_face[c][(s + 3) % 4],
        }
    }

    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    /// PD label of the marked edge.
    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn coloring_flipped(&self) -> bool {
        self.flipped
    }

    pub fn is_unknot(&self) -> bool {
        self.pd.is_unknot()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of edges; the unknot counts its single vertex-free circle.
    pub fn edge_count(&self) -> usize {
        self.edges.len().max(1)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn edges(&self) -> &[EdgeEnds] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_color(&self, f: usize) -> Color {
        self.faces[f].color
    }

    pub fn corner_face(&self, c: usize, k: usize) -> usize {
        self.corner_face[c][k]
    }

    pub fn corner_color(&self, c: usize, k: usize) -> Color {
        self.faces[self.corner_face[c][k]].color
    }

    pub fn quadrant(&self, c: usize, k: usize) -> Quadrant {
        Quadrant { crossing: c, corner: k, face: self.corner_face[c][k], position: self.crossings[c].position(k) }
    }

    /// The black face adjacent to the marked edge.
    pub fn region_a(&self) -> usize {
        self.region_a
    }

    /// The white face adjacent to the marked edge.
    pub fn region_b(&self) -> usize {
        self.region_b
    }

    /// Crossing where edge `i` starts, i.e. where the traversal passes from
    /// edge `i - 1` into edge `i`.
    pub fn vertex_before(&self, i: usize) -> usize {
        self.edges[i].start.0
    }

    /// Whether the traversal passes over at the start of edge `i`.
    pub fn passes_over_into(&self, i: usize) -> bool {
        self.edges[i].start.1 != 2
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|x| x.sign as i32).sum()
    }

    /// Circles of the oriented resolution.
    pub fn seifert_circles(&self) -> usize {
        if self.is_unknot() {
            return 1;
        }
        let n = self.edges.len();
        let next = |e: usize| {
            let (c, slot) = self.edges[e].end;
            let x = &self.crossings[c];
            let out = if slot == 0 { x.over_out } else { 2 };
            x.slots[out]
        };
        let mut seen = vec![false; n];
        let mut circles = 0;
        for e0 in 0..n {
            if seen[e0] {
                continue;
            }
            circles += 1;
            let mut e = e0;
            while !seen[e] {
                seen[e] = true;
                e = next(e);
            }
        }
        circles
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.edges.len()).all(|i| {
            let j = (i + 1) % self.edges.len();
            self.passes_over_into(i) != self.passes_over_into(j)
        })
    }
}
