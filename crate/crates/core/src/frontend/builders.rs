//! Knot families built from signed plane graphs via the medial construction.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, PdCode};
use crate::error::{Error, Result};

/// A plane graph given by counterclockwise rotation systems. Each edge
/// carries the sign of the crossing it becomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPlaneGraph {
    /// (tail, head, crossing sign)
    pub edges: Vec<(usize, usize, i8)>,
    /// edge ids around each vertex, counterclockwise
    pub rotation: Vec<Vec<usize>>,
}

/// Where the marked medial edge sits: the angle at `vertex` that follows
/// edge `after` counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedAngle {
    pub vertex: usize,
    pub after: usize,
    /// traverse the knot against the default direction
    pub reverse: bool,
}

/// The PD code of the medial knot, with the crossing index of each graph
/// edge equal to the edge id.
#[derive(Clone, Debug)]
pub struct MedialKnot {
    pub pd: PdCode,
    /// face of the diagram for each graph vertex
    pub vertex_face: Vec<usize>,
    pub diagram: Diagram,
}

impl MedialKnot {
    fn unknot() -> Self {
        let pd = PdCode::unknot();
        let diagram = Diagram::new(&pd, 0, false).expect("unknot decorates");
        Self { pd, vertex_face: vec![], diagram }
    }

    /// The reflection; faces and the graph correspondence are unchanged.
    pub fn mirrored(&self) -> Result<Self> {
        let pd = self.pd.mirror();
        let diagram = Diagram::new(&pd, 0, self.diagram.coloring_flipped())?;
        let vertex_face = self
            .vertex_face
            .iter()
            .map(|&f| {
                let (c, k) = self.diagram.faces()[f].corners[0];
                let label = self.pd.crossings()[c][k];
                let k2 = pd.crossings()[c].iter().position(|&l| l == label).unwrap();
                diagram.corner_face(c, k2)
            })
            .collect();
        Ok(Self { pd, vertex_face, diagram })
    }
}

// positions of the four medial half-edges at a crossing, counterclockwise
const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

impl SignedPlaneGraph {
    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    fn next_at(&self, v: usize, e: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == e).expect("edge in rotation");
        rot[(i + 1) % rot.len()]
    }

    fn validate(&self) -> Result<()> {
        for (e, &(u, v, s)) in self.edges.iter().enumerate() {
            if u == v || s.abs() != 1 {
                return Err(Error::BadSpec(format!("graph edge {e} must join distinct vertices with sign ±1")));
            }
            for w in [u, v] {
                if self.rotation[w].iter().filter(|&&x| x == e).count() != 1 {
                    return Err(Error::BadSpec(format!("edge {e} missing from the rotation at vertex {w}")));
                }
            }
        }
        let total: usize = self.rotation.iter().map(Vec::len).sum();
        if total != 2 * self.edges.len() {
            return Err(Error::BadSpec("rotation system lists unknown edges".into()));
        }
        Ok(())
    }

    /// Position of the angle (v, e, next_v(e)) at crossing `e`.
    fn first_end(&self, v: usize, e: usize) -> usize {
        if self.edges[e].0 == v {
            NW
        } else {
            SE
        }
    }

    /// Position of the angle (v, prev_v(e), e) at crossing `e`.
    fn second_end(&self, v: usize, e: usize) -> usize {
        if self.edges[e].0 == v {
            SW
        } else {
            NE
        }
    }

    /// Builds the knot whose black graph is this graph, decorated at `mark`.
    pub fn medial_knot(&self, mark: MarkedAngle) -> Result<MedialKnot> {
        self.validate()?;
        let n = self.edges.len();
        // angle id -> ((crossing, position), (crossing, position))
        let mut angles = vec![];
        let mut angle_at = vec![[usize::MAX; 4]; n];
        let mut mark_angle = None;
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                let f = self.next_at(v, e);
                let a = ((e, self.first_end(v, e)), (f, self.second_end(v, f)));
                let id = angles.len();
                angle_at[a.0 .0][a.0 .1] = id;
                angle_at[a.1 .0][a.1 .1] = id;
                if v == mark.vertex && e == mark.after {
                    mark_angle = Some(id);
                }
                angles.push(a);
            }
        }
        let mark_angle = mark_angle.ok_or_else(|| Error::BadSpec("marked angle not in the graph".into()))?;

        // walk the strand, labelling angles in traversal order
        let mut label = vec![usize::MAX; angles.len()];
        let mut enter = vec![usize::MAX; angles.len()];
        let (mut a, mut at) = if mark.reverse {
            (mark_angle, angles[mark_angle].0)
        } else {
            (mark_angle, angles[mark_angle].1)
        };
        let mut next_label = 0;
        while label[a] == usize::MAX {
            label[a] = next_label;
            next_label += 1;
            enter[a] = at.0 * 4 + at.1;
            let (c, p) = at;
            let out = (p + 2) % 4;
            let b = angle_at[c][out];
            let (x, y) = angles[b];
            at = if x == (c, out) { y } else { x };
            a = b;
        }
        if next_label != angles.len() {
            return Err(Error::BadSpec("medial graph has more than one component".into()));
        }

        let mut crossings = vec![];
        for e in 0..n {
            let labels: [usize; 4] = std::array::from_fn(|p| label[angle_at[e][p]]);
            let incoming = |p: usize| enter[angle_at[e][p]] == e * 4 + p;
            let strand_in = |q: usize| if incoming(q) { q } else { (q + 2) % 4 };
            let (i, j) = (strand_in(0), strand_in(1));
            // with the strand entering at i underneath, the over-strand
            // entering at i - 1 gives a positive crossing
            let positive_if_i_under = j == (i + 3) % 4;
            let sign = self.edges[e].2 > 0;
            let under = if positive_if_i_under == sign { i } else { j };
            crossings.push(std::array::from_fn(|k| labels[(under + k) % 4]));
        }
        let pd = PdCode::new(crossings)?;

        let mut diagram = Diagram::new(&pd, 0, false)?;
        let face_of = |d: &Diagram, v: usize| {
            let e = self.rotation[v][0];
            let west = self.edges[e].0 == v;
            let start = if west { NW } else { SE };
            let slot_label = label[angle_at[e][start]];
            let k = pd.crossings()[e].iter().position(|&l| l == slot_label).unwrap();
            d.corner_face(e, k)
        };
        if diagram.region_a() != face_of(&diagram, mark.vertex) {
            diagram = Diagram::new(&pd, 0, true)?;
        }
        let vertex_face = (0..self.vertex_count()).map(|v| face_of(&diagram, v)).collect();
        Ok(MedialKnot { pd, vertex_face, diagram })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySpec {
    Kt { r: i64, n: i64 },
    Conway { r: i64, n: i64 },
    Pretzel { p: i64, q: i64, r: i64 },
    Torus2 { m: i64 },
}

/// A built family member; `unknot` is set when the parameters give the unknot.
#[derive(Clone, Debug)]
pub struct FamilyDiagram {
    pub spec: FamilySpec,
    pub knot: MedialKnot,
    pub unknot: bool,
    /// graph edge ids by name, e.g. `"a3"`, `"e"`, `"x1"`
    pub edge_names: Vec<String>,
}

impl FamilyDiagram {
    pub fn diagram(&self) -> &Diagram {
        &self.knot.diagram
    }

    pub fn edge(&self, name: &str) -> usize {
        self.edge_names.iter().position(|n| n == name).unwrap_or_else(|| panic!("no edge {name}"))
    }
}

/// Incrementally assembled plane graph with named edges.
struct GraphBuilder {
    edges: Vec<(usize, usize, i8)>,
    names: Vec<String>,
    rotation: Vec<Vec<usize>>,
}

impl GraphBuilder {
    fn new(vertices: usize) -> Self {
        Self { edges: vec![], names: vec![], rotation: vec![vec![]; vertices] }
    }

    fn vertex(&mut self) -> usize {
        self.rotation.push(vec![]);
        self.rotation.len() - 1
    }

    fn edge(&mut self, name: String, u: usize, v: usize, sign: i8) -> usize {
        self.edges.push((u, v, sign));
        self.names.push(name);
        self.edges.len() - 1
    }

    /// A path of `len` edges from `from` to `to` named `prefix1..prefix{len}`,
    /// with index 1 at `to`. Returns the edges at `from` and at `to`.
    fn chain(&mut self, prefix: &str, len: usize, from: usize, to: usize, sign: i8) -> (usize, usize) {
        let mut ids = vec![0; len + 1];
        let mut prev = from;
        let mut prev_edge = None;
        let mut at_from = 0;
        for i in (1..=len).rev() {
            let next = if i == 1 { to } else { self.vertex() };
            let e = self.edge(format!("{prefix}{i}"), prev, next, sign);
            ids[i] = e;
            if let Some(p) = prev_edge {
                self.rotation[prev] = vec![p, e];
            } else {
                at_from = e;
            }
            prev_edge = Some(e);
            prev = next;
        }
        (at_from, ids[1])
    }

    fn finish(self) -> (SignedPlaneGraph, Vec<String>) {
        (SignedPlaneGraph { edges: self.edges, rotation: self.rotation }, self.names)
    }
}

/// Crossing sign carrying black-graph label `label` (all arcs of these
/// families are non-neutral).
fn sign_of_label(label: i8) -> i8 {
    -label
}

/// Which white face the mark faces, and the traversal direction. Fixed so
/// that the top generators land at the documented filtration levels.
const KT_MARK: (bool, bool) = (false, false);
const CONWAY_MARK: (bool, bool) = (true, false);

fn kt_like(r: i64, n: i64, conway: bool) -> Result<(SignedPlaneGraph, Vec<String>, MarkedAngle)> {
    let r = r as usize;
    let twists = 2 * n.unsigned_abs() as usize;
    let twist_label: i8 = if n > 0 { 1 } else { -1 };
    let mut g = GraphBuilder::new(3);
    let (root, x, y) = (0, 1, 2);
    let (c_len, d_len, c_label, d_label) = if conway { (r + 1, r, 1, -1) } else { (r, r + 1, -1, 1) };
    let (a_r, a_x) = g.chain("a", r + 1, root, x, sign_of_label(-1));
    let (b_r, b_x) = g.chain("b", r, root, x, sign_of_label(1));
    let (c_r, c_y) = g.chain("c", c_len, root, y, sign_of_label(c_label));
    let (d_r, d_y) = g.chain("d", d_len, root, y, sign_of_label(d_label));
    let twist: Vec<usize> = (1..=twists)
        .map(|i| {
            let name = match i {
                1 => "e".to_string(),
                i if i == twists => "f".to_string(),
                i => format!("t{i}"),
            };
            g.edge(name, x, y, sign_of_label(twist_label))
        })
        .collect();
    let f = twist[twists - 1];
    g.rotation[root] = vec![a_r, b_r, c_r, d_r];
    g.rotation[x] = [vec![f, b_x, a_x], twist[..twists - 1].to_vec()].concat();
    g.rotation[y] = [vec![d_y, c_y], twist.iter().rev().copied().collect()].concat();

    let (inner, reverse) = if conway { CONWAY_MARK } else { KT_MARK };
    let mark = if conway {
        // the vertex between b1 and b2
        let b1 = g.names.iter().position(|s| s == "b1").unwrap();
        let b2 = g.names.iter().position(|s| s == "b2").unwrap();
        MarkedAngle { vertex: g.edges[b1].0, after: if inner { b1 } else { b2 }, reverse }
    } else {
        MarkedAngle { vertex: root, after: if inner { b_r } else { d_r }, reverse }
    };
    let (graph, names) = g.finish();
    Ok((graph, names, mark))
}

fn pretzel_graph(p: i64, q: i64, r: i64) -> (SignedPlaneGraph, Vec<String>, MarkedAngle) {
    let mut g = GraphBuilder::new(2);
    let (top, bottom) = (0, 1);
    let sgn = |k: i64| if k > 0 { 1 } else { -1 };
    let (x_top, x_bot) = g.chain("x", p.unsigned_abs() as usize, top, bottom, sign_of_label(sgn(p)));
    let (y_top, y_bot) = g.chain("y", q.unsigned_abs() as usize, top, bottom, sign_of_label(sgn(q)));
    let (z_top, z_bot) = g.chain("z", r.unsigned_abs() as usize, top, bottom, sign_of_label(sgn(r)));
    g.rotation[top] = vec![x_top, y_top, z_top];
    g.rotation[bottom] = vec![z_bot, y_bot, x_bot];
    // the top vertex holds x_{|p|}, y_{|q|}, z_{|r|}; mark between z and x
    let mark = MarkedAngle { vertex: top, after: z_top, reverse: false };
    let (graph, names) = g.finish();
    (graph, names, mark)
}

/// The 2-strand twist knot T(2, m) for odd m, as a chain of m parallel edges.
fn torus2_graph(m: i64) -> (SignedPlaneGraph, Vec<String>, MarkedAngle) {
    let k = m.unsigned_abs() as usize;
    let mut g = GraphBuilder::new(2);
    let sign = sign_of_label(if m > 0 { 1 } else { -1 });
    let ids: Vec<usize> = (1..=k).map(|i| g.edge(format!("t{i}"), 0, 1, sign)).collect();
    g.rotation[0] = ids.clone();
    g.rotation[1] = ids.iter().rev().copied().collect();
    let mark = MarkedAngle { vertex: 0, after: ids[0], reverse: false };
    let (graph, names) = g.finish();
    (graph, names, mark)
}

pub fn build_family(spec: FamilySpec) -> Result<FamilyDiagram> {
    let (graph, names, mark, unknot) = match spec {
        FamilySpec::Kt { r, n } | FamilySpec::Conway { r, n } => {
            let conway = matches!(spec, FamilySpec::Conway { .. });
            // KT(r, n) = KT(-r-1, n)
            let r = if r <= -2 { -r - 1 } else { r };
            if r <= 0 || n == 0 || (conway && r < 2) {
                return Ok(FamilyDiagram { spec, knot: MedialKnot::unknot(), unknot: true, edge_names: vec![] });
            }
            let (g, names, mark) = kt_like(r, n, conway)?;
            let mut knot = g.medial_knot(mark)?;
            if n < 0 {
                knot = knot.mirrored()?;
            }
            return Ok(FamilyDiagram { spec, knot, unknot: r == 1, edge_names: names });
        }
        FamilySpec::Pretzel { p, q, r } => {
            if [p, q, r].iter().any(|k| k % 2 == 0) {
                return Err(Error::BadSpec(format!("pretzel parameters must be odd, got ({p},{q},{r})")));
            }
            let (g, names, mark) = pretzel_graph(p, q, r);
            (g, names, mark, false)
        }
        FamilySpec::Torus2 { m } => {
            if m % 2 == 0 {
                return Err(Error::BadSpec(format!("T(2,{m}) is a link; only odd m builds a knot")));
            }
            if m.abs() == 1 {
                return Ok(FamilyDiagram { spec, knot: MedialKnot::unknot(), unknot: true, edge_names: vec![] });
            }
            let (g, names, mark) = torus2_graph(m);
            (g, names, mark, false)
        }
    };
    let knot = graph.medial_knot(mark)?;
    Ok(FamilyDiagram { spec, knot, unknot, edge_names: names })
}
