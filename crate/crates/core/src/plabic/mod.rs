//! The bipartite graph attached to a signed word.
//!
//! The graph lives on `n` horizontal wires. Every letter `±i` becomes a
//! vertical edge across spacing `i` (between wires `i` and `i + 1`); a
//! positive letter has its white end on top, a negative letter its black end
//! on top. Vertices of equal color that end up adjacent on a wire are
//! separated by an inserted vertex of the other color, and every wire is
//! closed off by white vertices at both ends.
//!
//! Geometry is purely combinatorial. Letter `p` (0-based) sits at
//! x-coordinate `4(p + 1)`, inserted vertices at even midpoints, and the gap
//! `g` between letters `g - 1` and `g` is sampled at `x = 4g + 1`. A face is a
//! spacing together with an interval of gaps between two consecutive letters
//! of that spacing.

mod export;
mod paths;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{Seed, Vertex};
use crate::exactalg::VarId;
use crate::weyl::{check_letters, SignedWord, WeylError};

pub use export::{seed_to_dot, GraphJson, QuiverJson};
pub use paths::{Path, PathFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlabicError {
    #[error(transparent)]
    Word(#[from] WeylError),
    #[error("index sets have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("strand index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("no unique degree-maximizing path family for ({rows:?}, {cols:?})")]
    NotGreedyWord { rows: Vec<usize>, cols: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub id: usize,
    pub color: Color,
    /// 1-based wire index, counted from the top.
    pub wire: usize,
    pub x: i64,
    /// Index of the letter this vertex belongs to, if any.
    pub column: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum EdgeKind {
    Horizontal { wire: usize },
    Vertical { column: usize, spacing: usize },
    External { wire: usize, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub kind: EdgeKind,
    /// `[left, right]` for horizontal edges, `[top, bottom]` for vertical
    /// ones; `None` marks the open end of an external edge.
    pub ends: [Option<usize>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    /// 0 above the top wire, `n` below the bottom wire.
    pub spacing: usize,
    /// Position among the faces of the same spacing, left to right.
    pub ordinal: usize,
    pub boundary: bool,
    /// Gaps covered by this face (inclusive).
    pub gaps: (usize, usize),
    /// Dominating set of right-going strands.
    pub i_set: Vec<usize>,
    /// Dominating set of left-going strands.
    pub j_set: Vec<usize>,
}

impl Face {
    pub fn var(&self) -> VarId {
        VarId(self.id as u32)
    }

    pub fn label(&self) -> (Vec<usize>, Vec<usize>) {
        (self.i_set.clone(), self.j_set.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrandDirection {
    RightGoing,
    LeftGoing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZag {
    pub index: usize,
    pub direction: StrandDirection,
    pub trajectory: Vec<usize>,
    /// Wire whose external edge the strand leaves through.
    pub exit_wire: usize,
    pub exit_side: Side,
}

// Direction slots, counterclockwise: E, N, W, S.
const E: usize = 0;
const N: usize = 1;
const W: usize = 2;
const S: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    letters: Vec<i32>,
    vertices: Vec<GraphVertex>,
    edges: Vec<Edge>,
    // per vertex, the edge in each direction slot
    incidence: Vec<[Option<usize>; 4]>,
    // per wire, the edges left to right including both external edges
    wire_edges: Vec<Vec<usize>>,
    faces: Vec<Face>,
    // first face id of each spacing 0..=n
    spacing_offset: Vec<usize>,
    strands: Vec<ZigZag>,
}

impl BipartiteGraph {
    pub fn from_word(w: &SignedWord) -> Self {
        Self::build(w.n(), w.letters().to_vec())
    }

    /// Builds the graph of an arbitrary (not necessarily reduced) word.
    pub fn from_letters(n: usize, letters: &[i32]) -> Result<Self, PlabicError> {
        check_letters(n, letters)?;
        Ok(Self::build(n, letters.to_vec()))
    }

    fn build(n: usize, letters: Vec<i32>) -> Self {
        let l = letters.len();
        let mut vertices = Vec::new();
        let mut per_wire: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        let mut verticals = Vec::new();
        for (p, &a) in letters.iter().enumerate() {
            let i = a.unsigned_abs() as usize;
            let x = 4 * (p as i64 + 1);
            let (top, bottom) = if a > 0 {
                (Color::White, Color::Black)
            } else {
                (Color::Black, Color::White)
            };
            let t = vertices.len();
            vertices.push(GraphVertex { id: t, color: top, wire: i, x, column: Some(p) });
            vertices.push(GraphVertex { id: t + 1, color: bottom, wire: i + 1, x, column: Some(p) });
            per_wire[i].push(t);
            per_wire[i + 1].push(t + 1);
            verticals.push((p, i, t, t + 1));
        }

        let mut wire_vertices: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for wire in 1..=n {
            let letter_vs = per_wire[wire].clone();
            let mut seq: Vec<usize> = Vec::new();
            let push_new = |vertices: &mut Vec<GraphVertex>, seq: &mut Vec<usize>, color, x| {
                let id = vertices.len();
                vertices.push(GraphVertex { id, color, wire, x, column: None });
                seq.push(id);
            };
            if letter_vs.is_empty() {
                push_new(&mut vertices, &mut seq, Color::White, 0);
            } else {
                if vertices[letter_vs[0]].color == Color::Black {
                    push_new(&mut vertices, &mut seq, Color::White, 0);
                }
                for (k, &v) in letter_vs.iter().enumerate() {
                    if k > 0 {
                        let prev = letter_vs[k - 1];
                        if vertices[prev].color == vertices[v].color {
                            let x = (vertices[prev].x + vertices[v].x) / 2;
                            let c = vertices[v].color.other();
                            push_new(&mut vertices, &mut seq, c, x);
                        }
                    }
                    seq.push(v);
                }
                if vertices[*letter_vs.last().unwrap()].color == Color::Black {
                    push_new(&mut vertices, &mut seq, Color::White, 4 * (l as i64 + 1));
                }
            }
            wire_vertices[wire] = seq;
        }

        let mut edges = Vec::new();
        let mut incidence = vec![[None; 4]; vertices.len()];
        let mut wire_edges = vec![Vec::new(); n + 1];
        for wire in 1..=n {
            let seq = &wire_vertices[wire];
            let mut add = |edges: &mut Vec<Edge>, kind, ends: [Option<usize>; 2]| {
                let id = edges.len();
                edges.push(Edge { id, kind, ends });
                if let Some(a) = ends[0] {
                    incidence[a][E] = Some(id);
                }
                if let Some(b) = ends[1] {
                    incidence[b][W] = Some(id);
                }
                wire_edges[wire].push(id);
            };
            add(&mut edges, EdgeKind::External { wire, side: Side::Left }, [None, Some(seq[0])]);
            for pair in seq.windows(2) {
                add(&mut edges, EdgeKind::Horizontal { wire }, [Some(pair[0]), Some(pair[1])]);
            }
            add(
                &mut edges,
                EdgeKind::External { wire, side: Side::Right },
                [Some(*seq.last().unwrap()), None],
            );
        }
        for (p, spacing, t, b) in verticals {
            let id = edges.len();
            edges.push(Edge {
                id,
                kind: EdgeKind::Vertical { column: p, spacing },
                ends: [Some(t), Some(b)],
            });
            incidence[t][S] = Some(id);
            incidence[b][N] = Some(id);
        }

        let mut g = BipartiteGraph {
            n,
            letters,
            vertices,
            edges,
            incidence,
            wire_edges,
            faces: Vec::new(),
            spacing_offset: Vec::new(),
            strands: Vec::new(),
        };
        g.strands = g.walk_strands();
        g.faces = g.build_faces();
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn strands(&self) -> &[ZigZag] {
        &self.strands
    }

    pub fn top_face(&self) -> usize {
        0
    }

    pub fn bottom_face(&self) -> usize {
        self.faces.len() - 1
    }

    /// Number of faces in a spacing.
    pub fn spacing_count(&self, s: usize) -> usize {
        if s == 0 || s == self.n {
            1
        } else {
            self.letters.iter().filter(|a| a.unsigned_abs() as usize == s).count() + 1
        }
    }

    pub fn face_id(&self, spacing: usize, ordinal: usize) -> usize {
        debug_assert!(ordinal < self.spacing_count(spacing));
        self.spacing_offset[spacing] + ordinal
    }

    /// The face of spacing `s` containing gap `g`.
    pub fn face_at_gap(&self, s: usize, g: usize) -> usize {
        if s == 0 || s == self.n {
            return self.face_id(s, 0);
        }
        let before = self.letters[..g]
            .iter()
            .filter(|a| a.unsigned_abs() as usize == s)
            .count();
        self.face_id(s, before)
    }

    /// The face immediately right of letter `p`, in the letter's spacing.
    pub fn face_right_of(&self, p: usize) -> usize {
        self.face_at_gap(self.letters[p].unsigned_abs() as usize, p + 1)
    }

    /// The face immediately left of letter `p`, in the letter's spacing.
    pub fn face_left_of(&self, p: usize) -> usize {
        self.face_at_gap(self.letters[p].unsigned_abs() as usize, p)
    }

    pub fn boundary_faces(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| f.boundary).map(|f| f.id).collect()
    }

    pub fn interior_faces(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| !f.boundary).map(|f| f.id).collect()
    }

    fn other_end(&self, e: usize, v: usize) -> Option<usize> {
        let [a, b] = self.edges[e].ends;
        if a == Some(v) {
            b
        } else {
            a
        }
    }

    fn walk(&self, start_vertex: usize, start_edge: usize, from: usize) -> (Vec<usize>, usize) {
        let mut traj = vec![start_edge];
        let (mut v, mut from) = (start_vertex, from);
        for _ in 0..=2 * self.edges.len() {
            let inc = &self.incidence[v];
            let next = match self.vertices[v].color {
                Color::Black => (1..4).map(|k| (from + k) % 4).find(|&d| inc[d].is_some()),
                Color::White => (1..4).map(|k| (from + 4 - k) % 4).find(|&d| inc[d].is_some()),
            }
            .expect("every vertex has at least two edges");
            let e = inc[next].unwrap();
            traj.push(e);
            match self.other_end(e, v) {
                Some(u) => {
                    v = u;
                    from = (next + 2) % 4;
                }
                None => return (traj, e),
            }
        }
        unreachable!("zig-zag strand does not terminate")
    }

    fn walk_strands(&self) -> Vec<ZigZag> {
        let mut out = Vec::new();
        for (dir, side) in [
            (StrandDirection::RightGoing, Side::Left),
            (StrandDirection::LeftGoing, Side::Right),
        ] {
            for wire in 1..=self.n {
                let edges = &self.wire_edges[wire];
                let (e, v, from) = match side {
                    Side::Left => (edges[0], self.edges[edges[0]].ends[1].unwrap(), W),
                    Side::Right => {
                        let e = *edges.last().unwrap();
                        (e, self.edges[e].ends[0].unwrap(), E)
                    }
                };
                let (trajectory, exit) = self.walk(v, e, from);
                let (exit_wire, exit_side) = match self.edges[exit].kind {
                    EdgeKind::External { wire, side } => (wire, side),
                    _ => unreachable!(),
                };
                out.push(ZigZag {
                    index: wire,
                    direction: dir,
                    trajectory,
                    exit_wire,
                    exit_side,
                });
            }
        }
        out
    }

    fn edge_span(&self, e: usize) -> (i64, i64) {
        let x = |v: Option<usize>, inf: i64| v.map_or(inf, |v| self.vertices[v].x);
        let [a, b] = self.edges[e].ends;
        match self.edges[e].kind {
            EdgeKind::Vertical { .. } => {
                let x = self.vertices[a.unwrap()].x;
                (x, x)
            }
            _ => (x(a, i64::MIN), x(b, i64::MAX)),
        }
    }

    fn edge_wire(&self, e: usize) -> Option<usize> {
        match self.edges[e].kind {
            EdgeKind::Horizontal { wire } | EdgeKind::External { wire, .. } => Some(wire),
            EdgeKind::Vertical { .. } => None,
        }
    }

    /// Wire occupied by a strand at x-coordinate `x` (never a vertex position).
    fn strand_wire_at(&self, z: &ZigZag, x: i64) -> usize {
        let hits: Vec<usize> = z
            .trajectory
            .iter()
            .filter_map(|&e| {
                let (a, b) = self.edge_span(e);
                (a < x && x < b).then(|| self.edge_wire(e)).flatten()
            })
            .collect();
        assert_eq!(hits.len(), 1, "strand must cross every vertical line once");
        hits[0]
    }

    fn build_faces(&mut self) -> Vec<Face> {
        let (n, l) = (self.n, self.letters.len());
        let mut faces = Vec::new();
        let mut offset = Vec::new();
        for s in 0..=n {
            offset.push(faces.len());
            let positions: Vec<usize> = if s == 0 || s == n {
                Vec::new()
            } else {
                (0..l).filter(|&p| self.letters[p].unsigned_abs() as usize == s).collect()
            };
            let cnt = positions.len() + 1;
            for k in 0..cnt {
                let start = if k == 0 { 0 } else { positions[k - 1] + 1 };
                let end = if k == cnt - 1 { l } else { positions[k] };
                let boundary = s == 0 || s == n || k == 0 || k == cnt - 1;
                let x = 4 * start as i64 + 1;
                let dominating = |dir| {
                    self.strands
                        .iter()
                        .filter(|z| z.direction == dir && self.strand_wire_at(z, x) <= s)
                        .map(|z| z.index)
                        .collect::<Vec<_>>()
                };
                faces.push(Face {
                    id: faces.len(),
                    spacing: s,
                    ordinal: k,
                    boundary,
                    gaps: (start, end),
                    i_set: dominating(StrandDirection::RightGoing),
                    j_set: dominating(StrandDirection::LeftGoing),
                });
            }
        }
        self.spacing_offset = offset;
        faces
    }

    /// Face triangles around each letter's black vertex, as counterclockwise
    /// 3-cycles `(a, b, c)` meaning arrows `a -> b -> c -> a`.
    pub fn black_cycles(&self) -> Vec<[usize; 3]> {
        self.letters
            .iter()
            .enumerate()
            .map(|(p, &a)| {
                let i = a.unsigned_abs() as usize;
                let left = self.face_left_of(p);
                let right = self.face_right_of(p);
                if a > 0 {
                    [right, left, self.face_at_gap(i + 1, p)]
                } else {
                    [self.face_at_gap(i - 1, p), left, right]
                }
            })
            .collect()
    }

    /// The quivers with and without boundary faces.
    pub fn build_quivers(&self) -> (Seed, Seed) {
        let mut arrows = Vec::new();
        for [a, b, c] in self.black_cycles() {
            arrows.extend([(a, b), (b, c), (c, a)]);
        }
        let full = Seed::from_arrows(
            (0..self.faces.len()).map(|f| f as Vertex),
            self.boundary_faces().into_iter().map(|f| f as Vertex),
            arrows.into_iter().map(|(a, b)| (a as Vertex, b as Vertex)),
        );
        let keep: BTreeSet<Vertex> = self.interior_faces().into_iter().map(|f| f as Vertex).collect();
        let reduced = full.restrict(&keep);
        (full, reduced)
    }

    /// Per-face dominating sets `(I(f), J(f))`, indexed by face id.
    pub fn dominating_sets(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.faces.iter().map(Face::label).collect()
    }

    /// Letter index of each vertical edge, with its spacing and sign.
    pub fn columns(&self) -> Vec<(usize, bool)> {
        self.letters
            .iter()
            .map(|&a| (a.unsigned_abs() as usize, a > 0))
            .collect()
    }

    /// Edge ids along wire `w`, left to right, external edges included.
    pub fn wire_edges(&self, w: usize) -> &[usize] {
        &self.wire_edges[w]
    }

    /// The vertical edge of letter `p`.
    pub fn column_edge(&self, p: usize) -> usize {
        self.edges
            .iter()
            .find(|e| matches!(e.kind, EdgeKind::Vertical { column, .. } if column == p))
            .map(|e| e.id)
            .expect("every letter has a vertical edge")
    }
}

/// Face labels `(I, J)` for every face of the graph of `w`.
pub fn dominating_sets(g: &BipartiteGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    g.dominating_sets()
}

pub fn build_quivers(g: &BipartiteGraph) -> (Seed, Seed) {
    g.build_quivers()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> BipartiteGraph {
        BipartiteGraph::from_letters(3, &[1, -2, 2, 1, -1, -2]).unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = BipartiteGraph::from_letters(2, &[1, -1]).unwrap();
        assert_eq!(g.faces().len(), 5);
        assert_eq!(g.columns(), vec![(1, true), (1, false)]);
        // top wire: W(letter 0) B(letter 1) W(end); bottom: W(end) B W
        let colors = |w: usize| -> Vec<Color> {
            g.vertices()
                .iter()
                .filter(|v| v.wire == w)
                .map(|v| (v.x, v.color))
                .collect::<std::collections::BTreeMap<_, _>>()
                .into_values()
                .collect()
        };
        assert_eq!(colors(1), vec![Color::White, Color::Black, Color::White]);
        assert_eq!(colors(2), vec![Color::White, Color::Black, Color::White]);
        let e = BipartiteGraph::from_letters(2, &[]).unwrap();
        assert_eq!(e.faces().len(), 3);
        assert!(e.build_quivers().1.vertices().is_empty());
    }

    #[test]
    fn example_labels() {
        let g = example();
        assert_eq!(g.faces().len(), 10);
        let want: [(&[usize], &[usize]); 10] = [
            (&[], &[]),
            (&[1], &[3]),
            (&[1], &[2]),
            (&[1], &[1]),
            (&[3], &[1]),
            (&[1, 2], &[2, 3]),
            (&[1, 3], &[2, 3]),
            (&[1, 3], &[1, 2]),
            (&[2, 3], &[1, 2]),
            (&[1, 2, 3], &[1, 2, 3]),
        ];
        for (f, (i, j)) in g.faces().iter().zip(want) {
            assert_eq!((f.i_set.as_slice(), f.j_set.as_slice()), (i, j), "face {}", f.id);
        }
    }

    #[test]
    fn example_quiver() {
        let (full, reduced) = example().build_quivers();
        assert_eq!(reduced.vertices().iter().copied().collect::<Vec<_>>(), vec![2, 3, 6, 7]);
        let arrows: Vec<_> = reduced.arrows().into_iter().map(|(a, b, _)| (a, b)).collect();
        assert_eq!(arrows, vec![(2, 7), (3, 2), (6, 2), (7, 3), (7, 6)]);
        assert_eq!(full.frozen().len(), 6);
    }

    #[test]
    fn wires_end_white_and_alternate() {
        let g = example();
        for w in 1..=3 {
            let mut vs: Vec<&GraphVertex> = g.vertices().iter().filter(|v| v.wire == w).collect();
            vs.sort_by_key(|v| v.x);
            assert_eq!(vs.first().unwrap().color, Color::White);
            assert_eq!(vs.last().unwrap().color, Color::White);
            assert!(vs.windows(2).all(|p| p[0].color != p[1].color));
        }
    }

    #[test]
    fn strands_pair_up_external_edges() {
        let g = example();
        for z in g.strands() {
            let expected = match z.direction {
                StrandDirection::RightGoing => Side::Right,
                StrandDirection::LeftGoing => Side::Left,
            };
            assert_eq!(z.exit_side, expected);
        }
    }
}
