//! JSON and DOT renderings of graphs and quivers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{BipartiteGraph, Color, Edge, EdgeKind, Face, GraphVertex, ZigZag};
use crate::cluster::{Seed, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub letters: Vec<i32>,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub strands: Vec<ZigZag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<Vertex>,
    pub frozen: Vec<Vertex>,
    /// `(i, j, epsilon_ij)` with positive multiplicity.
    pub arrows: Vec<(Vertex, Vertex, i32)>,
}

impl From<&Seed> for QuiverJson {
    fn from(s: &Seed) -> Self {
        QuiverJson {
            vertices: s.vertices().iter().copied().collect(),
            frozen: s.frozen().iter().copied().collect(),
            arrows: s.arrows(),
        }
    }
}

impl BipartiteGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            letters: self.letters.clone(),
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            faces: self.faces.clone(),
            strands: self.strands.clone(),
        }
    }

    /// Undirected DOT drawing with pinned positions (use `neato -n`).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph bipartite {\n  node [shape=circle, label=\"\", width=0.2];\n");
        let y = |wire: usize| 100 * (self.n - wire) as i64;
        for v in &self.vertices {
            let fill = match v.color {
                Color::Black => "black",
                Color::White => "white",
            };
            let _ = writeln!(
                s,
                "  v{} [style=filled, fillcolor={fill}, pos=\"{},{}\"];",
                v.id,
                v.x * 25,
                y(v.wire)
            );
        }
        let xmax = 25 * 4 * (self.letters.len() as i64 + 2);
        for e in &self.edges {
            match (e.kind, e.ends) {
                (EdgeKind::External { wire, .. }, [a, b]) => {
                    let (v, x) = match (a, b) {
                        (None, Some(b)) => (b, -100),
                        (Some(a), None) => (a, xmax),
                        _ => unreachable!(),
                    };
                    let _ = writeln!(
                        s,
                        "  b{} [shape=point, pos=\"{},{}\"];\n  b{} -- v{};",
                        e.id,
                        x,
                        y(wire),
                        e.id,
                        v
                    );
                }
                (_, [Some(a), Some(b)]) => {
                    let _ = writeln!(s, "  v{a} -- v{b};");
                }
                _ => unreachable!(),
            }
        }
        s.push_str("}\n");
        s
    }
}

/// DOT digraph of a seed; frozen vertices drawn as boxes, multiplicities as labels.
pub fn seed_to_dot(seed: &Seed) -> String {
    let mut s = String::from("digraph quiver {\n");
    for &v in seed.vertices() {
        let shape = if seed.is_frozen(v) { "box" } else { "circle" };
        let _ = writeln!(s, "  f{v} [label=\"{v}\", shape={shape}];");
    }
    for (i, j, m) in seed.arrows() {
        if m == 1 {
            let _ = writeln!(s, "  f{i} -> f{j};");
        } else {
            let _ = writeln!(s, "  f{i} -> f{j} [label=\"{m}\"];");
        }
    }
    s.push_str("}\n");
    s
}
