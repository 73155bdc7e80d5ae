// Directed paths in the perfect orientation: horizontal edges point right,
// vertical edges point from their white end to their black end, so a
// positive letter in spacing i carries a path from wire i down to wire i+1
// and a negative letter carries one from wire i+1 up to wire i.
//
// A path is recorded by the wire it occupies in each gap. Two paths share a
// vertex exactly when they occupy the same wire in some gap, so vertex
// disjointness is checked gap by gap. A face lies below a path when the
// path's wire at the face's first gap is at most the face's spacing.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{BipartiteGraph, EdgeKind, PlabicError};
use crate::exactalg::{LaurentPoly, Monomial, VarId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub sink: usize,
    /// Wire occupied in each gap `0..=len`.
    pub wires: Vec<usize>,
    /// Directed edge ids from the left external edge to the right one.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub paths: Vec<Path>,
    pub monomial: Monomial,
}

impl BipartiteGraph {
    fn check_indices(&self, set: &[usize]) -> Result<(), PlabicError> {
        for &i in set {
            if i == 0 || i > self.n {
                return Err(PlabicError::IndexOutOfRange { index: i, n: self.n });
            }
        }
        Ok(())
    }

    /// All vertex-disjoint path systems starting at `sources`, as per-path
    /// wire sequences, keyed by the wire each path ends on.
    fn disjoint_systems(&self, sources: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let l = self.letters.len();
        let mut out = Vec::new();
        let mut hist: Vec<Vec<usize>> = sources.iter().map(|&s| vec![s]).collect();
        fn rec(g: &BipartiteGraph, p: usize, l: usize, hist: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if p == l {
                out.push(hist.clone());
                return;
            }
            let a = g.letters[p];
            let i = a.unsigned_abs() as usize;
            let (from, to) = if a > 0 { (i, i + 1) } else { (i + 1, i) };
            let cur: Vec<usize> = hist.iter().map(|h| *h.last().unwrap()).collect();
            let mover = cur.iter().position(|&w| w == from);
            let blocked = cur.contains(&to);
            for h in hist.iter_mut() {
                let w = *h.last().unwrap();
                h.push(w);
            }
            rec(g, p + 1, l, hist, out);
            if let (Some(k), false) = (mover, blocked) {
                for h in hist.iter_mut() {
                    h.pop();
                }
                for (idx, h) in hist.iter_mut().enumerate() {
                    let w = *h.last().unwrap();
                    h.push(if idx == k { to } else { w });
                }
                rec(g, p + 1, l, hist, out);
            }
            for h in hist.iter_mut() {
                h.pop();
            }
        }
        rec(self, 0, l, &mut hist, &mut out);
        out
    }

    fn monomial_of(&self, system: &[Vec<usize>]) -> Monomial {
        let mut pairs = Vec::new();
        for f in &self.faces {
            let g = f.gaps.0;
            let e = system.iter().filter(|w| w[g] <= f.spacing).count() as i32;
            if e > 0 {
                pairs.push((VarId(f.id as u32), e));
            }
        }
        Monomial::from_pairs(pairs)
    }

    fn path_edges(&self, wires: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut wire = wires[0];
        let mut from = i64::MIN;
        let take_wire = |out: &mut Vec<usize>, wire: usize, a: i64, b: i64| {
            for &e in &self.wire_edges[wire] {
                let (lo, hi) = self.edge_span(e);
                if lo >= a && hi <= b {
                    out.push(e);
                }
            }
        };
        for (p, pair) in wires.windows(2).enumerate() {
            if pair[0] != pair[1] {
                let x = 4 * (p as i64 + 1);
                take_wire(&mut out, wire, from, x);
                out.push(self.column_edge(p));
                wire = pair[1];
                from = x;
            }
        }
        take_wire(&mut out, wire, from, i64::MAX);
        out
    }

    /// All vertex-disjoint families from `rows` to `cols`, together with the
    /// induced source-to-sink assignment as a permutation of `0..k`.
    pub fn disjoint_families(&self, rows: &[usize], cols: &[usize]) -> Result<Vec<(PathFamily, Vec<usize>)>, PlabicError> {
        if rows.len() != cols.len() {
            return Err(PlabicError::SizeMismatch(rows.len(), cols.len()));
        }
        self.check_indices(rows)?;
        self.check_indices(cols)?;
        let mut sinks = cols.to_vec();
        sinks.sort_unstable();
        let mut out = Vec::new();
        for system in self.disjoint_systems(rows) {
            let ends: Vec<usize> = system.iter().map(|w| *w.last().unwrap()).collect();
            let mut sorted = ends.clone();
            sorted.sort_unstable();
            if sorted != sinks {
                continue;
            }
            let assignment: Vec<usize> = ends
                .iter()
                .map(|e| sinks.iter().position(|s| s == e).unwrap())
                .collect();
            let monomial = self.monomial_of(&system);
            let paths = system
                .iter()
                .map(|w| Path {
                    source: w[0],
                    sink: *w.last().unwrap(),
                    edges: self.path_edges(w),
                    wires: w.clone(),
                })
                .collect();
            out.push((
                PathFamily {
                    sources: rows.to_vec(),
                    sinks: sinks.clone(),
                    paths,
                    monomial,
                },
                assignment,
            ));
        }
        Ok(out)
    }

    /// Signed Lindstrom-Gessel-Viennot sum over disjoint families `rows -> cols`.
    pub fn lgv_minor(&self, rows: &[usize], cols: &[usize]) -> Result<LaurentPoly, PlabicError> {
        let mut rows = rows.to_vec();
        rows.sort_unstable();
        let terms = self
            .disjoint_families(&rows, cols)?
            .into_iter()
            .map(|(f, sigma)| (f.monomial, BigInt::from(permutation_sign(&sigma))));
        Ok(LaurentPoly::from_terms(terms))
    }

    /// Sum over directed paths from left wire `i` to right wire `j` of the
    /// product of face variables below the path.
    pub fn boundary_measurement(&self, i: usize, j: usize) -> Result<LaurentPoly, PlabicError> {
        self.lgv_minor(&[i], &[j])
    }

    /// The disjoint family whose monomial attains the maximal degree in every
    /// face variable simultaneously; fails unless exactly one family does.
    pub fn max_path_family(&self, rows: &[usize], cols: &[usize]) -> Result<PathFamily, PlabicError> {
        let fams = self.disjoint_families(rows, cols)?;
        let not_greedy = || PlabicError::NotGreedyWord {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
        };
        let envelope = degree_envelope(fams.iter().map(|(f, _)| &f.monomial)).ok_or_else(not_greedy)?;
        let mut hits = fams.into_iter().filter(|(f, _)| f.monomial == envelope);
        match (hits.next(), hits.next()) {
            (Some((f, _)), None) => Ok(f),
            _ => Err(not_greedy()),
        }
    }

    /// Checks that the orientation is perfect: every black vertex has exactly
    /// one outgoing edge and every white vertex exactly one incoming edge.
    pub fn orientation_is_perfect(&self) -> bool {
        use super::Color;
        let mut out_deg = vec![0; self.vertices.len()];
        let mut in_deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            let (tail, head) = match e.kind {
                EdgeKind::Horizontal { .. } | EdgeKind::External { .. } => (e.ends[0], e.ends[1]),
                EdgeKind::Vertical { .. } => {
                    let [t, b] = e.ends;
                    if self.vertices[t.unwrap()].color == Color::White {
                        (t, b)
                    } else {
                        (b, t)
                    }
                }
            };
            if let Some(t) = tail {
                out_deg[t] += 1;
            }
            if let Some(h) = head {
                in_deg[h] += 1;
            }
        }
        self.vertices.iter().all(|v| match v.color {
            Color::Black => out_deg[v.id] == 1,
            Color::White => in_deg[v.id] == 1,
        })
    }
}

/// Per-variable maximum exponent over a set of monomials.
pub(crate) fn degree_envelope<'a>(ms: impl Iterator<Item = &'a Monomial>) -> Option<Monomial> {
    let mut best: std::collections::BTreeMap<VarId, i32> = Default::default();
    let mut any = false;
    for m in ms {
        any = true;
        for &(v, e) in m.pairs() {
            let b = best.entry(v).or_insert(e);
            *b = (*b).max(e);
        }
    }
    any.then(|| Monomial::from_pairs(best))
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(ids: &[u32]) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::from_pairs(ids.iter().map(|&i| (VarId(i), 1))))
    }

    #[test]
    fn example_entries() {
        let g = BipartiteGraph::from_letters(3, &[1, -2, 2, 1, -1, -2]).unwrap();
        assert_eq!(g.boundary_measurement(2, 1).unwrap(), x(&[4, 5, 6, 7, 8, 9]));
        let want = LaurentPoly::one().add(&x(&[6])).add(&x(&[6, 7])).mul(&x(&[8, 9]));
        assert_eq!(g.boundary_measurement(3, 2).unwrap(), want);
        assert_eq!(g.boundary_measurement(3, 3).unwrap(), LaurentPoly::one().add(&x(&[6])).mul(&x(&[9])));
        assert!(g.orientation_is_perfect());
    }

    #[test]
    fn empty_word_paths_stay_on_wires() {
        let g = BipartiteGraph::from_letters(3, &[]).unwrap();
        assert_eq!(g.boundary_measurement(1, 2).unwrap(), LaurentPoly::zero());
        // below wire 2: the spacing-2 face (id 2) and the bottom face (id 3)
        assert_eq!(g.boundary_measurement(2, 2).unwrap(), x(&[2, 3]));
        assert_eq!(g.lgv_minor(&[], &[]).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn path_edges_follow_orientation() {
        let g = BipartiteGraph::from_letters(3, &[1, -2, 2, 1, -1, -2]).unwrap();
        for (fam, _) in g.disjoint_families(&[1, 3], &[2, 3]).unwrap() {
            for p in &fam.paths {
                let first = &g.edges()[p.edges[0]];
                let last = &g.edges()[*p.edges.last().unwrap()];
                assert!(matches!(first.kind, EdgeKind::External { wire, .. } if wire == p.source));
                assert!(matches!(last.kind, EdgeKind::External { wire, .. } if wire == p.sink));
            }
        }
    }
}
