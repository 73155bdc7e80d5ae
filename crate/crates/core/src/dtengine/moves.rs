use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{amalgamate, face_minors, psi_faces, symbolic_values, DtError};
use crate::cluster::{mutate_a, mutate_x, symbolic, ClusterAssignment, Kind, Vertex};
use crate::exactalg::RatFunc;
use crate::plabic::BipartiteGraph;
use crate::weyl::{apply_move_letters, MoveKind, WordMove};

/// Outcome of checking that a word move commutes with `χ̃` and `ψ̃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveDiagramReport {
    pub kind: MoveKind,
    pub before: Vec<i32>,
    pub after: Vec<i32>,
    /// Face of the old word at which the move mutates, if any.
    pub mutated_face: Option<usize>,
    /// The mutated quiver with boundary is the new word's quiver.
    pub seed: bool,
    /// `χ̃_{w'}(μ(X)) = χ̃_w(X)`.
    pub x_side: bool,
    /// `ψ̃_{w'}(x) = μ(ψ̃_w(x))`: the minor exchange identities.
    pub a_side: bool,
}

impl MoveDiagramReport {
    pub fn passed(&self) -> bool {
        self.seed && self.x_side && self.a_side
    }
}

/// Correspondence between the faces of two words differing by a move on
/// the letters `start..start + width`, plus the old face inside the window
/// (if any).
///
/// A face reaching a gap outside the window corresponds to the face of the
/// same spacing containing that gap; a face living entirely inside the window
/// corresponds to the new word's face inside the window.
pub fn face_correspondence(
    old: &BipartiteGraph,
    new: &BipartiteGraph,
    start: usize,
    width: usize,
) -> (BTreeMap<usize, usize>, Option<usize>) {
    let inside = |g: usize| g > start && g < start + width;
    let inner = |gr: &BipartiteGraph| {
        gr.faces()
            .iter()
            .find(|f| inside(f.gaps.0) && inside(f.gaps.1))
            .map(|f| f.id)
    };
    let (old_inner, new_inner) = (inner(old), inner(new));
    let mut map = BTreeMap::new();
    for f in old.faces() {
        let target = match (f.gaps.0..=f.gaps.1).find(|&g| !inside(g)) {
            Some(gap) => new.face_at_gap(f.spacing, gap),
            None => new_inner.expect("inner faces come in pairs"),
        };
        map.insert(f.id, target);
    }
    (map, old_inner)
}

fn relabel<T: crate::exactalg::Field>(
    a: &ClusterAssignment<T>,
    map: &BTreeMap<usize, usize>,
) -> Result<ClusterAssignment<T>, DtError> {
    let sigma: BTreeMap<Vertex, Vertex> = map.iter().map(|(&a, &b)| (a as Vertex, b as Vertex)).collect();
    Ok(crate::cluster::apply_iso(a, &sigma, None)?)
}

pub fn verify_move_diagrams(n: usize, letters: &[i32], m: WordMove) -> Result<MoveDiagramReport, DtError> {
    let after = apply_move_letters(letters, m)?;
    let old = BipartiteGraph::from_letters(n, letters)?;
    let new = BipartiteGraph::from_letters(n, &after)?;
    let width = if m.kind == MoveKind::Braid { 3 } else { 2 };
    let (map, inner) = face_correspondence(&old, &new, m.position, width);
    let mutated_face = if m.kind.induces_mutation() { inner } else { None };

    let (old_full, _) = old.build_quivers();
    let (new_full, _) = new.build_quivers();

    // X side
    let x = symbolic(&old_full, Kind::X);
    let mx = match mutated_face {
        Some(f) => mutate_x(&x, f as Vertex)?,
        None => x.clone(),
    };
    let mx = relabel(&mx, &map)?;
    let seed = mx.seed == new_full;
    let values: BTreeMap<usize, RatFunc> = mx.values.iter().map(|(&k, v)| (k as usize, v.clone())).collect();
    let lhs = amalgamate(&new, &values)?;
    let rhs = amalgamate(&old, &symbolic_values(&old, false))?;
    let x_side = lhs == rhs;

    // A side, at the generic point x = χ̃_w(X)
    let a = psi_faces(&old, &rhs)?;
    let ma = match mutated_face {
        Some(f) => mutate_a(&a, f as Vertex)?,
        None => a,
    };
    let ma = relabel(&ma, &map)?;
    let minors = face_minors(&new, &rhs);
    let a_side = ma
        .values
        .iter()
        .all(|(&k, v)| minors.get(&(k as usize)) == Some(v));

    Ok(MoveDiagramReport {
        kind: m.kind,
        before: letters.to_vec(),
        after,
        mutated_face,
        seed,
        x_side,
        a_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Direction;

    #[test]
    fn gl2_same_index_swap() {
        let m = WordMove::new(MoveKind::SameIndexSwap, 0, Direction::Forward);
        let r = verify_move_diagrams(2, &[1, -1], m).unwrap();
        assert_eq!(r.after, vec![-1, 1]);
        assert_eq!(r.mutated_face, Some(2));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn mixed_swap_is_literal() {
        let m = WordMove::new(MoveKind::MixedSwap, 0, Direction::Forward);
        let r = verify_move_diagrams(3, &[1, -2], m).unwrap();
        assert_eq!(r.mutated_face, None);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn braid_inside_longer_word() {
        let m = WordMove::new(MoveKind::Braid, 0, Direction::Forward);
        let r = verify_move_diagrams(3, &[1, 2, 1, -1, -2, -1], m).unwrap();
        assert_eq!(r.after, vec![2, 1, 2, -1, -2, -1]);
        assert!(r.passed(), "{r:?}");
        let m = WordMove::new(MoveKind::Braid, 3, Direction::Forward);
        let r = verify_move_diagrams(3, &[1, 2, 1, -1, -2, -1], m).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
