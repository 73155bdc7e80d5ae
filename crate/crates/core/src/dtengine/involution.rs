use std::collections::BTreeMap;

use super::{dt_apply, reduced_seed, DtError};
use crate::cluster::{ClusterError, Vertex};
use crate::exactalg::Field;
use crate::plabic::BipartiteGraph;

/// Face `(s, k)` of `from` to face `(s, last - k)` of `to`, on non-boundary
/// faces. Reversing a word mirrors its graph left to right, and this is the
/// induced face bijection. Plain reversal negates the exchange matrix;
/// reversing and negating every letter preserves it.
pub fn mirror_faces(from: &BipartiteGraph, to: &BipartiteGraph) -> BTreeMap<Vertex, Vertex> {
    from.interior_faces()
        .into_iter()
        .map(|f| {
            let face = from.face(f);
            let last = to.spacing_count(face.spacing) - 1;
            (f as Vertex, to.face_id(face.spacing, last - face.ordinal) as Vertex)
        })
        .collect()
}

/// `D_X = i_X ∘ DT` on the word of `g`, landing on the opposite word's seed.
pub fn involution_map<T: Field>(
    g: &BipartiteGraph,
    opposite: &BipartiteGraph,
    x: &BTreeMap<Vertex, T>,
) -> Result<BTreeMap<Vertex, T>, DtError> {
    let sigma = mirror_faces(g, opposite);
    dt_apply(g, x)?
        .into_iter()
        .map(|(k, v)| {
            v.inv()
                .map(|w| (sigma[&k], w))
                .ok_or(DtError::Cluster(ClusterError::ZeroValue(k)))
        })
        .collect()
}

/// Checks that `D_X` of the reversed word, a word for `(u⁻¹, v⁻¹)`, undoes
/// `D_X` of `g` at `x`, and that the mirror bijection negates the exchange
/// matrix.
pub fn check_involution<T: Field>(g: &BipartiteGraph, x: &BTreeMap<Vertex, T>) -> Result<bool, DtError> {
    let opp_letters: Vec<i32> = g.letters().iter().rev().copied().collect();
    let opp = BipartiteGraph::from_letters(g.n(), &opp_letters)?;
    let sigma = mirror_faces(g, &opp);
    if reduced_seed(g).relabel(&sigma)? != reduced_seed(&opp).opposite() {
        return Ok(false);
    }
    let y = involution_map(g, &opp, x)?;
    let z = involution_map(&opp, g, &y)?;
    Ok(&z == x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{RatFunc, VarId};

    #[test]
    fn gl2_symbolic() {
        for letters in [vec![-1, 1], vec![1, -1], vec![-1], vec![]] {
            let g = BipartiteGraph::from_letters(2, &letters).unwrap();
            let x: BTreeMap<Vertex, RatFunc> = g
                .interior_faces()
                .into_iter()
                .map(|f| (f as Vertex, RatFunc::var(VarId(f as u32))))
                .collect();
            assert!(check_involution(&g, &x).unwrap(), "{letters:?}");
        }
    }
}
