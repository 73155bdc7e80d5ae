//! The Donaldson-Thomas pipeline on double Bruhat cells of `GL_n`.
//!
//! * [`amalgamate`] turns face values into a matrix `χ̃(X)`.
//! * [`psi_faces`] reads the face minors `A_f = Δ^{I(f), J(f)}` back off a matrix.
//! * [`x_coords`] combines those minors into cluster Poisson coordinates.
//! * [`dt_pullback`] is the composite `ψ ∘ χ`, the DT transformation.
//! * [`dt_closed_form`] and [`check_h_equiv`] give the group-level formula.
//! * [`plan_dt_sequence`] builds the same map as mutations and an isomorphism.
//! * [`tropical_dt_check`] computes the degree matrix `deg_{X_f} DT*(X_g)`.

mod closed_form;
mod involution;
mod moves;
mod planner;
mod report;
mod specialize;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{ClusterAssignment, ClusterError, Kind, Seed, Vertex};
use crate::exactalg::{top_degree, AlgError, Field, LaurentPoly, Matrix, RFMatrix, RatFunc, Ring, VarId};
use crate::plabic::{BipartiteGraph, PlabicError};
use crate::weyl::WeylError;

pub use closed_form::{check_h_equiv, dt_closed_form, word_lifts};
pub use involution::{check_involution, involution_map, mirror_faces};
pub use moves::{face_correspondence, verify_move_diagrams, MoveDiagramReport};
pub use planner::{plan_dt_sequence, verify_plan, verify_plan_specialized, DtPlan};
pub use report::{run_checks, CheckOutcome, CheckSelection, Checks, DtReport};
pub use specialize::{random_point, random_rational, specialize};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DtError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Plabic(#[from] PlabicError),
    #[error(transparent)]
    Word(#[from] WeylError),
    #[error("face {face} has value zero")]
    ZeroFaceValue { face: usize },
    #[error("face {face}: the minor A_f vanishes at this point")]
    NonGenericPoint { face: usize },
    #[error("face values missing for face {face}")]
    MissingFace { face: usize },
    #[error("plan verification failed at face {face}: expected {expected}, got {got}")]
    PlanVerificationFailed { face: usize, expected: String, got: String },
}

/// `χ̃(X)`: the left-to-right product of `h^s(X_f)` for the faces and
/// `e_{±i}` for the vertical edges.
///
/// Each spacing starts with its leftmost face; after every letter comes the
/// face to its right. The top face contributes `h^0 = 1`.
pub fn amalgamate<T: Ring>(g: &BipartiteGraph, values: &BTreeMap<usize, T>) -> Result<Matrix<T>, DtError> {
    let n = g.n();
    let value = |f: usize| -> Result<&T, DtError> {
        let v = values.get(&f).ok_or(DtError::MissingFace { face: f })?;
        if v.is_zero() {
            return Err(DtError::ZeroFaceValue { face: f });
        }
        Ok(v)
    };
    let mut m = Matrix::<T>::identity(n);
    value(g.top_face())?;
    for s in 1..=n {
        m.mul_h(s, value(g.face_id(s, 0))?);
    }
    for (p, &a) in g.letters().iter().enumerate() {
        let i = a.unsigned_abs() as usize;
        if a > 0 {
            m.mul_e_plus(i);
        } else {
            m.mul_e_minus(i);
        }
        m.mul_h(i, value(g.face_right_of(p))?);
    }
    Ok(m)
}

/// Symbolic face values `X_f` (variable id = face id); boundary faces set to
/// 1 when `boundary_one`.
pub fn symbolic_values(g: &BipartiteGraph, boundary_one: bool) -> BTreeMap<usize, RatFunc> {
    g.faces()
        .iter()
        .map(|f| {
            let v = if boundary_one && f.boundary {
                RatFunc::one()
            } else {
                RatFunc::var(f.var())
            };
            (f.id, v)
        })
        .collect()
}

/// Polynomial face values, for computations that never divide.
pub fn polynomial_values(g: &BipartiteGraph, boundary_one: bool) -> BTreeMap<usize, LaurentPoly> {
    g.faces()
        .iter()
        .map(|f| {
            let v = if boundary_one && f.boundary {
                LaurentPoly::one()
            } else {
                LaurentPoly::var(f.var())
            };
            (f.id, v)
        })
        .collect()
}

/// `χ̃` of symbolic face variables.
pub fn amalgamate_symbolic(g: &BipartiteGraph, boundary_one: bool) -> RFMatrix {
    amalgamate(g, &symbolic_values(g, boundary_one)).expect("symbolic values are nonzero")
}

/// Face minors `A_f(x) = Δ^{I(f), J(f)}(x)` for every face.
pub fn face_minors<T: Ring>(g: &BipartiteGraph, x: &Matrix<T>) -> BTreeMap<usize, T> {
    g.faces()
        .iter()
        .map(|f| (f.id, x.minor(&f.i_set, &f.j_set)))
        .collect()
}

/// `ψ̃(x)`: the A-type assignment on the seed with boundary.
pub fn psi_faces<T: Field>(g: &BipartiteGraph, x: &Matrix<T>) -> Result<ClusterAssignment<T>, DtError> {
    let values = face_minors(g, x);
    if let Some((&face, _)) = values.iter().find(|(_, v)| v.is_zero()) {
        return Err(DtError::NonGenericPoint { face });
    }
    let (full, _) = g.build_quivers();
    let values = values.into_iter().map(|(f, v)| (f as Vertex, v)).collect();
    Ok(ClusterAssignment::new(full, Kind::A, values)?)
}

/// `X_g = Π_f A_f^{ε_gf}` for the non-boundary faces `g`.
pub fn x_coords<T: Field>(g: &BipartiteGraph, x: &Matrix<T>) -> Result<ClusterAssignment<T>, DtError> {
    let a = psi_faces(g, x)?;
    let (full, reduced) = g.build_quivers();
    let mut values = BTreeMap::new();
    for &v in reduced.vertices() {
        let (mut num, mut den) = (T::one(), T::one());
        for f in full.neighbors(v) {
            let e = full.eps(v, f);
            let p = a.get(f).pow(e.unsigned_abs());
            if e > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        let val = num.div(&den).ok_or(DtError::NonGenericPoint { face: v as usize })?;
        values.insert(v, val);
    }
    Ok(ClusterAssignment::new(reduced, Kind::X, values)?)
}

/// `DT = ψ ∘ χ` on the non-boundary coordinates of `g`, evaluated at
/// arbitrary field values (boundary faces are lifted to 1).
pub fn dt_apply<T: Field>(g: &BipartiteGraph, x: &BTreeMap<Vertex, T>) -> Result<BTreeMap<Vertex, T>, DtError> {
    let values: BTreeMap<usize, T> = g
        .faces()
        .iter()
        .map(|f| {
            if f.boundary {
                Ok((f.id, T::one()))
            } else {
                x.get(&(f.id as Vertex))
                    .map(|v| (f.id, v.clone()))
                    .ok_or(DtError::MissingFace { face: f.id })
            }
        })
        .collect::<Result<_, _>>()?;
    let m = amalgamate(g, &values)?;
    Ok(x_coords(g, &m)?.values)
}

/// `DT*(X_g)` as rational functions of the non-boundary face variables.
pub fn dt_pullback(g: &BipartiteGraph) -> Result<BTreeMap<Vertex, RatFunc>, DtError> {
    let x: BTreeMap<Vertex, RatFunc> = g
        .interior_faces()
        .into_iter()
        .map(|f| (f as Vertex, RatFunc::var(VarId(f as u32))))
        .collect();
    dt_apply(g, &x)
}

/// `DT ∘ DT` computed by feeding the group-level closed form back into `ψ`:
/// `x_coords(closed_form(χ(X)))`.
pub fn dt_squared_via_closed_form(g: &BipartiteGraph) -> Result<BTreeMap<Vertex, RatFunc>, DtError> {
    let x = amalgamate_symbolic(g, true);
    let y = dt_closed_form(g.n(), g.letters(), &x)?;
    Ok(x_coords(g, &y)?.values)
}

/// Square integer matrix `entries[g][f] = deg_{X_f} DT*(X_g)` over the
/// non-boundary faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMatrix {
    pub faces: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

impl DegreeMatrix {
    pub fn is_negative_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, &e)| e == if r == c { -1 } else { 0 })
        })
    }

    /// First entry differing from `-δ`, as `(g, f, value)`.
    pub fn first_deviation(&self) -> Option<(usize, usize, i64)> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e != if r == c { -1 } else { 0 } {
                    return Some((self.faces[r], self.faces[c], e));
                }
            }
        }
        None
    }
}

/// Degree matrix via the factorization `DT*(X_g) = Π_f A_f^{ε_gf}` with the
/// minors `A_f` computed as polynomials; top degrees add over products.
pub fn tropical_dt_check(g: &BipartiteGraph) -> Result<DegreeMatrix, DtError> {
    let x = amalgamate(g, &polynomial_values(g, true))?;
    let minors = face_minors(g, &x);
    let (full, reduced) = g.build_quivers();
    let faces: Vec<usize> = reduced.vertices().iter().map(|&v| v as usize).collect();
    let mut entries = Vec::new();
    for &gf in &faces {
        let mut row = vec![0i64; faces.len()];
        for f in full.neighbors(gf as Vertex) {
            let e = full.eps(gf as Vertex, f) as i64;
            let a = &minors[&(f as usize)];
            if a.is_zero() {
                return Err(DtError::NonGenericPoint { face: f as usize });
            }
            for (c, &h) in faces.iter().enumerate() {
                row[c] += e * a.max_degree(VarId(h as u32)).unwrap_or(0) as i64;
            }
        }
        entries.push(row);
    }
    Ok(DegreeMatrix { faces, entries })
}

/// Degree matrix read directly off the expanded rational functions.
pub fn tropical_dt_check_expanded(g: &BipartiteGraph) -> Result<DegreeMatrix, DtError> {
    let dt = dt_pullback(g)?;
    let faces: Vec<usize> = dt.keys().map(|&v| v as usize).collect();
    let entries = dt
        .values()
        .map(|r| {
            faces
                .iter()
                .map(|&f| top_degree(r, VarId(f as u32)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(DegreeMatrix { faces, entries })
}

/// The seed without boundary of a word's graph.
pub fn reduced_seed(g: &BipartiteGraph) -> Seed {
    g.build_quivers().1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Monomial;

    fn x(ids: &[u32]) -> RatFunc {
        RatFunc::monomial(Monomial::from_pairs(ids.iter().map(|&i| (VarId(i), 1))))
    }

    fn one_plus(r: RatFunc) -> RatFunc {
        r.one_plus()
    }

    #[test]
    fn example_matrix() {
        let g = BipartiteGraph::from_letters(3, &[1, -2, 2, 1, -1, -2]).unwrap();
        let m = amalgamate_symbolic(&g, false);
        let e11 = x(&[1])
            .mul(&one_plus(x(&[2])).add(&x(&[2, 3])))
            .mul(&x(&[4, 5, 6, 7, 8, 9]));
        let e12 = x(&[1, 5, 6])
            .mul(&one_plus(x(&[7])).add(&x(&[2, 7])))
            .mul(&x(&[8, 9]));
        let want = [
            [e11, e12, x(&[1, 5, 6, 9])],
            [
                x(&[4, 5, 6, 7, 8, 9]),
                x(&[5, 6]).mul(&one_plus(x(&[7]))).mul(&x(&[8, 9])),
                x(&[5, 6, 9]),
            ],
            [
                x(&[4, 6, 7, 8, 9]),
                one_plus(x(&[6])).add(&x(&[6, 7])).mul(&x(&[8, 9])),
                one_plus(x(&[6])).mul(&x(&[9])),
            ],
        ];
        for (r, row) in want.iter().enumerate() {
            for (c, w) in row.iter().enumerate() {
                assert_eq!(m.get(r, c), w, "entry ({}, {})", r + 1, c + 1);
            }
        }
        assert!(m.entries().iter().all(|e| !e.variables().contains(&VarId(0))));
    }

    #[test]
    fn small_amalgamations() {
        let g = BipartiteGraph::from_letters(2, &[]).unwrap();
        let m = amalgamate_symbolic(&g, false);
        assert_eq!(m, Matrix::diagonal(&[x(&[1, 2]), x(&[2])]));
        // faces: top 0, left 1, right 2, bottom 3
        let g = BipartiteGraph::from_letters(2, &[1]).unwrap();
        let m = amalgamate_symbolic(&g, false);
        let want = Matrix::from_rows(vec![
            vec![x(&[1, 2, 3]), x(&[1, 3])],
            vec![RatFunc::zero(), x(&[3])],
        ]);
        assert_eq!(m, want);
    }

    #[test]
    fn gl2_dt_has_degree_minus_one() {
        let g = BipartiteGraph::from_letters(2, &[-1, 1]).unwrap();
        let dt = dt_pullback(&g).unwrap();
        assert_eq!(dt.len(), 1);
        let (&v, f) = dt.iter().next().unwrap();
        assert_eq!(top_degree(f, VarId(v)).unwrap(), -1);
        let d = tropical_dt_check(&g).unwrap();
        assert_eq!(d.entries, vec![vec![-1]]);
        assert_eq!(d, tropical_dt_check_expanded(&g).unwrap());
        let e = BipartiteGraph::from_letters(2, &[]).unwrap();
        assert!(dt_pullback(&e).unwrap().is_empty());
        assert!(tropical_dt_check(&e).unwrap().entries.is_empty());
    }

    #[test]
    fn x_coords_are_scaling_invariant() {
        let g = BipartiteGraph::from_letters(3, &[-1, -2, -1, 1, 2, 1]).unwrap();
        let m = amalgamate_symbolic(&g, false);
        let d = Matrix::diagonal(&[x(&[100]), x(&[101]), x(&[102])]);
        let d2 = Matrix::diagonal(&[x(&[103]), x(&[104]), x(&[105])]);
        let a = x_coords(&g, &m).unwrap();
        let b = x_coords(&g, &d.mul(&m).mul(&d2)).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn face_minor_example_and_nongeneric() {
        let g = BipartiteGraph::from_letters(3, &[1, -2, 2, 1, -1, -2]).unwrap();
        let m = amalgamate_symbolic(&g, false);
        let a = psi_faces(&g, &m).unwrap();
        assert_eq!(a.values[&6], m.minor(&[1, 3], &[2, 3]));
        assert!(a.values[&0].is_one());
        // Δ^{1,3} = 0 for the identity matrix
        let id = Matrix::<RatFunc>::identity(3);
        assert_eq!(psi_faces(&g, &id).unwrap_err(), DtError::NonGenericPoint { face: 1 });
    }
}


#[cfg(test)]
mod closed_form_route {
    use super::*;

    fn squared(g: &BipartiteGraph) -> BTreeMap<Vertex, RatFunc> {
        let once = dt_pullback(g).unwrap();
        dt_apply(g, &once).unwrap()
    }

    #[test]
    fn closed_form_then_x_coords_is_dt_squared() {
        for (n, letters) in [(2, vec![-1, 1]), (3, vec![-2, 1, 2, 1]), (3, vec![-1, -2, 1, 2])] {
            let g = BipartiteGraph::from_letters(n, &letters).unwrap();
            assert_eq!(dt_squared_via_closed_form(&g).unwrap(), squared(&g), "{letters:?}");
        }
    }

    #[test]
    fn dt_squared_is_not_the_identity_in_rank_three() {
        let g = BipartiteGraph::from_letters(3, &[-2, 1, 2, 1]).unwrap();
        let x = symbolic_values(&g, true);
        let sq = squared(&g);
        assert!(sq.iter().any(|(k, v)| *v != x[&(*k as usize)]));
    }
}
