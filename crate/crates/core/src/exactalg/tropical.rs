//! Max-plus evaluation of rational functions at integer points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgError, RatFunc, VarId};

/// An integer point of the tropical torus; absent coordinates are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalPoint {
    pub coords: BTreeMap<VarId, i64>,
}

impl TropicalPoint {
    /// The basic lamination `l_v^+`: 1 at `v`, 0 elsewhere.
    pub fn basis(v: VarId) -> Self {
        Self::from_pairs([(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i64)>) -> Self {
        TropicalPoint {
            coords: pairs.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn coord(&self, v: VarId) -> i64 {
        self.coords.get(&v).copied().unwrap_or(0)
    }
}

/// Max over numerator monomials of the pairing with `p`, minus the same for
/// the denominator.
pub fn trop_eval(f: &RatFunc, p: &TropicalPoint) -> Result<i64, AlgError> {
    let w = |v: VarId| p.coord(v);
    let n = f.num().max_pairing(w).ok_or(AlgError::ZeroFunction)?;
    let d = f.den().max_pairing(w).ok_or(AlgError::ZeroFunction)?;
    Ok(n - d)
}

/// Top degree of `f` in `var`: numerator max exponent minus denominator max exponent.
pub fn top_degree(f: &RatFunc, var: VarId) -> Result<i64, AlgError> {
    let n = f.num().max_degree(var).ok_or(AlgError::ZeroFunction)?;
    let d = f.den().max_degree(var).ok_or(AlgError::ZeroFunction)?;
    Ok(n as i64 - d as i64)
}
