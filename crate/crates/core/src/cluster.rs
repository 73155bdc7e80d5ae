//! Seeds, seed mutation, cluster A- and X-mutations, the p-map, seed
//! isomorphisms, the involution `i_X`, and replayable cluster transformations.
//!
//! Values are generic over [`Field`], so the same transformation can be run
//! on symbolic rational functions or on exact rational specializations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{Field, RatFunc, VarId};

pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("vertex {0} is frozen")]
    FrozenVertex(Vertex),
    #[error("vertex {0} is not in the seed")]
    UnknownVertex(Vertex),
    #[error("not a seed isomorphism: {0}")]
    NotSeedIsomorphism(String),
    #[error("seed mismatch at plan step {step}")]
    SeedMismatch { step: usize },
    #[error("expected an {expected}-type assignment")]
    WrongKind { expected: &'static str },
    #[error("division by zero while mutating at {0}")]
    ZeroValue(Vertex),
    #[error("values do not cover the seed's vertices")]
    DomainMismatch,
}

/// A skew-symmetric exchange matrix on a finite vertex set, with frozen vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeedRepr", into = "SeedRepr")]
pub struct Seed {
    vertices: BTreeSet<Vertex>,
    frozen: BTreeSet<Vertex>,
    // epsilon_{ij} for i < j only
    upper: BTreeMap<(Vertex, Vertex), i32>,
}

#[derive(Serialize, Deserialize)]
struct SeedRepr {
    vertices: Vec<Vertex>,
    frozen: Vec<Vertex>,
    /// `(i, j, epsilon_ij)` with `epsilon_ij > 0`.
    exchange: Vec<(Vertex, Vertex, i32)>,
}

impl From<Seed> for SeedRepr {
    fn from(s: Seed) -> Self {
        SeedRepr {
            vertices: s.vertices.iter().copied().collect(),
            frozen: s.frozen.iter().copied().collect(),
            exchange: s.arrows(),
        }
    }
}

impl TryFrom<SeedRepr> for Seed {
    type Error = String;
    fn try_from(r: SeedRepr) -> Result<Self, String> {
        let mut s = Seed::new(r.vertices, r.frozen);
        for (i, j, e) in r.exchange {
            if !s.vertices.contains(&i) || !s.vertices.contains(&j) || i == j {
                return Err(format!("bad exchange entry ({i}, {j}, {e})"));
            }
            s.add_eps(i, j, e);
        }
        Ok(s)
    }
}

impl Seed {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>, frozen: impl IntoIterator<Item = Vertex>) -> Self {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let frozen = frozen.into_iter().filter(|v| vertices.contains(v)).collect();
        Seed {
            vertices,
            frozen,
            upper: BTreeMap::new(),
        }
    }

    /// Builds a seed from arrows `i -> j` (each contributes +1 to `epsilon_ij`).
    pub fn from_arrows(
        vertices: impl IntoIterator<Item = Vertex>,
        frozen: impl IntoIterator<Item = Vertex>,
        arrows: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Self {
        let mut s = Seed::new(vertices, frozen);
        for (i, j) in arrows {
            s.add_eps(i, j, 1);
        }
        s
    }

    /// Builds a seed from a dense matrix indexed by `0..n`.
    pub fn from_matrix(eps: &[Vec<i32>], frozen: impl IntoIterator<Item = Vertex>) -> Self {
        let n = eps.len();
        let mut s = Seed::new(0..n as Vertex, frozen);
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(eps[i][j], -eps[j][i], "matrix is not skew-symmetric");
                s.add_eps(i as Vertex, j as Vertex, eps[i][j]);
            }
        }
        s
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn frozen(&self) -> &BTreeSet<Vertex> {
        &self.frozen
    }

    pub fn is_frozen(&self, v: Vertex) -> bool {
        self.frozen.contains(&v)
    }

    pub fn unfrozen(&self) -> Vec<Vertex> {
        self.vertices.difference(&self.frozen).copied().collect()
    }

    pub fn eps(&self, i: Vertex, j: Vertex) -> i32 {
        if i < j {
            self.upper.get(&(i, j)).copied().unwrap_or(0)
        } else if i > j {
            -self.upper.get(&(j, i)).copied().unwrap_or(0)
        } else {
            0
        }
    }

    fn set_eps(&mut self, i: Vertex, j: Vertex, e: i32) {
        if i == j {
            return;
        }
        let (key, val) = if i < j { ((i, j), e) } else { ((j, i), -e) };
        if val == 0 {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, val);
        }
    }

    fn add_eps(&mut self, i: Vertex, j: Vertex, e: i32) {
        let cur = self.eps(i, j);
        self.set_eps(i, j, cur + e);
    }

    /// Arrows as `(i, j, multiplicity)` with `epsilon_ij > 0`, sorted.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex, i32)> {
        let mut out: Vec<_> = self
            .upper
            .iter()
            .map(|(&(i, j), &e)| if e > 0 { (i, j, e) } else { (j, i, -e) })
            .collect();
        out.sort();
        out
    }

    /// Vertices `j` with `epsilon_kj != 0`.
    pub fn neighbors(&self, k: Vertex) -> Vec<Vertex> {
        self.vertices
            .iter()
            .copied()
            .filter(|&j| self.eps(k, j) != 0)
            .collect()
    }

    /// Dense matrix in vertex order.
    pub fn matrix(&self) -> Vec<Vec<i32>> {
        let vs: Vec<Vertex> = self.vertices.iter().copied().collect();
        vs.iter()
            .map(|&i| vs.iter().map(|&j| self.eps(i, j)).collect())
            .collect()
    }

    /// Full subseed on `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> Seed {
        let mut s = Seed::new(
            self.vertices.intersection(keep).copied(),
            self.frozen.intersection(keep).copied(),
        );
        for (&(i, j), &e) in &self.upper {
            if keep.contains(&i) && keep.contains(&j) {
                s.upper.insert((i, j), e);
            }
        }
        s
    }

    /// Seed with `epsilon` negated (the opposite seed).
    pub fn opposite(&self) -> Seed {
        Seed {
            vertices: self.vertices.clone(),
            frozen: self.frozen.clone(),
            upper: self.upper.iter().map(|(&k, &e)| (k, -e)).collect(),
        }
    }

    /// Relabels vertices along a bijection `sigma`.
    pub fn relabel(&self, sigma: &BTreeMap<Vertex, Vertex>) -> Result<Seed, ClusterError> {
        check_bijection(&self.vertices, sigma)?;
        let mut s = Seed::new(
            self.vertices.iter().map(|v| sigma[v]),
            self.frozen.iter().map(|v| sigma[v]),
        );
        for (&(i, j), &e) in &self.upper {
            s.set_eps(sigma[&i], sigma[&j], e);
        }
        Ok(s)
    }

    pub fn mutate(&self, k: Vertex) -> Result<Seed, ClusterError> {
        if !self.vertices.contains(&k) {
            return Err(ClusterError::UnknownVertex(k));
        }
        if self.frozen.contains(&k) {
            return Err(ClusterError::FrozenVertex(k));
        }
        let nbrs = self.neighbors(k);
        let mut out = self.clone();
        for &j in &nbrs {
            out.set_eps(k, j, -self.eps(k, j));
        }
        for &i in &nbrs {
            for &j in &nbrs {
                if i >= j {
                    continue;
                }
                let (eik, ekj) = (self.eps(i, k), self.eps(k, j));
                if eik * ekj > 0 {
                    out.set_eps(i, j, self.eps(i, j) + eik.abs() * ekj);
                }
            }
        }
        Ok(out)
    }

    /// A random seed on `0..n` with entries in `-max..=max`.
    pub fn random(rng: &mut impl rand::Rng, n: usize, max: i32) -> Seed {
        let mut s = Seed::new(0..n as Vertex, []);
        for i in 0..n {
            for j in i + 1..n {
                let e = rng.gen_range(-max..=max);
                s.set_eps(i as Vertex, j as Vertex, e);
            }
        }
        s
    }
}

fn check_bijection(dom: &BTreeSet<Vertex>, sigma: &BTreeMap<Vertex, Vertex>) -> Result<(), ClusterError> {
    let keys: BTreeSet<Vertex> = sigma.keys().copied().collect();
    if &keys != dom {
        return Err(ClusterError::NotSeedIsomorphism(
            "domain differs from the vertex set".into(),
        ));
    }
    let image: BTreeSet<Vertex> = sigma.values().copied().collect();
    if image.len() != sigma.len() {
        return Err(ClusterError::NotSeedIsomorphism("map is not injective".into()));
    }
    Ok(())
}

pub fn mutate_seed(s: &Seed, k: Vertex) -> Result<Seed, ClusterError> {
    s.mutate(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    A,
    X,
}

/// Coordinates attached to the vertices of a seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterAssignment<T = RatFunc> {
    pub seed: Seed,
    pub kind: Kind,
    pub values: BTreeMap<Vertex, T>,
}

impl<T: Field> ClusterAssignment<T> {
    pub fn new(seed: Seed, kind: Kind, values: BTreeMap<Vertex, T>) -> Result<Self, ClusterError> {
        let keys: BTreeSet<Vertex> = values.keys().copied().collect();
        if &keys != seed.vertices() {
            return Err(ClusterError::DomainMismatch);
        }
        Ok(ClusterAssignment { seed, kind, values })
    }

    pub fn get(&self, v: Vertex) -> &T {
        &self.values[&v]
    }

    fn expect(&self, kind: Kind) -> Result<(), ClusterError> {
        if self.kind != kind {
            return Err(ClusterError::WrongKind {
                expected: if kind == Kind::A { "A" } else { "X" },
            });
        }
        Ok(())
    }

    /// Restriction of an assignment to a subset of vertices.
    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> Self {
        ClusterAssignment {
            seed: self.seed.restrict(keep),
            kind: self.kind,
            values: self
                .values
                .iter()
                .filter(|(k, _)| keep.contains(k))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }
}

/// Symbolic assignment with each vertex `v` carrying the variable `VarId(v)`.
pub fn symbolic(seed: &Seed, kind: Kind) -> ClusterAssignment<RatFunc> {
    let values = seed
        .vertices()
        .iter()
        .map(|&v| (v, RatFunc::var(VarId(v))))
        .collect();
    ClusterAssignment {
        seed: seed.clone(),
        kind,
        values,
    }
}

pub fn mutate_a<T: Field>(a: &ClusterAssignment<T>, k: Vertex) -> Result<ClusterAssignment<T>, ClusterError> {
    a.expect(Kind::A)?;
    let seed = a.seed.mutate(k)?;
    let (mut plus, mut minus) = (T::one(), T::one());
    for j in a.seed.neighbors(k) {
        let e = a.seed.eps(k, j);
        let aj = a.get(j).pow(e.unsigned_abs());
        if e > 0 {
            plus = plus.mul(&aj);
        } else {
            minus = minus.mul(&aj);
        }
    }
    let new = plus
        .add(&minus)
        .div(a.get(k))
        .ok_or(ClusterError::ZeroValue(k))?;
    let mut values = a.values.clone();
    values.insert(k, new);
    Ok(ClusterAssignment {
        seed,
        kind: Kind::A,
        values,
    })
}

pub fn mutate_x<T: Field>(x: &ClusterAssignment<T>, k: Vertex) -> Result<ClusterAssignment<T>, ClusterError> {
    x.expect(Kind::X)?;
    let seed = x.seed.mutate(k)?;
    let xk = x.get(k);
    let xk_inv = xk.inv().ok_or(ClusterError::ZeroValue(k))?;
    let one_plus = xk.add(&T::one());
    let one_plus_inv = xk_inv.add(&T::one());
    let mut values = x.values.clone();
    values.insert(k, xk_inv.clone());
    for i in x.seed.neighbors(k) {
        let e = x.seed.eps(i, k);
        // X_i (1 + X_k^{-sgn e})^{-e}
        let factor = if e > 0 {
            one_plus_inv.powi(-e)
        } else {
            one_plus.powi(-e)
        }
        .ok_or(ClusterError::ZeroValue(k))?;
        values.insert(i, x.get(i).mul(&factor));
    }
    Ok(ClusterAssignment {
        seed,
        kind: Kind::X,
        values,
    })
}

/// `X_i = prod_j A_j^{epsilon_ij}`.
pub fn p_map<T: Field>(a: &ClusterAssignment<T>) -> Result<ClusterAssignment<T>, ClusterError> {
    a.expect(Kind::A)?;
    let mut values = BTreeMap::new();
    for &i in a.seed.vertices() {
        let (mut num, mut den) = (T::one(), T::one());
        for j in a.seed.neighbors(i) {
            let e = a.seed.eps(i, j);
            let p = a.get(j).pow(e.unsigned_abs());
            if e > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        values.insert(i, num.div(&den).ok_or(ClusterError::ZeroValue(i))?);
    }
    Ok(ClusterAssignment {
        seed: a.seed.clone(),
        kind: Kind::X,
        values,
    })
}

/// Transports an assignment along `sigma`, checked against `target`'s
/// exchange matrix when supplied (`epsilon'_{sigma i, sigma j} = epsilon_ij`).
pub fn apply_iso<T: Field>(
    x: &ClusterAssignment<T>,
    sigma: &BTreeMap<Vertex, Vertex>,
    target: Option<&Seed>,
) -> Result<ClusterAssignment<T>, ClusterError> {
    let seed = x.seed.relabel(sigma)?;
    if let Some(t) = target {
        if t.vertices() != seed.vertices() || t.arrows() != seed.arrows() {
            return Err(ClusterError::NotSeedIsomorphism(
                "exchange matrices are not compatible".into(),
            ));
        }
    }
    let values = x.values.iter().map(|(k, v)| (sigma[k], v.clone())).collect();
    Ok(ClusterAssignment {
        seed: target.cloned().unwrap_or(seed),
        kind: x.kind,
        values,
    })
}

/// The involution `i_X`: negates the seed and inverts every value.
pub fn i_x<T: Field>(x: &ClusterAssignment<T>) -> Result<ClusterAssignment<T>, ClusterError> {
    x.expect(Kind::X)?;
    let values = x
        .values
        .iter()
        .map(|(&k, v)| v.inv().map(|w| (k, w)).ok_or(ClusterError::ZeroValue(k)))
        .collect::<Result<_, _>>()?;
    Ok(ClusterAssignment {
        seed: x.seed.opposite(),
        kind: Kind::X,
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanStep {
    Mutate(Vertex),
    Iso(BTreeMap<Vertex, Vertex>),
}

/// A sequence of mutations and seed isomorphisms from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationPlan {
    pub source: Seed,
    pub target: Seed,
    pub steps: Vec<PlanStep>,
}

impl TransformationPlan {
    pub fn identity(seed: Seed) -> Self {
        TransformationPlan {
            source: seed.clone(),
            target: seed,
            steps: Vec::new(),
        }
    }

    pub fn mutation_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, PlanStep::Mutate(_)))
            .count()
    }

    /// Replays the steps on the seed alone, checking that the result is `target`.
    pub fn check(&self) -> Result<(), ClusterError> {
        let mut s = self.source.clone();
        for step in &self.steps {
            s = match step {
                PlanStep::Mutate(k) => s.mutate(*k)?,
                PlanStep::Iso(sigma) => s.relabel(sigma)?,
            };
        }
        if s != self.target {
            return Err(ClusterError::SeedMismatch {
                step: self.steps.len(),
            });
        }
        Ok(())
    }
}

pub fn run_plan<T: Field>(
    x: &ClusterAssignment<T>,
    plan: &TransformationPlan,
) -> Result<ClusterAssignment<T>, ClusterError> {
    if x.seed != plan.source {
        return Err(ClusterError::SeedMismatch { step: 0 });
    }
    let mut cur = x.clone();
    for step in &plan.steps {
        cur = match step {
            PlanStep::Mutate(k) => match cur.kind {
                Kind::X => mutate_x(&cur, *k)?,
                Kind::A => mutate_a(&cur, *k)?,
            },
            PlanStep::Iso(sigma) => apply_iso(&cur, sigma, None)?,
        };
    }
    if cur.seed != plan.target {
        return Err(ClusterError::SeedMismatch {
            step: plan.steps.len(),
        });
    }
    Ok(cur)
}
