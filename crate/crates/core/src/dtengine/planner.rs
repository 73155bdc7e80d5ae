// Mutation-sequence realization of DT.
//
// For a split word (-i(1), ..., -i(m), j(1), ..., j(l)):
//   u-phase, k = 1..m: the leftmost negative letter is flipped to positive
//   and swapped rightward past the remaining negative letters;
//   v-phase, k = l..1: the rightmost positive letter is flipped to negative
//   and swapped leftward past every positive letter.
// Flipping the first or last letter only changes arrows at boundary faces.
// A swap of opposite-sign letters with the same index mutates the face
// between them; with different indices it is free. The result is the
// transpose of the split word, identified with it by mirroring the faces.
//
// A word that is not split is first brought to split form by swapping
// negative letters leftward; the same swaps are undone at the end, so the
// plan is the conjugate of the split word's plan.

use std::collections::BTreeMap;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::{dt_apply, dt_pullback, mirror_faces, reduced_seed, specialize, DtError};
use crate::cluster::{run_plan, symbolic, ClusterAssignment, ClusterError, Kind, PlanStep, Seed, TransformationPlan, Vertex};
use crate::exactalg::{Field, RatFunc, Rational};
use crate::plabic::BipartiteGraph;

/// A planned DT sequence together with the words it passes through.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtPlan {
    pub plan: TransformationPlan,
    /// Every intermediate word, starting with the input word.
    pub words: Vec<Vec<i32>>,
    /// Swaps used to bring the word to split form (undone at the end).
    pub normalization_swaps: usize,
    /// Braid moves used; the schedule never needs any.
    pub braid_moves: usize,
}

impl DtPlan {
    pub fn mutation_count(&self) -> usize {
        self.plan.mutation_count()
    }
}

struct Planner {
    n: usize,
    letters: Vec<i32>,
    seed: Seed,
    steps: Vec<PlanStep>,
    words: Vec<Vec<i32>>,
}

impl Planner {
    fn graph(&self) -> BipartiteGraph {
        BipartiteGraph::from_letters(self.n, &self.letters).expect("letters stay in range")
    }

    fn check_seed(&self) -> Result<(), DtError> {
        if self.seed != reduced_seed(&self.graph()) {
            return Err(ClusterError::SeedMismatch { step: self.steps.len() }.into());
        }
        Ok(())
    }

    fn record(&mut self) -> Result<(), DtError> {
        self.words.push(self.letters.clone());
        self.check_seed()
    }

    /// Exchanges the opposite-sign letters at `p` and `p + 1`.
    fn swap(&mut self, p: usize) -> Result<(), DtError> {
        let (a, b) = (self.letters[p], self.letters[p + 1]);
        debug_assert!(a.signum() != b.signum());
        if a.abs() == b.abs() {
            let face = self.graph().face_right_of(p) as Vertex;
            self.seed = self.seed.mutate(face)?;
            self.steps.push(PlanStep::Mutate(face));
        }
        self.letters.swap(p, p + 1);
        self.record()
    }

    fn flip(&mut self, p: usize) -> Result<(), DtError> {
        self.letters[p] = -self.letters[p];
        self.record()
    }
}

pub fn plan_dt_sequence(g: &BipartiteGraph) -> Result<DtPlan, DtError> {
    let source = reduced_seed(g);
    let mut pl = Planner {
        n: g.n(),
        letters: g.letters().to_vec(),
        seed: source.clone(),
        steps: Vec::new(),
        words: vec![g.letters().to_vec()],
    };

    // bring negative letters to the front
    let mut normalization = Vec::new();
    while let Some(p) = (0..pl.letters.len().saturating_sub(1))
        .find(|&p| pl.letters[p] > 0 && pl.letters[p + 1] < 0)
    {
        pl.swap(p)?;
        normalization.push(p);
    }
    let split = pl.letters.clone();
    let m = split.iter().filter(|&&a| a < 0).count();
    let len = split.len();

    // u-phase: after step k the flipped letters occupy positions m-k..m
    for k in 0..m {
        pl.flip(0)?;
        for p in 0..m - k - 1 {
            pl.swap(p)?;
        }
    }
    // v-phase: after step k the new negative letters occupy positions 0..=k
    for k in 0..len - m {
        pl.flip(len - 1)?;
        for p in (k..len - 1).rev() {
            pl.swap(p)?;
        }
    }

    let done = pl.graph();
    let transposed: Vec<i32> = pl.letters.iter().rev().map(|a| -a).collect();
    debug_assert_eq!(transposed, split);
    let split_graph = BipartiteGraph::from_letters(g.n(), &split)?;
    let sigma = mirror_faces(&done, &split_graph);
    pl.seed = pl.seed.relabel(&sigma)?;
    pl.steps.push(PlanStep::Iso(sigma));
    pl.letters = split;
    pl.record()?;

    for &p in normalization.iter().rev() {
        pl.swap(p)?;
    }
    debug_assert_eq!(pl.letters, g.letters());

    let plan = TransformationPlan {
        source: source.clone(),
        target: pl.seed.clone(),
        steps: pl.steps,
    };
    plan.check()?;
    Ok(DtPlan {
        plan,
        words: pl.words,
        normalization_swaps: normalization.len(),
        braid_moves: 0,
    })
}

fn compare<T: Field + std::fmt::Debug>(
    got: &ClusterAssignment<T>,
    want: &BTreeMap<Vertex, T>,
) -> Result<(), DtError> {
    for (&v, w) in want {
        let g = got.values.get(&v);
        if g != Some(w) {
            return Err(DtError::PlanVerificationFailed {
                face: v as usize,
                expected: format!("{w:?}"),
                got: format!("{g:?}"),
            });
        }
    }
    Ok(())
}

/// Checks `run_plan = DT` symbolically.
pub fn verify_plan(g: &BipartiteGraph, plan: &DtPlan) -> Result<(), DtError> {
    let x = symbolic(&plan.plan.source, Kind::X);
    let got = run_plan(&x, &plan.plan)?;
    let want: BTreeMap<Vertex, RatFunc> = dt_pullback(g)?;
    compare(&got, &want)
}

/// Checks `run_plan = DT` at `points` seeded random rational points.
pub fn verify_plan_specialized(g: &BipartiteGraph, plan: &DtPlan, points: usize, seed: u64) -> Result<(), DtError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<Vertex> = plan.plan.source.vertices().iter().copied().collect();
    for _ in 0..points {
        let values: BTreeMap<Vertex, Rational> = specialize::random_point(&mut rng, &vars);
        let x = ClusterAssignment::new(plan.plan.source.clone(), Kind::X, values.clone())?;
        let got = run_plan(&x, &plan.plan)?;
        let want = dt_apply(g, &values)?;
        compare(&got, &want)?;
    }
    Ok(())
}
