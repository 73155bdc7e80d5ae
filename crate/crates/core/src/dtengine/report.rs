use std::collections::BTreeMap;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::{
    amalgamate, check_involution, plan_dt_sequence, polynomial_values, random_point, tropical_dt_check,
    verify_plan, DegreeMatrix, DtError, DtPlan,
};
use crate::cluster::Vertex;
use crate::exactalg::{RatFunc, VarId};
use crate::plabic::{BipartiteGraph, QuiverJson};

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSelection {
    pub lgv: bool,
    pub positivity: bool,
    pub involution: bool,
    pub plan: bool,
    pub trop_delta: bool,
}

impl CheckSelection {
    pub fn all() -> Self {
        CheckSelection {
            lgv: true,
            positivity: true,
            involution: true,
            plan: true,
            trop_delta: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome { pass: true, witness: None }
    }

    fn fail(w: impl Into<String>) -> Self {
        CheckOutcome {
            pass: false,
            witness: Some(w.into()),
        }
    }

    fn from_result(r: Result<bool, DtError>, what: &str) -> Self {
        match r {
            Ok(true) => Self::pass(),
            Ok(false) => Self::fail(what),
            Err(e) => Self::fail(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lgv: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan_match: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trop_delta: Option<CheckOutcome>,
}

impl Checks {
    pub fn all_passed(&self) -> bool {
        [&self.lgv, &self.positivity, &self.involution, &self.plan_match, &self.trop_delta]
            .into_iter()
            .flatten()
            .all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub n: usize,
    pub letters: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtReport {
    pub word: WordJson,
    pub rng_seed: u64,
    pub specializations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_matrix: Option<DegreeMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<DtPlan>,
    pub checks: Checks,
    pub seed: QuiverJson,
}

impl DtReport {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// Compares every minor of `χ̃` (all faces symbolic) with the LGV path sum,
/// and checks nonnegativity of the coefficients.
fn lgv_and_positivity(g: &BipartiteGraph) -> Result<(CheckOutcome, CheckOutcome), DtError> {
    let x = amalgamate(g, &polynomial_values(g, false))?;
    let mut lgv = CheckOutcome::pass();
    let mut pos = CheckOutcome::pass();
    for rows in subsets(g.n()) {
        for cols in subsets(g.n()).into_iter().filter(|c| c.len() == rows.len()) {
            let det = x.minor(&rows, &cols);
            if lgv.pass && det != g.lgv_minor(&rows, &cols)? {
                lgv = CheckOutcome::fail(format!("minor {rows:?},{cols:?}"));
            }
            if pos.pass && !det.has_nonnegative_coefficients() {
                pos = CheckOutcome::fail(format!("minor {rows:?},{cols:?}"));
            }
        }
    }
    Ok((lgv, pos))
}

/// Runs the selected checks. Plan and involution checks are symbolic for
/// `n <= 2` and use `specializations` seeded rational points otherwise.
pub fn run_checks(g: &BipartiteGraph, sel: CheckSelection, specializations: usize, rng_seed: u64) -> DtReport {
    let mut checks = Checks::default();
    let symbolic_ok = g.n() <= 2;

    if sel.lgv || sel.positivity {
        match lgv_and_positivity(g) {
            Ok((l, p)) => {
                checks.lgv = sel.lgv.then_some(l);
                checks.positivity = sel.positivity.then_some(p);
            }
            Err(e) => {
                checks.lgv = sel.lgv.then(|| CheckOutcome::fail(e.to_string()));
                checks.positivity = sel.positivity.then(|| CheckOutcome::fail(e.to_string()));
            }
        }
    }

    let mut degree_matrix = None;
    if sel.trop_delta {
        checks.trop_delta = Some(match tropical_dt_check(g) {
            Ok(d) => {
                let out = match d.first_deviation() {
                    None => CheckOutcome::pass(),
                    Some((r, c, e)) => CheckOutcome::fail(format!("deg_X{c} DT*(X{r}) = {e}")),
                };
                degree_matrix = Some(d);
                out
            }
            Err(e) => CheckOutcome::fail(e.to_string()),
        });
    }

    let mut plan = None;
    if sel.plan {
        checks.plan_match = Some(match plan_dt_sequence(g) {
            Ok(p) => {
                let r = if symbolic_ok {
                    verify_plan(g, &p)
                } else {
                    super::verify_plan_specialized(g, &p, specializations, rng_seed)
                };
                plan = Some(p);
                CheckOutcome::from_result(r.map(|_| true), "plan")
            }
            Err(e) => CheckOutcome::fail(e.to_string()),
        });
    }

    if sel.involution {
        let vars: Vec<Vertex> = g.interior_faces().into_iter().map(|f| f as Vertex).collect();
        let r = if symbolic_ok {
            let x: BTreeMap<Vertex, RatFunc> = vars.iter().map(|&v| (v, RatFunc::var(VarId(v)))).collect();
            check_involution(g, &x)
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(rng_seed);
            (0..specializations).try_fold(true, |ok, _| {
                Ok(ok && check_involution(g, &random_point(&mut rng, &vars))?)
            })
        };
        checks.involution = Some(CheckOutcome::from_result(r, "D_X(D_X(x)) != x"));
    }

    DtReport {
        word: WordJson {
            n: g.n(),
            letters: g.letters().to_vec(),
        },
        rng_seed,
        specializations,
        degree_matrix,
        plan,
        checks,
        seed: QuiverJson::from(&g.build_quivers().1),
    }
}
