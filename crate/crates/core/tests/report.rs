use std::collections::BTreeSet;

use bruhat_dt::dtengine::{run_checks, CheckSelection};
use bruhat_dt::plabic::BipartiteGraph;
use bruhat_dt::weyl::{greedy_pair_word, move_closure, Permutation};
use rayon::prelude::*;

fn corpus(n: usize) -> Vec<Vec<i32>> {
    let mut out = BTreeSet::new();
    for u in Permutation::all(n) {
        for v in Permutation::all(n) {
            for (w, _) in move_closure(&greedy_pair_word(&u, &v).unwrap()) {
                out.insert(w.letters().to_vec());
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn every_s3_word_passes_every_check() {
    let failures: Vec<String> = corpus(3)
        .par_iter()
        .filter_map(|w| {
            let g = BipartiteGraph::from_letters(3, w).unwrap();
            let report = run_checks(&g, CheckSelection::all(), 1, 3);
            (!report.passed()).then(|| format!("{w:?}: {:?}", report.checks))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_s2_word_passes_symbolically() {
    for w in corpus(2) {
        let g = BipartiteGraph::from_letters(2, &w).unwrap();
        let report = run_checks(&g, CheckSelection::all(), 0, 0);
        assert!(report.passed(), "{w:?}: {:?}", report.checks);
    }
}

#[test]
fn report_round_trips_through_json() {
    let w0 = Permutation::longest(3);
    let g = BipartiteGraph::from_word(&greedy_pair_word(&w0, &w0).unwrap());
    let report = run_checks(&g, CheckSelection::all(), 2, 11);
    let text = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<bruhat_dt::dtengine::DtReport>(&text).unwrap(), report);
}

#[test]
fn s4_longest_pair_tropical_and_plan() {
    let w0 = Permutation::longest(4);
    let g = BipartiteGraph::from_word(&greedy_pair_word(&w0, &w0).unwrap());
    let sel = CheckSelection {
        lgv: false,
        positivity: false,
        involution: true,
        plan: true,
        trop_delta: true,
    };
    let report = run_checks(&g, sel, 1, 42);
    assert!(report.passed(), "{:?}", report.checks);
}
