use std::collections::BTreeSet;

use bruhat_dt::plabic::BipartiteGraph;
use bruhat_dt::weyl::{greedy_pair_word, Permutation, SignedWord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random reduced word: simple reflections are appended whenever they
/// lengthen the product.
fn random_reduced(rng: &mut impl Rng, n: usize, attempts: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for _ in 0..attempts {
        let i = rng.gen_range(1..n);
        word.push(i);
        if Permutation::from_word(n, &word).length() < word.len() {
            word.pop();
        }
    }
    word
}

/// Shuffles a reduced word for `u` (negated) into one for `v`.
fn random_signed_word(rng: &mut impl Rng) -> SignedWord {
    let n = rng.gen_range(2..=5);
    let attempts = rng.gen_range(0..=n * n);
    let neg = random_reduced(rng, n, attempts);
    let pos = random_reduced(rng, n, attempts);
    let mut slots: Vec<bool> = neg.iter().map(|_| true).chain(pos.iter().map(|_| false)).collect();
    slots.shuffle(rng);
    let (mut ni, mut pi) = (neg.iter(), pos.iter());
    let letters = slots
        .into_iter()
        .map(|is_neg| {
            if is_neg {
                -(*ni.next().unwrap() as i32)
            } else {
                *pi.next().unwrap() as i32
            }
        })
        .collect();
    SignedWord::new(n, letters).expect("interleaving reduced words stays reduced")
}

fn random_words(count: usize) -> Vec<SignedWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    (0..count).map(|_| random_signed_word(&mut rng)).collect()
}

#[test]
fn face_labels_and_counts() {
    for w in random_words(500) {
        let g = BipartiteGraph::from_word(&w);
        assert_eq!(g.faces().len(), w.n() + 1 + w.len(), "{w}");
        for f in g.faces() {
            assert_eq!(f.i_set.len(), f.j_set.len(), "{w} face {}", f.id);
            assert_eq!(f.i_set.len(), f.spacing, "{w} face {}", f.id);
        }
        let labels: BTreeSet<_> = g.faces().iter().map(|f| f.label()).collect();
        assert_eq!(labels.len(), g.faces().len(), "{w}: labels are not distinct");
    }
}

#[test]
fn quivers_are_skew_symmetric_and_balanced() {
    for w in random_words(500) {
        let g = BipartiteGraph::from_word(&w);
        let (full, reduced) = g.build_quivers();
        for s in [&full, &reduced] {
            for &i in s.vertices() {
                for &j in s.vertices() {
                    assert_eq!(s.eps(i, j), -s.eps(j, i), "{w}");
                }
            }
        }
        for &i in full.vertices() {
            let balance: i32 = full.vertices().iter().map(|&j| full.eps(i, j)).sum();
            assert_eq!(balance, 0, "{w}: face {i} has unbalanced arrows");
        }
        let removed: Vec<usize> = full.vertices().difference(reduced.vertices()).map(|&v| v as usize).collect();
        assert_eq!(removed, g.boundary_faces(), "{w}");
    }
}

#[test]
fn strands_and_orientation() {
    for w in random_words(500) {
        let g = BipartiteGraph::from_word(&w);
        assert!(g.orientation_is_perfect(), "{w}");
        assert_eq!(g.strands().len(), 2 * w.n(), "{w}");
        let exits: BTreeSet<_> = g.strands().iter().map(|s| (s.exit_wire, format!("{:?}", s.exit_side))).collect();
        assert_eq!(exits.len(), 2 * w.n(), "{w}: two strands share an exit");
    }
}

#[test]
fn lgv_matches_path_count_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for w in random_words(60).into_iter().filter(|w| w.n() <= 4) {
        let g = BipartiteGraph::from_word(&w);
        let n = w.n();
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        let families = g.disjoint_families(&[i], &[j]).unwrap();
        let total: usize = families.len();
        let m = g.boundary_measurement(i, j).unwrap();
        let coefficient_sum = m.terms().fold(num_bigint::BigInt::from(0), |acc, (_, c)| acc + c);
        assert_eq!(coefficient_sum, num_bigint::BigInt::from(total), "{w} entry ({i},{j})");
        assert_eq!(m.is_zero(), total == 0);
    }
}

#[test]
fn greedy_gl3_has_unique_maximal_families() {
    let w0 = Permutation::longest(3);
    let w = greedy_pair_word(&w0, &w0).unwrap();
    let g = BipartiteGraph::from_word(&w);
    for f in g.faces() {
        let fam = g.max_path_family(&f.i_set, &f.j_set).unwrap();
        assert_eq!(fam.sources, f.i_set);
        assert_eq!(fam.sinks, f.j_set);
        assert!(!fam.monomial.is_one() || f.i_set.is_empty());
    }
}

#[test]
fn face_labels_have_unique_maximal_families_on_s3_words() {
    for u in Permutation::all(3) {
        for v in Permutation::all(3) {
            for letters in bruhat_dt::weyl::all_signed_words(&u, &v) {
                let g = BipartiteGraph::from_letters(3, &letters).unwrap();
                for f in g.faces() {
                    if let Err(e) = g.max_path_family(&f.i_set, &f.j_set) {
                        panic!("{letters:?} face {}: {e}", f.id);
                    }
                }
            }
        }
    }
}
