//! Permutations of `S_n`, signed reduced words for pairs `(u, v)`, the local
//! word moves, and greedy reduced words.
//!
//! Products of simple reflections are read left to right: the word
//! `(i1, i2, ..., ik)` denotes the permutation obtained by applying `s_{i1}`
//! first, then `s_{i2}`, and so on. Concretely `(p * q)(x) = q(p(x))`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("letter {letter} out of range for n = {n}")]
    LetterOutOfRange { letter: i32, n: usize },
    #[error("{part}-subword {letters:?} is not reduced (length {len}, but the product has {inversions} inversions)")]
    NonReducedWord {
        part: &'static str,
        letters: Vec<i32>,
        len: usize,
        inversions: usize,
    },
    #[error("move {kind:?} not applicable at position {position}: {reason}")]
    InapplicableMove {
        kind: MoveKind,
        position: usize,
        reason: String,
    },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        if self.images.iter().all(|&x| x < 10) {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(WeylError::NotAPermutation { n, images });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `w0`, i.e. `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// The simple transposition `s_i` exchanging `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection index {i} out of range for n = {n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Parse one-line notation: `"321"`, or comma separated `"3,2,1"` for n >= 10.
    pub fn parse(s: &str) -> Result<Self, WeylError> {
        let s = s.trim();
        let images: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let images = images.ok_or_else(|| WeylError::Parse(s.to_string()))?;
        Permutation::new(images).map_err(|_| WeylError::Parse(s.to_string()))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Left-to-right product: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    /// Coxeter length, computed as the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Product of simple reflections along `letters` (absolute values), left to right.
    pub fn from_word(n: usize, letters: &[usize]) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        // Applying s_i after p swaps the values i and i+1 in p's image list.
        for &i in letters {
            for x in images.iter_mut() {
                if *x == i {
                    *x = i + 1;
                } else if *x == i + 1 {
                    *x = i;
                }
            }
        }
        Permutation { images }
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// The greedy reduced word of `w`. The recursion emits
/// `(w^{-1}(n), ..., n-1)` and continues with `(s_{w^{-1}(n)} ... s_{n-1})^{-1} w`,
/// which fixes `n`. Trailing fixed points emit nothing.
pub fn greedy_word(w: &Permutation) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = w.clone();
    let total = w.n();
    for m in (1..=total).rev() {
        let a = cur.inverse().apply(m);
        if a == m {
            continue;
        }
        let block: Vec<usize> = (a..m).collect();
        let c = Permutation::from_word(total, &block);
        cur = c.inverse().then(&cur);
        out.extend(block);
    }
    debug_assert!(cur.is_identity());
    out
}

/// `(-greedy(u)) # reverse(greedy(v^{-1}))`.
pub fn greedy_pair_word(u: &Permutation, v: &Permutation) -> Result<SignedWord, WeylError> {
    if u.n() != v.n() {
        return Err(WeylError::RankMismatch(u.n(), v.n()));
    }
    let mut letters: Vec<i32> = greedy_word(u).into_iter().map(|i| -(i as i32)).collect();
    let mut vpart: Vec<i32> = greedy_word(&v.inverse()).into_iter().map(|i| i as i32).collect();
    vpart.reverse();
    letters.extend(vpart);
    SignedWord::new(u.n(), letters)
}

/// A validated signed reduced word of a pair `(u, v)` in `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedWord {
    n: usize,
    letters: Vec<i32>,
}

impl fmt::Debug for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedWord(n={}, {:?})", self.n, self.letters)
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl<'de> Deserialize<'de> for SignedWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            letters: Vec<i32>,
        }
        let raw = Raw::deserialize(d)?;
        SignedWord::new(raw.n, raw.letters).map_err(serde::de::Error::custom)
    }
}

/// Checks letter ranges only; reducedness is not required.
pub fn check_letters(n: usize, letters: &[i32]) -> Result<(), WeylError> {
    for &a in letters {
        if a == 0 || a.unsigned_abs() as usize >= n {
            return Err(WeylError::LetterOutOfRange { letter: a, n });
        }
    }
    Ok(())
}

impl SignedWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self, WeylError> {
        check_letters(n, &letters)?;
        let w = SignedWord { n, letters };
        w.permutations()?;
        Ok(w)
    }

    /// Parses `"1,-2,2"`; the empty string is the empty word.
    pub fn parse(n: usize, s: &str) -> Result<Self, WeylError> {
        let letters = parse_letters(s)?;
        SignedWord::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn permutations(&self) -> Result<(Permutation, Permutation), WeylError> {
        let neg: Vec<usize> = self
            .letters
            .iter()
            .filter(|&&a| a < 0)
            .map(|&a| (-a) as usize)
            .collect();
        let pos: Vec<usize> = self
            .letters
            .iter()
            .filter(|&&a| a > 0)
            .map(|&a| a as usize)
            .collect();
        let u = Permutation::from_word(self.n, &neg);
        let v = Permutation::from_word(self.n, &pos);
        for (part, word, perm) in [("u", &neg, &u), ("v", &pos, &v)] {
            if word.len() != perm.length() {
                return Err(WeylError::NonReducedWord {
                    part,
                    letters: word.iter().map(|&x| x as i32).collect(),
                    len: word.len(),
                    inversions: perm.length(),
                });
            }
        }
        Ok((u, v))
    }

    /// The opposite word: letters in reverse order.
    pub fn opposite(&self) -> SignedWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        SignedWord::new(self.n, letters).expect("reversal of a reduced word is reduced")
    }

    /// True when every negative letter precedes every positive letter.
    pub fn is_split(&self) -> bool {
        let first_pos = self.letters.iter().position(|&a| a > 0).unwrap_or(self.len());
        self.letters[first_pos..].iter().all(|&a| a > 0)
    }
}

pub fn parse_letters(s: &str) -> Result<Vec<i32>, WeylError> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| WeylError::Parse(t.to_string())))
        .collect()
}

/// `(u, v)` where `u` is the product of the negated negative letters and `v`
/// the product of the positive letters.
pub fn word_to_permutations(w: &SignedWord) -> (Permutation, Permutation) {
    w.permutations().expect("SignedWord is validated on construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    MixedSwap,
    SameIndexSwap,
    Braid,
}

impl MoveKind {
    pub fn induces_mutation(self) -> bool {
        !matches!(self, MoveKind::MixedSwap)
    }
}

/// For swaps, `Forward` moves the positive letter to the right: `(+a, -b) -> (-b, +a)`.
/// For braids, `Forward` is `(i, i+1, i) -> (i+1, i, i+1)` in absolute values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordMove {
    pub kind: MoveKind,
    pub position: usize,
    pub direction: Direction,
}

impl WordMove {
    pub fn new(kind: MoveKind, position: usize, direction: Direction) -> Self {
        WordMove {
            kind,
            position,
            direction,
        }
    }
}

/// Rewrites raw letters; shared by [`apply_move`] and the DT planner, which
/// passes through words that are not reduced.
pub fn apply_move_letters(letters: &[i32], m: WordMove) -> Result<Vec<i32>, WeylError> {
    let p = m.position;
    let fail = |reason: &str| WeylError::InapplicableMove {
        kind: m.kind,
        position: p,
        reason: reason.to_string(),
    };
    let mut out = letters.to_vec();
    match m.kind {
        MoveKind::MixedSwap | MoveKind::SameIndexSwap => {
            if p + 1 >= letters.len() {
                return Err(fail("needs two letters"));
            }
            let (a, b) = (letters[p], letters[p + 1]);
            if a.signum() == b.signum() {
                return Err(fail("letters must have opposite signs"));
            }
            let same = a.abs() == b.abs();
            if same != (m.kind == MoveKind::SameIndexSwap) {
                return Err(fail(if same {
                    "equal absolute values need SameIndexSwap"
                } else {
                    "distinct absolute values need MixedSwap"
                }));
            }
            let forward = a > 0;
            if forward != (m.direction == Direction::Forward) {
                return Err(fail("direction does not match the sign pattern"));
            }
            out.swap(p, p + 1);
        }
        MoveKind::Braid => {
            if p + 2 >= letters.len() {
                return Err(fail("needs three letters"));
            }
            let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
            if !(a.signum() == b.signum() && b.signum() == c.signum()) || a != c {
                return Err(fail("needs a single-sign pattern (i, j, i)"));
            }
            let (ia, ib) = (a.abs(), b.abs());
            let expect = match m.direction {
                Direction::Forward => ib == ia + 1,
                Direction::Backward => ia == ib + 1,
            };
            if !expect {
                return Err(fail("indices do not form a braid pattern in this direction"));
            }
            out[p] = b;
            out[p + 1] = a;
            out[p + 2] = b;
        }
    }
    Ok(out)
}

pub fn apply_move(w: &SignedWord, m: WordMove) -> Result<SignedWord, WeylError> {
    let letters = apply_move_letters(&w.letters, m)?;
    Ok(SignedWord::new(w.n, letters).expect("moves preserve reducedness"))
}

/// Every move applicable to `letters`.
pub fn applicable_moves_letters(letters: &[i32]) -> Vec<WordMove> {
    let mut out = Vec::new();
    for p in 0..letters.len() {
        if p + 1 < letters.len() {
            let (a, b) = (letters[p], letters[p + 1]);
            if a.signum() != b.signum() {
                let kind = if a.abs() == b.abs() {
                    MoveKind::SameIndexSwap
                } else {
                    MoveKind::MixedSwap
                };
                let dir = if a > 0 {
                    Direction::Forward
                } else {
                    Direction::Backward
                };
                out.push(WordMove::new(kind, p, dir));
            }
        }
        if p + 2 < letters.len() {
            let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
            if a == c && a.signum() == b.signum() {
                if b.abs() == a.abs() + 1 {
                    out.push(WordMove::new(MoveKind::Braid, p, Direction::Forward));
                } else if a.abs() == b.abs() + 1 {
                    out.push(WordMove::new(MoveKind::Braid, p, Direction::Backward));
                }
            }
        }
    }
    out
}

pub fn applicable_moves(w: &SignedWord) -> Vec<WordMove> {
    applicable_moves_letters(&w.letters)
}

/// Breadth-first search over word moves starting at `start`. Returns every
/// reachable word together with a move path from `start` leading to it.
pub fn move_closure(start: &SignedWord) -> Vec<(SignedWord, Vec<WordMove>)> {
    let mut seen: HashMap<SignedWord, Vec<WordMove>> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), Vec::new());
    queue.push_back(start.clone());
    let mut order = vec![start.clone()];
    while let Some(w) = queue.pop_front() {
        let path = seen[&w].clone();
        for m in applicable_moves(&w) {
            let next = apply_move(&w, m).expect("enumerated move applies");
            if !seen.contains_key(&next) {
                let mut p = path.clone();
                p.push(m);
                seen.insert(next.clone(), p);
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order
        .into_iter()
        .map(|w| {
            let p = seen.remove(&w).unwrap();
            (w, p)
        })
        .collect()
}

/// A shortest move path from `a` to `b`, if the two words are connected.
pub fn move_path(a: &SignedWord, b: &SignedWord) -> Option<Vec<WordMove>> {
    if a.n() != b.n() {
        return None;
    }
    move_closure(a)
        .into_iter()
        .find(|(w, _)| w == b)
        .map(|(_, p)| p)
}

/// All reduced words of `w` by brute force over sequences of simple reflections.
pub fn reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    let n = w.n();
    let l = w.length();
    let mut out = Vec::new();
    // Peel off a right descent each time: w = w' s_i with l(w') = l(w) - 1.
    fn rec(w: &Permutation, n: usize, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w.is_identity() {
            let mut word = suffix.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for i in 1..n {
            // Under left-to-right composition, w = w' then s_i, and s_i is a
            // descent when swapping the values i, i+1 shortens w.
            let wp = w.then(&Permutation::simple(n, i));
            if wp.length() + 1 == w.length() {
                suffix.push(i);
                rec(&wp, n, suffix, out);
                suffix.pop();
            }
        }
    }
    rec(w, n, &mut Vec::new(), &mut out);
    debug_assert!(out.iter().all(|x| x.len() == l));
    out
}

/// Every signed reduced word of `(u, v)`: all shuffles of a reduced word of
/// `u` (negated) with one of `v`.
pub fn all_signed_words(u: &Permutation, v: &Permutation) -> BTreeSet<Vec<i32>> {
    let mut out = BTreeSet::new();
    for a in reduced_words(u) {
        for b in reduced_words(v) {
            let total = a.len() + b.len();
            for mask in 0u64..(1u64 << total) {
                if mask.count_ones() as usize != a.len() {
                    continue;
                }
                let (mut ia, mut ib) = (0, 0);
                let mut word = Vec::with_capacity(total);
                for k in 0..total {
                    if mask >> k & 1 == 1 {
                        word.push(-(a[ia] as i32));
                        ia += 1;
                    } else {
                        word.push(b[ib] as i32);
                        ib += 1;
                    }
                }
                out.insert(word);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_word(&p("321")), vec![1, 2, 1]);
        assert_eq!(greedy_word(&Permutation::identity(4)), Vec::<usize>::new());
        assert_eq!(greedy_word(&p("132")), vec![2]);
    }

    #[test]
    fn greedy_pair_examples() {
        let w0 = p("321");
        assert_eq!(greedy_pair_word(&w0, &w0).unwrap().letters(), &[-1, -2, -1, 1, 2, 1]);
        let e = p("12");
        assert!(greedy_pair_word(&e, &e).unwrap().is_empty());
        let s1 = p("21");
        assert_eq!(greedy_pair_word(&s1, &s1).unwrap().letters(), &[-1, 1]);
    }

    #[test]
    fn word_to_permutations_examples() {
        let w = SignedWord::new(3, vec![-1, -2, -1, 1, 2, 1]).unwrap();
        assert_eq!(word_to_permutations(&w), (p("321"), p("321")));
        let e = SignedWord::new(2, vec![]).unwrap();
        assert_eq!(word_to_permutations(&e), (p("12"), p("12")));
        assert!(matches!(
            SignedWord::new(2, vec![1, 1]),
            Err(WeylError::NonReducedWord { .. })
        ));
        assert!(matches!(
            SignedWord::new(2, vec![2]),
            Err(WeylError::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn greedy_round_trip_and_length_exhaustive() {
        for n in 1..=6 {
            for w in Permutation::all(n) {
                let g = greedy_word(&w);
                assert_eq!(Permutation::from_word(n, &g), w, "{w}");
                assert_eq!(g.len(), w.length());
            }
        }
    }

    #[test]
    fn displacement_sum_is_not_the_length() {
        // The total upward displacement sum_i max(w(i) - i, 0) undercounts
        // inversions in general; w0 in S_3 is the smallest witness.
        let w0 = p("321");
        let displacement: usize = (1..=3).map(|i| w0.apply(i).saturating_sub(i)).sum();
        assert_eq!(displacement, 2);
        assert_eq!(greedy_word(&w0).len(), 3);
    }

    #[test]
    fn move_examples() {
        let w = SignedWord::new(3, vec![1, -2]).unwrap();
        let m = WordMove::new(MoveKind::MixedSwap, 0, Direction::Forward);
        assert_eq!(apply_move(&w, m).unwrap().letters(), &[-2, 1]);

        let w = SignedWord::new(3, vec![1, 2, 1]).unwrap();
        let m = WordMove::new(MoveKind::Braid, 0, Direction::Forward);
        assert_eq!(apply_move(&w, m).unwrap().letters(), &[2, 1, 2]);

        let w = SignedWord::new(2, vec![1, -1]).unwrap();
        let m = WordMove::new(MoveKind::SameIndexSwap, 0, Direction::Forward);
        assert!(m.kind.induces_mutation());
        assert_eq!(apply_move(&w, m).unwrap().letters(), &[-1, 1]);

        let bad = WordMove::new(MoveKind::MixedSwap, 0, Direction::Forward);
        assert!(matches!(
            apply_move(&w, bad),
            Err(WeylError::InapplicableMove { .. })
        ));
    }

    #[test]
    fn moves_preserve_pair_and_connect_all_words_s3() {
        for u in Permutation::all(3) {
            for v in Permutation::all(3) {
                let g = greedy_pair_word(&u, &v).unwrap();
                let closure = move_closure(&g);
                for (w, _) in &closure {
                    assert_eq!(word_to_permutations(w), (u.clone(), v.clone()));
                    for m in applicable_moves(w) {
                        let w2 = apply_move(w, m).unwrap();
                        assert_eq!(word_to_permutations(&w2), (u.clone(), v.clone()));
                    }
                }
                let reached: BTreeSet<Vec<i32>> =
                    closure.iter().map(|(w, _)| w.letters().to_vec()).collect();
                assert_eq!(reached, all_signed_words(&u, &v), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("3,2,1"), p("321"));
        assert!(Permutation::parse("113").is_err());
        assert_eq!(parse_letters("").unwrap(), Vec::<i32>::new());
        assert_eq!(parse_letters("[-1, 2]").unwrap(), vec![-1, 2]);
    }
}
