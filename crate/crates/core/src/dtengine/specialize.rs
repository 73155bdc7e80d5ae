use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::cluster::Vertex;
use crate::exactalg::{RatFunc, Rational, VarId};

const MAX: i64 = 1_000_000;

/// A positive rational with numerator and denominator drawn from `1..=10^6`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(1..=MAX);
    let d = rng.gen_range(1..=MAX);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_point(rng: &mut impl Rng, vars: &[Vertex]) -> BTreeMap<Vertex, Rational> {
    vars.iter().map(|&v| (v, random_rational(rng))).collect()
}

/// Evaluates `f` with `X_v` replaced by `point[v]`; `None` if the
/// denominator vanishes or a variable is missing.
pub fn specialize(f: &RatFunc, point: &BTreeMap<Vertex, Rational>) -> Option<Rational> {
    if f.variables().iter().any(|v| !point.contains_key(&v.0)) {
        return None;
    }
    f.eval(|v: VarId| point[&v.0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, Ring};
    use rand::SeedableRng;

    #[test]
    fn points_are_reproducible_and_in_range() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let p = random_point(&mut a, &[1, 2, 3]);
        assert_eq!(p, random_point(&mut b, &[1, 2, 3]));
        for q in p.values() {
            assert!(*q.numer() >= BigInt::from(1) && *q.numer() <= BigInt::from(MAX));
        }
    }

    #[test]
    fn evaluation() {
        let f = RatFunc::var(VarId(1)).one_plus().div(&RatFunc::var(VarId(2))).unwrap();
        let p: BTreeMap<Vertex, Rational> = [(1, Rational::from_i64(3)), (2, Rational::from_i64(2))].into();
        assert_eq!(specialize(&f, &p), Some(Rational::from_i64(2)));
        assert_eq!(specialize(&f, &BTreeMap::new()), None);
    }
}
