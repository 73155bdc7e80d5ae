//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Opaque variable identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

/// A Laurent monomial: sorted `(variable, nonzero exponent)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "BTreeMap<VarId, i32>", from = "BTreeMap<VarId, i32>")]
pub struct Monomial(SmallVec<[(VarId, i32); 6]>);

impl From<Monomial> for BTreeMap<VarId, i32> {
    fn from(m: Monomial) -> Self {
        m.0.into_iter().collect()
    }
}

impl From<BTreeMap<VarId, i32>> for Monomial {
    fn from(m: BTreeMap<VarId, i32>) -> Self {
        Monomial::from_pairs(m)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { format!("{v}") } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Self {
        let mut acc: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Divides out exponent `e` of `v` (i.e. returns `self / v^e`).
    fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    /// Degree in the lexicographic monomial order with smaller ids more significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// `self / other` if all resulting exponents are nonnegative.
    fn divides_into(&self, other: &Monomial) -> Option<Monomial> {
        let q = other.mul(&self.inv());
        if q.0.iter().all(|&(_, e)| e > 0) {
            Some(q)
        } else {
            None
        }
    }

    /// Componentwise minimum of exponents (treating absent as 0).
    fn meet(&self, other: &Monomial) -> Monomial {
        let mut acc: BTreeMap<VarId, i32> = BTreeMap::new();
        for &(v, e) in self.0.iter() {
            if e < 0 {
                acc.insert(v, e);
            }
        }
        for &(v, e) in other.0.iter() {
            if e < 0 {
                let entry = acc.entry(v).or_insert(0);
                *entry = (*entry).min(e);
            }
        }
        // positive parts shared by both
        for &(v, e) in self.0.iter() {
            if e > 0 {
                let f = other.exponent(v);
                if f > 0 {
                    acc.insert(v, e.min(f));
                }
            }
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }
}

/// A Laurent polynomial: canonical map from monomials to nonzero integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in it {
            *terms.entry(m).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The constant `c` if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(c, m)` if this polynomial is a single term.
    pub fn as_term(&self) -> Option<(BigInt, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add(&self, other: &Self) -> Self {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            match terms.get_mut(m) {
                Some(d) => {
                    *d += c;
                    if d.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return other.mul_term(c, m);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms.iter().next().unwrap();
            return self.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(d) => *d += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(&BigInt::one(), m)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Gcd of the integer coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The largest monomial dividing every term (exponentwise minimum).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for m in it {
            acc = acc.meet(m);
        }
        acc
    }

    pub fn exact_div_scalar(&self, c: &BigInt) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d / c)).collect(),
        }
    }

    /// Leading term in the lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// The sign of the leading coefficient.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    /// Maximum exponent of `v` over all terms (`None` for zero).
    pub fn max_degree(&self, v: VarId) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn min_degree(&self, v: VarId) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// Max over terms of `sum exponent * weight`.
    pub fn max_pairing(&self, weight: impl Fn(VarId) -> i64) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| m.0.iter().map(|&(v, e)| e as i64 * weight(v)).sum::<i64>())
            .max()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&(_, e)| e >= 0))
    }

    /// Exact division in the Laurent ring: `Some(q)` with `q * d == self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, m)) = d.as_term() {
            let mut terms = BTreeMap::new();
            for (k, a) in &self.terms {
                let (q, r) = a.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(k.mul(&m.inv()), q);
            }
            return Some(LaurentPoly { terms });
        }
        // Shift both to honest polynomials, then run the division algorithm.
        let ma = self.monomial_content();
        let md = d.monomial_content();
        let a = self.mul_monomial(&ma.inv());
        let b = d.mul_monomial(&md.inv());
        let q = poly_exact_div(&a, &b)?;
        Some(q.mul_monomial(&ma.mul(&md.inv())))
    }

    /// Substitutes `v = c` (an integer), leaving other variables symbolic.
    pub fn eval_var_int(&self, v: VarId, c: &BigInt) -> LaurentPoly {
        let mut cache: HashMap<i32, BigInt> = HashMap::new();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, a) in &self.terms {
            let e = m.exponent(v);
            debug_assert!(e >= 0);
            let p = cache
                .entry(e)
                .or_insert_with(|| num_traits::pow(c.clone(), e as usize))
                .clone();
            *acc.entry(m.without(v)).or_insert_with(BigInt::zero) += a * p;
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Evaluates with every variable replaced by an element of a field.
    pub fn eval<F: super::Field>(&self, value: &mut impl FnMut(VarId) -> F) -> F {
        let mut cache: HashMap<(VarId, i32), F> = HashMap::new();
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_bigint(c);
            for &(v, e) in m.0.iter() {
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let base = value(v);
                        let p = if e >= 0 {
                            base.pow(e as u32)
                        } else {
                            base.inv().expect("evaluation at a zero of a Laurent variable").pow((-e) as u32)
                        };
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                t = t.mul(&p);
            }
            total = total.add(&t);
        }
        total
    }

    pub fn map_coefficients(&self, f: impl Fn(&BigInt) -> BigInt) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// Division algorithm for polynomials (nonnegative exponents) in lex order.
/// Returns `None` unless `b` divides `a` exactly.
fn poly_exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (lm_b, lc_b) = b.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut r = a.clone();
    let mut q: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    // Every step removes the current leading term of r, so the loop ends.
    let budget = a.len().saturating_mul(b.len()).saturating_add(a.len()) * 4 + 64;
    let mut steps = 0usize;
    while !r.is_zero() {
        steps += 1;
        if steps > budget.max(100_000) {
            return None;
        }
        let (lm_r, lc_r) = r.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let qm = lm_b.divides_into(&lm_r).or_else(|| lm_r.eq(&lm_b).then(Monomial::one))?;
        let (qc, rem) = lc_r.div_rem(&lc_b);
        if !rem.is_zero() {
            return None;
        }
        r = r.sub(&b.mul_term(&qc, &qm));
        *q.entry(qm).or_insert_with(BigInt::zero) += qc;
    }
    q.retain(|_, c| !c.is_zero());
    Some(LaurentPoly { terms: q })
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coefficient: String,
    exponents: BTreeMap<String, i32>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord {
                coefficient: c.to_string(),
                exponents: m.0.iter().map(|&(v, e)| (v.0.to_string(), e)).collect(),
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut terms = Vec::new();
        for r in records {
            let c: BigInt = r.coefficient.parse().map_err(D::Error::custom)?;
            let mut pairs = Vec::new();
            for (k, e) in r.exponents {
                let id: u32 = k.parse().map_err(D::Error::custom)?;
                pairs.push((VarId(id), e));
            }
            terms.push((Monomial::from_pairs(pairs), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> LaurentPoly {
        LaurentPoly::var(VarId(i))
    }

    #[test]
    fn arithmetic_basics() {
        let a = x(1).add(&LaurentPoly::one());
        let b = x(1).sub(&LaurentPoly::one());
        let p = a.mul(&b);
        assert_eq!(p, x(1).mul(&x(1)).sub(&LaurentPoly::one()));
        assert!(p.sub(&p).is_zero());
        assert_eq!(a.pow(3).len(), 4);
    }

    #[test]
    fn laurent_inverse_monomial() {
        let m = Monomial::var_pow(VarId(2), -3);
        let p = LaurentPoly::monomial(m.clone()).mul_monomial(&m.inv());
        assert!(p.is_one());
    }

    #[test]
    fn exact_division() {
        let a = x(1).add(&x(2));
        let b = x(1).sub(&x(3)).add(&LaurentPoly::constant(2));
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        assert_eq!(a.exact_div(&b), None);
        let shifted = p.mul_monomial(&Monomial::var_pow(VarId(1), -2));
        assert_eq!(
            shifted.exact_div(&a),
            Some(b.mul_monomial(&Monomial::var_pow(VarId(1), -2)))
        );
    }

    #[test]
    fn monomial_content_and_lex() {
        let p = LaurentPoly::monomial(Monomial::from_pairs([(VarId(1), 2), (VarId(2), -1)]))
            .add(&LaurentPoly::monomial(Monomial::from_pairs([(VarId(1), 1)])));
        assert_eq!(
            p.monomial_content(),
            Monomial::from_pairs([(VarId(1), 1), (VarId(2), -1)])
        );
        let a = Monomial::var(VarId(1));
        let b = Monomial::var_pow(VarId(2), 5);
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
    }

    #[test]
    fn serde_round_trip() {
        let p = x(3).mul(&x(4)).sub(&LaurentPoly::constant(7));
        let s = serde_json::to_string(&p).unwrap();
        let q: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
