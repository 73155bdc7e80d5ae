//! Rational functions `num / den` over the integers.
//!
//! Normal form: the denominator has no monomial content (monomials are units
//! in the Laurent ring and are moved to the numerator), its integer content is
//! shared with the numerator only up to the gcd already divided out, and its
//! leading coefficient is positive. Equality is decided by cross
//! multiplication, so common polynomial factors never affect correctness.
//! Arithmetic additionally cancels polynomial gcds when the heuristic gcd
//! succeeds cheaply; [`RatFunc::reduce`] forces an attempt.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::gcd::poly_gcd;
use super::poly::{LaurentPoly, Monomial, VarId};
use super::{Field, Ring};

// Skip gcd attempts when operands are larger than this many terms combined.
const GCD_TERM_LIMIT: usize = 4000;

#[derive(Clone, Serialize, Deserialize)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl RatFunc {
    /// `num / den`; `None` if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn var(v: VarId) -> Self {
        LaurentPoly::var(v).into()
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::monomial(m).into()
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::constant(c).into()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: LaurentPoly::one(),
            };
        }
        // move the monomial part of den to the numerator
        let md = den.monomial_content();
        let (mut num, mut den) = if md.is_one() {
            (num, den)
        } else {
            (num.mul_monomial(&md.inv()), den.mul_monomial(&md.inv()))
        };
        if den.leading_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        // integer content
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.exact_div_scalar(&g);
            den = den.exact_div_scalar(&g);
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        // exact division shortcut
        if den.len() <= num.len() && num.len() <= GCD_TERM_LIMIT {
            if let Some(q) = num.exact_div(&den) {
                return RatFunc {
                    num: q,
                    den: LaurentPoly::one(),
                };
            }
        }
        RatFunc { num, den }
    }

    /// Cancels the polynomial gcd of numerator and denominator when the
    /// heuristic gcd succeeds.
    pub fn reduce(&self) -> RatFunc {
        if self.den.is_one() || self.num.is_zero() {
            return self.clone();
        }
        let Some(g) = poly_gcd(&self.num, &self.den) else {
            return self.clone();
        };
        if g.len() <= 1 {
            return self.clone();
        }
        match (self.num.exact_div(&g), self.den.exact_div(&g)) {
            (Some(n), Some(d)) => Self::normalized(n, d),
            _ => self.clone(),
        }
    }

    fn try_cancel(a: &LaurentPoly, b: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
        if b.len() <= 1 || a.len() + b.len() > GCD_TERM_LIMIT {
            return None;
        }
        let g = poly_gcd(a, b)?;
        if g.len() <= 1 {
            return None;
        }
        Some((a.exact_div(&g)?, b.exact_div(&g)?))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    /// Substitutes field values for every variable.
    pub fn eval<F: Field>(&self, mut value: impl FnMut(VarId) -> F) -> Option<F> {
        let n = self.num.eval(&mut value);
        let d = self.den.eval(&mut value);
        n.div(&d)
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort();
        v.dedup();
        v
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    fn one() -> Self {
        LaurentPoly::one().into()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: LaurentPoly::one(),
                };
            }
            return match Self::try_cancel(&num, &self.den) {
                Some((n, d)) => Self::normalized(n, d),
                None => Self::normalized(num, self.den.clone()),
            };
        }
        if o.den.is_one() {
            return Self::normalized(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(o.num.add(&self.num.mul(&o.den)), o.den.clone());
        }
        // a/b + c/d with g = gcd(b, d)
        if let Some((b1, d1)) = Self::try_cancel(&self.den, &o.den) {
            let g = self.den.exact_div(&b1).unwrap_or_else(LaurentPoly::one);
            let num = self.num.mul(&d1).add(&o.num.mul(&b1));
            let den = b1.mul(&d1).mul(&g);
            return match Self::try_cancel(&num, &den) {
                Some((n, d)) => Self::normalized(n, d),
                None => Self::normalized(num, den),
            };
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        Self::normalized(num, den)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: self.num.mul(&o.num),
                den: LaurentPoly::one(),
            };
        }
        // (a/b)(c/d): cancel a against d and c against b first
        let (a, d) = Self::try_cancel(&self.num, &o.den)
            .unwrap_or_else(|| (self.num.clone(), o.den.clone()));
        let (c, b) = Self::try_cancel(&o.num, &self.den)
            .unwrap_or_else(|| (o.num.clone(), self.den.clone()));
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn from_bigint(c: &BigInt) -> Self {
        LaurentPoly::constant(c.clone()).into()
    }

    fn pow(&self, k: u32) -> Self {
        RatFunc {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
}

impl RatFunc {
    /// Convenience: `1 + self`.
    pub fn one_plus(&self) -> RatFunc {
        Ring::add(&RatFunc::one(), self)
    }

    pub fn is_constant_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

}

impl Default for RatFunc {
    fn default() -> Self {
        <RatFunc as Ring>::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> RatFunc {
        RatFunc::var(VarId(i))
    }

    #[test]
    fn field_ops() {
        let a = x(1).add(&RatFunc::one());
        let b = x(2).inv().unwrap();
        let c = a.mul(&b);
        assert_eq!(c.mul(&x(2)), a);
        let q = a.div(&a).unwrap();
        assert!(q.is_one());
        assert!(RatFunc::zero().inv().is_none());
    }

    #[test]
    fn cancellation_in_arithmetic() {
        let a = x(1).add(&x(2));
        let b = x(1).sub(&x(2));
        let f = a.mul(&b.inv().unwrap());
        let g = b.mul(&a.inv().unwrap());
        let p = f.mul(&g);
        assert!(p.is_one());
        assert!(p.den().is_one());
    }

    #[test]
    fn normal_form_moves_monomials() {
        let f = RatFunc::new(
            LaurentPoly::var(VarId(1)),
            LaurentPoly::var(VarId(2)).mul(&LaurentPoly::constant(-3)),
        )
        .unwrap();
        assert!(f.den().as_constant().is_some());
    }

    #[test]
    fn equality_is_cross_multiplication() {
        let a = x(1).add(&RatFunc::one());
        let unreduced = RatFunc::new(
            a.num().mul(&LaurentPoly::var(VarId(3)).add(&LaurentPoly::one())),
            LaurentPoly::var(VarId(3)).add(&LaurentPoly::one()),
        )
        .unwrap();
        assert_eq!(unreduced, a);
    }
}
