//! Exact arithmetic: Laurent polynomials, their fraction field, matrices over
//! commutative rings and fields, and max-plus tropical evaluation.
//!
//! Everything downstream is written against the [`Ring`] and [`Field`]
//! traits so the same code runs symbolically (over [`RatFunc`]) and at exact
//! rational specializations (over [`Rational`]).

mod gcd;
mod matrix;
mod poly;
mod ratfunc;
mod tropical;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use gcd::poly_gcd;
pub use matrix::{
    gauss_decompose, generator, lift_weyl, lift_word, Generator, Matrix, RFMatrix,
};
pub use poly::{LaurentPoly, Monomial, VarId};
pub use ratfunc::RatFunc;
pub use tropical::{top_degree, trop_eval, TropicalPoint};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("not Gaussian decomposable: leading principal minor of size {k} vanishes")]
    NotGaussianDecomposable { k: usize },
    #[error("zero function has no tropical value")]
    ZeroFunction,
    #[error("division by zero")]
    DivisionByZero,
    #[error("h-generator needs a nonzero value")]
    ZeroValue,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_bigint(c: &BigInt) -> Self;

    fn from_i64(c: i64) -> Self {
        Self::from_bigint(&BigInt::from(c))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// A field: a ring with (partial) inversion.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// `self^k` for any integer `k`.
    fn powi(&self, k: i32) -> Option<Self> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.inv().map(|i| i.pow((-k) as u32))
        }
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
    fn from_bigint(c: &BigInt) -> Self {
        LaurentPoly::constant(c.clone())
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
    fn pow(&self, k: u32) -> Self {
        LaurentPoly::pow(self, k)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_bigint(c: &BigInt) -> Self {
        Rational::from_integer(c.clone())
    }
    fn pow(&self, k: u32) -> Self {
        num_traits::Pow::pow(self, k)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// True when every coefficient of the numerator and denominator is
/// nonnegative after a sign normalization, i.e. the function is visibly
/// subtraction-free.
pub fn is_visibly_positive(f: &RatFunc) -> bool {
    let n = f.num();
    let d = f.den();
    (n.has_nonnegative_coefficients() && d.has_nonnegative_coefficients())
        || (n.neg().has_nonnegative_coefficients() && d.neg().has_nonnegative_coefficients())
}
