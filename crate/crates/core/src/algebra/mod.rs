//! Exact coefficient arithmetic.

mod arith;
mod matrix;
mod poly;
mod qpoly;
mod ring;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use arith::{divisors, gcd, lcm, mobius};
pub use matrix::UniTriMatrix;
pub use poly::{Monomial, Poly};
pub use qpoly::QPolynomial;
pub use ring::{CoeffKind, CoefficientStrategy, RingSpec, RingValue};

/// A commutative ring whose elements carry enough context to build constants.
pub trait CommRing: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add(&self, o: &Self) -> Self;
    fn ring_sub(&self, o: &Self) -> Self;
    fn ring_mul(&self, o: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn from_integer_like(&self, n: &BigInt) -> Self;

    fn ring_pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.ring_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.ring_mul(&base);
            }
        }
        acc
    }

    fn unit_inverse(&self) -> Option<Self> {
        None
    }
}

impl CommRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_integer_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl CommRing for QPolynomial {
    fn zero_like(&self) -> Self {
        QPolynomial::zero()
    }
    fn one_like(&self) -> Self {
        QPolynomial::one()
    }
    fn ring_is_zero(&self) -> bool {
        QPolynomial::is_zero(self)
    }
    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_integer_like(&self, n: &BigInt) -> Self {
        QPolynomial::constant(BigRational::from_integer(n.clone()))
    }
    fn unit_inverse(&self) -> Option<Self> {
        QPolynomial::unit_inverse(self)
    }
}
