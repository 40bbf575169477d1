//! Dense univariate polynomials over the rationals in the indeterminate `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `q` with rational coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigRational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The indeterminate `q` itself.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    pub fn eval_int(&self, q: i64) -> BigRational {
        self.eval(&BigRational::from_integer(q.into()))
    }

    /// Value at an integer point, required to be an integer.
    pub fn eval_integer(&self, q: i64) -> Result<BigInt> {
        let v = self.eval_int(q);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NumericalityViolation(format!("{self} at q = {q} is {v}")))
        }
    }

    /// Divide by `q`, which must leave no remainder.
    pub fn div_q(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonExactDivision(format!("{self} is not divisible by q")));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer-valued test: a polynomial of degree `d` is numerical iff it takes
    /// integer values at `d + 1` consecutive integers.
    pub fn is_numerical(&self) -> bool {
        (0..=self.degree() as i64).all(|k| self.eval_int(k).is_integer())
    }

    /// The unique unit inverse, if this is a nonzero constant.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            Some(Self::constant(self.coeffs[0].recip()))
        } else {
            None
        }
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

/// Highest power first, terms joined by `+` or `-`, e.g. `1/2*q^2-1/2*q`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;
    fn add(self, o: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;
    fn sub(self, o: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;
    fn mul(self, o: &QPolynomial) -> QPolynomial {
        if self.is_zero() || o.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, o: QPolynomial) -> QPolynomial {
        &self + &o
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, o: QPolynomial) -> QPolynomial {
        &self - &o
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, o: QPolynomial) -> QPolynomial {
        &self * &o
    }
}
