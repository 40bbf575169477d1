//! Sparse multivariate polynomials with rational coefficients.
//!
//! A `Poly` has a fixed number of variables; names are supplied only when
//! printing or parsing. Terms are kept sorted by monomial with no zero
//! coefficients, so two polynomials are equal iff their representations are.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{CommRing, QPolynomial};
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, BigRational)>,
}

/// Graded order, larger total degree first, ties broken by reverse lexicographic
/// comparison of exponent vectors (so `x0` sorts before `x1`).
fn monomial_order(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// `a + b`, skipping normalisation when both are integers.
fn coeff_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn coeff_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_terms(nvars, vec![(vec![0; nvars], c)])
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::from_terms(nvars, vec![(m, BigRational::one())])
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, BigRational)>) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity mismatch");
            let slot = acc.entry(m).or_insert_with(BigRational::zero);
            *slot = coeff_add(slot, &c);
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| monomial_order(&a.0, &b.0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.iter().all(|&e| e == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, _)| m.iter().map(|&e| u64::from(e)).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), coeff_mul(a, c))).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    fn merge(&self, o: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, o.nvars, "polynomial arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let other = |c: &BigRational| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            match monomial_order(&self.terms[i].0, &o.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((o.terms[j].0.clone(), other(&o.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = coeff_add(&self.terms[i].1, &other(&o.terms[j].1));
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (m.clone(), other(c))));
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "polynomial arity mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if self.is_integral() && o.is_integral() {
            return self.mul_packed(o).unwrap_or_else(|| self.mul_integral(o));
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        let mut m = vec![0u32; self.nvars];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                for k in 0..self.nvars {
                    m[k] = ma[k] + mb[k];
                }
                let c = coeff_mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = coeff_add(slot, &c),
                    None => {
                        acc.insert(m.clone(), c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Integer product accumulated in a dense array over the exponent box,
    /// with machine-sized coefficients; `None` when either does not fit.
    fn mul_packed(&self, o: &Self) -> Option<Self> {
        let n = self.nvars;
        let degree = |p: &Self, k: usize| p.terms.iter().map(|(m, _)| m[k] as usize).max().unwrap_or(0);
        let dims: Vec<usize> = (0..n).map(|k| degree(self, k) + degree(o, k) + 1).collect();
        let size = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))?;
        if size > 4 * self.terms.len() * o.terms.len() + 4096 {
            return None;
        }
        let index = |m: &Monomial| m.iter().zip(&dims).fold(0usize, |acc, (&e, &d)| acc * d + e as usize);
        let small = |p: &Self| -> Option<Vec<(usize, i128)>> {
            p.terms.iter().map(|(m, c)| Some((index(m), i128::try_from(c.numer()).ok()?))).collect()
        };
        let (a, b) = (small(self)?, small(o)?);
        let mut acc = vec![0i128; size];
        for &(ma, ca) in &a {
            for &(mb, cb) in &b {
                let slot = &mut acc[ma + mb];
                *slot = slot.checked_add(ca.checked_mul(cb)?)?;
            }
        }
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        for (key, &c) in acc.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mut m = vec![0u32; n];
            let mut rest = key;
            for k in (0..n).rev() {
                m[k] = (rest % dims[k]) as u32;
                rest /= dims[k];
            }
            terms.push((m, BigRational::from_integer(BigInt::from(c))));
        }
        terms.sort_unstable_by(|a, b| monomial_order(&a.0, &b.0));
        Some(Poly { nvars: n, terms })
    }

    /// Product of two polynomials with integer coefficients, avoiding rational normalisation.
    fn mul_integral(&self, o: &Self) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        let mut m = vec![0u32; self.nvars];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                for k in 0..self.nvars {
                    m[k] = ma[k] + mb[k];
                }
                let c = ca.numer() * cb.numer();
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m.clone(), c);
                    }
                }
            }
        }
        let mut terms: Vec<_> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, BigRational::from_integer(c))).collect();
        terms.sort_by(|a, b| monomial_order(&a.0, &b.0));
        Poly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient by a nonzero rational.
    pub fn div_rational(&self, d: &BigRational) -> Self {
        self.scale(&d.recip())
    }

    /// Re-embed into a ring with more variables; variable `i` maps to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = vec![0; nvars];
                for (i, &e) in m.iter().enumerate() {
                    out[map[i]] += e;
                }
                (out, c.clone())
            })
            .collect();
        Self::from_terms(nvars, terms)
    }

    /// Substitutes `c` for variable `var`, removing it.
    pub fn specialize(&self, var: usize, c: &BigRational) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .map(|(m, coef)| {
                let mut rest = m.clone();
                let e = rest.remove(var);
                (rest, coef * num_traits::pow::pow(c.clone(), e as usize))
            })
            .collect();
        Self::from_terms(self.nvars - 1, terms)
    }

    /// Groups terms by their exponents outside `var`, giving each group's
    /// coefficient as a univariate polynomial in `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<(Monomial, QPolynomial)> {
        let mut groups: HashMap<Monomial, Vec<BigRational>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(var) as usize;
            let slot = groups.entry(rest).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, BigRational::zero());
            }
            slot[e] += c;
        }
        let mut out: Vec<_> = groups.into_iter().map(|(m, cs)| (m, QPolynomial::new(cs))).collect();
        out.sort_by(|a, b| monomial_order(&a.0, &b.0));
        out
    }

    /// Evaluate in an arbitrary commutative ring. `embed` maps each rational
    /// coefficient into the target ring and may refuse (non-integral
    /// coefficient in a ring without division, for instance).
    pub fn eval<R: CommRing>(
        &self,
        values: &[R],
        zero: &R,
        embed: &dyn Fn(&BigRational) -> Result<R>,
    ) -> Result<R> {
        assert_eq!(values.len(), self.nvars, "evaluation arity mismatch");
        if self.terms.is_empty() {
            return Ok(zero.clone());
        }
        // Cache powers per variable, grown on demand.
        let mut powers: Vec<Vec<R>> = values.iter().map(|v| vec![v.one_like(), v.clone()]).collect();
        // Visit monomials in lexicographic order so consecutive terms share
        // leading factors; `stack[i]` is the product of the first `i + 1` factors.
        let sparse: Vec<Vec<(usize, usize)>> = self
            .terms
            .iter()
            .map(|(m, _)| m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k, e as usize)).collect())
            .collect();
        let mut order: Vec<usize> = (0..self.terms.len()).collect();
        order.sort_by(|&a, &b| sparse[a].cmp(&sparse[b]));
        let one = zero.one_like();
        let mut stack: Vec<R> = Vec::new();
        let mut prev: &[(usize, usize)] = &[];
        let mut acc = zero.clone();
        for &t in &order {
            let factors = &sparse[t];
            let keep = prev.iter().zip(factors).take_while(|(a, b)| a == b).count();
            stack.truncate(keep);
            for &(k, e) in &factors[keep..] {
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().ring_mul(&values[k]);
                    powers[k].push(next);
                }
                let next = match stack.last() {
                    Some(p) => p.ring_mul(&powers[k][e]),
                    None => powers[k][e].clone(),
                };
                stack.push(next);
            }
            prev = factors;
            let mono = stack.last().unwrap_or(&one);
            let c = &self.terms[t].1;
            let term = if c.is_one() { mono.clone() } else { embed(c)?.ring_mul(mono) };
            acc = acc.ring_add(&term);
        }
        Ok(acc)
    }

    /// Evaluate with all variables set to rationals.
    pub fn eval_rational(&self, values: &[BigRational]) -> BigRational {
        self.eval(values, &BigRational::zero(), &|c| Ok(c.clone()))
            .expect("rational evaluation is total")
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "name count mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                s.push('-');
            } else if idx > 0 {
                s.push('+');
            }
            let a = c.abs();
            let has_vars = m.iter().any(|&e| e > 0);
            let mut parts: Vec<String> = Vec::new();
            if !has_vars || !a.is_one() {
                parts.push(a.to_string());
            }
            for (k, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(names[k].clone()),
                    _ => parts.push(format!("{}^{e}", names[k])),
                }
            }
            let _ = write!(s, "{}", parts.join("*"));
        }
        s
    }

    /// Parse the textual form produced by [`Poly::to_string_with`]: monomials
    /// `coef*v1^e1*v2^e2` joined by `+`/`-`. Coefficients may be omitted or
    /// written as fractions `p/q`; a leading sign is allowed.
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let nvars = names.len();
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse(format!("empty polynomial '{s}'")));
        }
        // Split into signed chunks; consecutive signs combine ("+-3" is "-3").
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for ch in src.chars() {
            if ch == '+' || ch == '-' {
                if !cur.is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                    neg = false;
                }
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        chunks.push((neg, cur));
        let mut terms = Vec::new();
        for (neg, chunk) in chunks {
            let mut coef = BigRational::one();
            let mut mono = vec![0u32; nvars];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{s}'")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= parse_rational(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                    ),
                    None => (factor, 1),
                };
                let k = names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                mono[k] += exp;
            }
            if neg {
                coef = -coef;
            }
            terms.push((mono, coef));
        }
        Ok(Self::from_terms(nvars, terms))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl CommRing for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars)
    }
    fn ring_is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn ring_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn from_integer_like(&self, n: &BigInt) -> Self {
        Poly::constant(self.nvars, BigRational::from_integer(n.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn integrality_examples() {
        let n = names(&["x", "y"]);
        assert!(Poly::parse("x^2*y-3*y", &n).unwrap().is_integral());
        assert!(!Poly::parse("1/2*x^2-1/2*x", &n).unwrap().is_integral());
    }

    #[test]
    fn print_parse_round_trip() {
        let n = names(&["a", "b"]);
        for s in ["a^2*b+-3*b+7", "1/2*a-1/2", "-a*b", "0", "3*a^3*b^2-a+1/3"] {
            let p = Poly::parse(s, &n).unwrap();
            let back = Poly::parse(&p.to_string_with(&n), &n).unwrap();
            assert_eq!(p, back, "{s}");
        }
        assert_eq!(Poly::parse("b+a", &n).unwrap().to_string_with(&n), "a+b");
        assert_eq!(Poly::parse("1-a^2", &n).unwrap().to_string_with(&n), "-a^2+1");
    }

    #[test]
    fn arithmetic() {
        let n = names(&["x", "y"]);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).pow(3);
        assert_eq!(p.to_string_with(&n), "x^3+3*x^2*y+3*x*y^2+y^3");
        assert!(p.sub(&p).is_zero());
        let v = p.eval_rational(&[BigRational::from_integer(2.into()), BigRational::one()]);
        assert_eq!(v, BigRational::from_integer(27.into()));
    }

    #[test]
    fn parse_rejects_garbage() {
        let n = names(&["x"]);
        assert!(Poly::parse("z", &n).is_err());
        assert!(Poly::parse("", &n).is_err());
        assert!(Poly::parse("1/0", &n).is_err());
        assert!(Poly::parse("x^^2", &n).is_err());
    }
}
