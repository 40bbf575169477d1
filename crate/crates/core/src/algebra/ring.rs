//! Coefficient rings selectable at run time and their canonical elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::poly::{parse_rational, Poly};
use crate::algebra::CommRing;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    Integers,
    Rationals,
}

/// A coefficient ring: ℤ, ℚ, ℤ/m, ℚ[q], or a polynomial ring over ℤ or ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    Residue(u64),
    QPoly,
    MultiPoly { vars: Vec<String>, coeffs: CoeffKind },
}

/// How ring-functor values over a given coefficient ring are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientStrategy {
    /// The ring contains ℚ: compute directly.
    QAlgebra,
    /// Torsion-free: compute in the rationalization, then check membership.
    TorsionFree,
    /// Has torsion: lift to the torsion-free cover ℤ, compute, reduce.
    Quotient,
}

impl RingSpec {
    pub fn residue(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("residue modulus must be at least 2, got {m}")));
        }
        Ok(RingSpec::Residue(m))
    }

    pub fn multi_poly(vars: &[&str], coeffs: CoeffKind) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("bad variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable '{v}'")));
            }
        }
        if vars.is_empty() {
            return Err(Error::InvalidRing("polynomial ring needs at least one variable".into()));
        }
        Ok(RingSpec::MultiPoly { vars, coeffs })
    }

    /// Parses `Z`, `Q`, `Z/<m>`, `Q[q]`, `ZPoly(v1,...)`, `QPoly(v1,...)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => return Ok(RingSpec::Integers),
            "Q" => return Ok(RingSpec::Rationals),
            "Q[q]" => return Ok(RingSpec::QPoly),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m = m.parse::<u64>().map_err(|_| Error::InvalidRing(format!("bad modulus in '{s}'")))?;
            return Self::residue(m);
        }
        for (prefix, kind) in [("ZPoly(", CoeffKind::Integers), ("QPoly(", CoeffKind::Rationals)] {
            if let Some(rest) = s.strip_prefix(prefix) {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::InvalidRing(format!("unterminated variable list in '{s}'")))?;
                let vars: Vec<&str> = inner.split(',').map(str::trim).collect();
                return Self::multi_poly(&vars, kind);
            }
        }
        Err(Error::InvalidRing(format!("unknown ring '{s}'")))
    }

    pub fn arc(self) -> Arc<RingSpec> {
        Arc::new(self)
    }

    pub fn is_q_algebra(&self) -> bool {
        matches!(
            self,
            RingSpec::Rationals | RingSpec::QPoly | RingSpec::MultiPoly { coeffs: CoeffKind::Rationals, .. }
        )
    }

    pub fn is_torsion_free(&self) -> bool {
        !matches!(self, RingSpec::Residue(_))
    }

    /// Rings known to satisfy `a^p ≡ a (mod p)` for every prime `p`.
    /// This is a whitelist, not a semantic test.
    pub fn is_binomial(&self) -> bool {
        matches!(self, RingSpec::Integers | RingSpec::Rationals)
    }

    pub fn strategy(&self) -> CoefficientStrategy {
        if self.is_q_algebra() {
            CoefficientStrategy::QAlgebra
        } else if self.is_torsion_free() {
            CoefficientStrategy::TorsionFree
        } else {
            CoefficientStrategy::Quotient
        }
    }

    /// `R ⊗ ℚ` for torsion-free `R`; the torsion-free cover ℤ for residue rings.
    pub fn rationalization(&self) -> RingSpec {
        match self {
            RingSpec::Integers | RingSpec::Rationals => RingSpec::Rationals,
            RingSpec::Residue(_) => RingSpec::Rationals,
            RingSpec::QPoly => RingSpec::QPoly,
            RingSpec::MultiPoly { vars, .. } => {
                RingSpec::MultiPoly { vars: vars.clone(), coeffs: CoeffKind::Rationals }
            }
        }
    }

    /// The torsion-free ring that surjects onto this one (ℤ for residue rings).
    pub fn cover(&self) -> RingSpec {
        match self {
            RingSpec::Residue(_) => RingSpec::Integers,
            other => other.clone(),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Residue(m) => Some(*m),
            _ => None,
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        match self {
            RingSpec::QPoly => vec!["q".to_string()],
            RingSpec::MultiPoly { vars, .. } => vars.clone(),
            _ => Vec::new(),
        }
    }

    fn nvars(&self) -> usize {
        match self {
            RingSpec::QPoly => 1,
            RingSpec::MultiPoly { vars, .. } => vars.len(),
            _ => 0,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Residue(m) => write!(f, "Z/{m}"),
            RingSpec::QPoly => write!(f, "Q[q]"),
            RingSpec::MultiPoly { vars, coeffs } => {
                let p = match coeffs {
                    CoeffKind::Integers => "ZPoly",
                    CoeffKind::Rationals => "QPoly",
                };
                write!(f, "{p}({})", vars.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Payload {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(Poly),
}

/// An element of a [`RingSpec`] in canonical form.
#[derive(Clone, Debug)]
pub struct RingValue {
    spec: Arc<RingSpec>,
    payload: Payload,
}

impl PartialEq for RingValue {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.spec, &o.spec) || self.spec == o.spec) && self.payload == o.payload
    }
}

impl Eq for RingValue {}

fn reduce_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits u64")
}

impl RingValue {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        Self::from_bigint(spec, &BigInt::zero())
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::from_bigint(spec, &BigInt::one())
    }

    pub fn from_int(spec: &Arc<RingSpec>, n: i64) -> Self {
        Self::from_bigint(spec, &BigInt::from(n))
    }

    /// Image of an integer under the unique ring map ℤ → R.
    pub fn from_bigint(spec: &Arc<RingSpec>, n: &BigInt) -> Self {
        let payload = match &**spec {
            RingSpec::Integers => Payload::Int(n.clone()),
            RingSpec::Rationals => Payload::Rat(BigRational::from_integer(n.clone())),
            RingSpec::Residue(m) => Payload::Mod(reduce_mod(n, *m)),
            other => Payload::Poly(Poly::constant(other.nvars(), BigRational::from_integer(n.clone()))),
        };
        RingValue { spec: spec.clone(), payload }
    }

    /// Embeds a rational constant; fails when the ring cannot hold it.
    pub fn from_rational(spec: &Arc<RingSpec>, c: &BigRational) -> Result<Self> {
        if c.is_integer() {
            return Ok(Self::from_bigint(spec, &c.to_integer()));
        }
        match &**spec {
            RingSpec::Rationals => Ok(RingValue { spec: spec.clone(), payload: Payload::Rat(c.clone()) }),
            s if s.is_q_algebra() => Ok(RingValue {
                spec: spec.clone(),
                payload: Payload::Poly(Poly::constant(s.nvars(), c.clone())),
            }),
            s => Err(Error::NotInImage(format!("{c} is not an element of {s}"))),
        }
    }

    /// A named polynomial variable of the ring.
    pub fn var(spec: &Arc<RingSpec>, name: &str) -> Result<Self> {
        let names = spec.var_names();
        let k = names
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidRing(format!("{spec} has no variable '{name}'")))?;
        Ok(RingValue { spec: spec.clone(), payload: Payload::Poly(Poly::var(names.len(), k)) })
    }

    /// Builds a polynomial-ring element; fails on non-integral coefficients over ℤ.
    pub fn from_poly(spec: &Arc<RingSpec>, p: Poly) -> Result<Self> {
        match &**spec {
            RingSpec::QPoly | RingSpec::MultiPoly { .. } => {
                if p.nvars() != spec.nvars() {
                    return Err(Error::InvalidRing(format!("arity mismatch for {spec}")));
                }
                if !spec.is_q_algebra() && !p.is_integral() {
                    return Err(Error::NotInImage(format!("non-integral coefficients in {spec}")));
                }
                Ok(RingValue { spec: spec.clone(), payload: Payload::Poly(p) })
            }
            _ => {
                let c = p
                    .as_constant()
                    .ok_or_else(|| Error::InvalidRing(format!("{spec} has no variables")))?;
                Self::from_rational(spec, &c)
            }
        }
    }

    pub fn parse(spec: &Arc<RingSpec>, s: &str) -> Result<Self> {
        let s = s.trim();
        match &**spec {
            RingSpec::Integers | RingSpec::Residue(_) => {
                let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad integer '{s}'")))?;
                Ok(Self::from_bigint(spec, &n))
            }
            RingSpec::Rationals => {
                let (neg, body) = match s.strip_prefix('-') {
                    Some(b) => (true, b),
                    None => (false, s),
                };
                let c = parse_rational(body)?;
                Self::from_rational(spec, &if neg { -c } else { c })
            }
            _ => Self::from_poly(spec, Poly::parse(s, &spec.var_names())?),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.payload {
            Payload::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// The value as a rational number when it is a constant.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.payload {
            Payload::Int(n) => Some(BigRational::from_integer(n.clone())),
            Payload::Rat(r) => Some(r.clone()),
            Payload::Mod(_) => None,
            Payload::Poly(p) => p.as_constant(),
        }
    }

    /// Canonical lift of a residue to ℤ (in `[0, m)`), identity on other rings.
    pub fn lift(&self) -> RingValue {
        match &self.payload {
            Payload::Mod(r) => RingValue {
                spec: Arc::new(RingSpec::Integers),
                payload: Payload::Int(BigInt::from(*r)),
            },
            _ => self.clone(),
        }
    }

    /// Image in a residue ring of an integer value (ring map ℤ → ℤ/m).
    pub fn reduce(&self, target: &Arc<RingSpec>) -> Result<RingValue> {
        match (&self.payload, &**target) {
            (Payload::Int(n), RingSpec::Residue(_)) => Ok(Self::from_bigint(target, n)),
            (Payload::Mod(r), RingSpec::Residue(_)) if *self.spec == **target => {
                Ok(RingValue { spec: target.clone(), payload: Payload::Mod(*r) })
            }
            _ => Err(Error::RingMismatch(format!("cannot reduce {} into {}", self.spec, target))),
        }
    }

    /// Image in the rationalization `R ⊗ ℚ`.
    pub fn rationalize(&self) -> RingValue {
        let spec = Arc::new(self.spec.rationalization());
        let payload = match &self.payload {
            Payload::Int(n) => Payload::Rat(BigRational::from_integer(n.clone())),
            Payload::Mod(r) => Payload::Rat(BigRational::from_integer(BigInt::from(*r))),
            other => other.clone(),
        };
        RingValue { spec, payload }
    }

    /// Moves a value of `R ⊗ ℚ` (or any ring with the same shape) into `target`
    /// when it lies there.
    pub fn narrow(&self, target: &Arc<RingSpec>) -> Result<RingValue> {
        if *self.spec == **target {
            return Ok(RingValue { spec: target.clone(), payload: self.payload.clone() });
        }
        match &self.payload {
            Payload::Poly(p) => Self::from_poly(target, p.clone()),
            Payload::Rat(r) => Self::from_rational(target, r),
            Payload::Int(n) => Ok(Self::from_bigint(target, n)),
            Payload::Mod(_) => self.reduce(target),
        }
    }

    /// Whether this value of `R ⊗ ℚ` lies in `target`.
    pub fn lies_in(&self, target: &Arc<RingSpec>) -> bool {
        self.narrow(target).is_ok()
    }

    /// Exact quotient by a nonzero integer if it exists in the ring.
    /// Over ℤ/m it exists (uniquely) exactly when `n` is a unit.
    pub fn div_integer(&self, n: &BigInt) -> Option<RingValue> {
        assert!(!n.is_zero(), "division by zero");
        let payload = match &self.payload {
            Payload::Int(a) => {
                let (q, r) = a.div_rem(n);
                if !r.is_zero() {
                    return None;
                }
                Payload::Int(q)
            }
            Payload::Rat(a) => Payload::Rat(a / BigRational::from_integer(n.clone())),
            Payload::Mod(a) => {
                let m = self.spec.modulus().expect("residue spec");
                let inv = mod_inverse(&n.mod_floor(&BigInt::from(m)), m)?;
                Payload::Mod(((u128::from(*a) * u128::from(inv)) % u128::from(m)) as u64)
            }
            Payload::Poly(p) => {
                let d = BigRational::from_integer(n.clone());
                let out = p.div_rational(&d);
                if !self.spec.is_q_algebra() && !out.is_integral() {
                    return None;
                }
                Payload::Poly(out)
            }
        };
        Some(RingValue { spec: self.spec.clone(), payload })
    }

    /// Multiply by a rational constant, if the result exists in the ring.
    pub fn scale_rational(&self, c: &BigRational) -> Option<RingValue> {
        let num = self.ring_mul(&Self::from_bigint(&self.spec, c.numer()));
        if c.denom().is_one() {
            Some(num)
        } else {
            num.div_integer(c.denom())
        }
    }

    fn check_same(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.spec, &o.spec) || self.spec == o.spec,
            "ring mismatch: {} vs {}",
            self.spec,
            o.spec
        );
    }

    fn binop(&self, o: &Self, int: fn(&BigInt, &BigInt) -> BigInt, rat: fn(&BigRational, &BigRational) -> BigRational, poly: fn(&Poly, &Poly) -> Poly, modop: fn(u128, u128, u128) -> u128) -> Self {
        self.check_same(o);
        let payload = match (&self.payload, &o.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(int(a, b)),
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(rat(a, b)),
            (Payload::Mod(a), Payload::Mod(b)) => {
                let m = u128::from(self.spec.modulus().expect("residue spec"));
                Payload::Mod(modop(u128::from(*a), u128::from(*b), m) as u64)
            }
            (Payload::Poly(a), Payload::Poly(b)) => Payload::Poly(poly(a, b)),
            _ => unreachable!("payload kinds follow the spec"),
        };
        RingValue { spec: self.spec.clone(), payload }
    }
}

fn mod_inverse(a: &BigInt, m: u64) -> Option<u64> {
    let e = a.extended_gcd(&BigInt::from(m));
    if !e.gcd.is_one() {
        return None;
    }
    Some(reduce_mod(&e.x, m))
}

impl CommRing for RingValue {
    fn zero_like(&self) -> Self {
        Self::zero(&self.spec)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.spec)
    }
    fn ring_is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(a) => a.is_zero(),
            Payload::Rat(a) => a.is_zero(),
            Payload::Mod(a) => *a == 0,
            Payload::Poly(p) => p.is_zero(),
        }
    }
    fn ring_add(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a + b, |a, b| a + b, Poly::add, |a, b, m| (a + b) % m)
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a - b, |a, b| a - b, Poly::sub, |a, b, m| (a + m - b) % m)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a * b, |a, b| a * b, Poly::mul, |a, b, m| (a * b) % m)
    }
    fn ring_neg(&self) -> Self {
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(-a),
            Payload::Rat(a) => Payload::Rat(-a),
            Payload::Mod(a) => {
                let m = self.spec.modulus().expect("residue spec");
                Payload::Mod((m - a) % m)
            }
            Payload::Poly(p) => Payload::Poly(p.neg()),
        };
        RingValue { spec: self.spec.clone(), payload }
    }
    fn from_integer_like(&self, n: &BigInt) -> Self {
        Self::from_bigint(&self.spec, n)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let one = BigRational::one();
        match &self.payload {
            Payload::Int(a) if a.abs().is_one() => Some(self.clone()),
            Payload::Int(_) => None,
            Payload::Rat(a) if !a.is_zero() => Some(RingValue { spec: self.spec.clone(), payload: Payload::Rat(one / a) }),
            Payload::Mod(a) => {
                let m = self.spec.modulus().expect("residue spec");
                mod_inverse(&BigInt::from(*a), m).map(|i| RingValue { spec: self.spec.clone(), payload: Payload::Mod(i) })
            }
            Payload::Poly(p) => {
                let c = p.as_constant()?;
                if c.is_zero() {
                    return None;
                }
                let inv = one / c;
                Self::from_rational(&self.spec, &inv).ok()
            }
            _ => None,
        }
    }
}

/// Integers as decimal, rationals as `p/q`, residues by their representative
/// in `[0, m)`, polynomials as `+`/`-`-joined monomials `coef*v1^e1*v2^e2`.
impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Int(a) => write!(f, "{a}"),
            Payload::Rat(a) => write!(f, "{a}"),
            Payload::Mod(a) => write!(f, "{a}"),
            Payload::Poly(p) => write!(f, "{}", p.to_string_with(&self.spec.var_names())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar_round_trips() {
        for s in ["Z", "Q", "Z/8", "Q[q]", "ZPoly(x,y)", "QPoly(t)"] {
            assert_eq!(RingSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(RingSpec::parse("Z/1").is_err());
        assert!(RingSpec::parse("ZPoly(x,x)").is_err());
        assert!(RingSpec::parse("ZPoly()").is_err());
        assert!(RingSpec::parse("R").is_err());
    }

    #[test]
    fn strategies() {
        assert_eq!(RingSpec::Rationals.strategy(), CoefficientStrategy::QAlgebra);
        assert_eq!(RingSpec::QPoly.strategy(), CoefficientStrategy::QAlgebra);
        assert_eq!(RingSpec::Integers.strategy(), CoefficientStrategy::TorsionFree);
        assert_eq!(RingSpec::parse("ZPoly(x)").unwrap().strategy(), CoefficientStrategy::TorsionFree);
        assert_eq!(RingSpec::Residue(4).strategy(), CoefficientStrategy::Quotient);
    }

    #[test]
    fn residues_are_reduced() {
        let z8 = RingSpec::Residue(8).arc();
        let a = RingValue::from_int(&z8, -3);
        assert_eq!(a.to_string(), "5");
        assert_eq!(a.ring_mul(&a).to_string(), "1");
        assert_eq!(a.ring_neg().to_string(), "3");
        assert_eq!(a.div_integer(&BigInt::from(3)).unwrap().to_string(), "7");
        assert!(a.div_integer(&BigInt::from(2)).is_none());
    }

    #[test]
    fn integer_division_and_narrowing() {
        let z = RingSpec::Integers.arc();
        let six = RingValue::from_int(&z, 6);
        assert_eq!(six.div_integer(&BigInt::from(3)).unwrap(), RingValue::from_int(&z, 2));
        assert!(six.div_integer(&BigInt::from(4)).is_none());
        let half = six.rationalize().div_integer(&BigInt::from(4)).unwrap();
        assert_eq!(half.to_string(), "3/2");
        assert!(!half.lies_in(&z));
        let zp = RingSpec::parse("ZPoly(x,y)").unwrap().arc();
        let p = RingValue::parse(&zp, "x^2-x").unwrap();
        let q = p.rationalize().div_integer(&BigInt::from(2)).unwrap();
        assert_eq!(q.to_string(), "1/2*x^2-1/2*x");
        assert!(!q.lies_in(&zp));
        assert_eq!(q.ring_add(&q).narrow(&zp).unwrap(), p);
    }

    #[test]
    fn parsing_values() {
        let q = RingSpec::Rationals.arc();
        assert_eq!(RingValue::parse(&q, "-6/4").unwrap().to_string(), "-3/2");
        let z = RingSpec::Integers.arc();
        assert!(RingValue::parse(&z, "1/2").is_err());
        let qq = RingSpec::QPoly.arc();
        assert_eq!(RingValue::parse(&qq, "q^2/2").ok(), None);
        assert_eq!(RingValue::parse(&qq, "1/2*q^2+-1/2*q").unwrap().to_string(), "1/2*q^2-1/2*q");
    }
}
