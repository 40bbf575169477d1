//! Curves `γ(t) = Σ_{k=1}^N c_k t^k` under the formal group law `F_q`, and
//! the Artin-Hasse map from `W^q` on `{1..N}`.

use std::fmt;
use std::sync::Arc;

use super::ops::q_witt_op;
use super::QParam;
use crate::algebra::{CommRing, RingSpec, RingValue};
use crate::burnside::{Flavor, Op};
use crate::cyclic::{CyclicVector, TruncationSet};
use crate::error::{Error, Result};

/// A power series without constant term, truncated above `t^N`.
#[derive(Clone, PartialEq)]
pub struct TruncatedCurve {
    q: QParam,
    ring: Arc<RingSpec>,
    /// `coeffs[k]` is the coefficient of `t^{k+1}`.
    coeffs: Vec<RingValue>,
}

impl fmt::Debug for TruncatedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve[q={}, N={} over {}]({})", self.q, self.coeffs.len(), self.ring, self.to_strings().join(", "))
    }
}

fn series_mul(a: &[RingValue], b: &[RingValue], zero: &RingValue) -> Vec<RingValue> {
    // Both sides omit the constant term; index k stands for t^{k+1}.
    let n = a.len();
    let mut out = vec![zero.clone(); n];
    for (i, x) in a.iter().enumerate() {
        if x.ring_is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n.saturating_sub(i + 1)) {
            out[i + j + 1] = out[i + j + 1].ring_add(&x.ring_mul(y));
        }
    }
    out
}

impl TruncatedCurve {
    pub fn new(q: QParam, ring: &Arc<RingSpec>, coeffs: Vec<RingValue>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidTruncation("a curve needs at least the t coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.spec() != &**ring) {
            return Err(Error::RingMismatch(format!("coefficient {c} is over {}, expected {ring}", c.spec())));
        }
        q.value(ring)?;
        Ok(TruncatedCurve { q, ring: ring.clone(), coeffs })
    }

    pub fn parse(q: QParam, ring: &Arc<RingSpec>, coeffs: &[&str]) -> Result<Self> {
        let values = coeffs.iter().map(|s| RingValue::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(q, ring, values)
    }

    pub fn zero(q: QParam, ring: &Arc<RingSpec>, n: usize) -> Self {
        TruncatedCurve { q, ring: ring.clone(), coeffs: vec![RingValue::zero(ring); n] }
    }

    /// `c·t^k`.
    fn monomial(q: QParam, ring: &Arc<RingSpec>, n: usize, k: usize, c: RingValue) -> Self {
        let mut out = Self::zero(q, ring, n);
        out.coeffs[k - 1] = c;
        out
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[RingValue] {
        &self.coeffs
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    fn qv(&self) -> RingValue {
        self.q.value(&self.ring).expect("checked at construction")
    }

    fn expect_compatible(&self, o: &Self) -> Result<()> {
        if self.q != o.q || self.coeffs.len() != o.coeffs.len() {
            return Err(Error::ShapeMismatch("curves differ in q or truncation degree".into()));
        }
        if self.ring != o.ring {
            return Err(Error::RingMismatch(format!("rings differ: {} and {}", self.ring, o.ring)));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<RingValue>) -> Self {
        TruncatedCurve { q: self.q, ring: self.ring.clone(), coeffs }
    }

    /// `F_q(γ₁, γ₂) = γ₁ + γ₂ - q·γ₁·γ₂`.
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.expect_compatible(o)?;
        let zero = RingValue::zero(&self.ring);
        let qv = self.qv();
        let prod = series_mul(&self.coeffs, &o.coeffs, &zero);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .zip(&prod)
            .map(|((a, b), p)| a.ring_add(b).ring_sub(&qv.ring_mul(p)))
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    /// The `F_q`-inverse `-γ/(1 - qγ) = -γ·Σ (qγ)^k`.
    pub fn neg(&self) -> Self {
        let zero = RingValue::zero(&self.ring);
        let qv = self.qv();
        let qg: Vec<RingValue> = self.coeffs.iter().map(|c| qv.ring_mul(c)).collect();
        let mut acc = self.coeffs.clone();
        let mut term = self.coeffs.clone();
        for _ in 1..self.coeffs.len() {
            term = series_mul(&term, &qg, &zero);
            acc = acc.iter().zip(&term).map(|(a, b)| a.ring_add(b)).collect();
        }
        self.with_coeffs(acc.iter().map(CommRing::ring_neg).collect())
    }

    /// Product transported from `W^q` through the Artin-Hasse bijection.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.expect_compatible(o)?;
        let a = artin_hasse_inv(self)?;
        let b = artin_hasse_inv(o)?;
        artin_hasse(self.q, &q_witt_op(self.q, Op::Mul, &a, Some(&b))?)
    }
}

fn full_range(n: usize) -> Result<Arc<TruncationSet>> {
    TruncationSet::new(&(1..=n as u64).collect::<Vec<_>>())
}

fn expect_full(a: &CyclicVector) -> Result<usize> {
    let n = a.len();
    if a.truncation().members().iter().enumerate().any(|(i, &m)| m != i as u64 + 1) {
        return Err(Error::InvalidTruncation("the Artin-Hasse map needs T = {1, ..., N}".into()));
    }
    Ok(n)
}

/// `H^q(a) = Σ^{F_q}_n a_n·t^n`.
pub fn artin_hasse(q: QParam, a: &CyclicVector) -> Result<TruncatedCurve> {
    if a.flavor() != Flavor::Witt {
        return Err(Error::ShapeMismatch(format!("expected a Witt vector, got {}", a.flavor())));
    }
    let n = expect_full(a)?;
    let ring = a.ring();
    let mut acc = TruncatedCurve::new(q, ring, vec![RingValue::zero(ring); n])?;
    for (k, c) in a.components().iter().enumerate() {
        if !c.ring_is_zero() {
            acc = acc.add(&TruncatedCurve::monomial(q, ring, n, k + 1, c.clone()))?;
        }
    }
    Ok(acc)
}

/// The Witt vector whose Artin-Hasse curve is `γ`, solved one degree at a time.
pub fn artin_hasse_inv(g: &TruncatedCurve) -> Result<CyclicVector> {
    let n = g.degree();
    let ring = g.ring();
    let t = full_range(n)?;
    let mut a = vec![RingValue::zero(ring); n];
    for k in 0..n {
        let partial = artin_hasse(g.q, &CyclicVector::new(&t, Flavor::Witt, ring, a.clone())?)?;
        a[k] = g.coeffs[k].ring_sub(&partial.coeffs[k]);
    }
    CyclicVector::new(&t, Flavor::Witt, ring, a)
}

/// `t·(d/dt) log_F γ = t·γ'/(1 - qγ)`, indexed by `{1..N}`.
pub fn curve_ghost(g: &TruncatedCurve) -> Result<CyclicVector> {
    let n = g.degree();
    let ring = g.ring();
    let zero = RingValue::zero(ring);
    let qv = g.qv();
    let tdg: Vec<RingValue> =
        g.coeffs.iter().enumerate().map(|(k, c)| RingValue::from_int(ring, k as i64 + 1).ring_mul(c)).collect();
    let qg: Vec<RingValue> = g.coeffs.iter().map(|c| qv.ring_mul(c)).collect();
    let mut acc = tdg.clone();
    let mut term = tdg;
    for _ in 1..n {
        term = series_mul(&term, &qg, &zero);
        acc = acc.iter().zip(&term).map(|(a, b)| a.ring_add(b)).collect();
    }
    CyclicVector::new(&full_range(n)?, Flavor::Ghost, ring, acc)
}
