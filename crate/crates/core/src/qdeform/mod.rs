//! q-deformations attached to the formal group law `F_q(X,Y) = X + Y - qXY`.
//!
//! `q` is either a fixed integer or the indeterminate of the coefficient ring.
//! The divisor-lattice matrices `ζ^q`, `μ^q`, the quantities `τ^q(i,n)` and the
//! numerical polynomials `P_{n,i,j}(q)` live here; vectors reuse
//! [`CyclicVector`](crate::cyclic::CyclicVector).

mod curve;
mod ops;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{divisors, gcd, lcm, mobius, CommRing, QPolynomial, RingSpec, RingValue, UniTriMatrix};
use crate::error::{Error, Result};

pub use curve::{artin_hasse, artin_hasse_inv, curve_ghost, TruncatedCurve};
pub use ops::{
    m_q, q_ap_ghost, q_ap_ghost_inv, q_ap_op, q_frobenius, q_ghost_system, q_nr_ghost, q_nr_ghost_inv, q_nr_op,
    q_teichmuller, q_teichmuller_inv, q_theta, q_theta_inv, q_verschiebung, q_witt_ghost, q_witt_op, s_q, try_one,
};

/// The deformation parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QParam {
    Int(i64),
    /// The variable named `q` of the coefficient ring.
    Indeterminate,
}

impl QParam {
    /// `"q"` for the indeterminate, otherwise an integer.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "q" => Ok(QParam::Indeterminate),
            t => t.parse().map(QParam::Int).map_err(|_| Error::Parse(format!("bad q value '{t}'"))),
        }
    }

    /// `q` as an element of `ring`.
    pub fn value(&self, ring: &Arc<RingSpec>) -> Result<RingValue> {
        match self {
            QParam::Int(k) => Ok(RingValue::from_int(ring, *k)),
            QParam::Indeterminate => RingValue::var(ring, "q"),
        }
    }

    /// Evaluates a polynomial in `q` inside `ring`, if its value lies there.
    pub fn embed(&self, c: &QPolynomial, ring: &Arc<RingSpec>) -> Result<RingValue> {
        let fail = || Error::NonIntegralConstant(format!("{c} at q = {self} is not defined in {ring}"));
        match self {
            QParam::Int(q) => RingValue::one(ring).scale_rational(&c.eval_int(*q)).ok_or_else(fail),
            QParam::Indeterminate => {
                let qv = RingValue::var(ring, "q")?;
                let mut acc = RingValue::zero(ring);
                for (k, ck) in c.coeffs().iter().enumerate().filter(|(_, ck)| !ck.is_zero()) {
                    acc = acc.ring_add(&qv.ring_pow(k as u64).scale_rational(ck).ok_or_else(fail)?);
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QParam::Int(k) => write!(f, "{k}"),
            QParam::Indeterminate => write!(f, "q"),
        }
    }
}

/// `ζ^q` and `μ^q` on the divisor lattice `D(n)`, rows and columns in increasing divisor order.
#[derive(Clone, Debug)]
pub struct QMatrixData {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub zeta: UniTriMatrix<QPolynomial>,
    pub mu: UniTriMatrix<QPolynomial>,
}

impl QMatrixData {
    fn build(n: u64) -> Self {
        let ds = divisors(n);
        let entries = ds.iter().map(|&a| ds.iter().map(|&b| zeta_q(a, b)).collect()).collect();
        let zeta = UniTriMatrix::new(ds.iter().map(u64::to_string).collect(), entries);
        let mu = zeta.invert().expect("unit diagonal");
        QMatrixData { n, divisors: ds, zeta, mu }
    }

    fn index(&self, d: u64) -> usize {
        self.divisors.binary_search(&d).expect("divisor of n")
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `ζ^q(d₁, d₂) = (d₁/d₂)·q^{d₂/d₁ - 1}` when `d₁ | d₂`, else 0.
pub fn zeta_q(d1: u64, d2: u64) -> QPolynomial {
    if d2 % d1 != 0 {
        return QPolynomial::zero();
    }
    QPolynomial::monomial(rat(d1 as i64, d2 as i64), (d2 / d1 - 1) as usize)
}

fn matrix_cache() -> &'static RwLock<HashMap<u64, Arc<QMatrixData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<QMatrixData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached `ζ^q`/`μ^q` data on `D(n)`.
pub fn zeta_mu_q(n: u64) -> Arc<QMatrixData> {
    assert!(n >= 1, "divisor lattice of a positive integer");
    if let Some(m) = matrix_cache().read().expect("cache lock").get(&n) {
        return m.clone();
    }
    let built = Arc::new(QMatrixData::build(n));
    matrix_cache().write().expect("cache lock").entry(n).or_insert(built).clone()
}

/// `μ^q(d₁, d₂)`, read off the matrix on `D(d₂)`.
pub fn mu_q(d1: u64, d2: u64) -> QPolynomial {
    if d2 % d1 != 0 {
        return QPolynomial::zero();
    }
    let m = zeta_mu_q(d2);
    m.mu.get(m.index(d1), m.index(d2)).clone()
}

/// `τ^q(i, n) = Σ_{d|i} μ^q(1,d)·ζ^q(d,n)` for `i | n`.
pub fn tau_q(i: u64, n: u64) -> QPolynomial {
    assert!(n % i == 0, "tau_q needs i | n");
    divisors(i).into_iter().fold(QPolynomial::zero(), |acc, d| acc + mu_q(1, d) * zeta_q(d, n))
}

/// `S(x, d) = Σ_{e|d} μ(e)·x^{d/e}` at `x = q^k`.
fn s_at_q_power(k: u64, d: u64) -> QPolynomial {
    divisors(d).into_iter().fold(QPolynomial::zero(), |acc, e| {
        let m = mobius(e);
        if m == 0 {
            acc
        } else {
            acc + QPolynomial::monomial(rat(m, 1), (k * (d / e)) as usize)
        }
    })
}

/// `P_{n,i,j}(q) = (j/((i,j)q)) Σ_{d | n/[i,j]} τ^q(n/([i,j]d), n/i)·S(q^{[i,j]/j}, d)`.
///
/// Fails with `NonExactDivision` or `NumericalityViolation`, both of which
/// indicate a bug rather than bad input.
pub fn p_poly(n: u64, i: u64, j: u64) -> Result<QPolynomial> {
    let l = lcm(i, j);
    if n % l != 0 {
        return Err(Error::InvalidTruncation(format!("P_{{{n},{i},{j}}} needs [i,j] | n")));
    }
    let sum = divisors(n / l)
        .into_iter()
        .fold(QPolynomial::zero(), |acc, d| acc + tau_q(n / (l * d), n / i) * s_at_q_power(l / j, d));
    let p = sum.div_q()?.scale(&rat(j as i64, gcd(i, j) as i64));
    if !p.is_numerical() {
        return Err(Error::NumericalityViolation(format!("P_{{{n},{i},{j}}} = {p}")));
    }
    Ok(p)
}

fn p_cache() -> &'static RwLock<HashMap<(u64, u64, u64), QPolynomial>> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, u64, u64), QPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached [`p_poly`]; panics on the bug-signalling errors.
pub fn p_cached(n: u64, i: u64, j: u64) -> QPolynomial {
    if let Some(p) = p_cache().read().expect("cache lock").get(&(n, i, j)) {
        return p.clone();
    }
    let p = p_poly(n, i, j).unwrap_or_else(|e| panic!("{e}"));
    p_cache().write().expect("cache lock").insert((n, i, j), p.clone());
    p
}

/// All `P_{n,i,j}` with `[i,j] | n`, keyed by `(n, i, j)` in lexicographic order.
pub fn p_table(max_n: u64) -> Result<Vec<((u64, u64, u64), QPolynomial)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for i in divisors(n) {
            for j in divisors(n) {
                if n % lcm(i, j) == 0 {
                    out.push(((n, i, j), p_poly(n, i, j)?));
                }
            }
        }
    }
    Ok(out)
}

/// Whether `P_{n,i,j}(1) = δ_{[i,j],n}`.
pub fn p_at_one_is_delta(n: u64, i: u64, j: u64) -> bool {
    let v = p_cached(n, i, j).eval(&BigRational::one());
    if lcm(i, j) == n {
        v.is_one()
    } else {
        v.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_and_mu() {
        assert_eq!(zeta_q(1, 2).to_string(), "1/2*q");
        assert_eq!(mu_q(1, 2).to_string(), "-1/2*q");
        for n in 1..=12 {
            let m = zeta_mu_q(n);
            for k in 0..m.divisors.len() {
                assert_eq!(m.zeta.get(k, k), &QPolynomial::one());
            }
            assert_eq!(m.zeta.mul(&m.mu), m.zeta.identity_like());
        }
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau_q(1, 1).to_string(), "1");
        assert_eq!(tau_q(1, 2).to_string(), "1/2*q");
        assert!(tau_q(2, 2).is_zero());
    }

    #[test]
    fn p_values() {
        assert_eq!(p_poly(2, 1, 1).unwrap().to_string(), "1/2*q^2-1/2*q");
        assert_eq!(p_poly(2, 2, 2).unwrap().to_string(), "1");
        for n in 1..=12 {
            for i in divisors(n) {
                for j in divisors(n) {
                    if n % lcm(i, j) == 0 {
                        assert!(p_at_one_is_delta(n, i, j), "P({n},{i},{j})(1)");
                    }
                }
            }
        }
    }

    #[test]
    fn aperiodic_coefficient_identity() {
        // Σ_{[i,j] | d | n} (d/[i,j]) q^{n/d-1} P_{d,i,j}(q) = q^{n/i + n/j - 2}
        for n in 1..=12u64 {
            for i in divisors(n) {
                for j in divisors(n) {
                    let l = lcm(i, j);
                    let lhs = divisors(n).into_iter().filter(|d| d % l == 0).fold(QPolynomial::zero(), |acc, d| {
                        acc + QPolynomial::monomial(rat((d / l) as i64, 1), (n / d - 1) as usize) * p_cached(d, i, j)
                    });
                    let rhs = QPolynomial::monomial(BigRational::one(), (n / i + n / j - 2) as usize);
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }
}
