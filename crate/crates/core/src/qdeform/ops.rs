use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{mu_q, p_cached, tau_q, QParam};
use crate::algebra::{divisors, gcd, lcm, CoefficientStrategy, CommRing, Poly, QPolynomial, RingSpec, RingValue};
use crate::burnside::linear::{apply_rational, Rows};
use crate::burnside::{derive_universal, Flavor, GhostSystem, GhostTerm, Op, UniversalPolySet};
use crate::cyclic::{cyc_theta, cyc_theta_inv, CyclicVector, TruncationSet};
use crate::error::{Error, Result};

type QRows = Vec<Vec<(usize, QPolynomial)>>;

fn qmono(c: BigRational, k: u64) -> QPolynomial {
    QPolynomial::monomial(c, k as usize)
}

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Applies rows with coefficients in ℚ[q] to `x`, with `q` specialized or kept formal.
///
/// A formal `q` is handled by treating each `q^k·x_j` as a separate input, so the
/// remaining coefficients are rational and the usual strategy machinery applies.
fn q_apply(x: &[RingValue], ring: &Arc<RingSpec>, rows: &QRows, q: QParam, err: &dyn Fn(String) -> Error) -> Result<Vec<RingValue>> {
    match q {
        QParam::Int(k) => {
            let r: Rows = rows
                .iter()
                .map(|row| row.iter().map(|(j, c)| (*j, c.eval_int(k))).filter(|(_, c)| !c.is_zero()).collect())
                .collect();
            apply_rational(x, ring, &r, err)
        }
        QParam::Indeterminate => {
            let qv = q.value(ring)?;
            let width = rows.iter().flatten().map(|(_, c)| c.coeffs().len()).max().unwrap_or(1).max(1);
            let mut ext = Vec::with_capacity(x.len() * width);
            for v in x {
                let mut p = v.clone();
                for _ in 0..width {
                    ext.push(p.clone());
                    p = p.ring_mul(&qv);
                }
            }
            let r: Rows = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .flat_map(|(j, c)| {
                            c.coeffs().iter().enumerate().filter(|(_, ck)| !ck.is_zero()).map(move |(k, ck)| (j * width + k, ck.clone()))
                        })
                        .collect()
                })
                .collect();
            apply_rational(&ext, ring, &r, err)
        }
    }
}

fn binary<'a>(op: Op, a: &'a CyclicVector, b: Option<&'a CyclicVector>, flavor: Flavor) -> Result<Option<&'a CyclicVector>> {
    if a.flavor() != flavor {
        return Err(Error::ShapeMismatch(format!("expected a {flavor} vector, got {}", a.flavor())));
    }
    match (op, b) {
        (Op::Neg, None) => Ok(None),
        (Op::Neg, Some(_)) => Err(Error::ShapeMismatch("negation takes one operand".into())),
        (_, None) => Err(Error::ShapeMismatch("binary operation needs two operands".into())),
        (_, Some(b)) => {
            if b.truncation() != a.truncation() || b.flavor() != flavor {
                return Err(Error::ShapeMismatch("operands differ in truncation set or flavor".into()));
            }
            if b.ring() != a.ring() {
                return Err(Error::RingMismatch(format!("rings differ: {} and {}", a.ring(), b.ring())));
            }
            Ok(Some(b))
        }
    }
}

fn expect(x: &CyclicVector, f: Flavor) -> Result<()> {
    if x.flavor() != f {
        return Err(Error::ShapeMismatch(format!("expected a {f} vector, got {}", x.flavor())));
    }
    Ok(())
}

/// `Φ^q_n(a) = Σ_{d|n} d·q^{n/d-1}·a_d^{n/d}`, with `q` as the extra variable.
pub fn q_ghost_system(t: &TruncationSet) -> GhostSystem {
    let terms = t
        .members()
        .iter()
        .map(|&n| {
            divisors(n)
                .into_iter()
                .map(|d| GhostTerm {
                    source: t.position(d).expect("divisor-closed"),
                    coeff: Poly::from_terms(1, vec![(vec![(n / d - 1) as u32], rat(d, 1))]),
                    exponent: n / d,
                })
                .collect()
        })
        .collect();
    GhostSystem { labels: t.labels(), extra_vars: vec!["q".to_string()], terms }
}

fn op_slot(op: Op) -> usize {
    match op {
        Op::Add => 0,
        Op::Mul => 1,
        Op::Neg => 2,
    }
}

impl TruncationSet {
    /// q-universal polynomials `s^q`, `p^q`, `ι^q` in `ℤ[q][a, b]`; the last variable is `q`.
    pub fn q_universal(&self, op: Op) -> Arc<UniversalPolySet> {
        self.q_universal[op_slot(op)]
            .get_or_init(|| Arc::new(derive_universal(&q_ghost_system(self), op).unwrap_or_else(|e| panic!("{e}"))))
            .clone()
    }
}

pub fn q_witt_ghost(q: QParam, a: &CyclicVector) -> Result<CyclicVector> {
    expect(a, Flavor::Witt)?;
    let qv = q.value(a.ring())?;
    let comps = q_ghost_system(a.truncation()).apply(a.components(), &[qv]);
    CyclicVector::new(a.truncation(), Flavor::Ghost, a.ring(), comps)
}

impl TruncationSet {
    /// The q-universal polynomials with `q = k` substituted; integral for every integer `k`.
    pub fn q_universal_at(&self, op: Op, k: i64) -> Result<Arc<UniversalPolySet>> {
        let mut cache = self.q_special.lock().expect("cache lock");
        if let Some(set) = cache.get(&(op, k)) {
            return Ok(set.clone());
        }
        let general = self.q_universal(op);
        let qvar = general.var_names.len() - 1;
        let polys: Vec<Poly> = general.polys.iter().map(|p| p.specialize(qvar, &BigRational::from_integer(k.into()))).collect();
        if let Some(i) = polys.iter().position(|p| !p.is_integral()) {
            return Err(Error::IntegralityViolation(format!(
                "{} polynomial at {} is not integral at q = {k}",
                op.poly_name(),
                self.members()[i]
            )));
        }
        let set = Arc::new(UniversalPolySet { op, var_names: general.var_names[..qvar].to_vec(), polys });
        cache.insert((op, k), set.clone());
        Ok(set)
    }
}

/// Ring operations of `W^q`. For a formal `q` the coefficients are numerical
/// polynomials in `q`, so the result must land back in the coefficient ring.
pub fn q_witt_op(q: QParam, op: Op, a: &CyclicVector, b: Option<&CyclicVector>) -> Result<CyclicVector> {
    let b = binary(op, a, b, Flavor::Witt)?;
    let t = a.truncation();
    let comps = match q {
        QParam::Int(k) => t.q_universal_at(op, k)?.evaluate(a.components(), b.map(CyclicVector::components), &[]),
        QParam::Indeterminate => {
            let ra = a.rationalize();
            let rb = b.map(CyclicVector::rationalize);
            let qv = q.value(ra.ring())?;
            let set = t.q_universal(op);
            let out = set.evaluate(ra.components(), rb.as_ref().map(CyclicVector::components), &[qv]);
            let out = CyclicVector::new(t, Flavor::Witt, ra.ring(), out)?;
            return out.narrow(a.ring()).map_err(|e| {
                Error::NonIntegralConstant(format!("q-Witt {} over {} needs numerical-polynomial scalars: {e}", op.poly_name(), a.ring()))
            });
        }
    };
    CyclicVector::new(t, Flavor::Witt, a.ring(), comps)
}

fn q_product(q: QParam, x: &CyclicVector, y: &CyclicVector, flavor: Flavor) -> Result<CyclicVector> {
    let t = x.truncation();
    let m = t.members();
    let k = m.len();
    let products: Vec<RingValue> =
        x.components().iter().flat_map(|a| y.components().iter().map(move |b| a.ring_mul(b))).collect();
    let rows: QRows = m
        .iter()
        .map(|&n| {
            let mut row = Vec::new();
            for (i, &a) in m.iter().enumerate() {
                for (j, &b) in m.iter().enumerate() {
                    let l = lcm(a, b);
                    if n % l != 0 {
                        continue;
                    }
                    let w = if flavor == Flavor::Necklace { gcd(a, b) } else { n / l };
                    row.push((i * k + j, p_cached(n, a, b).scale(&rat(w, 1))));
                }
            }
            row
        })
        .collect();
    let comps = q_apply(&products, x.ring(), &rows, q, &Error::NonIntegralConstant)?;
    CyclicVector::new(t, flavor, x.ring(), comps)
}

fn componentwise(op: Op, x: &CyclicVector, y: Option<&CyclicVector>) -> Result<CyclicVector> {
    let comps = match y {
        Some(y) => x.components().iter().zip(y.components()).map(|(a, b)| a.ring_add(b)).collect(),
        None => x.components().iter().map(CommRing::ring_neg).collect(),
    };
    debug_assert!(op != Op::Mul);
    CyclicVector::new(x.truncation(), x.flavor(), x.ring(), comps)
}

/// `Nr^q`: `(xy)_n = Σ_{[i,j]|n} (i,j)·P_{n,i,j}(q)·x_i·y_j`.
pub fn q_nr_op(q: QParam, op: Op, x: &CyclicVector, y: Option<&CyclicVector>) -> Result<CyclicVector> {
    let y = binary(op, x, y, Flavor::Necklace)?;
    match op {
        Op::Mul => q_product(q, x, y.expect("checked"), Flavor::Necklace),
        _ => componentwise(op, x, y),
    }
}

/// `Ap^q`: `(xy)_n = Σ_{[i,j]|n} (n/[i,j])·P_{n,i,j}(q)·x_i·y_j`.
pub fn q_ap_op(q: QParam, op: Op, x: &CyclicVector, y: Option<&CyclicVector>) -> Result<CyclicVector> {
    let y = binary(op, x, y, Flavor::Aperiodic)?;
    match op {
        Op::Mul => q_product(q, x, y.expect("checked"), Flavor::Aperiodic),
        _ => componentwise(op, x, y),
    }
}

fn divisor_rows(t: &TruncationSet, w: impl Fn(u64, u64) -> QPolynomial) -> QRows {
    t.members()
        .iter()
        .map(|&n| divisors(n).into_iter().map(|d| (t.position(d).expect("divisor-closed"), w(d, n))).collect())
        .collect()
}

fn q_linear(q: QParam, x: &CyclicVector, from: Flavor, to: Flavor, rows: &QRows) -> Result<CyclicVector> {
    expect(x, from)?;
    let comps = q_apply(x.components(), x.ring(), rows, q, &Error::NotInImage)?;
    CyclicVector::new(x.truncation(), to, x.ring(), comps)
}

/// `φ̃^q(x)_n = Σ_{d|n} d·q^{n/d-1}·x_d`.
pub fn q_nr_ghost(q: QParam, x: &CyclicVector) -> Result<CyclicVector> {
    let rows = divisor_rows(x.truncation(), |d, n| qmono(rat(d, 1), n / d - 1));
    q_linear(q, x, Flavor::Necklace, Flavor::Ghost, &rows)
}

/// `(φ̃^q)⁻¹(a)_n = Σ_{d|n} μ^q(d,n)·a_d/d`.
pub fn q_nr_ghost_inv(q: QParam, g: &CyclicVector) -> Result<CyclicVector> {
    let rows = divisor_rows(g.truncation(), |d, n| mu_q(d, n).scale(&rat(1, d)));
    q_linear(q, g, Flavor::Ghost, Flavor::Necklace, &rows)
}

/// `φ^q(x)_n = Σ_{d|n} q^{n/d-1}·x_d`.
pub fn q_ap_ghost(q: QParam, x: &CyclicVector) -> Result<CyclicVector> {
    let rows = divisor_rows(x.truncation(), |d, n| qmono(rat(1, 1), n / d - 1));
    q_linear(q, x, Flavor::Aperiodic, Flavor::Ghost, &rows)
}

/// `(φ^q)⁻¹(a)_n = Σ_{d|n} μ^q(d,n)·(n/d)·a_d`.
pub fn q_ap_ghost_inv(q: QParam, g: &CyclicVector) -> Result<CyclicVector> {
    let rows = divisor_rows(g.truncation(), |d, n| mu_q(d, n).scale(&rat(n / d, 1)));
    q_linear(q, g, Flavor::Ghost, Flavor::Aperiodic, &rows)
}

/// `θ^q(x)_n = n·x_n`; independent of `q`.
pub fn q_theta(x: &CyclicVector) -> Result<CyclicVector> {
    cyc_theta(x)
}

pub fn q_theta_inv(x: &CyclicVector) -> Result<CyclicVector> {
    cyc_theta_inv(x)
}

/// `M^q(x, n)` over a ring where the computation can be carried out directly.
fn m_q_direct(q: QParam, x: &RingValue, n: u64) -> Result<RingValue> {
    let ring = x.spec_arc();
    let ds = divisors(n);
    let powers: Vec<RingValue> = ds.iter().map(|&d| x.ring_pow(d)).collect();
    let row: Vec<(usize, QPolynomial)> = ds
        .iter()
        .enumerate()
        .map(|(k, &d)| (k, mu_q(d, n) * qmono(rat(1, d), d - 1)))
        .collect();
    Ok(q_apply(&powers, ring, &vec![row], q, &Error::NotBinomial)?.remove(0))
}

/// The q-exponential `M^q(x, n) = Σ_{d|n} μ^q(d,n)·(q^{d-1}/d)·x^d`.
pub fn m_q(q: QParam, x: &RingValue, n: u64) -> Result<RingValue> {
    let ring = x.spec_arc();
    if ring.is_q_algebra() {
        return m_q_direct(q, x, n);
    }
    let v = m_q_direct(q, &x.rationalize(), n)?;
    v.narrow(ring).map_err(|e| Error::NotBinomial(format!("M^q({x}, {n}) is not in {ring}: {e}")))
}

/// `S^q(x, n) = n·M^q(x, n)`.
pub fn s_q(q: QParam, x: &RingValue, n: u64) -> Result<RingValue> {
    let ring = x.spec_arc();
    if ring.is_q_algebra() {
        return Ok(RingValue::from_int(ring, n as i64).ring_mul(&m_q_direct(q, x, n)?));
    }
    let v = m_q_direct(q, &x.rationalize(), n)?;
    let v = RingValue::from_int(v.spec_arc(), n as i64).ring_mul(&v);
    v.narrow(ring).map_err(|e| Error::NotBinomial(format!("S^q({x}, {n}) is not in {ring}: {e}")))
}

fn rational_start(a: &CyclicVector) -> CyclicVector {
    match a.ring().strategy() {
        CoefficientStrategy::QAlgebra => a.clone(),
        CoefficientStrategy::TorsionFree => a.rationalize(),
        CoefficientStrategy::Quotient => a.lift().rationalize(),
    }
}

/// `T^q(a) = Σ_n V_n M^q(a_n)` over a ℚ-algebra.
fn t_direct(q: QParam, a: &CyclicVector) -> Result<CyclicVector> {
    let t = a.truncation();
    let comps = t
        .members()
        .iter()
        .map(|&m| {
            divisors(m).into_iter().try_fold(RingValue::zero(a.ring()), |acc, n| {
                Ok(acc.ring_add(&m_q_direct(q, a.at(n).expect("member"), m / n)?))
            })
        })
        .collect::<Result<_>>()?;
    CyclicVector::new(t, Flavor::Necklace, a.ring(), comps)
}

fn t_inv_direct(q: QParam, x: &CyclicVector) -> Result<CyclicVector> {
    let t = x.truncation();
    let mut a: Vec<RingValue> = Vec::with_capacity(t.len());
    for &m in t.members() {
        let mut rest = x.at(m).expect("member").clone();
        for n in divisors(m).into_iter().filter(|&n| n < m) {
            rest = rest.ring_sub(&m_q_direct(q, &a[t.position(n).expect("member")], m / n)?);
        }
        a.push(rest);
    }
    CyclicVector::new(t, Flavor::Witt, x.ring(), a)
}

/// The q-Teichmüller map `T^q: W^q → Δ^q`; strategies as in the classical case.
pub fn q_teichmuller(q: QParam, a: &CyclicVector) -> Result<CyclicVector> {
    expect(a, Flavor::Witt)?;
    let ring = a.ring();
    let x = t_direct(q, &rational_start(a))?;
    match ring.strategy() {
        CoefficientStrategy::QAlgebra => Ok(x),
        CoefficientStrategy::TorsionFree if ring.is_binomial() => {
            x.narrow(ring).map_err(|e| Error::NotBinomial(e.to_string()))
        }
        CoefficientStrategy::TorsionFree => Ok(x),
        CoefficientStrategy::Quotient => x.narrow(&RingSpec::Integers.arc()),
    }
}

pub fn q_teichmuller_inv(q: QParam, x: &CyclicVector, target: &Arc<RingSpec>) -> Result<CyclicVector> {
    expect(x, Flavor::Necklace)?;
    let accepted = match target.strategy() {
        CoefficientStrategy::QAlgebra => x.ring() == target,
        CoefficientStrategy::TorsionFree => x.ring() == target || **x.ring() == target.rationalization(),
        CoefficientStrategy::Quotient => **x.ring() == RingSpec::Integers,
    };
    if !accepted {
        return Err(Error::RingMismatch(format!("cannot read a necklace vector over {} as Δ^q({target})", x.ring())));
    }
    let xq = if x.ring().is_q_algebra() { x.clone() } else { x.rationalize() };
    let a = t_inv_direct(q, &xq)?;
    match target.strategy() {
        CoefficientStrategy::Quotient => a.narrow(x.ring())?.reduce(target),
        _ => a.narrow(target),
    }
}

fn conjugate_by_t(
    q: QParam,
    a: &CyclicVector,
    f: impl Fn(&CyclicVector) -> Result<CyclicVector>,
) -> Result<CyclicVector> {
    let ring = a.ring().clone();
    let out = t_inv_direct(q, &f(&t_direct(q, &rational_start(a))?)?)?;
    match ring.strategy() {
        CoefficientStrategy::QAlgebra => Ok(out),
        CoefficientStrategy::TorsionFree => out.narrow(&ring),
        CoefficientStrategy::Quotient => out.narrow(&RingSpec::Integers.arc())?.reduce(&ring),
    }
}

/// Frobenius `f_r^q`, landing on `T/r`.
///
/// Necklace: `r Σ_{d|rn} τ^q(rn/[r,d], rn/d)·x_d`; aperiodic adds the factor
/// `n/d`; Witt by conjugation with `T^q`; ghost by `g ↦ (g_{rn})_n`.
pub fn q_frobenius(q: QParam, r: u64, x: &CyclicVector) -> Result<CyclicVector> {
    if r == 0 {
        return Err(Error::InvalidTruncation("Frobenius index must be positive".into()));
    }
    let t = x.truncation();
    if !t.contains(r) {
        return Err(Error::TruncationTooSmall(format!("{r} is not in the truncation set")));
    }
    let target = t.divided_by(r);
    match x.flavor() {
        Flavor::Ghost => {
            let comps = target.members().iter().map(|&n| x.at(r * n).expect("rn in T").clone()).collect();
            CyclicVector::new(&target, Flavor::Ghost, x.ring(), comps)
        }
        Flavor::Witt => {
            let y = conjugate_by_t(q, x, |y| q_frobenius(q, r, y).map(|z| widen(&z, t)))?;
            restrict(&y, &target)
        }
        flavor => {
            let rows: QRows = target
                .members()
                .iter()
                .map(|&n| {
                    divisors(r * n)
                        .into_iter()
                        .map(|d| {
                            let mut c = tau_q(r * n / lcm(r, d), r * n / d).scale(&rat(r, 1));
                            if flavor == Flavor::Aperiodic {
                                c = c.scale(&rat(n, d));
                            }
                            if let QParam::Int(k) = q {
                                assert!(c.eval_int(k).is_integer(), "Frobenius coefficient {c} at q = {k}");
                            }
                            (t.position(d).expect("member"), c)
                        })
                        .collect()
                })
                .collect();
            let comps = q_apply(x.components(), x.ring(), &rows, q, &Error::NumericalityViolation)?;
            CyclicVector::new(&target, flavor, x.ring(), comps)
        }
    }
}

/// Pads a vector on `T/r` with zeros to `T` so it can pass through `T^q` on `T`.
///
/// Only the components indexed by `T/r` are read back, and `T^q` is
/// triangular along divisibility, so the padding never influences them.
fn widen(x: &CyclicVector, t: &Arc<TruncationSet>) -> CyclicVector {
    let comps = t.members().iter().map(|&n| x.at(n).cloned().unwrap_or_else(|| RingValue::zero(x.ring()))).collect();
    CyclicVector::new(t, x.flavor(), x.ring(), comps).expect("same ring")
}

fn restrict(x: &CyclicVector, target: &Arc<TruncationSet>) -> Result<CyclicVector> {
    let comps = target.members().iter().map(|&n| x.at(n).expect("subset").clone()).collect();
    CyclicVector::new(target, x.flavor(), x.ring(), comps)
}

/// Verschiebung `V_r`: necklace `x_{n/r}`, aperiodic `r·x_{n/r}`, ghost `r·g_{n/r}`;
/// Witt by conjugation with `T^q`.
pub fn q_verschiebung(q: QParam, r: u64, x: &CyclicVector) -> Result<CyclicVector> {
    if x.flavor() == Flavor::Witt {
        return conjugate_by_t(q, x, |y| crate::cyclic::cyc_verschiebung(r, y));
    }
    crate::cyclic::cyc_verschiebung(r, x)
}

/// The multiplicative identity of `W^q(R)` on `T`, when the triangular system
/// `Σ_{d|n} d·q^{n/d-1}·a_d^{n/d} = 1` is solvable in `R`.
pub fn try_one(q: QParam, t: &Arc<TruncationSet>, ring: &Arc<RingSpec>) -> Result<Option<CyclicVector>> {
    let qv = q.value(ring)?;
    let mut a: Vec<RingValue> = Vec::with_capacity(t.len());
    for &n in t.members() {
        let mut rest = RingValue::one(ring);
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let c = RingValue::from_int(ring, d as i64).ring_mul(&qv.ring_pow(n / d - 1));
            rest = rest.ring_sub(&c.ring_mul(&a[t.position(d).expect("member")].ring_pow(n / d)));
        }
        match rest.div_integer(&BigInt::from(n)) {
            Some(v) => a.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(CyclicVector::new(t, Flavor::Witt, ring, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u64) -> Arc<TruncationSet> {
        TruncationSet::divisors_of(n).unwrap()
    }

    fn ring(s: &str) -> Arc<RingSpec> {
        RingSpec::parse(s).unwrap().arc()
    }

    #[test]
    fn ghost_and_universal_examples() {
        let r = ring("ZPoly(q,a1,a2)");
        let a = CyclicVector::parse(&t(2), Flavor::Witt, &r, &["a1", "a2"]).unwrap();
        let g = q_witt_ghost(QParam::Indeterminate, &a).unwrap();
        assert_eq!(g.components()[1], RingValue::parse(&r, "q*a1^2+2*a2").unwrap());
        let s = t(2).q_universal(Op::Add);
        assert_eq!(s.polys[1], Poly::parse("a_2+b_2-q*a_1*b_1", &s.var_names).unwrap());
    }

    #[test]
    fn exponential_examples() {
        let r = ring("QPoly(q,x)");
        let x = RingValue::var(&r, "x").unwrap();
        assert_eq!(m_q(QParam::Indeterminate, &x, 1).unwrap(), x);
        let expect = RingValue::parse(&r, "1/2*q*x^2-1/2*q*x").unwrap();
        assert_eq!(m_q(QParam::Indeterminate, &x, 2).unwrap(), expect);
    }

    #[test]
    fn degree_two_necklace_product() {
        let r = ring("QPoly(q,x1,x2,y1,y2)");
        let x = CyclicVector::parse(&t(2), Flavor::Necklace, &r, &["x1", "x2"]).unwrap();
        let y = CyclicVector::parse(&t(2), Flavor::Necklace, &r, &["y1", "y2"]).unwrap();
        let p = q_nr_op(QParam::Indeterminate, Op::Mul, &x, Some(&y)).unwrap();
        let expect = RingValue::parse(&r, "1/2*q^2*x1*y1-1/2*q*x1*y1+q*x1*y2+q*x2*y1+2*x2*y2").unwrap();
        assert_eq!(p.components()[1], expect);
    }

    #[test]
    fn identity_element() {
        let z = ring("Z");
        assert!(try_one(QParam::Int(1), &t(6), &z).unwrap().is_some());
        assert!(try_one(QParam::Int(2), &t(2), &z).unwrap().is_none());
        assert!(try_one(QParam::Int(2), &t(6), &ring("Q")).unwrap().is_some());
    }

    #[test]
    fn verschiebung_aperiodic() {
        let r = ring("ZPoly(x1,x2,x4)");
        let x = CyclicVector::parse(&t(4), Flavor::Aperiodic, &r, &["x1", "x2", "x4"]).unwrap();
        assert_eq!(q_verschiebung(QParam::Int(3), 2, &x).unwrap().to_strings(), vec!["0", "2*x1", "2*x2"]);
    }
}
