use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CyclicVector, TruncationSet};
use crate::algebra::{divisors, gcd, lcm, mobius, CoefficientStrategy, CommRing, Poly, RingSpec, RingValue};
use crate::burnside::linear::{apply_rational, Rows};
use crate::burnside::{derive_universal, Flavor, GhostSystem, GhostTerm, Op, UniversalPolySet};
use crate::error::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn binary<'a>(op: Op, a: &'a CyclicVector, b: Option<&'a CyclicVector>, flavor: Flavor) -> Result<Option<&'a CyclicVector>> {
    a.expect_flavor(flavor)?;
    match (op, b) {
        (Op::Neg, None) => Ok(None),
        (Op::Neg, Some(_)) => Err(Error::ShapeMismatch("negation takes one operand".into())),
        (_, None) => Err(Error::ShapeMismatch("binary operation needs two operands".into())),
        (_, Some(b)) => {
            a.expect_compatible(b)?;
            Ok(Some(b))
        }
    }
}

fn componentwise(a: &CyclicVector, b: Option<&CyclicVector>, op: Op) -> CyclicVector {
    let comps = match (op, b) {
        (Op::Add, Some(b)) => a.comps.iter().zip(&b.comps).map(|(x, y)| x.ring_add(y)).collect(),
        (Op::Mul, Some(b)) => a.comps.iter().zip(&b.comps).map(|(x, y)| x.ring_mul(y)).collect(),
        _ => a.comps.iter().map(CommRing::ring_neg).collect(),
    };
    CyclicVector::from_parts(&a.trunc, a.flavor, &a.ring, comps)
}

/// Classical ghost system `w_n = Σ_{d|n} d·a_d^{n/d}`.
pub fn cyc_ghost_system(t: &TruncationSet) -> GhostSystem {
    let terms = t
        .members()
        .iter()
        .map(|&n| {
            divisors(n)
                .into_iter()
                .map(|d| GhostTerm {
                    source: t.position(d).expect("divisor-closed"),
                    coeff: Poly::from_int(0, d as i64),
                    exponent: n / d,
                })
                .collect()
        })
        .collect();
    GhostSystem { labels: t.labels(), extra_vars: Vec::new(), terms }
}

pub fn cyc_witt_ghost(a: &CyclicVector) -> Result<CyclicVector> {
    a.expect_flavor(Flavor::Witt)?;
    let comps = cyc_ghost_system(&a.trunc).apply(&a.comps, &[]);
    Ok(CyclicVector::from_parts(&a.trunc, Flavor::Ghost, &a.ring, comps))
}

fn op_slot(op: Op) -> usize {
    match op {
        Op::Add => 0,
        Op::Mul => 1,
        Op::Neg => 2,
    }
}

impl TruncationSet {
    /// Universal polynomials `s_n`, `p_n`, `ι_n`, derived once per set.
    pub fn universal(&self, op: Op) -> Arc<UniversalPolySet> {
        self.universal[op_slot(op)]
            .get_or_init(|| Arc::new(derive_universal(&cyc_ghost_system(self), op).unwrap_or_else(|e| panic!("{e}"))))
            .clone()
    }
}

pub fn cyc_witt_op(op: Op, a: &CyclicVector, b: Option<&CyclicVector>) -> Result<CyclicVector> {
    let b = binary(op, a, b, Flavor::Witt)?;
    let set = a.trunc.universal(op);
    let comps = set.evaluate(&a.comps, b.map(|b| b.comps.as_slice()), &[]);
    Ok(CyclicVector::from_parts(&a.trunc, Flavor::Witt, &a.ring, comps))
}

/// `Σ_{[i,j]=n} c(i,j)·x_i·y_j` over pairs in the truncation set.
fn lcm_product(x: &CyclicVector, y: &CyclicVector, c: impl Fn(u64, u64) -> u64) -> Vec<RingValue> {
    let t = &x.trunc;
    let mut out = vec![RingValue::zero(&x.ring); t.len()];
    for (i, &a) in t.members().iter().enumerate() {
        for (j, &b) in t.members().iter().enumerate() {
            if let Some(k) = t.position(lcm(a, b)) {
                let term = x.comps[i].ring_mul(&y.comps[j]);
                let w = c(a, b);
                let term = if w == 1 { term } else { RingValue::from_int(&x.ring, w as i64).ring_mul(&term) };
                out[k] = out[k].ring_add(&term);
            }
        }
    }
    out
}

/// Necklace ring: `(xy)_n = Σ_{[i,j]=n} (i,j) x_i y_j`.
pub fn cyc_nr_op(op: Op, x: &CyclicVector, y: Option<&CyclicVector>) -> Result<CyclicVector> {
    let y = binary(op, x, y, Flavor::Necklace)?;
    if op != Op::Mul {
        return Ok(componentwise(x, y, op));
    }
    let comps = lcm_product(x, y.expect("checked"), gcd);
    Ok(CyclicVector::from_parts(&x.trunc, Flavor::Necklace, &x.ring, comps))
}

/// Aperiodic ring: `(xy)_n = Σ_{[i,j]=n} x_i y_j`.
pub fn cyc_ap_op(op: Op, x: &CyclicVector, y: Option<&CyclicVector>) -> Result<CyclicVector> {
    let y = binary(op, x, y, Flavor::Aperiodic)?;
    if op != Op::Mul {
        return Ok(componentwise(x, y, op));
    }
    let comps = lcm_product(x, y.expect("checked"), |_, _| 1);
    Ok(CyclicVector::from_parts(&x.trunc, Flavor::Aperiodic, &x.ring, comps))
}

/// Rows `out_n = Σ_{d|n} w(d, n)·x_d`.
fn divisor_rows(t: &TruncationSet, w: impl Fn(u64, u64) -> BigRational) -> Rows {
    t.members()
        .iter()
        .map(|&n| {
            divisors(n)
                .into_iter()
                .map(|d| (t.position(d).expect("divisor-closed"), w(d, n)))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect()
}

fn linear(x: &CyclicVector, from: Flavor, to: Flavor, rows: &Rows) -> Result<CyclicVector> {
    x.expect_flavor(from)?;
    let comps = apply_rational(&x.comps, &x.ring, rows, &Error::NotInImage)?;
    Ok(CyclicVector::from_parts(&x.trunc, to, &x.ring, comps))
}

/// `φ̃(x)_n = Σ_{d|n} d·x_d`.
pub fn cyc_nr_ghost(x: &CyclicVector) -> Result<CyclicVector> {
    linear(x, Flavor::Necklace, Flavor::Ghost, &divisor_rows(&x.trunc, |d, _| rat(d as i64, 1)))
}

/// `φ̃⁻¹(a)_n = (1/n) Σ_{d|n} μ(n/d)·a_d`.
pub fn cyc_nr_ghost_inv(g: &CyclicVector) -> Result<CyclicVector> {
    let rows = divisor_rows(&g.trunc, |d, n| rat(mobius(n / d), n as i64));
    linear(g, Flavor::Ghost, Flavor::Necklace, &rows)
}

/// `φ(x)_n = Σ_{d|n} x_d`.
pub fn cyc_ap_ghost(x: &CyclicVector) -> Result<CyclicVector> {
    linear(x, Flavor::Aperiodic, Flavor::Ghost, &divisor_rows(&x.trunc, |_, _| rat(1, 1)))
}

/// `φ⁻¹(a)_n = Σ_{d|n} μ(n/d)·a_d`, integral over every ring.
pub fn cyc_ap_ghost_inv(g: &CyclicVector) -> Result<CyclicVector> {
    let rows = divisor_rows(&g.trunc, |d, n| rat(mobius(n / d), 1));
    linear(g, Flavor::Ghost, Flavor::Aperiodic, &rows)
}

/// `θ(x)_n = n·x_n`.
pub fn cyc_theta(x: &CyclicVector) -> Result<CyclicVector> {
    x.expect_flavor(Flavor::Necklace)?;
    let comps = x
        .comps
        .iter()
        .zip(x.trunc.members())
        .map(|(c, &n)| RingValue::from_int(&x.ring, n as i64).ring_mul(c))
        .collect();
    Ok(CyclicVector::from_parts(&x.trunc, Flavor::Aperiodic, &x.ring, comps))
}

pub fn cyc_theta_inv(x: &CyclicVector) -> Result<CyclicVector> {
    x.expect_flavor(Flavor::Aperiodic)?;
    let comps = x
        .comps
        .iter()
        .zip(x.trunc.members())
        .map(|(c, &n)| {
            c.div_integer(&BigInt::from(n)).ok_or_else(|| Error::NotInvertibleIndex(format!("{n} in {}", x.ring)))
        })
        .collect::<Result<_>>()?;
    Ok(CyclicVector::from_parts(&x.trunc, Flavor::Necklace, &x.ring, comps))
}

/// `M(r, n)` over a ℚ-algebra.
fn necklace_direct(r: &RingValue, n: u64) -> RingValue {
    divisors(n).into_iter().fold(RingValue::zero(r.spec_arc()), |acc, d| {
        let c = rat(mobius(n / d), n as i64);
        if c.is_zero() {
            acc
        } else {
            acc.ring_add(&r.ring_pow(d).scale_rational(&c).expect("ℚ-algebra"))
        }
    })
}

fn binomial_narrow(v: RingValue, ring: &Arc<RingSpec>) -> Result<RingValue> {
    v.narrow(ring).map_err(|e| {
        if ring.is_binomial() {
            Error::NotBinomial(format!("integrality failed in a binomial ring: {e}"))
        } else {
            Error::NotBinomial(format!("{ring} is not a binomial ring: {e}"))
        }
    })
}

/// The necklace polynomial `M(r, n) = (1/n) Σ_{d|n} μ(n/d) r^d`.
pub fn necklace_poly(r: &RingValue, n: u64) -> Result<RingValue> {
    let ring = r.spec_arc();
    if ring.is_q_algebra() {
        return Ok(necklace_direct(r, n));
    }
    binomial_narrow(necklace_direct(&r.rationalize(), n), ring)
}

/// `S(r, n) = n·M(r, n) = Σ_{d|n} μ(n/d) r^d`, integral over every ring.
pub fn aperiodic_poly(r: &RingValue, n: u64) -> RingValue {
    divisors(n).into_iter().fold(RingValue::zero(r.spec_arc()), |acc, d| match mobius(n / d) {
        0 => acc,
        1 => acc.ring_add(&r.ring_pow(d)),
        _ => acc.ring_sub(&r.ring_pow(d)),
    })
}

/// `τ(a)_n = Σ_{d|n} M(a_d, n/d)` over a ℚ-algebra.
fn tau_direct(a: &CyclicVector) -> CyclicVector {
    let t = &a.trunc;
    let comps = t
        .members()
        .iter()
        .map(|&n| {
            divisors(n).into_iter().fold(RingValue::zero(&a.ring), |acc, d| {
                acc.ring_add(&necklace_direct(&a.comps[t.position(d).expect("member")], n / d))
            })
        })
        .collect();
    CyclicVector::from_parts(t, Flavor::Necklace, &a.ring, comps)
}

fn tau_inv_direct(x: &CyclicVector) -> CyclicVector {
    let t = &x.trunc;
    let mut a: Vec<RingValue> = Vec::with_capacity(t.len());
    for (k, &n) in t.members().iter().enumerate() {
        let rest = divisors(n)
            .into_iter()
            .filter(|&d| d < n)
            .fold(x.comps[k].clone(), |acc, d| acc.ring_sub(&necklace_direct(&a[t.position(d).expect("member")], n / d)));
        a.push(rest);
    }
    CyclicVector::from_parts(t, Flavor::Witt, &x.ring, a)
}

/// Teichmüller map `W → Δ`, with the same coefficient strategies as the group case.
pub fn cyc_teichmuller(a: &CyclicVector) -> Result<CyclicVector> {
    a.expect_flavor(Flavor::Witt)?;
    match a.ring.strategy() {
        CoefficientStrategy::QAlgebra => Ok(tau_direct(a)),
        CoefficientStrategy::TorsionFree => {
            let x = tau_direct(&a.rationalize());
            if a.ring.is_binomial() {
                x.narrow(&a.ring).map_err(|e| Error::NotBinomial(e.to_string()))
            } else {
                Ok(x)
            }
        }
        CoefficientStrategy::Quotient => {
            let z = a.lift();
            Ok(tau_direct(&z.rationalize()).narrow(&z.ring).expect("ℤ is binomial"))
        }
    }
}

pub fn cyc_teichmuller_inv(x: &CyclicVector, target: &Arc<RingSpec>) -> Result<CyclicVector> {
    x.expect_flavor(Flavor::Necklace)?;
    let accepted = match target.strategy() {
        CoefficientStrategy::QAlgebra => x.ring == *target,
        CoefficientStrategy::TorsionFree => x.ring == *target || *x.ring == target.rationalization(),
        CoefficientStrategy::Quotient => *x.ring == RingSpec::Integers,
    };
    if !accepted {
        return Err(Error::RingMismatch(format!("cannot read a necklace vector over {} as Δ({target})", x.ring)));
    }
    let xq = if x.ring.is_q_algebra() { x.clone() } else { x.rationalize() };
    let a = tau_inv_direct(&xq);
    match target.strategy() {
        CoefficientStrategy::Quotient => a.narrow(&x.ring)?.reduce(target),
        _ => a.narrow(target),
    }
}

/// `τ⁻¹ ∘ f ∘ τ` on Witt vectors, computed over ℚ on (lifted) coordinates.
fn conjugate_by_tau(a: &CyclicVector, f: impl Fn(&CyclicVector) -> Result<CyclicVector>) -> Result<CyclicVector> {
    let ring = a.ring.clone();
    let start = match ring.strategy() {
        CoefficientStrategy::QAlgebra => a.clone(),
        CoefficientStrategy::TorsionFree => a.rationalize(),
        CoefficientStrategy::Quotient => a.lift().rationalize(),
    };
    let out = tau_inv_direct(&f(&tau_direct(&start))?);
    match ring.strategy() {
        CoefficientStrategy::QAlgebra => Ok(out),
        CoefficientStrategy::TorsionFree => out.narrow(&ring),
        CoefficientStrategy::Quotient => out.narrow(&RingSpec::Integers.arc())?.reduce(&ring),
    }
}

/// `τ(i, n) = Σ_{d|i} μ¹(1,d)·ζ¹(d,n)`, the `q = 1` value of the q-deformed quantity,
/// with `ζ¹(d₁,d₂) = d₁/d₂` and `μ¹(d₁,d₂) = (d₁/d₂)·μ(d₂/d₁)`.
pub fn tau_classical(i: u64, n: u64) -> BigRational {
    divisors(i).into_iter().map(|d| rat(mobius(d), d as i64) * rat(d as i64, n as i64)).sum()
}

/// Frobenius `f_r`, landing on `T/r`.
///
/// Necklace: `f_r(x)_n = r Σ_{d|rn} τ(rn/[r,d], rn/d)·x_d`; aperiodic adds the
/// factor `n/d`; Witt by conjugation with τ; ghost by `g ↦ (g_{rn})_n`.
pub fn cyc_frobenius(r: u64, x: &CyclicVector) -> Result<CyclicVector> {
    if r == 0 {
        return Err(Error::InvalidTruncation("Frobenius index must be positive".into()));
    }
    if !x.trunc.contains(r) {
        return Err(Error::TruncationTooSmall(format!("{r} is not in the truncation set")));
    }
    let target = x.trunc.divided_by(r);
    let t = &x.trunc;
    match x.flavor {
        Flavor::Ghost => {
            let comps = target.members().iter().map(|&n| x.at(r * n).expect("rn in T").clone()).collect();
            Ok(CyclicVector::from_parts(&target, Flavor::Ghost, &x.ring, comps))
        }
        Flavor::Witt => conjugate_by_tau(x, |y| cyc_frobenius(r, y)),
        flavor => {
            let comps = target
                .members()
                .iter()
                .map(|&n| {
                    divisors(r * n).into_iter().fold(RingValue::zero(&x.ring), |acc, d| {
                        let mut c = rat(r as i64, 1) * tau_classical(r * n / lcm(r, d), r * n / d);
                        if flavor == Flavor::Aperiodic {
                            c *= rat(n as i64, d as i64);
                        }
                        if c.is_zero() {
                            return acc;
                        }
                        assert!(c.is_integer(), "Frobenius coefficient {c} is not an integer");
                        let k = i64::try_from(c.to_integer()).expect("small");
                        acc.ring_add(&RingValue::from_int(&x.ring, k).ring_mul(&x.comps[t.position(d).expect("member")]))
                    })
                })
                .collect();
            Ok(CyclicVector::from_parts(&target, flavor, &x.ring, comps))
        }
    }
}

/// Verschiebung `V_r` on the same truncation set: necklace `x_{n/r}`, aperiodic
/// `r·x_{n/r}`, ghost `r·g_{n/r}`, zero when `r ∤ n`; Witt by conjugation with τ.
pub fn cyc_verschiebung(r: u64, x: &CyclicVector) -> Result<CyclicVector> {
    if r == 0 {
        return Err(Error::InvalidTruncation("Verschiebung index must be positive".into()));
    }
    if x.flavor == Flavor::Witt {
        return conjugate_by_tau(x, |y| cyc_verschiebung(r, y));
    }
    let factor = if x.flavor == Flavor::Necklace { 1 } else { r as i64 };
    let comps = x
        .trunc
        .members()
        .iter()
        .map(|&n| {
            if n % r != 0 {
                return RingValue::zero(&x.ring);
            }
            let v = x.at(n / r).expect("divisor-closed");
            if factor == 1 {
                v.clone()
            } else {
                RingValue::from_int(&x.ring, factor).ring_mul(v)
            }
        })
        .collect();
    Ok(CyclicVector::from_parts(&x.trunc, x.flavor, &x.ring, comps))
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

    fn v(trunc: &Arc<TruncationSet>, f: Flavor, r: &Arc<RingSpec>, c: &[&str]) -> CyclicVector {
        CyclicVector::parse(trunc, f, r, c).unwrap()
    }

    #[test]
    fn witt_ghost_examples() {
        let r = ring("ZPoly(a1,a2,r)");
        assert_eq!(cyc_witt_ghost(&v(&t(2), Flavor::Witt, &r, &["a1", "a2"])).unwrap().to_strings(), vec![
            "a1",
            "a1^2+2*a2"
        ]);
        let a = v(&t(6), Flavor::Witt, &r, &["r", "0", "0", "0"]);
        assert_eq!(cyc_witt_ghost(&a).unwrap().to_strings(), vec!["r", "r^2", "r^3", "r^6"]);
    }

    #[test]
    fn degree_two_universal_polynomials() {
        let tr = t(2);
        let names = tr.universal(Op::Add).var_names.clone();
        assert_eq!(names[..4], ["a_1", "a_2", "b_1", "b_2"]);
        let p = |s: &str| Poly::parse(s, &names).unwrap();
        assert_eq!(tr.universal(Op::Add).polys[1], p("a_2+b_2-a_1*b_1"));
        assert_eq!(tr.universal(Op::Mul).polys[1], p("a_1^2*b_2+a_2*b_1^2+2*a_2*b_2"));
        assert_eq!(tr.universal(Op::Neg).polys[1], p("-a_2-a_1^2"));
    }

    #[test]
    fn necklace_and_aperiodic_products() {
        let z = ring("Z");
        let x = v(&t(2), Flavor::Necklace, &z, &["0", "1"]);
        assert_eq!(cyc_nr_op(Op::Mul, &x, Some(&x)).unwrap().to_strings(), vec!["0", "2"]);
        let x = v(&t(4), Flavor::Necklace, &z, &["0", "1", "0"]);
        assert_eq!(cyc_nr_op(Op::Mul, &x, Some(&x)).unwrap().to_strings(), vec!["0", "2", "0"]);
        let x = v(&t(2), Flavor::Aperiodic, &z, &["0", "1"]);
        assert_eq!(cyc_ap_op(Op::Mul, &x, Some(&x)).unwrap().to_strings(), vec!["0", "1"]);
    }

    #[test]
    fn necklace_polynomials() {
        let z = ring("Z");
        let m = |r: i64, n: u64| necklace_poly(&RingValue::from_int(&z, r), n).unwrap().to_string();
        assert_eq!([m(2, 1), m(2, 2), m(2, 3), m(2, 4), m(2, 5), m(2, 6)], ["2", "1", "2", "3", "6", "9"]);
        assert_eq!(m(4, 2), "6");
        assert_eq!(aperiodic_poly(&RingValue::from_int(&z, 4), 2).to_string(), "12");
        let zx = ring("ZPoly(x)");
        assert!(matches!(necklace_poly(&RingValue::var(&zx, "x").unwrap(), 2), Err(Error::NotBinomial(_))));
    }

    #[test]
    fn ghosts() {
        let r = ring("ZPoly(x1,x2,x4)");
        let x = v(&t(4), Flavor::Necklace, &r, &["x1", "x2", "x4"]);
        assert_eq!(cyc_nr_ghost(&x).unwrap().to_strings()[2], "x1+2*x2+4*x4");
        let z = ring("Z");
        let x = v(&t(12), Flavor::Aperiodic, &z, &["3", "-1", "4", "1", "-5", "9"]);
        assert_eq!(cyc_ap_ghost_inv(&cyc_ap_ghost(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn shift_operators() {
        let r = ring("ZPoly(x1,x2,x4)");
        let x = v(&t(4), Flavor::Necklace, &r, &["x1", "x2", "x4"]);
        assert_eq!(cyc_verschiebung(2, &x).unwrap().to_strings(), vec!["0", "x1", "x2"]);
        let x = x.with_flavor(Flavor::Aperiodic);
        assert_eq!(cyc_verschiebung(2, &x).unwrap().to_strings(), vec!["0", "2*x1", "2*x2"]);
        assert_eq!(cyc_frobenius(1, &x).unwrap(), x);
        let z = ring("Z");
        let x = v(&t(12), Flavor::Necklace, &z, &["2", "-3", "5", "1", "7", "-4"]);
        let lhs = cyc_nr_ghost(&cyc_frobenius(2, &x).unwrap()).unwrap();
        let g = cyc_nr_ghost(&x).unwrap();
        for &n in lhs.truncation().members() {
            assert_eq!(lhs.at(n), g.at(2 * n));
        }
        assert!(matches!(cyc_frobenius(5, &x), Err(Error::TruncationTooSmall(_))));
    }

    #[test]
    fn teichmuller_round_trip() {
        let z = ring("Z");
        let a = v(&t(6), Flavor::Witt, &z, &["2", "-1", "3", "0"]);
        let x = cyc_teichmuller(&a).unwrap();
        assert_eq!(cyc_teichmuller_inv(&x, &z).unwrap(), a);
        assert_eq!(cyc_nr_ghost(&x).unwrap(), cyc_witt_ghost(&a).unwrap());
    }
}
