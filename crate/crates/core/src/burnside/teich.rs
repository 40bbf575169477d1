use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ops::{theta, theta_inv};
use super::{Flavor, IndexedVector};
use crate::algebra::{CoefficientStrategy, CommRing, RingSpec, RingValue};
use crate::error::{Error, Result};
use crate::group::GroupContext;

/// `τ(α)_W = Σ c · α(U)^e` over the stored `(U, e, c)` triples for `W`.
///
/// Built from the exponential polynomials `M_U(r, V)` of every class
/// representative `U` (solved in `U`'s own lattice) fused into G-classes.
#[derive(Clone, Debug)]
pub struct TeichTable {
    terms: Vec<Vec<(usize, u64, BigRational)>>,
}

/// `M_U(r, V)` for all classes `V` of the group of `ctx`, as sparse polynomials in `r`.
fn exponential_polys(ctx: &GroupContext) -> Vec<BTreeMap<u64, BigRational>> {
    let n = ctx.class_count();
    let mut x: Vec<BTreeMap<u64, BigRational>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut rest: BTreeMap<u64, BigRational> = BTreeMap::from([(ctx.index(v) as u64, BigRational::one())]);
        for (w, xw) in x.iter().enumerate() {
            let m = ctx.mark(w, v);
            if m == 0 {
                continue;
            }
            for (e, c) in xw {
                *rest.entry(*e).or_insert_with(BigRational::zero) -= c * BigRational::from_integer(m.into());
            }
        }
        let d = BigRational::from_integer(ctx.mark(v, v).into());
        x.push(rest.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, c / &d)).collect());
    }
    x
}

impl TeichTable {
    pub fn build(ctx: &GroupContext) -> Self {
        let n = ctx.class_count();
        let mut acc: Vec<BTreeMap<(usize, u64), BigRational>> = vec![BTreeMap::new(); n];
        for u in 0..n {
            let sub = ctx.subgroup_context(u);
            let fuse = ctx.ind_class_map(u);
            for (v, poly) in exponential_polys(&sub).into_iter().enumerate() {
                for (e, c) in poly {
                    *acc[fuse[v]].entry((u, e)).or_insert_with(BigRational::zero) += c;
                }
            }
        }
        let terms: Vec<Vec<(usize, u64, BigRational)>> = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).map(|((u, e), c)| (u, e, c)).collect())
            .collect();
        for (w, row) in terms.iter().enumerate() {
            let own: Vec<_> = row.iter().filter(|t| t.0 == w).collect();
            assert!(own.len() == 1 && own[0].1 == 1 && own[0].2.is_one(), "τ is unitriangular");
            assert!(row.iter().all(|t| t.0 <= w), "τ is triangular");
        }
        TeichTable { terms }
    }

    pub fn terms(&self, w: usize) -> &[(usize, u64, BigRational)] {
        &self.terms[w]
    }
}

impl GroupContext {
    pub fn teich_table(&self) -> &TeichTable {
        self.cache.teich.get_or_init(|| TeichTable::build(self))
    }
}

fn eval_term(alpha: &[RingValue], u: usize, e: u64, c: &BigRational) -> RingValue {
    alpha[u].ring_pow(e).scale_rational(c).expect("ℚ-algebra arithmetic")
}

/// τ over a ℚ-algebra.
fn tau_direct(alpha: &IndexedVector) -> IndexedVector {
    let table = alpha.ctx.teich_table();
    let comps = (0..alpha.len())
        .map(|w| {
            table
                .terms(w)
                .iter()
                .fold(RingValue::zero(&alpha.ring), |acc, (u, e, c)| acc.ring_add(&eval_term(&alpha.comps, *u, *e, c)))
        })
        .collect();
    IndexedVector::from_parts(&alpha.ctx, Flavor::Necklace, &alpha.ring, comps)
}

/// τ⁻¹ over a ℚ-algebra by forward substitution (no division needed).
fn tau_inv_direct(x: &IndexedVector) -> IndexedVector {
    let table = x.ctx.teich_table();
    let mut alpha: Vec<RingValue> = Vec::with_capacity(x.len());
    for w in 0..x.len() {
        let mut rest = x.comps[w].clone();
        for (u, e, c) in table.terms(w) {
            if *u != w {
                rest = rest.ring_sub(&eval_term(&alpha, *u, *e, c));
            }
        }
        alpha.push(rest);
    }
    IndexedVector::from_parts(&x.ctx, Flavor::Witt, &x.ring, alpha)
}

/// The Teichmüller map `τ: W_G(R) → Δ_G(R)`.
///
/// * ℚ-algebras: computed directly.
/// * Torsion-free `R`: computed in `R ⊗ ℚ`; the result is returned over `R`
///   when `R` is binomial (its components are then integral), and over
///   `R ⊗ ℚ` otherwise, where `Δ_G(R)` is the image of `τ`.
/// * `ℤ/m`: the canonical representative `τ_ℤ(lift α)` over ℤ.
pub fn teichmuller(alpha: &IndexedVector) -> Result<IndexedVector> {
    alpha.expect_flavor(Flavor::Witt)?;
    match alpha.ring.strategy() {
        CoefficientStrategy::QAlgebra => Ok(tau_direct(alpha)),
        CoefficientStrategy::TorsionFree => {
            let x = tau_direct(&alpha.rationalize());
            if alpha.ring.is_binomial() {
                x.narrow(&alpha.ring).map_err(|e| Error::NotBinomial(e.to_string()))
            } else {
                Ok(x)
            }
        }
        CoefficientStrategy::Quotient => {
            let z = alpha.lift();
            let x = tau_direct(&z.rationalize());
            Ok(x.narrow(z.ring()).expect("ℤ is binomial"))
        }
    }
}

/// Inverse of [`teichmuller`]: recovers Witt coordinates in `target`.
///
/// `x` may be over `target`, over `target ⊗ ℚ`, or (for `ℤ/m`) over ℤ.
pub fn teichmuller_inv(x: &IndexedVector, target: &Arc<RingSpec>) -> Result<IndexedVector> {
    x.expect_flavor(Flavor::Necklace)?;
    let accepted = match target.strategy() {
        CoefficientStrategy::QAlgebra => **x.ring() == **target,
        CoefficientStrategy::TorsionFree => **x.ring() == **target || **x.ring() == target.rationalization(),
        CoefficientStrategy::Quotient => **x.ring() == RingSpec::Integers,
    };
    if !accepted {
        return Err(Error::RingMismatch(format!("cannot read a necklace vector over {} as Δ_G({target})", x.ring())));
    }
    let xq = if x.ring.is_q_algebra() { x.clone() } else { x.rationalize() };
    let alpha = tau_inv_direct(&xq);
    match target.strategy() {
        CoefficientStrategy::Quotient => alpha.narrow(x.ring())?.reduce(target),
        _ => alpha.narrow(target),
    }
}

/// `M_G(r, ·)`: the image under τ of the Witt vector with `α(G) = r`.
pub fn exp_m(ctx: &Arc<GroupContext>, r: &RingValue) -> Result<IndexedVector> {
    let ring = r.spec_arc();
    let alpha = IndexedVector::one_hot(ctx, Flavor::Witt, 0, r.clone());
    if ring.is_q_algebra() {
        return Ok(tau_direct(&alpha));
    }
    let x = tau_direct(&alpha.rationalize());
    x.narrow(ring).map_err(|e| {
        if ring.is_binomial() {
            Error::NotBinomial(format!("integrality failed in a binomial ring: {e}"))
        } else {
            Error::NotBinomial(format!("{ring} is not a binomial ring: {e}"))
        }
    })
}

/// `S_G(r, ·) = θ(M_G(r, ·))`.
pub fn exp_s(ctx: &Arc<GroupContext>, r: &RingValue) -> Result<IndexedVector> {
    theta(&exp_m(ctx, r)?)
}

/// `γ = θ ∘ τ`.
pub fn gamma(alpha: &IndexedVector) -> Result<IndexedVector> {
    theta(&teichmuller(alpha)?)
}

pub fn gamma_inv(x: &IndexedVector, target: &Arc<RingSpec>) -> Result<IndexedVector> {
    x.expect_flavor(Flavor::Aperiodic)?;
    let xq = if x.ring.is_q_algebra() { x.clone() } else { x.rationalize() };
    let n = theta_inv(&xq)?;
    let n = if target.strategy() == CoefficientStrategy::Quotient { n.narrow(&RingSpec::Integers.arc())? } else { n };
    teichmuller_inv(&n, target)
}

/// Whether a necklace vector with coordinates in `R ⊗ ℚ` lies in `Δ_G(R) = τ(W_G(R))`.
pub fn delta_membership(x: &IndexedVector, ring: &Arc<RingSpec>) -> bool {
    teichmuller_inv(x, ring).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{nr_ghost, wg_ghost};

    fn setup(g: &str, r: &str) -> (Arc<GroupContext>, Arc<RingSpec>) {
        (GroupContext::parse(g).unwrap(), RingSpec::parse(r).unwrap().arc())
    }

    #[test]
    fn c2_teichmuller() {
        let (c2, q) = setup("C2", "QPoly(r,s)");
        let alpha = IndexedVector::parse(&c2, Flavor::Witt, &q, &["r", "s"]).unwrap();
        let t = teichmuller(&alpha).unwrap();
        assert_eq!(t.to_strings(), vec!["r", "1/2*r^2-1/2*r+s"]);
        assert_eq!(gamma(&alpha).unwrap().to_strings(), vec!["r", "r^2-r+2*s"]);
        assert_eq!(teichmuller_inv(&t, &q).unwrap(), alpha);
    }

    #[test]
    fn exponential_examples() {
        let (c2, z) = setup("C2", "Z");
        let one = RingValue::one(&z);
        assert_eq!(exp_m(&c2, &one).unwrap().to_strings(), vec!["1", "0"]);
        let two = RingValue::from_int(&z, 2);
        assert_eq!(exp_m(&c2, &two).unwrap().to_strings(), vec!["2", "1"]);
        assert_eq!(exp_s(&c2, &two).unwrap().to_strings(), vec!["2", "2"]);
        let zp = RingSpec::parse("ZPoly(x)").unwrap().arc();
        let x = RingValue::var(&zp, "x").unwrap();
        assert!(matches!(exp_m(&c2, &x), Err(Error::NotBinomial(_))));
    }

    #[test]
    fn membership() {
        let (c2, z) = setup("C2", "Z");
        let q = RingSpec::Rationals.arc();
        let two = RingValue::from_int(&z, 2);
        let m = exp_m(&c2, &two).unwrap().rationalize();
        assert!(delta_membership(&m, &z));
        let half = IndexedVector::parse(&c2, Flavor::Necklace, &q, &["0", "1/2"]).unwrap();
        assert!(!delta_membership(&half, &z));
    }

    #[test]
    fn ghost_diagram_on_s3() {
        let (s3, q) = setup("S3", "QPoly(a,b,c,d)");
        let alpha = IndexedVector::parse(&s3, Flavor::Witt, &q, &["a", "b", "c", "d"]).unwrap();
        let lhs = wg_ghost(&alpha).unwrap();
        let rhs = nr_ghost(&teichmuller(&alpha).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
