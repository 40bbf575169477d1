use std::fmt;
use std::sync::Arc;

use super::ops::{ap_ghost, ap_op, nr_ghost, nr_op};
use super::teich::{gamma, gamma_inv, teichmuller, teichmuller_inv};
use super::{Flavor, IndexedVector, Op};
use crate::algebra::{CoefficientStrategy, RingSpec};
use crate::error::{Error, Result};

/// An element of `Δ_G(ℤ/m)` or `𝒜𝒫_G(ℤ/m)`, stored by its Witt coordinates.
///
/// The element is the class of `τ_ℤ(α̂)` (or `γ_ℤ(α̂)`) modulo the image of the
/// kernel, where `α̂` is the canonical lift of the stored Witt vector `α`.
/// Componentwise reduction of that representative is not well defined on
/// classes, so operations go through representatives and back through `τ⁻¹`.
#[derive(Clone, PartialEq)]
pub struct QuotientVector {
    flavor: Flavor,
    witt: IndexedVector,
}

impl fmt::Debug for QuotientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{:?}", self.flavor, self.witt)
    }
}

impl QuotientVector {
    pub fn from_witt(flavor: Flavor, alpha: IndexedVector) -> Result<Self> {
        if !matches!(flavor, Flavor::Necklace | Flavor::Aperiodic) {
            return Err(Error::ShapeMismatch(format!("quotient vectors are Necklace or Aperiodic, not {flavor}")));
        }
        alpha.expect_flavor(Flavor::Witt)?;
        if alpha.ring().strategy() != CoefficientStrategy::Quotient {
            return Err(Error::RingMismatch(format!("{} is not a residue ring", alpha.ring())));
        }
        Ok(QuotientVector { flavor, witt: alpha })
    }

    /// The class of an integral representative `x` (over ℤ) in the quotient over `target`.
    pub fn from_representative(x: &IndexedVector, target: &Arc<RingSpec>) -> Result<Self> {
        let alpha = match x.flavor() {
            Flavor::Necklace => teichmuller_inv(x, target)?,
            Flavor::Aperiodic => gamma_inv(x, target)?,
            f => return Err(Error::ShapeMismatch(format!("no quotient picture for {f}"))),
        };
        Self::from_witt(x.flavor(), alpha)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.witt.ring()
    }

    pub fn witt(&self) -> &IndexedVector {
        &self.witt
    }

    /// Canonical representative over ℤ: `τ_ℤ` or `γ_ℤ` of the lifted Witt vector.
    pub fn representative(&self) -> IndexedVector {
        let lifted = self.witt.lift();
        let r = match self.flavor {
            Flavor::Necklace => teichmuller(&lifted),
            _ => gamma(&lifted),
        };
        let r = r.expect("ℤ is binomial");
        if r.ring().is_q_algebra() {
            r.narrow(&RingSpec::Integers.arc()).expect("integral over ℤ")
        } else {
            r
        }
    }

    pub fn op(&self, op: Op, other: Option<&Self>) -> Result<Self> {
        if let Some(o) = other {
            if o.flavor != self.flavor {
                return Err(Error::ShapeMismatch(format!("flavors differ: {} and {}", self.flavor, o.flavor)));
            }
            self.witt.expect_compatible(&o.witt)?;
        }
        let x = self.representative();
        let y = other.map(Self::representative);
        let z = match self.flavor {
            Flavor::Necklace => nr_op(op, &x, y.as_ref())?,
            _ => ap_op(op, &x, y.as_ref())?,
        };
        Self::from_representative(&z, self.ring())
    }

    /// Ghost image: ghost of the representative, reduced mod m.
    pub fn ghost(&self) -> Result<IndexedVector> {
        let x = self.representative();
        let g = match self.flavor {
            Flavor::Necklace => nr_ghost(&x)?,
            _ => ap_ghost(&x)?,
        };
        g.reduce(self.ring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{wg_ghost, wg_op};
    use crate::group::GroupContext;

    #[test]
    fn operations_match_witt_ring() {
        let s3 = GroupContext::parse("S3").unwrap();
        let r = RingSpec::parse("Z/8").unwrap().arc();
        let a = IndexedVector::parse(&s3, Flavor::Witt, &r, &["3", "5", "7", "2"]).unwrap();
        let b = IndexedVector::parse(&s3, Flavor::Witt, &r, &["6", "1", "4", "3"]).unwrap();
        for flavor in [Flavor::Necklace, Flavor::Aperiodic] {
            let qa = QuotientVector::from_witt(flavor, a.clone()).unwrap();
            let qb = QuotientVector::from_witt(flavor, b.clone()).unwrap();
            for op in [Op::Add, Op::Mul] {
                let got = qa.op(op, Some(&qb)).unwrap();
                assert_eq!(got.witt(), &wg_op(op, &a, Some(&b)).unwrap());
            }
            assert_eq!(qa.op(Op::Neg, None).unwrap().witt(), &wg_op(Op::Neg, &a, None).unwrap());
        }
        let qa = QuotientVector::from_witt(Flavor::Necklace, a.clone()).unwrap();
        assert_eq!(qa.ghost().unwrap(), wg_ghost(&a).unwrap());
    }

    #[test]
    fn componentwise_reduction_is_not_well_defined() {
        // Over C2, the necklace vectors (2, 0) and (0, 0) over ℤ agree mod 2,
        // but their Witt coordinates (2, -1) and (0, 0) do not.
        let c2 = GroupContext::parse("C2").unwrap();
        let z = RingSpec::Integers.arc();
        let m = RingSpec::parse("Z/2").unwrap().arc();
        let x = IndexedVector::parse(&c2, Flavor::Necklace, &z, &["2", "0"]).unwrap();
        assert_eq!(teichmuller_inv(&x, &z).unwrap().to_strings(), vec!["2", "-1"]);
        let qx = QuotientVector::from_representative(&x, &m).unwrap();
        let q0 = QuotientVector::from_representative(&IndexedVector::zero(&c2, Flavor::Necklace, &z), &m).unwrap();
        assert_ne!(qx, q0);
        assert_eq!(x.reduce(&m).unwrap(), IndexedVector::zero(&c2, Flavor::Necklace, &m));
    }
}
