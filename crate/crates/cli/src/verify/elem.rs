//! A uniform view of ring elements for the axiom and homomorphism checks.

use std::fmt::Debug;
use std::sync::Arc;

use witt_burnside::burnside::{ap_ghost, ap_op, nr_ghost, nr_op, wg_ghost, wg_op};
use witt_burnside::cyclic::{cyc_ap_op, cyc_nr_op, cyc_witt_op};
use witt_burnside::qdeform::{q_ap_op, q_nr_op, q_witt_op};
use witt_burnside::{
    CommRing, CyclicVector, Flavor, IndexedVector, Op, QParam, QuotientVector, RingSpec, RingValue, Result,
};

pub trait Elem: Clone + PartialEq + Debug {
    fn op(&self, op: Op, other: Option<&Self>) -> Result<Self>;

    fn add(&self, o: &Self) -> Result<Self> {
        self.op(Op::Add, Some(o))
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        self.op(Op::Mul, Some(o))
    }
}

impl Elem for IndexedVector {
    fn op(&self, op: Op, other: Option<&Self>) -> Result<Self> {
        match self.flavor() {
            Flavor::Witt => wg_op(op, self, other),
            Flavor::Necklace => nr_op(op, self, other),
            Flavor::Aperiodic => ap_op(op, self, other),
            Flavor::Ghost => ghost_op(op, self, other),
        }
    }
}

impl Elem for QuotientVector {
    fn op(&self, op: Op, other: Option<&Self>) -> Result<Self> {
        QuotientVector::op(self, op, other)
    }
}

/// A cyclic vector together with the deformation parameter it lives under;
/// `None` is the classical case.
#[derive(Clone, PartialEq, Debug)]
pub struct Cyc {
    pub q: Option<QParam>,
    pub v: CyclicVector,
}

impl Elem for Cyc {
    fn op(&self, op: Op, other: Option<&Self>) -> Result<Self> {
        let o = other.map(|c| &c.v);
        let v = match (self.v.flavor(), self.q) {
            (Flavor::Witt, None) => cyc_witt_op(op, &self.v, o)?,
            (Flavor::Witt, Some(q)) => q_witt_op(q, op, &self.v, o)?,
            (Flavor::Necklace, None) => cyc_nr_op(op, &self.v, o)?,
            (Flavor::Necklace, Some(q)) => q_nr_op(q, op, &self.v, o)?,
            (Flavor::Aperiodic, None) => cyc_ap_op(op, &self.v, o)?,
            (Flavor::Aperiodic, Some(q)) => q_ap_op(q, op, &self.v, o)?,
            (Flavor::Ghost, _) => {
                let comps = zip_op(op, self.v.components(), o.map(CyclicVector::components));
                CyclicVector::new(self.v.truncation(), Flavor::Ghost, self.v.ring(), comps)?
            }
        };
        Ok(Cyc { q: self.q, v })
    }
}

pub fn zip_op(op: Op, a: &[RingValue], b: Option<&[RingValue]>) -> Vec<RingValue> {
    match (op, b) {
        (Op::Neg, _) | (_, None) => a.iter().map(CommRing::ring_neg).collect(),
        (Op::Add, Some(b)) => a.iter().zip(b).map(|(x, y)| x.ring_add(y)).collect(),
        (Op::Mul, Some(b)) => a.iter().zip(b).map(|(x, y)| x.ring_mul(y)).collect(),
    }
}

/// Componentwise operation in the ghost ring.
pub fn ghost_op(op: Op, a: &IndexedVector, b: Option<&IndexedVector>) -> Result<IndexedVector> {
    let comps = zip_op(op, a.components(), b.map(IndexedVector::components));
    IndexedVector::new(a.ctx(), Flavor::Ghost, a.ring(), comps)
}

/// The ghost map of the element's own flavor.
pub fn ghost_of(x: &IndexedVector) -> Result<IndexedVector> {
    match x.flavor() {
        Flavor::Witt => wg_ghost(x),
        Flavor::Necklace => nr_ghost(x),
        Flavor::Aperiodic => ap_ghost(x),
        Flavor::Ghost => Ok(x.clone()),
    }
}

/// Brings a vector computed over ℤ, `R` or `R ⊗ ℚ` into a form comparable with
/// vectors over `ring`: reduction for residue rings, rationalization otherwise.
pub fn canon(v: &IndexedVector, ring: &Arc<RingSpec>) -> Result<IndexedVector> {
    if ring.modulus().is_some() {
        if v.ring() == ring {
            Ok(v.clone())
        } else {
            v.reduce(ring)
        }
    } else {
        Ok(v.rationalize())
    }
}

/// Commutativity, associativity and distributivity on one triple.
pub fn axioms<E: Elem>(t: &mut super::Tally, case: &str, a: &E, b: &E, c: &E) {
    t.eval(|| format!("{case}/add-commutative"), || Ok((a.add(b)?, b.add(a)?)));
    t.eval(|| format!("{case}/mul-commutative"), || Ok((a.mul(b)?, b.mul(a)?)));
    t.eval(|| format!("{case}/add-associative"), || Ok((a.add(b)?.add(c)?, a.add(&b.add(c)?)?)));
    t.eval(|| format!("{case}/mul-associative"), || Ok((a.mul(b)?.mul(c)?, a.mul(&b.mul(c)?)?)));
    t.eval(|| format!("{case}/distributive"), || Ok((a.mul(&b.add(c)?)?, a.mul(b)?.add(&a.mul(c)?)?)));
}
