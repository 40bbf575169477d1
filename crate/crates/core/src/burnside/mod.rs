//! The Witt-Burnside, necklace and aperiodic functors of a finite group.
//!
//! Vectors carry one coefficient per conjugacy class of subgroups, in the
//! class order of the group's [`SubgroupClassTable`](crate::group::SubgroupClassTable).

mod indres;
pub(crate) mod linear;
mod ops;
mod quotient;
mod teich;
mod universal;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{RingSpec, RingValue};
use crate::error::{Error, Result};
use crate::group::GroupContext;

pub use crate::algebra::CoefficientStrategy;
pub use indres::{ghost_f, ghost_nu, ghost_nu_matrix, ind_ap, ind_nr, res_ap, res_nr, witt_f, witt_v};
pub use ops::{
    ap_ghost, ap_ghost_inv, ap_op, nr_ghost, nr_ghost_inv, nr_op, theta, theta_inv, wg_ghost, wg_op,
};
pub use quotient::QuotientVector;
pub use teich::{
    delta_membership, exp_m, exp_s, gamma, gamma_inv, teichmuller, teichmuller_inv, TeichTable,
};
pub use universal::{derive_universal, GhostSystem, GhostTerm, UniversalPolySet};
pub(crate) use universal::BurnsideCache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Witt,
    Necklace,
    Aperiodic,
    Ghost,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Witt" | "W" | "witt" => Ok(Flavor::Witt),
            "Necklace" | "Nr" | "necklace" => Ok(Flavor::Necklace),
            "Aperiodic" | "Ap" | "aperiodic" => Ok(Flavor::Aperiodic),
            "Ghost" | "Gh" | "ghost" => Ok(Flavor::Ghost),
            _ => Err(Error::Parse(format!("unknown flavor '{s}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Witt => "Witt",
            Flavor::Necklace => "Necklace",
            Flavor::Aperiodic => "Aperiodic",
            Flavor::Ghost => "Ghost",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ring operation selector shared by the functors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Mul,
    Neg,
}

impl Op {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "add" | "sum" => Ok(Op::Add),
            "mul" | "prod" => Ok(Op::Mul),
            "neg" => Ok(Op::Neg),
            _ => Err(Error::Parse(format!("unknown operation '{s}'"))),
        }
    }

    /// Name used for universal polynomials.
    pub fn poly_name(self) -> &'static str {
        match self {
            Op::Add => "sum",
            Op::Mul => "prod",
            Op::Neg => "neg",
        }
    }
}

/// An element of `W_G(R)`, `NR_G(R)`, `AP_G(R)` or the ghost ring.
#[derive(Clone)]
pub struct IndexedVector {
    ctx: Arc<GroupContext>,
    flavor: Flavor,
    ring: Arc<RingSpec>,
    comps: Vec<RingValue>,
}

impl fmt::Debug for IndexedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.comps.iter().map(ToString::to_string).collect();
        write!(f, "{}[{} over {}]({})", self.flavor, self.ctx.name(), self.ring, c.join(", "))
    }
}

impl PartialEq for IndexedVector {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &o.ctx) && self.flavor == o.flavor && self.ring == o.ring && self.comps == o.comps
    }
}

impl IndexedVector {
    pub fn new(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>, comps: Vec<RingValue>) -> Result<Self> {
        if comps.len() != ctx.class_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} has {} classes, got {} components",
                ctx.name(),
                ctx.class_count(),
                comps.len()
            )));
        }
        if let Some(c) = comps.iter().find(|c| c.spec() != &**ring) {
            return Err(Error::RingMismatch(format!("component {c} is over {}, expected {ring}", c.spec())));
        }
        Ok(IndexedVector { ctx: ctx.clone(), flavor, ring: ring.clone(), comps })
    }

    pub fn parse(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>, comps: &[&str]) -> Result<Self> {
        let values = comps.iter().map(|s| RingValue::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(ctx, flavor, ring, values)
    }

    pub fn zero(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>) -> Self {
        let comps = vec![RingValue::zero(ring); ctx.class_count()];
        IndexedVector { ctx: ctx.clone(), flavor, ring: ring.clone(), comps }
    }

    pub fn one_hot(ctx: &Arc<GroupContext>, flavor: Flavor, class: usize, value: RingValue) -> Self {
        let ring = value.spec_arc().clone();
        let mut v = Self::zero(ctx, flavor, &ring);
        v.comps[class] = value;
        v
    }

    /// Multiplicative identity of `NR_G`, `AP_G` and the ghost ring (`e_G = 1`)
    /// or of `W_G` (`α(G) = 1`).
    pub fn identity(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>) -> Self {
        if flavor == Flavor::Ghost {
            let comps = vec![RingValue::one(ring); ctx.class_count()];
            return IndexedVector { ctx: ctx.clone(), flavor, ring: ring.clone(), comps };
        }
        Self::one_hot(ctx, flavor, 0, RingValue::one(ring))
    }

    pub fn ctx(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn components(&self) -> &[RingValue] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RingValue {
        &self.comps[i]
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ctx.labels()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.comps.iter().map(ToString::to_string).collect()
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub(crate) fn from_parts(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>, comps: Vec<RingValue>) -> Self {
        debug_assert_eq!(comps.len(), ctx.class_count());
        IndexedVector { ctx: ctx.clone(), flavor, ring: ring.clone(), comps }
    }

    /// Image in `R ⊗ ℚ` (residues map through their canonical lifts).
    pub fn rationalize(&self) -> Self {
        let ring = Arc::new(self.ring.rationalization());
        let comps = self.comps.iter().map(|c| c.rationalize().narrow(&ring).expect("same shape")).collect();
        IndexedVector { ctx: self.ctx.clone(), flavor: self.flavor, ring, comps }
    }

    /// Moves every component into `target`, failing with `NotInImage`.
    pub fn narrow(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.narrow(target).map_err(|_| {
                    Error::NotInImage(format!(
                        "{} component at {} = {c} does not lie in {target}",
                        self.flavor,
                        self.ctx.table().class(i).label
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(IndexedVector { ctx: self.ctx.clone(), flavor: self.flavor, ring: target.clone(), comps })
    }

    /// Canonical lift of residue components to ℤ.
    pub fn lift(&self) -> Self {
        let ring = Arc::new(self.ring.cover());
        let comps = self.comps.iter().map(|c| c.lift().narrow(&ring).expect("cover")).collect();
        IndexedVector { ctx: self.ctx.clone(), flavor: self.flavor, ring, comps }
    }

    /// Componentwise image under `ℤ → ℤ/m`.
    pub fn reduce(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.reduce(target)).collect::<Result<_>>()?;
        Ok(IndexedVector { ctx: self.ctx.clone(), flavor: self.flavor, ring: target.clone(), comps })
    }

    pub(crate) fn expect_flavor(&self, f: Flavor) -> Result<()> {
        if self.flavor != f {
            return Err(Error::ShapeMismatch(format!("expected a {f} vector, got {}", self.flavor)));
        }
        Ok(())
    }

    pub(crate) fn expect_compatible(&self, o: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &o.ctx) {
            return Err(Error::ShapeMismatch(format!(
                "vectors over different groups ({} and {})",
                self.ctx.name(),
                o.ctx.name()
            )));
        }
        if self.flavor != o.flavor {
            return Err(Error::ShapeMismatch(format!("flavors differ: {} and {}", self.flavor, o.flavor)));
        }
        if self.ring != o.ring {
            return Err(Error::RingMismatch(format!("rings differ: {} and {}", self.ring, o.ring)));
        }
        Ok(())
    }
}
