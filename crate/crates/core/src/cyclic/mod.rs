//! Classical Witt vectors, the necklace ring and the aperiodic ring over a
//! finite divisor-closed truncation set.
//!
//! Index `n` corresponds to the subgroup of index `n` of the profinite
//! completion of ℤ; on `div(N)` this matches the class order of `C_N`.

mod ops;

use std::fmt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{divisors, RingSpec, RingValue};
use crate::burnside::{Flavor, Op, UniversalPolySet};
use crate::error::{Error, Result};

pub use ops::{
    aperiodic_poly, cyc_ap_ghost, cyc_ap_ghost_inv, cyc_ap_op, cyc_frobenius, cyc_ghost_system, cyc_nr_ghost,
    cyc_nr_ghost_inv, cyc_nr_op, cyc_teichmuller, cyc_teichmuller_inv, cyc_theta, cyc_theta_inv, cyc_verschiebung,
    cyc_witt_ghost, cyc_witt_op, necklace_poly, tau_classical,
};

/// A finite divisor-closed set of positive integers containing 1.
pub struct TruncationSet {
    members: Vec<u64>,
    pub(crate) universal: [OnceLock<Arc<UniversalPolySet>>; 3],
    pub(crate) q_universal: [OnceLock<Arc<UniversalPolySet>>; 3],
    pub(crate) q_special: Mutex<HashMap<(Op, i64), Arc<UniversalPolySet>>>,
}

impl fmt::Debug for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncationSet({:?})", self.members)
    }
}

impl PartialEq for TruncationSet {
    fn eq(&self, o: &Self) -> bool {
        self.members == o.members
    }
}

impl Eq for TruncationSet {}

impl TruncationSet {
    pub fn new(members: &[u64]) -> Result<Arc<Self>> {
        let mut m: Vec<u64> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&1) {
            return Err(Error::InvalidTruncation("a truncation set must contain 1 and only positive integers".into()));
        }
        for &n in &m {
            if let Some(d) = divisors(n).into_iter().find(|d| m.binary_search(d).is_err()) {
                return Err(Error::InvalidTruncation(format!("{n} is present but its divisor {d} is not")));
            }
        }
        Ok(Arc::new(TruncationSet {
            members: m,
            universal: Default::default(),
            q_universal: Default::default(),
            q_special: Default::default(),
        }))
    }

    /// `div(n)`, the divisors of `n`.
    pub fn divisors_of(n: u64) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidTruncation("div(0) is not finite".into()));
        }
        Self::new(&divisors(n))
    }

    /// `"12"` means `div(12)`; `"1,2,3"` lists members.
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let nums = parts
            .iter()
            .map(|p| p.parse::<u64>().map_err(|_| Error::InvalidTruncation(format!("bad truncation entry '{p}'"))))
            .collect::<Result<Vec<_>>>()?;
        if nums.len() == 1 {
            Self::divisors_of(nums[0])
        } else {
            Self::new(&nums)
        }
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max(&self) -> u64 {
        *self.members.last().expect("contains 1")
    }

    pub fn position(&self, n: u64) -> Option<usize> {
        self.members.binary_search(&n).ok()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.position(n).is_some()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(u64::to_string).collect()
    }

    /// `T/r = {n : rn ∈ T}`.
    pub fn divided_by(&self, r: u64) -> Arc<Self> {
        let m: Vec<u64> = self.members.iter().filter(|&&n| n % r == 0).map(|n| n / r).collect();
        Self::new(&m).expect("T/r is divisor-closed")
    }
}

/// A vector indexed by a truncation set.
#[derive(Clone)]
pub struct CyclicVector {
    trunc: Arc<TruncationSet>,
    flavor: Flavor,
    ring: Arc<RingSpec>,
    comps: Vec<RingValue>,
}

impl fmt::Debug for CyclicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.comps.iter().map(ToString::to_string).collect();
        write!(f, "{}[{:?} over {}]({})", self.flavor, self.trunc.members, self.ring, c.join(", "))
    }
}

impl PartialEq for CyclicVector {
    fn eq(&self, o: &Self) -> bool {
        self.trunc == o.trunc && self.flavor == o.flavor && self.ring == o.ring && self.comps == o.comps
    }
}

impl CyclicVector {
    pub fn new(trunc: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>, comps: Vec<RingValue>) -> Result<Self> {
        if comps.len() != trunc.len() {
            return Err(Error::ShapeMismatch(format!(
                "truncation set has {} members, got {} components",
                trunc.len(),
                comps.len()
            )));
        }
        if let Some(c) = comps.iter().find(|c| c.spec() != &**ring) {
            return Err(Error::RingMismatch(format!("component {c} is over {}, expected {ring}", c.spec())));
        }
        Ok(CyclicVector { trunc: trunc.clone(), flavor, ring: ring.clone(), comps })
    }

    pub fn parse(trunc: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>, comps: &[&str]) -> Result<Self> {
        let values = comps.iter().map(|s| RingValue::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(trunc, flavor, ring, values)
    }

    pub fn zero(trunc: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>) -> Self {
        CyclicVector { trunc: trunc.clone(), flavor, ring: ring.clone(), comps: vec![RingValue::zero(ring); trunc.len()] }
    }

    /// The vector with `value` at index `n` (which must lie in the truncation set).
    pub fn one_hot(trunc: &Arc<TruncationSet>, flavor: Flavor, n: u64, value: RingValue) -> Result<Self> {
        let i = trunc.position(n).ok_or_else(|| Error::InvalidTruncation(format!("{n} is not in the truncation set")))?;
        let ring = value.spec_arc().clone();
        let mut v = Self::zero(trunc, flavor, &ring);
        v.comps[i] = value;
        Ok(v)
    }

    pub fn identity(trunc: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>) -> Self {
        if flavor == Flavor::Ghost {
            let comps = vec![RingValue::one(ring); trunc.len()];
            return CyclicVector { trunc: trunc.clone(), flavor, ring: ring.clone(), comps };
        }
        Self::one_hot(trunc, flavor, 1, RingValue::one(ring)).expect("1 is a member")
    }

    pub fn truncation(&self) -> &Arc<TruncationSet> {
        &self.trunc
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

    /// Component at index `n`.
    pub fn at(&self, n: u64) -> Option<&RingValue> {
        self.trunc.position(n).map(|i| &self.comps[i])
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.comps.iter().map(ToString::to_string).collect()
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub(crate) fn from_parts(trunc: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>, comps: Vec<RingValue>) -> Self {
        debug_assert_eq!(comps.len(), trunc.len());
        CyclicVector { trunc: trunc.clone(), flavor, ring: ring.clone(), comps }
    }

    pub fn rationalize(&self) -> Self {
        let ring = Arc::new(self.ring.rationalization());
        let comps = self.comps.iter().map(|c| c.rationalize().narrow(&ring).expect("same shape")).collect();
        CyclicVector { trunc: self.trunc.clone(), flavor: self.flavor, ring, comps }
    }

    pub fn narrow(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .zip(&self.trunc.members)
            .map(|(c, n)| {
                c.narrow(target).map_err(|_| {
                    Error::NotInImage(format!("{} component at {n} = {c} does not lie in {target}", self.flavor))
                })
            })
            .collect::<Result<_>>()?;
        Ok(CyclicVector { trunc: self.trunc.clone(), flavor: self.flavor, ring: target.clone(), comps })
    }

    pub fn lift(&self) -> Self {
        let ring = Arc::new(self.ring.cover());
        let comps = self.comps.iter().map(|c| c.lift().narrow(&ring).expect("cover")).collect();
        CyclicVector { trunc: self.trunc.clone(), flavor: self.flavor, ring, comps }
    }

    pub fn reduce(&self, target: &Arc<RingSpec>) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.reduce(target)).collect::<Result<_>>()?;
        Ok(CyclicVector { trunc: self.trunc.clone(), flavor: self.flavor, ring: target.clone(), comps })
    }

    pub(crate) fn expect_flavor(&self, f: Flavor) -> Result<()> {
        if self.flavor != f {
            return Err(Error::ShapeMismatch(format!("expected a {f} vector, got {}", self.flavor)));
        }
        Ok(())
    }

    pub(crate) fn expect_compatible(&self, o: &Self) -> Result<()> {
        if self.trunc != o.trunc {
            return Err(Error::ShapeMismatch("vectors over different truncation sets".into()));
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_sets() {
        assert_eq!(TruncationSet::parse("12").unwrap().members(), &[1, 2, 3, 4, 6, 12]);
        assert_eq!(TruncationSet::parse("1, 2, 3").unwrap().members(), &[1, 2, 3]);
        assert!(TruncationSet::parse("1,4").is_err());
        assert!(TruncationSet::parse("2").unwrap().contains(2));
        assert!(TruncationSet::new(&[2]).is_err());
        assert_eq!(TruncationSet::parse("12").unwrap().divided_by(2).members(), &[1, 2, 3, 6]);
    }
}
