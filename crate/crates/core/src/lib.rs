//! Exact computation in the Witt-Burnside ring functor, the necklace functor
//! and the aperiodic functor of a finite group, together with the classical
//! and q-deformed cyclic cases.

pub mod algebra;
pub mod error;

pub use algebra::{
    divisors, gcd, lcm, mobius, CoeffKind, CoefficientStrategy, CommRing, Poly, QPolynomial, RingSpec, RingValue,
    UniTriMatrix,
};
pub use error::{Error, Result};

pub mod burnside;
pub mod group;

pub use burnside::{Flavor, IndexedVector, Op, QuotientVector, UniversalPolySet};
pub use group::{BuildOptions, FiniteGroup, GroupContext, SubgroupClassTable};
pub mod cyclic;

pub use cyclic::{CyclicVector, TruncationSet};
pub mod qdeform;

pub use qdeform::{QParam, TruncatedCurve};
