//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use witt_burnside::{CyclicVector, Flavor, GroupContext, IndexedVector, RingSpec, RingValue, TruncationSet};

/// A deterministic integer vector over `ctx` with small entries.
pub fn group_vector(ctx: &Arc<GroupContext>, flavor: Flavor, seed: i64) -> IndexedVector {
    let z = RingSpec::Integers.arc();
    let comps = (0..ctx.class_count() as i64).map(|k| RingValue::from_int(&z, (seed * 7 + k * 3) % 11 - 5)).collect();
    IndexedVector::new(ctx, flavor, &z, comps).expect("shape matches")
}

/// A deterministic integer vector on `t`.
pub fn cyclic_vector(t: &Arc<TruncationSet>, flavor: Flavor, seed: i64) -> CyclicVector {
    let z = RingSpec::Integers.arc();
    let comps = (0..t.len() as i64).map(|k| RingValue::from_int(&z, (seed * 5 + k * 3) % 9 - 4)).collect();
    CyclicVector::new(t, flavor, &z, comps).expect("shape matches")
}
