//! Seeded random elements for the verification suites.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use witt_burnside::burnside::theta;
use witt_burnside::{
    CoeffKind, CommRing, CyclicVector, Flavor, GroupContext, IndexedVector, QuotientVector, RingSpec, RingValue,
    TruncationSet,
};

/// A generator whose stream depends only on `seed` and `stream`, so results do
/// not depend on the order in which checks run.
pub fn rng_for(seed: u64, stream: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(stream.as_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest[..32]);
    ChaCha8Rng::from_seed(key)
}

/// A small random element: integers in [-6, 6], fractions with denominators up
/// to 4, residues, or linear polynomials `c0 + c1*x + c2*y` with |c| ≤ 3.
pub fn ring_value(rng: &mut impl Rng, ring: &Arc<RingSpec>) -> RingValue {
    match &**ring {
        RingSpec::Integers => RingValue::from_int(ring, rng.random_range(-6..=6)),
        RingSpec::Rationals => {
            let c = BigRational::new(BigInt::from(rng.random_range(-6..=6)), BigInt::from(rng.random_range(1..=4)));
            RingValue::from_rational(ring, &c).expect("ℚ contains every fraction")
        }
        RingSpec::Residue(m) => RingValue::from_int(ring, rng.random_range(0..*m as i64)),
        RingSpec::QPoly | RingSpec::MultiPoly { .. } => {
            let rational = matches!(&**ring, RingSpec::QPoly | RingSpec::MultiPoly { coeffs: CoeffKind::Rationals, .. });
            let coeff = |rng: &mut dyn rand::RngCore| -> RingValue {
                let n = rng.random_range(-3..=3);
                if rational {
                    let d = rng.random_range(1..=3);
                    RingValue::from_rational(ring, &BigRational::new(n.into(), BigInt::from(d))).expect("ℚ coefficients")
                } else {
                    RingValue::from_int(ring, n)
                }
            };
            let mut acc = coeff(rng);
            for v in ring.var_names() {
                let x = RingValue::var(ring, &v).expect("declared variable");
                acc = acc.ring_add(&coeff(rng).ring_mul(&x));
            }
            acc
        }
    }
}

pub fn values(rng: &mut impl Rng, ring: &Arc<RingSpec>, n: usize) -> Vec<RingValue> {
    (0..n).map(|_| ring_value(rng, ring)).collect()
}

pub fn indexed(rng: &mut impl Rng, ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>) -> IndexedVector {
    IndexedVector::new(ctx, flavor, ring, values(rng, ring, ctx.class_count())).expect("shape and ring agree")
}

pub fn cyclic(rng: &mut impl Rng, t: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>) -> CyclicVector {
    CyclicVector::new(t, flavor, ring, values(rng, ring, t.len())).expect("shape and ring agree")
}

/// An element of `𝒜𝒫_G(R)` over a torsion-free `R`: uniform when the aperiodic
/// constants are integral (or `R ⊇ ℚ`), otherwise the image of a random
/// necklace vector under θ.
pub fn aperiodic(rng: &mut impl Rng, ctx: &Arc<GroupContext>, ring: &Arc<RingSpec>) -> IndexedVector {
    if ring.is_q_algebra() || ctx.structure_constants().aperiodic_integral() {
        indexed(rng, ctx, Flavor::Aperiodic, ring)
    } else {
        theta(&indexed(rng, ctx, Flavor::Necklace, ring)).expect("θ is defined on every necklace vector")
    }
}

/// A necklace or aperiodic element over `ℤ/m`, kept by Witt coordinates.
pub fn quotient(rng: &mut impl Rng, ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>) -> QuotientVector {
    QuotientVector::from_witt(flavor, indexed(rng, ctx, Flavor::Witt, ring)).expect("residue ring")
}

/// `--ring` names used by the suites: ℤ, ℚ, ℤ/8 and ℤ[x, y].
pub fn standard_rings() -> Vec<Arc<RingSpec>> {
    ["Z", "Q", "Z/8", "ZPoly(x,y)"].iter().map(|s| RingSpec::parse(s).expect("valid ring").arc()).collect()
}

pub const STANDARD_GROUPS: [&str; 5] = ["C2", "C4", "C6", "S3", "D4"];
