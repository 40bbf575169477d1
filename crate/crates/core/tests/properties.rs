use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use witt_burnside::burnside::*;
use witt_burnside::cyclic::*;
use witt_burnside::qdeform::{q_nr_ghost, q_nr_op, q_teichmuller, q_teichmuller_inv, q_witt_ghost, q_witt_op};
use witt_burnside::{
    divisors, mobius, CommRing, CyclicVector, Flavor, GroupContext, Op, QParam, RingSpec, RingValue, TruncationSet,
};

fn s3() -> &'static Arc<GroupContext> {
    static CTX: OnceLock<Arc<GroupContext>> = OnceLock::new();
    CTX.get_or_init(|| GroupContext::parse("S3").unwrap())
}

fn z() -> Arc<RingSpec> {
    RingSpec::Integers.arc()
}

fn vector(flavor: Flavor) -> impl Strategy<Value = IndexedVector> {
    prop::collection::vec(-6i64..=6, 4).prop_map(move |c| {
        let z = z();
        IndexedVector::new(s3(), flavor, &z, c.into_iter().map(|k| RingValue::from_int(&z, k)).collect()).unwrap()
    })
}

fn cyclic(flavor: Flavor) -> impl Strategy<Value = CyclicVector> {
    prop::collection::vec(-6i64..=6, 6).prop_map(move |c| {
        let z = z();
        let t = TruncationSet::divisors_of(12).unwrap();
        CyclicVector::new(&t, flavor, &z, c.into_iter().map(|k| RingValue::from_int(&z, k)).collect()).unwrap()
    })
}

fn times(a: &[RingValue], b: &[RingValue]) -> Vec<RingValue> {
    a.iter().zip(b).map(|(x, y)| x.ring_mul(y)).collect()
}

fn plus(a: &[RingValue], b: &[RingValue]) -> Vec<RingValue> {
    a.iter().zip(b).map(|(x, y)| x.ring_add(y)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_sums_vanish(n in 1u64..2000) {
        let s: i64 = divisors(n).into_iter().map(mobius).sum();
        prop_assert_eq!(s, i64::from(n == 1));
    }

    #[test]
    fn witt_ring_axioms(a in vector(Flavor::Witt), b in vector(Flavor::Witt), c in vector(Flavor::Witt)) {
        let add = |x: &IndexedVector, y: &IndexedVector| wg_op(Op::Add, x, Some(y)).unwrap();
        let mul = |x: &IndexedVector, y: &IndexedVector| wg_op(Op::Mul, x, Some(y)).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        let neg = wg_op(Op::Neg, &a, None).unwrap();
        prop_assert_eq!(add(&a, &neg), IndexedVector::zero(s3(), Flavor::Witt, &z()));
        prop_assert_eq!(mul(&IndexedVector::identity(s3(), Flavor::Witt, &z()), &a), a);
    }

    #[test]
    fn ghosts_are_homomorphisms(a in vector(Flavor::Witt), b in vector(Flavor::Witt), x in vector(Flavor::Necklace), y in vector(Flavor::Necklace)) {
        let (ga, gb) = (wg_ghost(&a).unwrap(), wg_ghost(&b).unwrap());
        prop_assert_eq!(wg_ghost(&wg_op(Op::Mul, &a, Some(&b)).unwrap()).unwrap().components().to_vec(), times(ga.components(), gb.components()));
        prop_assert_eq!(wg_ghost(&wg_op(Op::Add, &a, Some(&b)).unwrap()).unwrap().components().to_vec(), plus(ga.components(), gb.components()));
        let (gx, gy) = (nr_ghost(&x).unwrap(), nr_ghost(&y).unwrap());
        prop_assert_eq!(nr_ghost(&nr_op(Op::Mul, &x, Some(&y)).unwrap()).unwrap().components().to_vec(), times(gx.components(), gy.components()));
        let (ux, uy) = (theta(&x).unwrap(), theta(&y).unwrap());
        prop_assert_eq!(ap_op(Op::Mul, &ux, Some(&uy)).unwrap(), theta(&nr_op(Op::Mul, &x, Some(&y)).unwrap()).unwrap());
    }

    #[test]
    fn teichmuller_round_trip(a in vector(Flavor::Witt)) {
        let t = teichmuller(&a).unwrap();
        prop_assert_eq!(teichmuller_inv(&t, &z()).unwrap(), a.clone());
        prop_assert_eq!(gamma_inv(&gamma(&a).unwrap(), &z()).unwrap(), a);
    }

    #[test]
    fn cyclic_associativity_and_teichmuller(x in cyclic(Flavor::Necklace), y in cyclic(Flavor::Necklace), w in cyclic(Flavor::Necklace)) {
        let mul = |p: &CyclicVector, q: &CyclicVector| cyc_nr_op(Op::Mul, p, Some(q)).unwrap();
        prop_assert_eq!(mul(&mul(&x, &y), &w), mul(&x, &mul(&y, &w)));
        let a = x.with_flavor(Flavor::Witt);
        prop_assert_eq!(cyc_teichmuller_inv(&cyc_teichmuller(&a).unwrap(), &z()).unwrap(), a);
    }

    #[test]
    fn q_ghosts_are_homomorphisms(k in -2i64..=3, a in cyclic(Flavor::Witt), b in cyclic(Flavor::Witt), x in cyclic(Flavor::Necklace), y in cyclic(Flavor::Necklace)) {
        let q = QParam::Int(k);
        let (ga, gb) = (q_witt_ghost(q, &a).unwrap(), q_witt_ghost(q, &b).unwrap());
        prop_assert_eq!(q_witt_ghost(q, &q_witt_op(q, Op::Mul, &a, Some(&b)).unwrap()).unwrap().components().to_vec(), times(ga.components(), gb.components()));
        let (gx, gy) = (q_nr_ghost(q, &x).unwrap(), q_nr_ghost(q, &y).unwrap());
        prop_assert_eq!(q_nr_ghost(q, &q_nr_op(q, Op::Mul, &x, Some(&y)).unwrap()).unwrap().components().to_vec(), times(gx.components(), gy.components()));
        prop_assert_eq!(q_teichmuller_inv(q, &q_teichmuller(q, &a).unwrap(), &z()).unwrap(), a);
    }
}
