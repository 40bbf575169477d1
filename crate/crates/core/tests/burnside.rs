//! Burnside-ring functors on small groups against hand formulas and mark sums.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use witt_burnside::burnside::*;
use witt_burnside::{CommRing, Flavor, GroupContext, Op, Poly, RingSpec, RingValue};

fn ring(s: &str) -> Arc<RingSpec> {
    RingSpec::parse(s).unwrap().arc()
}

fn v(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>, comps: &[&str]) -> IndexedVector {
    IndexedVector::parse(ctx, flavor, ring, comps).unwrap()
}

fn ints(ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>, comps: &[i64]) -> IndexedVector {
    IndexedVector::new(ctx, flavor, ring, comps.iter().map(|&c| RingValue::from_int(ring, c)).collect()).unwrap()
}

fn random(rng: &mut ChaCha8Rng, ctx: &Arc<GroupContext>, flavor: Flavor, ring: &Arc<RingSpec>) -> IndexedVector {
    let comps: Vec<i64> = (0..ctx.class_count()).map(|_| rng.random_range(-4..=4)).collect();
    ints(ctx, flavor, ring, &comps)
}

fn label(ctx: &GroupContext, l: &str) -> usize {
    ctx.table().find_label(l).unwrap()
}

#[test]
fn witt_ghost_components() {
    let s3 = GroupContext::parse("S3").unwrap();
    let z = ring("Z");
    let one_at_g = IndexedVector::one_hot(&s3, Flavor::Witt, 0, RingValue::one(&z));
    assert!(wg_ghost(&one_at_g).unwrap().components().iter().all(|c| *c == RingValue::one(&z)));

    let c2 = GroupContext::parse("C2").unwrap();
    let p = ring("ZPoly(a,b)");
    let g = wg_ghost(&v(&c2, Flavor::Witt, &p, &["a", "b"])).unwrap();
    assert_eq!(g, v(&c2, Flavor::Ghost, &p, &["a", "a^2+2*b"]));

    // S3, one-hot at C3: the ghost is the column of marks times powers of x.
    let px = ring("ZPoly(x)");
    let c3 = label(&s3, "C3");
    let alpha = IndexedVector::one_hot(&s3, Flavor::Witt, c3, RingValue::var(&px, "x").unwrap());
    let g = wg_ghost(&alpha).unwrap();
    assert_eq!(g, v(&s3, Flavor::Ghost, &px, &["0", "2*x", "0", "2*x^3"]));

    // Random vectors against Σ_V φ_U(G/V) α_V^{(V:U)} with marks counted by brute force elsewhere.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for spec in ["S3", "D4", "C6"] {
        let ctx = GroupContext::parse(spec).unwrap();
        let a: Vec<i64> = (0..ctx.class_count()).map(|_| rng.random_range(-3..=3)).collect();
        let want: Vec<i64> = (0..ctx.class_count())
            .map(|u| {
                (0..ctx.class_count())
                    .map(|w| ctx.mark(w, u) as i64 * a[w].pow((ctx.index(u) / ctx.index(w)) as u32))
                    .sum()
            })
            .collect();
        assert_eq!(wg_ghost(&ints(&ctx, Flavor::Witt, &z, &a)).unwrap(), ints(&ctx, Flavor::Ghost, &z, &want));
    }
}

#[test]
fn c2_universal_polynomials() {
    let c2 = GroupContext::parse("C2").unwrap();
    let sum = c2.universal(Op::Add);
    let prod = c2.universal(Op::Mul);
    let parse = |s: &str, names: &[String]| Poly::parse(s, names).unwrap();
    assert_eq!(sum.polys[0], parse("a_C2 + b_C2", &sum.var_names));
    assert_eq!(sum.polys[1], parse("a_E + b_E - a_C2*b_C2", &sum.var_names));
    assert_eq!(prod.polys[1], parse("a_C2^2*b_E + a_E*b_C2^2 + 2*a_E*b_E", &prod.var_names));
    let s3 = GroupContext::parse("S3").unwrap();
    let sum = s3.universal(Op::Add);
    assert_eq!(sum.polys[0], parse("a_S3 + b_S3", &sum.var_names));
    assert!(sum.polys.iter().chain(&s3.universal(Op::Mul).polys).all(Poly::is_integral));
}

#[test]
fn witt_operations() {
    let c2 = GroupContext::parse("C2").unwrap();
    let z4 = ring("Z/4");
    let one_one = ints(&c2, Flavor::Witt, &z4, &[1, 1]);
    assert_eq!(wg_op(Op::Mul, &one_one, Some(&one_one)).unwrap(), ints(&c2, Flavor::Witt, &z4, &[1, 0]));

    let z = ring("Z");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s3 = GroupContext::parse("S3").unwrap();
    for _ in 0..20 {
        let a = random(&mut rng, &s3, Flavor::Witt, &z);
        let b = random(&mut rng, &s3, Flavor::Witt, &z);
        let zero = IndexedVector::zero(&s3, Flavor::Witt, &z);
        assert_eq!(wg_op(Op::Add, &a, Some(&zero)).unwrap(), a);
        let lhs = wg_ghost(&wg_op(Op::Mul, &a, Some(&b)).unwrap()).unwrap();
        let (ga, gb) = (wg_ghost(&a).unwrap(), wg_ghost(&b).unwrap());
        let rhs: Vec<RingValue> = ga.components().iter().zip(gb.components()).map(|(x, y)| x.ring_mul(y)).collect();
        assert_eq!(lhs.components(), rhs.as_slice());
    }
}

#[test]
fn necklace_and_aperiodic_products() {
    let c2 = GroupContext::parse("C2").unwrap();
    let z = ring("Z");
    let x = ints(&c2, Flavor::Necklace, &z, &[0, 1]);
    assert_eq!(nr_op(Op::Mul, &x, Some(&x)).unwrap(), ints(&c2, Flavor::Necklace, &z, &[0, 2]));
    let y = ints(&c2, Flavor::Aperiodic, &z, &[0, 1]);
    assert_eq!(ap_op(Op::Mul, &y, Some(&y)).unwrap(), ints(&c2, Flavor::Aperiodic, &z, &[0, 1]));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s3 = GroupContext::parse("S3").unwrap();
    let e = IndexedVector::identity(&s3, Flavor::Necklace, &z);
    for _ in 0..10 {
        let x = random(&mut rng, &s3, Flavor::Necklace, &z);
        assert_eq!(nr_op(Op::Mul, &e, Some(&x)).unwrap(), x);
    }

    // C6: aperiodic product is Σ_{[i,j]=n} x_i y_j with classes read as divisors by index.
    let c6 = GroupContext::parse("C6").unwrap();
    for _ in 0..10 {
        let x = random(&mut rng, &c6, Flavor::Aperiodic, &z);
        let y = random(&mut rng, &c6, Flavor::Aperiodic, &z);
        let xi = |k: usize| x.component(k).to_rational().unwrap();
        let yi = |k: usize| y.component(k).to_rational().unwrap();
        let want: Vec<String> = (0..6)
            .take(c6.class_count())
            .map(|n| {
                let mut acc = num_rational::BigRational::from_integer(0.into());
                for i in 0..c6.class_count() {
                    for j in 0..c6.class_count() {
                        if num_integer::lcm(c6.index(i), c6.index(j)) == c6.index(n) {
                            acc += xi(i) * yi(j);
                        }
                    }
                }
                acc.to_string()
            })
            .collect();
        assert_eq!(ap_op(Op::Mul, &x, Some(&y)).unwrap().to_strings(), want);
    }
}

#[test]
fn necklace_and_aperiodic_ghosts() {
    let s3 = GroupContext::parse("S3").unwrap();
    let z = ring("Z");
    let q = ring("Q");
    for flavor in [Flavor::Necklace, Flavor::Aperiodic] {
        let x = IndexedVector::one_hot(&s3, flavor, 0, RingValue::one(&z));
        let g = if flavor == Flavor::Necklace { nr_ghost(&x) } else { ap_ghost(&x) }.unwrap();
        assert!(g.components().iter().all(|c| *c == RingValue::one(&z)));
    }

    let c2 = GroupContext::parse("C2").unwrap();
    let p = ring("ZPoly(a,b)");
    assert_eq!(nr_ghost(&v(&c2, Flavor::Necklace, &p, &["a", "b"])).unwrap(), v(&c2, Flavor::Ghost, &p, &["a", "a+2*b"]));

    let c4 = GroupContext::parse("C4").unwrap();
    let p3 = ring("ZPoly(x1,x2,x4)");
    let g = ap_ghost(&v(&c4, Flavor::Aperiodic, &p3, &["x1", "x2", "x4"])).unwrap();
    assert_eq!(g.component(2), &RingValue::parse(&p3, "x1+x2+x4").unwrap());

    let p4 = ring("QPoly(a,b,c,d)");
    let g = ap_ghost(&v(&s3, Flavor::Aperiodic, &p4, &["a", "b", "c", "d"])).unwrap();
    assert_eq!(g.component(label(&s3, "E")), &RingValue::parse(&p4, "a+b+c+d").unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let x = random(&mut rng, &s3, Flavor::Necklace, &q);
        assert_eq!(nr_ghost_inv(&nr_ghost(&x).unwrap()).unwrap(), x);
        let y = random(&mut rng, &s3, Flavor::Aperiodic, &q);
        assert_eq!(ap_ghost_inv(&ap_ghost(&y).unwrap()).unwrap(), y);
    }
}

#[test]
fn exponentials_teichmuller_theta_gamma() {
    let c2 = GroupContext::parse("C2").unwrap();
    let z = ring("Z");
    let n = |k: i64| RingValue::from_int(&z, k);
    assert_eq!(exp_m(&c2, &n(1)).unwrap(), ints(&c2, Flavor::Necklace, &z, &[1, 0]));
    assert_eq!(exp_m(&c2, &n(2)).unwrap(), ints(&c2, Flavor::Necklace, &z, &[2, 1]));
    assert_eq!(exp_s(&c2, &n(2)).unwrap(), ints(&c2, Flavor::Aperiodic, &z, &[2, 2]));

    for r in -5..=5i64 {
        for s in -5..=5i64 {
            let alpha = ints(&c2, Flavor::Witt, &z, &[r, s]);
            let tau = teichmuller(&alpha).unwrap();
            assert_eq!(tau.to_strings(), [r.to_string(), ((r * r - r) / 2 + s).to_string()]);
            assert_eq!(gamma(&alpha).unwrap().to_strings(), [r.to_string(), (r * r - r + 2 * s).to_string()]);
            assert_eq!(teichmuller_inv(&tau, &z).unwrap(), alpha);
        }
    }

    let p = ring("ZPoly(a,b)");
    assert_eq!(theta(&v(&c2, Flavor::Necklace, &p, &["a", "b"])).unwrap(), v(&c2, Flavor::Aperiodic, &p, &["a", "2*b"]));

    // One-hot at G: τ gives M_G(r, ·) and γ gives S_G(r, ·).
    let s3 = GroupContext::parse("S3").unwrap();
    for r in -3..=3 {
        let alpha = IndexedVector::one_hot(&s3, Flavor::Witt, 0, n(r));
        assert_eq!(teichmuller(&alpha).unwrap(), exp_m(&s3, &n(r)).unwrap());
        assert_eq!(gamma(&alpha).unwrap(), exp_s(&s3, &n(r)).unwrap());
    }
}

#[test]
fn teichmuller_diagram_on_samples() {
    let z = ring("Z");
    let q = ring("Q");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for spec in ["S3", "D4"] {
        let ctx = GroupContext::parse(spec).unwrap();
        for _ in 0..5 {
            let a = random(&mut rng, &ctx, Flavor::Witt, &z);
            assert_eq!(nr_ghost(&teichmuller(&a).unwrap()).unwrap(), wg_ghost(&a).unwrap());
            let x = random(&mut rng, &ctx, Flavor::Necklace, &q);
            assert_eq!(ap_ghost(&theta(&x).unwrap()).unwrap(), nr_ghost(&x).unwrap());
            assert_eq!(theta_inv(&theta(&x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn induction_and_restriction() {
    let s3 = GroupContext::parse("S3").unwrap();
    let z = ring("Z");
    let (c2, c3, e) = (label(&s3, "C2"), label(&s3, "C3"), label(&s3, "E"));
    let sub = s3.subgroup_context(c2);
    let x = IndexedVector::one_hot(&sub, Flavor::Necklace, sub.table().trivial_class(), RingValue::from_int(&z, 5));
    assert_eq!(ind_nr(&s3, c2, &x).unwrap(), IndexedVector::one_hot(&s3, Flavor::Necklace, e, RingValue::from_int(&z, 5)));
    let y = x.clone().with_flavor(Flavor::Aperiodic);
    assert_eq!(ind_ap(&s3, c2, &y).unwrap(), IndexedVector::one_hot(&s3, Flavor::Aperiodic, e, RingValue::from_int(&z, 15)));

    let w = IndexedVector::one_hot(&s3, Flavor::Necklace, c2, RingValue::one(&z));
    let sub3 = s3.subgroup_context(c3);
    assert_eq!(res_nr(&s3, c3, &w).unwrap(), IndexedVector::one_hot(&sub3, Flavor::Necklace, sub3.table().trivial_class(), RingValue::one(&z)));

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..5 {
        let a = random(&mut rng, &s3, Flavor::Necklace, &z);
        let b = random(&mut rng, &s3, Flavor::Necklace, &z);
        assert_eq!(res_nr(&s3, 0, &a).unwrap(), a);
        assert_eq!(ind_nr(&s3, 0, &a).unwrap(), a);
        assert_eq!(
            res_nr(&s3, c2, &nr_op(Op::Mul, &a, Some(&b)).unwrap()).unwrap(),
            nr_op(Op::Mul, &res_nr(&s3, c2, &a).unwrap(), Some(&res_nr(&s3, c2, &b).unwrap())).unwrap()
        );
        let (s, t) = (random(&mut rng, &sub, Flavor::Necklace, &z), random(&mut rng, &sub, Flavor::Necklace, &z));
        assert_eq!(
            ind_nr(&s3, c2, &nr_op(Op::Add, &s, Some(&t)).unwrap()).unwrap(),
            nr_op(Op::Add, &ind_nr(&s3, c2, &s).unwrap(), Some(&ind_nr(&s3, c2, &t).unwrap())).unwrap()
        );
        let alpha = random(&mut rng, &sub, Flavor::Witt, &z);
        assert_eq!(ind_nr(&s3, c2, &teichmuller(&alpha).unwrap()).unwrap(), teichmuller(&witt_v(&s3, c2, &alpha).unwrap()).unwrap());
        let beta = random(&mut rng, &s3, Flavor::Witt, &z);
        assert_eq!(res_nr(&s3, c2, &teichmuller(&beta).unwrap()).unwrap(), teichmuller(&witt_f(&s3, c2, &beta).unwrap()).unwrap());
        assert_eq!(witt_v(&s3, 0, &beta).unwrap(), beta);
        assert_eq!(witt_f(&s3, 0, &beta).unwrap(), beta);
    }
}

#[test]
fn ghost_transfer_maps() {
    let c4 = GroupContext::parse("C4").unwrap();
    let z = ring("Z");
    let u = (0..c4.class_count()).find(|&k| c4.index(k) == 2).unwrap();
    let sub = c4.subgroup_context(u);
    let b = ints(&sub, Flavor::Ghost, &z, &[3, -7]);
    // Classes of C4 by index: 1, 2, 4. U = C2 has classes C2 and E mapping to indices 2 and 4.
    assert_eq!(ghost_nu(&c4, u, &b).unwrap(), ints(&c4, Flavor::Ghost, &z, &[0, 6, -14]));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s3 = GroupContext::parse("S3").unwrap();
    let c2 = label(&s3, "C2");
    let sub = s3.subgroup_context(c2);
    for _ in 0..5 {
        let g = random(&mut rng, &s3, Flavor::Ghost, &z);
        assert_eq!(ghost_f(&s3, 0, &g).unwrap(), g);
        let x = random(&mut rng, &sub, Flavor::Necklace, &z);
        assert_eq!(ghost_nu(&s3, c2, &nr_ghost(&x).unwrap()).unwrap(), nr_ghost(&ind_nr(&s3, c2, &x).unwrap()).unwrap());
        let y = random(&mut rng, &s3, Flavor::Necklace, &z);
        assert_eq!(ghost_f(&s3, c2, &nr_ghost(&y).unwrap()).unwrap(), nr_ghost(&res_nr(&s3, c2, &y).unwrap()).unwrap());
    }
}

#[test]
fn delta_membership_examples() {
    let c2 = GroupContext::parse("C2").unwrap();
    let z = ring("Z");
    let q = ring("Q");
    let m2 = exp_m(&c2, &RingValue::from_int(&z, 2)).unwrap().rationalize();
    assert!(delta_membership(&m2, &z));
    assert!(!delta_membership(&v(&c2, Flavor::Necklace, &q, &["0", "1/2"]), &z));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d4 = GroupContext::parse("D4").unwrap();
    for _ in 0..5 {
        let a = random(&mut rng, &d4, Flavor::Witt, &z);
        assert!(delta_membership(&teichmuller(&a).unwrap().rationalize(), &z));
    }
}

#[test]
fn residue_ring_quotients() {
    let c2 = GroupContext::parse("C2").unwrap();
    let z4 = ring("Z/4");
    let x = QuotientVector::from_witt(Flavor::Necklace, ints(&c2, Flavor::Witt, &z4, &[1, 1])).unwrap();
    let sq = x.op(Op::Mul, Some(&x)).unwrap();
    assert_eq!(sq.witt(), &ints(&c2, Flavor::Witt, &z4, &[1, 0]));
}
