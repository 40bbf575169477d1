//! q-deformed cyclic rings against hand-solved small cases and the classical limit.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use witt_burnside::cyclic::{cyc_ap_op, cyc_nr_op, cyc_witt_op};
use witt_burnside::qdeform::*;
use witt_burnside::{divisors, lcm, CommRing, CyclicVector, Flavor, Op, Poly, QParam, QPolynomial, RingSpec, RingValue, TruncationSet};

fn ring(s: &str) -> Arc<RingSpec> {
    RingSpec::parse(s).unwrap().arc()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn q() -> QPolynomial {
    QPolynomial::q()
}

fn cv(t: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>, comps: &[&str]) -> CyclicVector {
    CyclicVector::parse(t, flavor, ring, comps).unwrap()
}

fn random(rng: &mut ChaCha8Rng, t: &Arc<TruncationSet>, flavor: Flavor, ring: &Arc<RingSpec>) -> CyclicVector {
    let comps = (0..t.len()).map(|_| RingValue::from_int(ring, rng.random_range(-4..=4))).collect();
    CyclicVector::new(t, flavor, ring, comps).unwrap()
}

#[test]
fn zeta_mu_tau() {
    assert_eq!(zeta_q(1, 2), q().scale(&r(1, 2)));
    assert_eq!(mu_q(1, 2), q().scale(&r(-1, 2)));
    for d in 1..=12 {
        assert_eq!(zeta_q(d, d), QPolynomial::one());
    }
    assert_eq!(tau_q(1, 1), QPolynomial::one());
    assert_eq!(tau_q(1, 2), q().scale(&r(1, 2)));
    assert!(tau_q(2, 2).is_zero());
    // μ^q is the inverse of ζ^q on every divisor lattice.
    for n in 1..=12u64 {
        for a in divisors(n) {
            for b in divisors(n) {
                let sum = divisors(n).into_iter().fold(QPolynomial::zero(), |acc, c| acc + zeta_q(a, c) * mu_q(c, b));
                assert_eq!(sum, if a == b { QPolynomial::one() } else { QPolynomial::zero() }, "{a} {b}");
            }
        }
    }
}

#[test]
fn p_polynomials() {
    assert_eq!(p_poly(2, 1, 1).unwrap(), (&(&q() * &q()) - &q()).scale(&r(1, 2)));
    assert_eq!(p_poly(2, 2, 2).unwrap(), QPolynomial::one());
    for n in 1..=12u64 {
        for i in divisors(n) {
            for j in divisors(n) {
                if n % lcm(i, j) != 0 {
                    continue;
                }
                let p = p_poly(n, i, j).unwrap();
                let want = if lcm(i, j) == n { BigRational::one() } else { BigRational::zero() };
                assert_eq!(p.eval_int(1), want, "P_{{{n},{i},{j}}}(1)");
                assert!(p.is_numerical());
            }
        }
    }
}

/// `φ̃^q(x·y) = φ̃^q(x)φ̃^q(y)` forces `Σ_{[i,j]|d, d|n} (d/[i,j]) q^{n/d-1} P_{d,i,j} = q^{n/i+n/j-2}`.
#[test]
fn p_ghost_identity() {
    for n in 1..=12u64 {
        for i in divisors(n) {
            for j in divisors(n) {
                let l = lcm(i, j);
                let lhs = divisors(n).into_iter().filter(|d| d % l == 0).fold(QPolynomial::zero(), |acc, d| {
                    let term = QPolynomial::monomial(r((d / l) as i64, 1), (n / d - 1) as usize);
                    acc + term * p_poly(d, i, j).unwrap()
                });
                let rhs = QPolynomial::monomial(BigRational::one(), (n / i + n / j - 2) as usize);
                assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn symbolic_witt_ghost_and_sum() {
    let t2 = TruncationSet::new(&[1, 2]).unwrap();
    let p = ring("ZPoly(q,a1,a2)");
    let g = q_witt_ghost(QParam::Indeterminate, &cv(&t2, Flavor::Witt, &p, &["a1", "a2"])).unwrap();
    assert_eq!(g, cv(&t2, Flavor::Ghost, &p, &["a1", "q*a1^2+2*a2"]));
    let sum = t2.q_universal(Op::Add);
    assert_eq!(sum.polys[1], Poly::parse("a_2 + b_2 - q*a_1*b_1", &sum.var_names).unwrap(), "{:?}", sum.var_names);
}

#[test]
fn symbolic_necklace_product() {
    let t2 = TruncationSet::new(&[1, 2]).unwrap();
    let p = ring("QPoly(q,x1,x2,y1,y2)");
    let x = cv(&t2, Flavor::Necklace, &p, &["x1", "x2"]);
    let y = cv(&t2, Flavor::Necklace, &p, &["y1", "y2"]);
    // Hand inversion of φ̃^q: z_1 = g_1, z_2 = (g_2 - q z_1)/2 with g_2 = (q x_1 + 2x_2)(q y_1 + 2y_2).
    let want = cv(&t2, Flavor::Necklace, &p, &["x1*y1", "1/2*q^2*x1*y1 - 1/2*q*x1*y1 + q*x1*y2 + q*x2*y1 + 2*x2*y2"]);
    assert_eq!(q_nr_op(QParam::Indeterminate, Op::Mul, &x, Some(&y)).unwrap(), want);
}

#[test]
fn classical_limit() {
    let z = ring("Z");
    let t = TruncationSet::divisors_of(12).unwrap();
    let one = QParam::Int(1);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        for op in [Op::Add, Op::Mul] {
            let (a, b) = (random(&mut rng, &t, Flavor::Witt, &z), random(&mut rng, &t, Flavor::Witt, &z));
            assert_eq!(q_witt_op(one, op, &a, Some(&b)).unwrap(), cyc_witt_op(op, &a, Some(&b)).unwrap());
            let (x, y) = (random(&mut rng, &t, Flavor::Necklace, &z), random(&mut rng, &t, Flavor::Necklace, &z));
            assert_eq!(q_nr_op(one, op, &x, Some(&y)).unwrap(), cyc_nr_op(op, &x, Some(&y)).unwrap());
            let (x, y) = (random(&mut rng, &t, Flavor::Aperiodic, &z), random(&mut rng, &t, Flavor::Aperiodic, &z));
            assert_eq!(q_ap_op(one, op, &x, Some(&y)).unwrap(), cyc_ap_op(op, &x, Some(&y)).unwrap());
        }
    }
}

#[test]
fn ghost_maps_and_homomorphisms() {
    let z = ring("Z");
    let t = TruncationSet::divisors_of(12).unwrap();
    let x = random(&mut ChaCha8Rng::seed_from_u64(22), &t, Flavor::Necklace, &z);
    let g = q_nr_ghost(QParam::Int(0), &x).unwrap();
    for &n in t.members() {
        assert_eq!(g.at(n).unwrap(), &RingValue::from_int(&z, n as i64).ring_mul(x.at(n).unwrap()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for k in -2..=3 {
        let qp = QParam::Int(k);
        for _ in 0..3 {
            let (x, y) = (random(&mut rng, &t, Flavor::Necklace, &z), random(&mut rng, &t, Flavor::Necklace, &z));
            let lhs = q_nr_ghost(qp, &q_nr_op(qp, Op::Mul, &x, Some(&y)).unwrap()).unwrap();
            let (gx, gy) = (q_nr_ghost(qp, &x).unwrap(), q_nr_ghost(qp, &y).unwrap());
            let rhs: Vec<RingValue> = gx.components().iter().zip(gy.components()).map(|(a, b)| a.ring_mul(b)).collect();
            assert_eq!(lhs.components(), rhs.as_slice(), "q = {k}");
            let w = random(&mut rng, &t, Flavor::Witt, &z);
            assert_eq!(
                q_nr_ghost(qp, &q_teichmuller(qp, &w).unwrap()).unwrap().rationalize(),
                q_witt_ghost(qp, &w).unwrap().rationalize()
            );
            let qq = ring("Q");
            let v = random(&mut rng, &t, Flavor::Necklace, &qq);
            assert_eq!(q_nr_ghost_inv(qp, &q_nr_ghost(qp, &v).unwrap()).unwrap(), v);
            let a = random(&mut rng, &t, Flavor::Aperiodic, &qq);
            assert_eq!(q_ap_ghost_inv(qp, &q_ap_ghost(qp, &a).unwrap()).unwrap(), a);
        }
    }
}

#[test]
fn q_exponential() {
    let p = ring("QPoly(q,x)");
    let x = RingValue::var(&p, "x").unwrap();
    let iq = QParam::Indeterminate;
    assert_eq!(m_q(iq, &x, 1).unwrap(), x);
    assert_eq!(m_q(iq, &x, 2).unwrap(), RingValue::parse(&p, "1/2*q*x^2 - 1/2*q*x").unwrap());

    // T^q of the one-hot vector at 1 is (M^q(x, n))_n.
    let t = TruncationSet::divisors_of(6).unwrap();
    let a = CyclicVector::one_hot(&t, Flavor::Witt, 1, x.clone()).unwrap();
    let m = q_teichmuller(iq, &a).unwrap();
    for &n in t.members() {
        assert_eq!(m.at(n).unwrap(), &m_q(iq, &x, n).unwrap());
    }
}

#[test]
fn theta_frobenius_verschiebung() {
    let p = ring("ZPoly(x1,x2,x4)");
    let t4 = TruncationSet::divisors_of(4).unwrap();
    let x = cv(&t4, Flavor::Necklace, &p, &["x1", "x2", "x4"]);
    assert_eq!(q_theta(&x).unwrap().at(2).unwrap(), &RingValue::parse(&p, "2*x2").unwrap());
    let y = x.clone().with_flavor(Flavor::Aperiodic);
    for k in [-2, 0, 1, 3] {
        assert_eq!(q_verschiebung(QParam::Int(k), 2, &y).unwrap(), cv(&t4, Flavor::Aperiodic, &p, &["0", "2*x1", "2*x2"]));
    }

    let z = ring("Z");
    let t = TruncationSet::divisors_of(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for k in -2..=3 {
        let qp = QParam::Int(k);
        for flavor in [Flavor::Necklace, Flavor::Aperiodic, Flavor::Witt] {
            let x = random(&mut rng, &t, flavor, &z);
            assert_eq!(q_frobenius(qp, 1, &x).unwrap(), x, "q = {k}, {flavor}");
        }
        let (x, y) = (random(&mut rng, &t, Flavor::Necklace, &z), random(&mut rng, &t, Flavor::Necklace, &z));
        for rr in [2, 3] {
            let f = |v: &CyclicVector| q_frobenius(qp, rr, v).unwrap();
            assert_eq!(f(&q_nr_op(qp, Op::Mul, &x, Some(&y)).unwrap()), q_nr_op(qp, Op::Mul, &f(&x), Some(&f(&y))).unwrap());
            assert_eq!(f(&q_nr_op(qp, Op::Add, &x, Some(&y)).unwrap()), q_nr_op(qp, Op::Add, &f(&x), Some(&f(&y))).unwrap());
        }
    }
}

#[test]
fn artin_hasse_coefficients() {
    let p = ring("ZPoly(q,x1,x2,x3,x4)");
    let t = TruncationSet::new(&[1, 2, 3, 4]).unwrap();
    let x = cv(&t, Flavor::Witt, &p, &["x1", "x2", "x3", "x4"]);
    let h = artin_hasse(QParam::Indeterminate, &x).unwrap();
    let c = h.coefficients();
    assert_eq!(c[2], RingValue::parse(&p, "x3 - q*x1*x2").unwrap());
    assert_eq!(c[3], RingValue::parse(&p, "x4 - q*x1*x3").unwrap());
    assert_eq!(artin_hasse_inv(&h).unwrap(), x);

    let z = ring("Z");
    let t8 = TruncationSet::new(&(1..=8).collect::<Vec<_>>()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for k in -2..=3 {
        let qp = QParam::Int(k);
        let (a, b) = (random(&mut rng, &t8, Flavor::Witt, &z), random(&mut rng, &t8, Flavor::Witt, &z));
        let sum = q_witt_op(qp, Op::Add, &a, Some(&b)).unwrap();
        assert_eq!(artin_hasse(qp, &sum).unwrap(), artin_hasse(qp, &a).unwrap().add(&artin_hasse(qp, &b).unwrap()).unwrap());
    }
}
