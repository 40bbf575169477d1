//! The q-deformed rings: integrality of the q-universal polynomials, ghost
//! homomorphisms, the equivalence diagrams, Frobenius and Verschiebung, and
//! the q-exponential.

use std::sync::Arc;

use witt_burnside::qdeform::{
    m_q, q_ap_ghost, q_frobenius, q_nr_ghost, q_teichmuller, q_teichmuller_inv, q_theta, q_theta_inv,
    q_verschiebung, q_witt_ghost,
};
use witt_burnside::{CommRing, CyclicVector, Flavor, Op, QParam, RingSpec, RingValue, Result, TruncationSet};

use super::elem::{Cyc, Elem};
use super::{Check, Env, Tally};
use crate::sample::{self, rng_for};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, criterion, default_size, run| Check { suite: "qrings", name, criterion, default_size, run };
    vec![
        check("q-universal-integrality", 4, 1, q_universal_integrality as fn(&Env, &mut Tally)),
        check("q-witt-ghost-homomorphism", 9, 100, witt_ghost_hom),
        check("q-necklace-ghost-homomorphism", 9, 100, necklace_ghost_hom),
        check("q-aperiodic-ghost-homomorphism", 9, 100, aperiodic_ghost_hom),
        check("q-diagrams", 9, 100, diagrams),
        check("q-frobenius-homomorphism", 9, 10, frobenius_hom),
        check("q-verschiebung-additive", 9, 20, verschiebung_additive),
        check("q-ghost-shift", 9, 10, ghost_shift),
        check("q-theta-transports-operators", 9, 10, theta_transports),
        check("q-exponential-product", 6, 50, exponential_product),
        check("q-exponential-not-multiplicative", 6, 1, exponential_witness),
    ]
}

const QS: std::ops::RangeInclusive<i64> = -2..=3;

fn full(env: &Env, n: u64) -> Arc<TruncationSet> {
    env.trunc(&(1..=n).collect::<Vec<_>>())
}

fn q_universal_integrality(env: &Env, t: &mut Tally) {
    let div12 = env.div(12);
    for op in [Op::Add, Op::Neg] {
        let set = div12.q_universal(op);
        for (n, p) in div12.members().iter().zip(&set.polys) {
            t.truth(
                || format!("div12/{}/{n}", op.poly_name()),
                p.is_integral(),
                || (p.to_string_with(&set.var_names), "coefficients in Z[q]".into()),
            );
        }
    }
    // The product polynomials are numerical in q: integral at every integer q.
    for op in [Op::Add, Op::Mul, Op::Neg] {
        for k in -5..=5 {
            t.eval(|| format!("div12/{}/q={k}", op.poly_name()), || Ok((div12.q_universal_at(op, k).map(|_| ())?, ())));
        }
    }
}

fn ghost_hom(
    env: &Env,
    t: &mut Tally,
    flavor: Flavor,
    rings: &[&str],
    ghost: fn(QParam, &CyclicVector) -> Result<CyclicVector>,
) {
    let trunc = env.div(12);
    for r in rings {
        let ring = env.ring(r);
        for q in QS {
            let mut rng = rng_for(env.seed, &format!("qrings/{flavor}-ghost/{r}/{q}"));
            for k in 0..t.size() {
                let x = Cyc { q: Some(QParam::Int(q)), v: sample::cyclic(&mut rng, &trunc, flavor, &ring) };
                let y = Cyc { q: Some(QParam::Int(q)), v: sample::cyclic(&mut rng, &trunc, flavor, &ring) };
                for op in [Op::Add, Op::Mul] {
                    t.eval(
                        || format!("{r}/q={q}/{}#{k}", op.poly_name()),
                        || {
                            let g = |v: &CyclicVector| Ok(Cyc { q: None, v: ghost(QParam::Int(q), v)? });
                            Ok((g(&x.op(op, Some(&y))?.v)?, g(&x.v)?.op(op, Some(&g(&y.v)?))?))
                        },
                    );
                }
            }
        }
    }
}

fn witt_ghost_hom(env: &Env, t: &mut Tally) {
    ghost_hom(env, t, Flavor::Witt, &["Z", "Z/8"], q_witt_ghost);
}

fn necklace_ghost_hom(env: &Env, t: &mut Tally) {
    ghost_hom(env, t, Flavor::Necklace, &["Z", "Q"], q_nr_ghost);
}

fn aperiodic_ghost_hom(env: &Env, t: &mut Tally) {
    ghost_hom(env, t, Flavor::Aperiodic, &["Z", "Q"], q_ap_ghost);
}

/// `T^q` and `θ^q` round trips and `Φ^q = φ̃^q∘T^q`, `φ̃^q = φ^q∘θ^q`.
fn diagrams(env: &Env, t: &mut Tally) {
    let trunc = env.div(12);
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("qrings/diagrams/{q}"));
        for k in 0..t.size() {
            let a = sample::cyclic(&mut rng, &trunc, Flavor::Witt, &z);
            let x = sample::cyclic(&mut rng, &trunc, Flavor::Necklace, &z);
            t.eval(|| format!("q={q}/T-round-trip#{k}"), || Ok((q_teichmuller_inv(q, &q_teichmuller(q, &a)?, &z)?, a.clone())));
            t.eval(|| format!("q={q}/theta-round-trip#{k}"), || Ok((q_theta_inv(&q_theta(&x)?)?, x.clone())));
            t.eval(
                || format!("q={q}/witt-ghost-factors#{k}"),
                || Ok((q_witt_ghost(q, &a)?.rationalize(), q_nr_ghost(q, &q_teichmuller(q, &a)?)?.rationalize())),
            );
            t.eval(
                || format!("q={q}/necklace-ghost-factors#{k}"),
                || Ok((q_nr_ghost(q, &x)?.rationalize(), q_ap_ghost(q, &q_theta(&x)?)?.rationalize())),
            );
        }
    }
}

/// `f_r^q` on `Nr^q(ℤ)` over `T = {1..12}` preserves sums and products.
fn frobenius_hom(env: &Env, t: &mut Tally) {
    let trunc = full(env, 12);
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("qrings/frobenius/{q}"));
        for k in 0..t.size() {
            let x = Cyc { q: Some(q), v: sample::cyclic(&mut rng, &trunc, Flavor::Necklace, &z) };
            let y = Cyc { q: Some(q), v: sample::cyclic(&mut rng, &trunc, Flavor::Necklace, &z) };
            for r in 1..=12 {
                let f = |c: &Cyc| Ok(Cyc { q: Some(q), v: q_frobenius(q, r, &c.v)? });
                for op in [Op::Add, Op::Mul] {
                    t.eval(
                        || format!("q={q}/r={r}/{}#{k}", op.poly_name()),
                        || Ok((f(&x.op(op, Some(&y))?)?, f(&x)?.op(op, Some(&f(&y)?))?)),
                    );
                }
            }
        }
    }
}

fn verschiebung_additive(env: &Env, t: &mut Tally) {
    let trunc = env.div(12);
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("qrings/verschiebung/{q}"));
        for k in 0..t.size() {
            for flavor in [Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic] {
                let x = Cyc { q: Some(q), v: sample::cyclic(&mut rng, &trunc, flavor, &z) };
                let y = Cyc { q: Some(q), v: sample::cyclic(&mut rng, &trunc, flavor, &z) };
                for r in [2, 3, 6] {
                    let v = |c: &Cyc| Ok(Cyc { q: Some(q), v: q_verschiebung(q, r, &c.v)? });
                    t.eval(
                        || format!("q={q}/{flavor}/r={r}#{k}"),
                        || Ok((v(&x.add(&y)?)?, v(&x)?.add(&v(&y)?)?)),
                    );
                }
            }
        }
    }
}

/// `Φ^q(f_r^q a)_n = Φ^q(a)_{rn}` for Witt vectors on `{1..12}`.
fn ghost_shift(env: &Env, t: &mut Tally) {
    let trunc = full(env, 12);
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("qrings/ghost-shift/{q}"));
        for k in 0..t.size() {
            let a = sample::cyclic(&mut rng, &trunc, Flavor::Witt, &z);
            for r in 1..=12 {
                t.eval(
                    || format!("q={q}/r={r}#{k}"),
                    || {
                        let lhs = q_witt_ghost(q, &q_frobenius(q, r, &a)?)?;
                        let g = q_witt_ghost(q, &a)?;
                        Ok((lhs, q_frobenius(q, r, &g)?))
                    },
                );
            }
        }
    }
}

/// `θ^q ∘ f_r^q = f_r^q ∘ θ^q` and `θ^q ∘ V_r = V_r ∘ θ^q`, necklace on the
/// right of each composite and aperiodic on the left.
fn theta_transports(env: &Env, t: &mut Tally) {
    let trunc = full(env, 12);
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("qrings/theta-transports/{q}"));
        for k in 0..t.size() {
            let x = sample::cyclic(&mut rng, &trunc, Flavor::Necklace, &z);
            for r in 1..=12 {
                t.eval(
                    || format!("q={q}/frobenius/r={r}#{k}"),
                    || Ok((q_theta(&q_frobenius(q, r, &x)?)?, q_frobenius(q, r, &q_theta(&x)?)?)),
                );
                t.eval(
                    || format!("q={q}/verschiebung/r={r}#{k}"),
                    || Ok((q_theta(&q_verschiebung(q, r, &x)?)?, q_verschiebung(q, r, &q_theta(&x)?)?)),
                );
            }
        }
    }
}

/// The vector `(M^q(x, n))_{n ∈ T}` in `Nr^q`.
fn exponential(q: QParam, t: &Arc<TruncationSet>, x: &RingValue) -> Result<Cyc> {
    let comps = t.members().iter().map(|&n| m_q(q, x, n)).collect::<Result<_>>()?;
    Ok(Cyc { q: Some(q), v: CyclicVector::new(t, Flavor::Necklace, x.spec_arc(), comps)? })
}

fn scaled(c: &Cyc, s: &RingValue) -> Result<Cyc> {
    let comps = c.v.components().iter().map(|v| s.ring_mul(v)).collect();
    Ok(Cyc { q: c.q, v: CyclicVector::new(c.v.truncation(), c.v.flavor(), c.v.ring(), comps)? })
}

/// `M^q(qxy) = q·M^q(x)·M^q(y)` with the product taken in `Nr^q`.
fn exponential_product(env: &Env, t: &mut Tally) {
    let trunc = env.div(12);
    let cases: Vec<(QParam, Arc<RingSpec>)> =
        QS.map(|k| (QParam::Int(k), env.ring("Q"))).chain([(QParam::Indeterminate, env.ring("Q[q]"))]).collect();
    for (q, ring) in cases {
        let mut rng = rng_for(env.seed, &format!("qrings/exponential/{q}"));
        let qv = q.value(&ring).expect("q lies in the ring");
        for k in 0..t.size() {
            let x = sample::ring_value(&mut rng, &ring);
            let y = sample::ring_value(&mut rng, &ring);
            t.eval(
                || format!("q={q}#{k}"),
                || {
                    let lhs = exponential(q, &trunc, &qv.ring_mul(&x).ring_mul(&y))?;
                    let rhs = scaled(&exponential(q, &trunc, &x)?.mul(&exponential(q, &trunc, &y)?)?, &qv)?;
                    Ok((lhs, rhs))
                },
            );
        }
    }
}

/// At `q = 2`, `M^q(xy) ≠ M^q(x)·M^q(y)` for `x = y = 1`.
fn exponential_witness(env: &Env, t: &mut Tally) {
    let q = QParam::Int(2);
    let ring = env.ring("Q");
    let one = RingValue::one(&ring);
    let trunc = env.div(2);
    let sides = exponential(q, &trunc, &one).and_then(|m| Ok((m.clone(), m.mul(&m)?)));
    match sides {
        Ok((m, prod)) => t.truth(
            || "q=2/x=1/y=1".into(),
            m != prod,
            || (format!("{:?}", m.v.to_strings()), "a product different from M^q(1)".into()),
        ),
        Err(e) => t.eval(|| "q=2/x=1/y=1".into(), || Err::<((), ()), _>(e)),
    }
}
