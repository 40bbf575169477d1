//! Integrality of the universal polynomials, concrete values, the necklace
//! product identities, and agreement of the cyclic and group models.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use witt_burnside::burnside::{ap_ghost, nr_ghost, teichmuller, theta, wg_ghost};
use witt_burnside::cyclic::{
    aperiodic_poly, cyc_ap_ghost, cyc_frobenius, cyc_nr_ghost, cyc_teichmuller, cyc_theta, cyc_witt_ghost,
    necklace_poly,
};
use witt_burnside::qdeform::{p_poly, q_ap_ghost, q_frobenius, q_nr_ghost, q_teichmuller, q_witt_ghost};
use witt_burnside::{
    divisors, gcd, lcm, mobius, CommRing, CyclicVector, Flavor, IndexedVector, Op, Poly, QParam, QPolynomial, RingValue,
};

use super::elem::{Cyc, Elem};
use super::{Check, Env, Tally};
use crate::sample::{self, rng_for, STANDARD_GROUPS};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, criterion, default_size, run| Check {
        suite: "cyclic-identities",
        name,
        criterion,
        default_size,
        run,
    };
    vec![
        check("universal-integrality", 4, 1, universal_integrality as fn(&Env, &mut Tally)),
        check("concrete-values", 5, 1, concrete_values),
        check("necklace-polynomial-product", 6, 1, necklace_product),
        check("aperiodic-polynomial-product", 6, 1, aperiodic_product),
        check("necklace-coefficient-identity", 6, 100, necklace_coefficients),
        check("aperiodic-coefficient-identity", 6, 100, aperiodic_coefficients),
        check("cyclic-matches-group", 8, 50, cyclic_matches_group),
        check("q-one-matches-classical", 8, 50, q_one_matches_classical),
    ]
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn universal_integrality(env: &Env, t: &mut Tally) {
    for g in STANDARD_GROUPS {
        let ctx = env.group(g);
        for op in [Op::Add, Op::Mul, Op::Neg] {
            let set = crate::cache::universal(&ctx, op);
            for (label, p) in ctx.labels().iter().zip(&set.polys) {
                t.truth(|| format!("{g}/{}/{label}", op.poly_name()), p.is_integral(), || (p.to_string_with(&set.var_names), "integer coefficients".into()));
            }
        }
    }
    let div12 = env.div(12);
    for op in [Op::Add, Op::Mul, Op::Neg] {
        let set = div12.universal(op);
        for (n, p) in div12.members().iter().zip(&set.polys) {
            t.truth(|| format!("div12/{}/{n}", op.poly_name()), p.is_integral(), || (p.to_string_with(&set.var_names), "integer coefficients".into()));
        }
    }
}

/// Polynomial oracles in `a_1, a_2, b_1, b_2` (and `q` as the fifth variable).
fn oracle(nv: usize, terms: &[(i64, [u32; 5])]) -> Poly {
    Poly::from_terms(nv, terms.iter().map(|(c, e)| (e[..nv].to_vec(), rat(*c, 1))).collect())
}

fn concrete_values(env: &Env, t: &mut Tally) {
    let s2 = oracle(4, &[(1, [0, 1, 0, 0, 0]), (1, [0, 0, 0, 1, 0]), (-1, [1, 0, 1, 0, 0])]);
    let p2 = oracle(4, &[(1, [2, 0, 0, 1, 0]), (1, [0, 1, 2, 0, 0]), (2, [0, 1, 0, 1, 0])]);
    let i2 = oracle(4, &[(-1, [0, 1, 0, 0, 0]), (-1, [2, 0, 0, 0, 0])]);
    let div2 = env.div(2);
    let c2 = env.group("C2");
    for (op, want) in [(Op::Add, &s2), (Op::Mul, &p2), (Op::Neg, &i2)] {
        let got = div2.universal(op).polys[1].clone();
        t.eval(|| format!("div2/{}_2", op.poly_name()), || Ok((got, want.clone())));
        let got = crate::cache::universal(&c2, op).polys[1].clone();
        t.eval(|| format!("C2/{}_E", op.poly_name()), || Ok((got, want.clone())));
    }
    let s2q = oracle(5, &[(1, [0, 1, 0, 0, 0]), (1, [0, 0, 0, 1, 0]), (-1, [1, 0, 1, 0, 1])]);
    t.eval(|| "div2/q-sum_2".into(), || Ok((div2.q_universal(Op::Add).polys[1].clone(), s2q)));
    let p211 = QPolynomial::new(vec![rat(0, 1), rat(-1, 2), rat(1, 2)]);
    t.eval(|| "P_{2,1,1}".into(), || Ok((p_poly(2, 1, 1)?, p211)));
    let z = env.ring("Z");
    let two = RingValue::from_int(&z, 2);
    for (n, want) in (1..=6).zip([2, 1, 2, 3, 6, 9]) {
        t.eval(|| format!("M(2,{n})"), || Ok((necklace_poly(&two, n)?, RingValue::from_int(&z, want))));
    }
    let marks_c2: Vec<Vec<usize>> = vec![vec![1, 1], vec![0, 2]];
    t.eval(|| "marks/C2".into(), || Ok((c2.marks().rows().to_vec(), marks_c2)));
    let marks_s3: Vec<Vec<usize>> = vec![vec![1, 1, 1, 1], vec![0, 2, 0, 2], vec![0, 0, 1, 3], vec![0, 0, 0, 6]];
    t.eval(|| "marks/S3".into(), || Ok((env.group("S3").marks().rows().to_vec(), marks_s3)));
}

/// Pairs `(i, j)` of divisors of `n` with `[i, j] = n`.
fn lcm_pairs(n: u64) -> Vec<(u64, u64)> {
    let ds = divisors(n);
    ds.iter().flat_map(|&i| ds.iter().map(move |&j| (i, j))).filter(|&(i, j)| lcm(i, j) == n).collect()
}

fn necklace_product(env: &Env, t: &mut Tally) {
    let z = env.ring("Z");
    for r in -3..=3i64 {
        for s in -3..=3i64 {
            let (rv, sv) = (RingValue::from_int(&z, r), RingValue::from_int(&z, s));
            for n in 1..=12 {
                t.eval(
                    || format!("r={r}/s={s}/n={n}"),
                    || {
                        let lhs = necklace_poly(&RingValue::from_int(&z, r * s), n)?;
                        let mut rhs = RingValue::zero(&z);
                        for (i, j) in lcm_pairs(n) {
                            let term = necklace_poly(&rv, i)?.ring_mul(&necklace_poly(&sv, j)?);
                            rhs = rhs.ring_add(&RingValue::from_int(&z, gcd(i, j) as i64).ring_mul(&term));
                        }
                        Ok((lhs, rhs))
                    },
                );
            }
        }
    }
}

fn aperiodic_product(env: &Env, t: &mut Tally) {
    let z = env.ring("Z");
    for r in -3..=3i64 {
        for s in -3..=3i64 {
            let (rv, sv) = (RingValue::from_int(&z, r), RingValue::from_int(&z, s));
            for n in 1..=12 {
                t.eval(
                    || format!("r={r}/s={s}/n={n}"),
                    || {
                        let lhs = aperiodic_poly(&RingValue::from_int(&z, r * s), n);
                        let rhs = lcm_pairs(n).into_iter().fold(RingValue::zero(&z), |acc, (i, j)| {
                            acc.ring_add(&aperiodic_poly(&rv, i).ring_mul(&aperiodic_poly(&sv, j)))
                        });
                        Ok((lhs, rhs))
                    },
                );
            }
        }
    }
}

fn random_sequence(rng: &mut impl Rng, rational: bool) -> Vec<BigRational> {
    (0..12)
        .map(|_| {
            let n = rng.random_range(-6..=6);
            if rational {
                rat(n, rng.random_range(1..=4))
            } else {
                rat(n, 1)
            }
        })
        .collect()
}

/// `M̃(a, n) = (1/n) Σ_{d|n} μ(n/d) a_d`.
fn m_tilde(a: &[BigRational], n: u64) -> BigRational {
    let s: BigRational =
        divisors(n).into_iter().map(|d| a[d as usize - 1].clone() * BigRational::from_integer(mobius(n / d).into())).sum();
    s / BigRational::from_integer(BigInt::from(n))
}

/// `S̃(a, n) = Σ_{d|n} μ(n/d) a_d`.
fn s_tilde(a: &[BigRational], n: u64) -> BigRational {
    divisors(n).into_iter().map(|d| a[d as usize - 1].clone() * BigRational::from_integer(mobius(n / d).into())).sum()
}

fn pointwise(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn necklace_coefficients(env: &Env, t: &mut Tally) {
    let mut rng = rng_for(env.seed, "identities/necklace-coefficients");
    for k in 0..t.size() {
        let (a, b) = (random_sequence(&mut rng, true), random_sequence(&mut rng, true));
        let ab = pointwise(&a, &b);
        for n in 1..=12 {
            t.eval(
                || format!("#{k}/n={n}"),
                || {
                    let rhs: BigRational = lcm_pairs(n)
                        .into_iter()
                        .map(|(i, j)| rat(gcd(i, j) as i64, 1) * m_tilde(&a, i) * m_tilde(&b, j))
                        .sum();
                    Ok((m_tilde(&ab, n), rhs))
                },
            );
        }
    }
}

fn aperiodic_coefficients(env: &Env, t: &mut Tally) {
    let mut rng = rng_for(env.seed, "identities/aperiodic-coefficients");
    for k in 0..t.size() {
        let (a, b) = (random_sequence(&mut rng, false), random_sequence(&mut rng, false));
        let ab = pointwise(&a, &b);
        for n in 1..=12 {
            t.eval(
                || format!("#{k}/n={n}"),
                || {
                    let rhs: BigRational =
                        lcm_pairs(n).into_iter().map(|(i, j)| s_tilde(&a, i) * s_tilde(&b, j)).sum();
                    Ok((s_tilde(&ab, n), rhs))
                },
            );
        }
    }
}

/// Components as printed, with the ring, for bit-for-bit comparison.
fn bits_indexed(v: &IndexedVector) -> (String, String, Vec<String>) {
    (v.flavor().to_string(), v.ring().to_string(), v.to_strings())
}

fn bits_cyclic(v: &CyclicVector) -> (String, String, Vec<String>) {
    (v.flavor().to_string(), v.ring().to_string(), v.to_strings())
}

fn cyclic_matches_group(env: &Env, t: &mut Tally) {
    for n in [2u64, 4, 6, 12] {
        let ctx = env.group(&format!("C{n}"));
        let trunc = env.div(n);
        for ring in [env.ring("Z"), env.ring("Z/8")] {
            let mut rng = rng_for(env.seed, &format!("identities/cross/{n}/{ring}"));
            for k in 0..t.size() {
                for flavor in [Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic] {
                    let xs = sample::values(&mut rng, &ring, trunc.len());
                    let ys = sample::values(&mut rng, &ring, trunc.len());
                    let pair = || -> witt_burnside::Result<_> {
                        Ok((
                            IndexedVector::new(&ctx, flavor, &ring, xs.clone())?,
                            IndexedVector::new(&ctx, flavor, &ring, ys.clone())?,
                            Cyc { q: None, v: CyclicVector::new(&trunc, flavor, &ring, xs.clone())? },
                            Cyc { q: None, v: CyclicVector::new(&trunc, flavor, &ring, ys.clone())? },
                        ))
                    };
                    for op in [Op::Add, Op::Mul, Op::Neg] {
                        t.eval(
                            || format!("C{n}/{ring}#{k}/{flavor}/{}", op.poly_name()),
                            || {
                                let (gx, gy, cx, cy) = pair()?;
                                let rhs = if op == Op::Neg { None } else { Some(&gy) };
                                let crhs = if op == Op::Neg { None } else { Some(&cy) };
                                Ok((bits_indexed(&gx.op(op, rhs)?), bits_cyclic(&cx.op(op, crhs)?.v)))
                            },
                        );
                    }
                    t.eval(
                        || format!("C{n}/{ring}#{k}/{flavor}/ghost"),
                        || {
                            let (gx, _, cx, _) = pair()?;
                            let (g, c) = match flavor {
                                Flavor::Witt => (wg_ghost(&gx)?, cyc_witt_ghost(&cx.v)?),
                                Flavor::Necklace => (nr_ghost(&gx)?, cyc_nr_ghost(&cx.v)?),
                                _ => (ap_ghost(&gx)?, cyc_ap_ghost(&cx.v)?),
                            };
                            Ok((bits_indexed(&g), bits_cyclic(&c)))
                        },
                    );
                    let (gx, _, cx, _) = match pair() {
                        Ok(p) => p,
                        Err(_) => continue,
                    };
                    match flavor {
                        Flavor::Witt => t.eval(
                            || format!("C{n}/{ring}#{k}/teichmuller"),
                            || Ok((bits_indexed(&teichmuller(&gx)?), bits_cyclic(&cyc_teichmuller(&cx.v)?))),
                        ),
                        Flavor::Necklace => t.eval(
                            || format!("C{n}/{ring}#{k}/theta"),
                            || Ok((bits_indexed(&theta(&gx)?), bits_cyclic(&cyc_theta(&cx.v)?))),
                        ),
                        _ => {}
                    }
                }
            }
        }
    }
}

fn q_one_matches_classical(env: &Env, t: &mut Tally) {
    let trunc = env.div(12);
    let one = QParam::Int(1);
    for op in [Op::Add, Op::Mul, Op::Neg] {
        t.eval(
            || format!("universal/{}", op.poly_name()),
            || Ok((trunc.q_universal_at(op, 1)?.polys.clone(), trunc.universal(op).polys.clone())),
        );
    }
    for ring in [env.ring("Z"), env.ring("Z/8")] {
        let mut rng = rng_for(env.seed, &format!("identities/q-one/{ring}"));
        for k in 0..t.size() {
            for flavor in [Flavor::Witt, Flavor::Necklace, Flavor::Aperiodic] {
                let x = sample::cyclic(&mut rng, &trunc, flavor, &ring);
                let y = sample::cyclic(&mut rng, &trunc, flavor, &ring);
                let (qx, qy) = (Cyc { q: Some(one), v: x.clone() }, Cyc { q: Some(one), v: y.clone() });
                let (cx, cy) = (Cyc { q: None, v: x.clone() }, Cyc { q: None, v: y.clone() });
                for op in [Op::Add, Op::Mul, Op::Neg] {
                    t.eval(
                        || format!("{ring}#{k}/{flavor}/{}", op.poly_name()),
                        || {
                            let (qr, cr) = if op == Op::Neg { (None, None) } else { (Some(&qy), Some(&cy)) };
                            Ok((bits_cyclic(&qx.op(op, qr)?.v), bits_cyclic(&cx.op(op, cr)?.v)))
                        },
                    );
                }
                t.eval(
                    || format!("{ring}#{k}/{flavor}/ghost"),
                    || {
                        Ok(match flavor {
                            Flavor::Witt => (bits_cyclic(&q_witt_ghost(one, &x)?), bits_cyclic(&cyc_witt_ghost(&x)?)),
                            Flavor::Necklace => (bits_cyclic(&q_nr_ghost(one, &x)?), bits_cyclic(&cyc_nr_ghost(&x)?)),
                            _ => (bits_cyclic(&q_ap_ghost(one, &x)?), bits_cyclic(&cyc_ap_ghost(&x)?)),
                        })
                    },
                );
                if flavor == Flavor::Witt {
                    t.eval(
                        || format!("{ring}#{k}/teichmuller"),
                        || Ok((bits_cyclic(&q_teichmuller(one, &x)?), bits_cyclic(&cyc_teichmuller(&x)?))),
                    );
                }
                for r in [2u64, 3, 6] {
                    t.eval(
                        || format!("{ring}#{k}/{flavor}/frobenius-{r}"),
                        || Ok((bits_cyclic(&q_frobenius(one, r, &x)?), bits_cyclic(&cyc_frobenius(r, &x)?))),
                    );
                }
            }
        }
    }
}
