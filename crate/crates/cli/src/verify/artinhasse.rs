//! The Artin-Hasse map `H^q` into curves under `F_q`.

use witt_burnside::qdeform::{artin_hasse, artin_hasse_inv, q_witt_op};
use witt_burnside::{CyclicVector, Flavor, Op, QParam, RingSpec, RingValue, TruncatedCurve};

use super::{Check, Env, Tally};
use crate::sample::{self, rng_for};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, criterion, default_size, run| Check { suite: "artinhasse", name, criterion, default_size, run };
    vec![
        check("symbolic-coefficients", 9, 1, symbolic as fn(&Env, &mut Tally)),
        check("round-trip", 9, 50, round_trip),
        check("additive", 9, 50, additive),
        check("curve-ring-axioms", 9, 10, curve_axioms),
    ]
}

const QS: std::ops::RangeInclusive<i64> = -2..=3;
const N: u64 = 8;

/// `H^q(x) = x_1 t + x_2 t² + (x_3 - q x_1 x_2) t³ + (x_4 - q x_1 x_3) t⁴ + …`
fn symbolic(env: &Env, t: &mut Tally) {
    let ring = RingSpec::parse("ZPoly(q,x1,x2,x3,x4)").expect("valid ring").arc();
    let trunc = env.trunc(&[1, 2, 3, 4]);
    let expected = ["x1", "x2", "x3-q*x1*x2", "x4-q*x1*x3"];
    t.eval(
        || "q/N=4".into(),
        || {
            let x = CyclicVector::parse(&trunc, Flavor::Witt, &ring, &["x1", "x2", "x3", "x4"])?;
            let want = expected.iter().map(|s| RingValue::parse(&ring, s)).collect::<witt_burnside::Result<Vec<_>>>()?;
            Ok((artin_hasse(QParam::Indeterminate, &x)?.coefficients().to_vec(), want))
        },
    );
}

fn round_trip(env: &Env, t: &mut Tally) {
    let trunc = env.trunc(&(1..=N).collect::<Vec<_>>());
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("artinhasse/round-trip/{q}"));
        for k in 0..t.size() {
            let a = sample::cyclic(&mut rng, &trunc, Flavor::Witt, &z);
            t.eval(|| format!("q={q}/witt#{k}"), || Ok((artin_hasse_inv(&artin_hasse(q, &a)?)?, a.clone())));
            let curve = TruncatedCurve::new(q, &z, sample::values(&mut rng, &z, N as usize));
            t.eval(
                || format!("q={q}/curve#{k}"),
                || {
                    let c = curve.clone()?;
                    Ok((artin_hasse(q, &artin_hasse_inv(&c)?)?, c))
                },
            );
        }
    }
}

/// `H^q(a + b) = H^q(a) +_{F_q} H^q(b)` and `H^q(-a) = -H^q(a)`.
fn additive(env: &Env, t: &mut Tally) {
    let trunc = env.trunc(&(1..=N).collect::<Vec<_>>());
    let z = env.ring("Z");
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("artinhasse/additive/{q}"));
        for k in 0..t.size() {
            let a = sample::cyclic(&mut rng, &trunc, Flavor::Witt, &z);
            let b = sample::cyclic(&mut rng, &trunc, Flavor::Witt, &z);
            t.eval(
                || format!("q={q}/sum#{k}"),
                || Ok((artin_hasse(q, &q_witt_op(q, Op::Add, &a, Some(&b))?)?, artin_hasse(q, &a)?.add(&artin_hasse(q, &b)?)?)),
            );
            t.eval(
                || format!("q={q}/negation#{k}"),
                || Ok((artin_hasse(q, &q_witt_op(q, Op::Neg, &a, None)?)?, artin_hasse(q, &a)?.neg())),
            );
        }
    }
}

/// The product transported through `H^q` makes the curves a commutative ring.
fn curve_axioms(env: &Env, t: &mut Tally) {
    let z = env.ring("Z");
    let n = 6;
    for q in QS.map(QParam::Int) {
        let mut rng = rng_for(env.seed, &format!("artinhasse/curve-axioms/{q}"));
        for k in 0..t.size() {
            let mut curve = || TruncatedCurve::new(q, &z, sample::values(&mut rng, &z, n));
            let (a, b, c) = match (curve(), curve(), curve()) {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    t.eval(|| format!("q={q}#{k}"), || Err::<((), ()), _>(e));
                    continue;
                }
            };
            let case = format!("q={q}#{k}");
            t.eval(|| format!("{case}/add-commutative"), || Ok((a.add(&b)?, b.add(&a)?)));
            t.eval(|| format!("{case}/mul-commutative"), || Ok((a.mul(&b)?, b.mul(&a)?)));
            t.eval(|| format!("{case}/add-associative"), || Ok((a.add(&b)?.add(&c)?, a.add(&b.add(&c)?)?)));
            t.eval(|| format!("{case}/mul-associative"), || Ok((a.mul(&b)?.mul(&c)?, a.mul(&b.mul(&c)?)?)));
            t.eval(|| format!("{case}/distributive"), || Ok((a.mul(&b.add(&c)?)?, a.mul(&b)?.add(&a.mul(&c)?)?)));
        }
    }
}
