//! The polynomials `P_{n,i,j}(q)`: numericality, their value at `q = 1`, and
//! the coefficient identities they satisfy.

use num_rational::BigRational;
use witt_burnside::qdeform::{mu_q, p_poly, q_nr_ghost};
use witt_burnside::{divisors, gcd, lcm, Flavor, QParam, QPolynomial};

use super::{Check, Env, Tally};
use crate::sample::{self, rng_for};

const MAX_N: u64 = 12;

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, criterion, default_size, run| Check { suite: "qpolys", name, criterion, default_size, run };
    vec![
        check("p-numerical", 4, 1, p_numerical as fn(&Env, &mut Tally)),
        check("p-at-one", 4, 1, p_at_one),
        check("ghost-coefficient-identity", 6, 1, ghost_coefficients),
        check("q-necklace-coefficient-identity", 6, 20, q_necklace_coefficients),
    ]
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn triples() -> impl Iterator<Item = (u64, u64, u64)> {
    (1..=MAX_N).flat_map(|n| {
        let ds = divisors(n);
        ds.iter()
            .flat_map(|&i| ds.iter().map(move |&j| (i, j)))
            .filter(move |&(i, j)| n % lcm(i, j) == 0)
            .map(move |(i, j)| (n, i, j))
            .collect::<Vec<_>>()
    })
}

fn p_numerical(_env: &Env, t: &mut Tally) {
    for (n, i, j) in triples() {
        t.eval(
            || format!("P_{{{n},{i},{j}}}"),
            || {
                let p = p_poly(n, i, j)?;
                let ok = p.is_numerical() && (-20..=20).all(|k| p.eval_integer(k).is_ok());
                Ok((ok, true))
            },
        );
    }
}

fn p_at_one(_env: &Env, t: &mut Tally) {
    for (n, i, j) in triples() {
        t.eval(
            || format!("P_{{{n},{i},{j}}}(1)"),
            || {
                let want = if lcm(i, j) == n { rat(1, 1) } else { rat(0, 1) };
                Ok((p_poly(n, i, j)?.eval_int(1), want))
            },
        );
    }
}

/// `Σ_{d|n, [i,j]|d} (d/[i,j]) q^{n/d-1} P_{d,i,j}(q) = q^{n/i+n/j-2}`, which is
/// the ghost map applied to the product of the Teichmüller vectors at `i` and `j`.
fn ghost_coefficients(_env: &Env, t: &mut Tally) {
    for n in 1..=MAX_N {
        for i in divisors(n) {
            for j in divisors(n) {
                t.eval(
                    || format!("n={n}/i={i}/j={j}"),
                    || {
                        let l = lcm(i, j);
                        let mut lhs = QPolynomial::zero();
                        for d in divisors(n).into_iter().filter(|d| d % l == 0) {
                            let term = QPolynomial::monomial(rat((d / l) as i64, 1), (n / d - 1) as usize) * p_poly(d, i, j)?;
                            lhs = lhs + term;
                        }
                        Ok((lhs, QPolynomial::monomial(rat(1, 1), (n / i + n / j - 2) as usize)))
                    },
                );
            }
        }
    }
}

/// `M̃^q(a, n) = Σ_{d|n} μ^q(d, n) a_d / d` at an integer `q`.
fn m_tilde_q(q: i64, a: &[BigRational], n: u64) -> BigRational {
    divisors(n).into_iter().map(|d| mu_q(d, n).eval_int(q) * &a[d as usize - 1] / rat(d as i64, 1)).sum()
}

/// `M̃^q(ab, n) = Σ_{[i,j]|n} (i,j) P_{n,i,j}(q) M̃^q(a, i) M̃^q(b, j)` for ghost
/// vectors `a, b` in the image of `φ̃^q`; the sum runs over `[i,j] | n`.
fn q_necklace_coefficients(env: &Env, t: &mut Tally) {
    let members: Vec<u64> = (1..=MAX_N).collect();
    let trunc = env.trunc(&members);
    let z = env.ring("Z");
    for q in -2..=3i64 {
        let mut rng = rng_for(env.seed, &format!("qpolys/prop-coefficients/{q}"));
        for k in 0..t.size() {
            let x = sample::cyclic(&mut rng, &trunc, Flavor::Necklace, &z);
            let y = sample::cyclic(&mut rng, &trunc, Flavor::Necklace, &z);
            let ghost = |v| -> witt_burnside::Result<Vec<BigRational>> {
                Ok(q_nr_ghost(QParam::Int(q), v)?
                    .components()
                    .iter()
                    .map(|c| c.to_rational().expect("integer component"))
                    .collect())
            };
            let (a, b) = match (ghost(&x), ghost(&y)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    t.eval(|| format!("q={q}#{k}"), || Err::<((), ()), _>(e));
                    continue;
                }
            };
            let ab: Vec<BigRational> = a.iter().zip(&b).map(|(u, v)| u * v).collect();
            for n in 1..=MAX_N {
                t.eval(
                    || format!("q={q}#{k}/n={n}"),
                    || {
                        let ds = divisors(n);
                        let mut rhs = rat(0, 1);
                        for &i in &ds {
                            for &j in &ds {
                                if n % lcm(i, j) == 0 {
                                    rhs += rat(gcd(i, j) as i64, 1)
                                        * p_poly(n, i, j)?.eval_int(q)
                                        * m_tilde_q(q, &a, i)
                                        * m_tilde_q(q, &b, j);
                                }
                            }
                        }
                        Ok((m_tilde_q(q, &ab, n), rhs))
                    },
                );
            }
        }
    }
}
