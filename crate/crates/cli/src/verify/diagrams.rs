//! τ, θ and γ are mutually inverse bijections compatible with the ghost maps:
//! `Φ = φ̃ ∘ τ` and `φ̃ = φ ∘ θ`.

use witt_burnside::burnside::{gamma, gamma_inv, nr_ghost, ap_ghost, teichmuller, teichmuller_inv, theta, theta_inv, wg_ghost};
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use witt_burnside::{Flavor, GroupContext, IndexedVector, QuotientVector, RingSpec};

use super::elem::canon;
use super::{Check, Env, Tally};
use crate::sample::{self, rng_for, STANDARD_GROUPS};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, run| Check { suite: "diagrams", name, criterion: 3, default_size: 100, run };
    vec![
        check("teichmuller-round-trip", teich_round_trip as fn(&Env, &mut Tally)),
        check("theta-round-trip", theta_round_trip),
        check("gamma-round-trip", gamma_round_trip),
        check("witt-ghost-factors-through-tau", ghost_tau),
        check("necklace-ghost-factors-through-theta", ghost_theta),
    ]
}

fn configs(env: &Env, t: &mut Tally, stream: &str, mut body: impl FnMut(&mut Tally, &str, &mut ChaCha8Rng, &Arc<GroupContext>, &Arc<RingSpec>)) {
    for g in STANDARD_GROUPS {
        let ctx = env.group(g);
        for ring in sample::standard_rings() {
            let config = format!("{g}/{ring}");
            let mut rng = rng_for(env.seed, &format!("diagrams/{stream}/{config}"));
            for i in 0..t.size() {
                body(t, &format!("{config}#{i}"), &mut rng, &ctx, &ring);
            }
        }
    }
}

fn teich_round_trip(env: &Env, t: &mut Tally) {
    configs(env, t, "tau", |t, case, rng, ctx, ring| {
        let a = sample::indexed(rng, ctx, Flavor::Witt, ring);
        t.eval(|| case.to_string(), || Ok((teichmuller_inv(&teichmuller(&a)?, ring)?, a.clone())));
    });
}

/// A necklace vector: random over torsion-free rings, the canonical
/// representative of a random class over `ℤ/m`.
fn necklace(rng: &mut ChaCha8Rng, ctx: &Arc<GroupContext>, ring: &Arc<RingSpec>) -> IndexedVector {
    if ring.modulus().is_some() {
        sample::quotient(rng, ctx, Flavor::Necklace, ring).representative()
    } else {
        sample::indexed(rng, ctx, Flavor::Necklace, ring)
    }
}

fn theta_round_trip(env: &Env, t: &mut Tally) {
    configs(env, t, "theta", |t, case, rng, ctx, ring| {
        let x = necklace(rng, ctx, ring);
        t.eval(|| case.to_string(), || Ok((theta_inv(&theta(&x)?)?, x.clone())));
    });
}

fn gamma_round_trip(env: &Env, t: &mut Tally) {
    configs(env, t, "gamma", |t, case, rng, ctx, ring| {
        let a = sample::indexed(rng, ctx, Flavor::Witt, ring);
        t.eval(|| case.to_string(), || Ok((gamma_inv(&gamma(&a)?, ring)?, a.clone())));
        if ring.modulus().is_some() {
            // The quotient picture: γ of the class equals the class of γ of a lift.
            t.eval(
                || format!("{case}/quotient"),
                || {
                    let q = QuotientVector::from_witt(Flavor::Aperiodic, a.clone())?;
                    Ok((QuotientVector::from_representative(&q.representative(), ring)?, q))
                },
            );
        }
    });
}

fn ghost_tau(env: &Env, t: &mut Tally) {
    configs(env, t, "ghost-tau", |t, case, rng, ctx, ring| {
        let a = sample::indexed(rng, ctx, Flavor::Witt, ring);
        t.eval(|| case.to_string(), || Ok((canon(&wg_ghost(&a)?, ring)?, canon(&nr_ghost(&teichmuller(&a)?)?, ring)?)));
    });
}

fn ghost_theta(env: &Env, t: &mut Tally) {
    configs(env, t, "ghost-theta", |t, case, rng, ctx, ring| {
        let x = necklace(rng, ctx, ring);
        t.eval(|| case.to_string(), || Ok((canon(&nr_ghost(&x)?, ring)?, canon(&ap_ghost(&theta(&x)?)?, ring)?)));
    });
}
