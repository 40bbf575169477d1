//! Induction and restriction commute with τ, θ and γ, intertwine with the
//! necklace ghost map, and respect the ring structure.

use std::sync::Arc;

use witt_burnside::burnside::{
    gamma, ghost_f, ghost_nu, ind_ap, ind_nr, nr_ghost, res_ap, res_nr, teichmuller, theta, witt_f, witt_v,
};
use witt_burnside::{Flavor, GroupContext, RingSpec};

use super::elem::Elem;
use super::{Check, Env, Tally};
use crate::sample::{self, rng_for, STANDARD_GROUPS};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, run| Check { suite: "indres", name, criterion: 7, default_size: 50, run };
    vec![
        check("ind-tau", ind_tau as fn(&Env, &mut Tally)),
        check("ind-theta", ind_theta),
        check("ind-gamma", ind_gamma),
        check("res-tau", res_tau),
        check("res-theta", res_theta),
        check("res-gamma", res_gamma),
        check("nu-intertwines-ghost", nu_ghost),
        check("f-intertwines-ghost", f_ghost),
        check("ind-additive", ind_additive),
        check("res-ring-homomorphism", res_hom),
    ]
}

/// Runs `body(case, ctx, u, ring)` for every group, proper subgroup class and sample.
fn each(
    env: &Env,
    t: &mut Tally,
    stream: &str,
    ring: &str,
    mut body: impl FnMut(&mut Tally, &str, &mut rand_chacha::ChaCha8Rng, &Arc<GroupContext>, usize, &Arc<RingSpec>),
) {
    let ring = env.ring(ring);
    for g in STANDARD_GROUPS {
        let ctx = env.group(g);
        for u in 1..ctx.class_count() {
            let label = &ctx.table().class(u).label;
            let mut rng = rng_for(env.seed, &format!("indres/{stream}/{g}/{label}"));
            for i in 0..t.size() {
                body(t, &format!("{g}/{label}#{i}"), &mut rng, &ctx, u, &ring);
            }
        }
    }
}

fn ind_tau(env: &Env, t: &mut Tally) {
    each(env, t, "ind-tau", "Z", |t, case, rng, ctx, u, ring| {
        let a = sample::indexed(rng, &ctx.subgroup_context(u), Flavor::Witt, ring);
        t.eval(|| case.into(), || Ok((ind_nr(ctx, u, &teichmuller(&a)?)?, teichmuller(&witt_v(ctx, u, &a)?)?)));
    });
}

fn ind_theta(env: &Env, t: &mut Tally) {
    each(env, t, "ind-theta", "Z", |t, case, rng, ctx, u, ring| {
        let x = sample::indexed(rng, &ctx.subgroup_context(u), Flavor::Necklace, ring);
        t.eval(|| case.into(), || Ok((ind_ap(ctx, u, &theta(&x)?)?, theta(&ind_nr(ctx, u, &x)?)?)));
    });
}

fn ind_gamma(env: &Env, t: &mut Tally) {
    each(env, t, "ind-gamma", "Z", |t, case, rng, ctx, u, ring| {
        let a = sample::indexed(rng, &ctx.subgroup_context(u), Flavor::Witt, ring);
        t.eval(|| case.into(), || Ok((ind_ap(ctx, u, &gamma(&a)?)?, gamma(&witt_v(ctx, u, &a)?)?)));
    });
}

fn res_tau(env: &Env, t: &mut Tally) {
    each(env, t, "res-tau", "Z", |t, case, rng, ctx, u, ring| {
        let a = sample::indexed(rng, ctx, Flavor::Witt, ring);
        t.eval(|| case.into(), || Ok((res_nr(ctx, u, &teichmuller(&a)?)?, teichmuller(&witt_f(ctx, u, &a)?)?)));
    });
}

fn res_theta(env: &Env, t: &mut Tally) {
    each(env, t, "res-theta", "Z", |t, case, rng, ctx, u, ring| {
        let x = sample::indexed(rng, ctx, Flavor::Necklace, ring);
        t.eval(|| case.into(), || Ok((res_ap(ctx, u, &theta(&x)?)?, theta(&res_nr(ctx, u, &x)?)?)));
    });
}

fn res_gamma(env: &Env, t: &mut Tally) {
    each(env, t, "res-gamma", "Z", |t, case, rng, ctx, u, ring| {
        let a = sample::indexed(rng, ctx, Flavor::Witt, ring);
        t.eval(|| case.into(), || Ok((res_ap(ctx, u, &gamma(&a)?)?, gamma(&witt_f(ctx, u, &a)?)?)));
    });
}

fn nu_ghost(env: &Env, t: &mut Tally) {
    each(env, t, "nu", "Z", |t, case, rng, ctx, u, ring| {
        let x = sample::indexed(rng, &ctx.subgroup_context(u), Flavor::Necklace, ring);
        t.eval(|| case.into(), || Ok((ghost_nu(ctx, u, &nr_ghost(&x)?)?, nr_ghost(&ind_nr(ctx, u, &x)?)?)));
    });
}

fn f_ghost(env: &Env, t: &mut Tally) {
    each(env, t, "f", "Z", |t, case, rng, ctx, u, ring| {
        let x = sample::indexed(rng, ctx, Flavor::Necklace, ring);
        t.eval(|| case.into(), || Ok((ghost_f(ctx, u, &nr_ghost(&x)?)?, nr_ghost(&res_nr(ctx, u, &x)?)?)));
    });
}

fn ind_additive(env: &Env, t: &mut Tally) {
    each(env, t, "ind-add", "Z", |t, case, rng, ctx, u, ring| {
        let sub = ctx.subgroup_context(u);
        let (x, y) = (sample::indexed(rng, &sub, Flavor::Necklace, ring), sample::indexed(rng, &sub, Flavor::Necklace, ring));
        t.eval(|| format!("{case}/nr"), || Ok((ind_nr(ctx, u, &x.add(&y)?)?, ind_nr(ctx, u, &x)?.add(&ind_nr(ctx, u, &y)?)?)));
        let (a, b) = (sample::indexed(rng, &sub, Flavor::Witt, ring), sample::indexed(rng, &sub, Flavor::Witt, ring));
        t.eval(|| format!("{case}/witt"), || Ok((witt_v(ctx, u, &a.add(&b)?)?, witt_v(ctx, u, &a)?.add(&witt_v(ctx, u, &b)?)?)));
    });
}

fn res_hom(env: &Env, t: &mut Tally) {
    each(env, t, "res-hom", "Q", |t, case, rng, ctx, u, ring| {
        for flavor in [Flavor::Necklace, Flavor::Aperiodic] {
            let res = |v: &witt_burnside::IndexedVector| {
                if flavor == Flavor::Necklace {
                    res_nr(ctx, u, v)
                } else {
                    res_ap(ctx, u, v)
                }
            };
            let (x, y) = (sample::indexed(rng, ctx, flavor, ring), sample::indexed(rng, ctx, flavor, ring));
            t.eval(|| format!("{case}/{flavor}/add"), || Ok((res(&x.add(&y)?)?, res(&x)?.add(&res(&y)?)?)));
            t.eval(|| format!("{case}/{flavor}/mul"), || Ok((res(&x.mul(&y)?)?, res(&x)?.mul(&res(&y)?)?)));
        }
        let one = witt_burnside::IndexedVector::identity(ctx, Flavor::Necklace, ring);
        let sub = ctx.subgroup_context(u);
        t.eval(|| format!("{case}/unit"), || Ok((res_nr(ctx, u, &one)?, witt_burnside::IndexedVector::identity(&sub, Flavor::Necklace, ring))));
    });
}
