//! The ghost maps Φ, φ̃ and φ preserve sums and products.

use witt_burnside::{Flavor, Op};

use super::elem::{canon, ghost_of, ghost_op, Elem};
use super::{Check, Env, Tally};
use crate::sample::{self, rng_for, STANDARD_GROUPS};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, run| Check { suite: "ghosts", name, criterion: 2, default_size: 100, run };
    vec![
        check("witt-ghost", (|e, t| homomorphism(e, t, Flavor::Witt)) as fn(&Env, &mut Tally)),
        check("necklace-ghost", |e, t| homomorphism(e, t, Flavor::Necklace)),
        check("aperiodic-ghost", |e, t| homomorphism(e, t, Flavor::Aperiodic)),
    ]
}

fn homomorphism(env: &Env, t: &mut Tally, flavor: Flavor) {
    for g in STANDARD_GROUPS {
        let ctx = env.group(g);
        for ring in sample::standard_rings() {
            let config = format!("{g}/{ring}");
            let mut rng = rng_for(env.seed, &format!("ghosts/{config}/{flavor}"));
            let quotient =
                flavor == Flavor::Aperiodic && ring.modulus().is_some() && !ctx.structure_constants().aperiodic_integral();
            for i in 0..t.size() {
                for op in [Op::Add, Op::Mul] {
                    let case = || format!("{config}#{i}/{}", op.poly_name());
                    if quotient {
                        let x = sample::quotient(&mut rng, &ctx, flavor, &ring);
                        let y = sample::quotient(&mut rng, &ctx, flavor, &ring);
                        t.eval(case, || Ok((x.op(op, Some(&y))?.ghost()?, ghost_op(op, &x.ghost()?, Some(&y.ghost()?))?)));
                    } else {
                        let (x, y) = if flavor == Flavor::Aperiodic {
                            (sample::aperiodic(&mut rng, &ctx, &ring), sample::aperiodic(&mut rng, &ctx, &ring))
                        } else {
                            (sample::indexed(&mut rng, &ctx, flavor, &ring), sample::indexed(&mut rng, &ctx, flavor, &ring))
                        };
                        t.eval(case, || {
                            let lhs = ghost_of(&x.op(op, Some(&y))?)?;
                            let rhs = ghost_op(op, &ghost_of(&x)?, Some(&ghost_of(&y)?))?;
                            Ok((canon(&lhs, &ring)?, canon(&rhs, &ring)?))
                        });
                    }
                }
            }
        }
    }
}
