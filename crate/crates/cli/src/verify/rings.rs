//! Commutative ring axioms in `W_G`, `NR_G` and `𝒜𝒫_G`.

use witt_burnside::Flavor;

use super::elem::axioms;
use super::{Check, Env, Tally};
use crate::sample::{self, rng_for, STANDARD_GROUPS};

pub(crate) fn checks() -> Vec<Check> {
    let check = |name, run| Check { suite: "rings", name, criterion: 1, default_size: 200, run };
    vec![
        check("witt-axioms", (|e, t| flavor_axioms(e, t, Flavor::Witt)) as fn(&Env, &mut Tally)),
        check("necklace-axioms", |e, t| flavor_axioms(e, t, Flavor::Necklace)),
        check("aperiodic-axioms", |e, t| flavor_axioms(e, t, Flavor::Aperiodic)),
    ]
}

fn flavor_axioms(env: &Env, t: &mut Tally, flavor: Flavor) {
    for g in STANDARD_GROUPS {
        let ctx = env.group(g);
        for ring in sample::standard_rings() {
            let config = format!("{g}/{ring}");
            let mut rng = rng_for(env.seed, &format!("rings/{config}/{flavor}"));
            let quotient = flavor == Flavor::Aperiodic
                && ring.modulus().is_some()
                && !ctx.structure_constants().aperiodic_integral();
            for i in 0..t.size() {
                let case = format!("{config}#{i}");
                if quotient {
                    let [a, b, c] = [(); 3].map(|_| sample::quotient(&mut rng, &ctx, flavor, &ring));
                    axioms(t, &case, &a, &b, &c);
                } else if flavor == Flavor::Aperiodic {
                    let [a, b, c] = [(); 3].map(|_| sample::aperiodic(&mut rng, &ctx, &ring));
                    axioms(t, &case, &a, &b, &c);
                } else {
                    let [a, b, c] = [(); 3].map(|_| sample::indexed(&mut rng, &ctx, flavor, &ring));
                    axioms(t, &case, &a, &b, &c);
                }
            }
        }
    }
}
