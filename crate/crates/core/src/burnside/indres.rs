use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::linear::{apply_rational, Rows};
use super::ops::{nr_ghost, nr_ghost_inv};
use super::teich::{teichmuller, teichmuller_inv};
use super::{Flavor, IndexedVector};
use crate::algebra::{CoefficientStrategy, CommRing, RingSpec, RingValue};
use crate::error::{Error, Result};
use crate::group::GroupContext;

fn expect_over(x: &IndexedVector, ctx: &Arc<GroupContext>, what: &str) -> Result<()> {
    if Arc::ptr_eq(x.ctx(), ctx) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("{what}: vector is over {}, expected {}", x.ctx().name(), ctx.name())))
    }
}

fn induce(ctx: &Arc<GroupContext>, u: usize, x: &IndexedVector, flavor: Flavor, factor: usize) -> Result<IndexedVector> {
    x.expect_flavor(flavor)?;
    expect_over(x, &ctx.subgroup_context(u), "induction")?;
    let fuse = ctx.ind_class_map(u);
    let mut comps = vec![RingValue::zero(x.ring()); ctx.class_count()];
    for (v, c) in x.components().iter().enumerate() {
        comps[fuse[v]] = comps[fuse[v]].ring_add(c);
    }
    if factor != 1 {
        let f = RingValue::from_int(x.ring(), factor as i64);
        comps = comps.iter().map(|c| c.ring_mul(&f)).collect();
    }
    Ok(IndexedVector::from_parts(ctx, flavor, x.ring(), comps))
}

/// `Ind_U^G` on necklace coordinates: sums the components of fusing classes.
pub fn ind_nr(ctx: &Arc<GroupContext>, u: usize, x: &IndexedVector) -> Result<IndexedVector> {
    induce(ctx, u, x, Flavor::Necklace, 1)
}

/// Bold induction on aperiodic coordinates: `(G:U)` times the fused sum.
pub fn ind_ap(ctx: &Arc<GroupContext>, u: usize, x: &IndexedVector) -> Result<IndexedVector> {
    induce(ctx, u, x, Flavor::Aperiodic, ctx.index(u))
}

fn restriction_rows(ctx: &GroupContext, u: usize, weighted: bool) -> Rows {
    let sub = ctx.subgroup_context(u);
    let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); sub.class_count()];
    for v in 0..ctx.class_count() {
        for t in ctx.res_orbit_data(u, v) {
            let c = if weighted {
                BigRational::new(BigInt::from(t.multiplicity * sub.index(t.w)), BigInt::from(ctx.index(v)))
            } else {
                BigRational::from_integer(t.multiplicity.into())
            };
            rows[t.w].push((v, c));
        }
    }
    rows
}

fn restrict(ctx: &Arc<GroupContext>, u: usize, x: &IndexedVector, flavor: Flavor) -> Result<IndexedVector> {
    x.expect_flavor(flavor)?;
    expect_over(x, ctx, "restriction")?;
    let rows = restriction_rows(ctx, u, flavor == Flavor::Aperiodic);
    let comps = apply_rational(x.components(), x.ring(), &rows, &Error::NotInImage)?;
    Ok(IndexedVector::from_parts(&ctx.subgroup_context(u), flavor, x.ring(), comps))
}

/// `Res_U^G` on necklace coordinates: U-orbits on `G/V` sorted by stabilizer class.
pub fn res_nr(ctx: &Arc<GroupContext>, u: usize, x: &IndexedVector) -> Result<IndexedVector> {
    restrict(ctx, u, x, Flavor::Necklace)
}

/// Bold restriction: orbit terms weighted by `(U:W)/(G:V)`.
pub fn res_ap(ctx: &Arc<GroupContext>, u: usize, x: &IndexedVector) -> Result<IndexedVector> {
    restrict(ctx, u, x, Flavor::Aperiodic)
}

/// Applies `τ⁻¹ ∘ f ∘ τ` with `f` computed over a ℚ-algebra.
fn conjugate_by_tau(
    alpha: &IndexedVector,
    f: impl Fn(&IndexedVector) -> Result<IndexedVector>,
) -> Result<IndexedVector> {
    alpha.expect_flavor(Flavor::Witt)?;
    let ring = alpha.ring().clone();
    let (start, finish): (IndexedVector, Box<dyn Fn(IndexedVector) -> Result<IndexedVector>>) = match ring.strategy() {
        CoefficientStrategy::QAlgebra => (alpha.clone(), Box::new(Ok)),
        CoefficientStrategy::TorsionFree => (alpha.rationalize(), Box::new(move |w: IndexedVector| w.narrow(&ring))),
        CoefficientStrategy::Quotient => {
            let z = RingSpec::Integers.arc();
            (
                alpha.lift().rationalize(),
                Box::new(move |w: IndexedVector| w.narrow(&z)?.reduce(&ring)),
            )
        }
    };
    let x = f(&teichmuller(&start)?)?;
    let q = x.ring().clone();
    finish(teichmuller_inv(&x, &q)?)
}

/// `v_U = τ⁻¹ ∘ Ind_U^G ∘ τ` on Witt coordinates.
pub fn witt_v(ctx: &Arc<GroupContext>, u: usize, alpha: &IndexedVector) -> Result<IndexedVector> {
    expect_over(alpha, &ctx.subgroup_context(u), "witt_v")?;
    conjugate_by_tau(alpha, |x| ind_nr(ctx, u, x))
}

/// `f_U = τ⁻¹ ∘ Res_U^G ∘ τ` on Witt coordinates.
pub fn witt_f(ctx: &Arc<GroupContext>, u: usize, alpha: &IndexedVector) -> Result<IndexedVector> {
    expect_over(alpha, ctx, "witt_f")?;
    conjugate_by_tau(alpha, |x| res_nr(ctx, u, x))
}

/// Integer matrix of `ν_U = φ̃ ∘ Ind ∘ φ̃⁻¹`: rows are G-classes, columns U-classes.
pub fn ghost_nu_matrix(ctx: &Arc<GroupContext>, u: usize) -> Result<Vec<Vec<i64>>> {
    let slots = ctx.cache.nu.get_or_init(|| (0..ctx.class_count()).map(|_| OnceLock::new()).collect());
    if let Some(m) = slots[u].get() {
        return Ok(m.clone());
    }
    let sub = ctx.subgroup_context(u);
    let q = RingSpec::Rationals.arc();
    let n = ctx.class_count();
    let mut m = vec![vec![0i64; sub.class_count()]; n];
    for v in 0..sub.class_count() {
        let e = IndexedVector::one_hot(&sub, Flavor::Ghost, v, RingValue::one(&q));
        let col = nr_ghost(&ind_nr(ctx, u, &nr_ghost_inv(&e)?)?)?;
        for (w, c) in col.components().iter().enumerate() {
            let r = c.to_rational().expect("rational");
            if !r.is_integer() {
                return Err(Error::IntegralityViolation(format!(
                    "ν at ({}, {}) is {r}",
                    ctx.table().class(w).label,
                    sub.table().class(v).label
                )));
            }
            m[w][v] = i64::try_from(r.to_integer()).expect("small");
        }
    }
    let _ = slots[u].set(m.clone());
    Ok(m)
}

/// `ν_U` on ghost coordinates, valid over every ring.
pub fn ghost_nu(ctx: &Arc<GroupContext>, u: usize, g: &IndexedVector) -> Result<IndexedVector> {
    g.expect_flavor(Flavor::Ghost)?;
    expect_over(g, &ctx.subgroup_context(u), "ghost_nu")?;
    let m = ghost_nu_matrix(ctx, u)?;
    let comps = m
        .iter()
        .map(|row| {
            row.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(RingValue::zero(g.ring()), |acc, (v, &c)| {
                acc.ring_add(&RingValue::from_int(g.ring(), c).ring_mul(g.component(v)))
            })
        })
        .collect();
    Ok(IndexedVector::from_parts(ctx, Flavor::Ghost, g.ring(), comps))
}

/// `𝓕_U` on ghost coordinates: `c_W = b_V` for the G-class `V` of `W`.
pub fn ghost_f(ctx: &Arc<GroupContext>, u: usize, g: &IndexedVector) -> Result<IndexedVector> {
    g.expect_flavor(Flavor::Ghost)?;
    expect_over(g, ctx, "ghost_F")?;
    let sub = ctx.subgroup_context(u);
    let comps = ctx.ind_class_map(u).iter().map(|&v| g.component(v).clone()).collect();
    Ok(IndexedVector::from_parts(&sub, Flavor::Ghost, g.ring(), comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{ap_op, exp_s, gamma, Op};

    fn setup(g: &str, r: &str) -> (Arc<GroupContext>, Arc<RingSpec>) {
        (GroupContext::parse(g).unwrap(), RingSpec::parse(r).unwrap().arc())
    }

    #[test]
    fn induction_from_c2_in_s3() {
        let (s3, z) = setup("S3", "ZPoly(x)");
        let c2 = s3.table().find_label("C2").unwrap();
        let sub = s3.subgroup_context(c2);
        let x = RingValue::var(&z, "x").unwrap();
        let e_local = sub.table().find_label("E").unwrap();
        let v = IndexedVector::one_hot(&sub, Flavor::Necklace, e_local, x.clone());
        assert_eq!(ind_nr(&s3, c2, &v).unwrap().to_strings(), vec!["0", "0", "0", "x"]);
        let v = v.with_flavor(Flavor::Aperiodic);
        assert_eq!(ind_ap(&s3, c2, &v).unwrap().to_strings(), vec!["0", "0", "0", "3*x"]);
    }

    #[test]
    fn restriction_s3_to_c3() {
        let (s3, z) = setup("S3", "Z");
        let c3 = s3.table().find_label("C3").unwrap();
        let c2 = s3.table().find_label("C2").unwrap();
        let x = IndexedVector::one_hot(&s3, Flavor::Necklace, c2, RingValue::one(&z));
        assert_eq!(res_nr(&s3, c3, &x).unwrap().to_strings(), vec!["0", "1"]);
    }

    #[test]
    fn identity_at_top() {
        let (d4, q) = setup("D4", "Q");
        let x = IndexedVector::parse(&d4, Flavor::Necklace, &q, &["1", "2", "3", "4", "5", "6", "7", "8"]).unwrap();
        let sub = d4.subgroup_context(0);
        let r = res_nr(&d4, 0, &x).unwrap();
        assert_eq!(r.ctx().name(), sub.name());
        assert_eq!(r.to_strings(), x.to_strings());
    }

    #[test]
    fn abelian_nu() {
        let (c4, _) = setup("C4", "Z");
        let m = ghost_nu_matrix(&c4, 1).unwrap();
        // C4 classes: C4, C2, E; U = C2 with classes C2, E.
        assert_eq!(m, vec![vec![0, 0], vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn gamma_is_sum_of_bold_inductions() {
        let (s3, q) = setup("S3", "QPoly(a,b,c,d)");
        let alpha = IndexedVector::parse(&s3, Flavor::Witt, &q, &["a", "b", "c", "d"]).unwrap();
        let mut acc = IndexedVector::zero(&s3, Flavor::Aperiodic, &q);
        for u in 0..s3.class_count() {
            let sub = s3.subgroup_context(u);
            let s = exp_s(&sub, alpha.component(u)).unwrap();
            acc = ap_op(Op::Add, &acc, Some(&ind_ap(&s3, u, &s).unwrap())).unwrap();
        }
        assert_eq!(acc, gamma(&alpha).unwrap());
    }
}
