use num_bigint::BigInt;
use num_rational::BigRational;

use super::linear::{apply_rational, solve_rational, Rows};
use super::{Flavor, IndexedVector, Op};
use crate::algebra::{CommRing, RingValue};
use crate::error::{Error, Result};
use crate::group::GroupContext;

fn binary<'a>(op: Op, a: &'a IndexedVector, b: Option<&'a IndexedVector>, flavor: Flavor) -> Result<Option<&'a IndexedVector>> {
    a.expect_flavor(flavor)?;
    match (op, b) {
        (Op::Neg, None) => Ok(None),
        (Op::Neg, Some(_)) => Err(Error::ShapeMismatch("negation takes one operand".into())),
        (_, Some(b)) => {
            a.expect_compatible(b)?;
            Ok(Some(b))
        }
        (_, None) => Err(Error::ShapeMismatch("binary operation needs two operands".into())),
    }
}

fn componentwise(a: &IndexedVector, b: Option<&IndexedVector>, op: Op) -> IndexedVector {
    let comps = match (op, b) {
        (Op::Neg, _) => a.comps.iter().map(RingValue::ring_neg).collect(),
        (Op::Add, Some(b)) => a.comps.iter().zip(&b.comps).map(|(x, y)| x.ring_add(y)).collect(),
        (Op::Mul, Some(b)) => a.comps.iter().zip(&b.comps).map(|(x, y)| x.ring_mul(y)).collect(),
        _ => unreachable!("operand count checked"),
    };
    IndexedVector::from_parts(&a.ctx, a.flavor, &a.ring, comps)
}

/// The Witt ghost map `Φ_U(α) = Σ' φ_U(G/V)·α(V)^{(V:U)}`.
pub fn wg_ghost(alpha: &IndexedVector) -> Result<IndexedVector> {
    alpha.expect_flavor(Flavor::Witt)?;
    let ctx = &alpha.ctx;
    let n = ctx.class_count();
    let comps = (0..n)
        .map(|u| {
            (0..=u).filter(|&v| ctx.mark(v, u) > 0).fold(RingValue::zero(&alpha.ring), |acc, v| {
                let c = RingValue::from_int(&alpha.ring, ctx.mark(v, u) as i64);
                let e = (ctx.index(u) / ctx.index(v)) as u64;
                acc.ring_add(&c.ring_mul(&alpha.comps[v].ring_pow(e)))
            })
        })
        .collect();
    Ok(IndexedVector::from_parts(ctx, Flavor::Ghost, &alpha.ring, comps))
}

/// Ring operations of `W_G(R)` by evaluation of the integer universal polynomials.
pub fn wg_op(op: Op, a: &IndexedVector, b: Option<&IndexedVector>) -> Result<IndexedVector> {
    let b = binary(op, a, b, Flavor::Witt)?;
    let set = a.ctx.universal(op);
    let comps = set.evaluate(&a.comps, b.map(|b| b.comps.as_slice()), &[]);
    Ok(IndexedVector::from_parts(&a.ctx, Flavor::Witt, &a.ring, comps))
}

/// Ring operations of `NR_G(R)`; the product uses the double-coset counts.
pub fn nr_op(op: Op, x: &IndexedVector, y: Option<&IndexedVector>) -> Result<IndexedVector> {
    let y = binary(op, x, y, Flavor::Necklace)?;
    if op != Op::Mul {
        return Ok(componentwise(x, y, op));
    }
    let y = y.expect("checked");
    let sc = x.ctx.structure_constants();
    let comps = (0..x.ctx.class_count())
        .map(|u| {
            sc.terms(u).iter().fold(RingValue::zero(&x.ring), |acc, &(v, w, p)| {
                let c = RingValue::from_int(&x.ring, p);
                acc.ring_add(&c.ring_mul(&x.comps[v].ring_mul(&y.comps[w])))
            })
        })
        .collect();
    Ok(IndexedVector::from_parts(&x.ctx, Flavor::Necklace, &x.ring, comps))
}

fn marks_rows(ctx: &GroupContext, scaled: bool) -> Rows {
    (0..ctx.class_count())
        .map(|u| {
            (0..=u)
                .filter(|&v| ctx.mark(v, u) > 0)
                .map(|v| {
                    let d = if scaled { ctx.index(v) } else { 1 };
                    (v, BigRational::new(BigInt::from(ctx.mark(v, u)), BigInt::from(d)))
                })
                .collect()
        })
        .collect()
}

/// `φ̃_U(x) = Σ' φ_U(G/V) x_V`.
pub fn nr_ghost(x: &IndexedVector) -> Result<IndexedVector> {
    x.expect_flavor(Flavor::Necklace)?;
    let comps = apply_rational(&x.comps, &x.ring, &marks_rows(&x.ctx, false), &Error::NotInImage)?;
    Ok(IndexedVector::from_parts(&x.ctx, Flavor::Ghost, &x.ring, comps))
}

/// Inverse of `φ̃` by triangular solve against the table of marks.
pub fn nr_ghost_inv(g: &IndexedVector) -> Result<IndexedVector> {
    g.expect_flavor(Flavor::Ghost)?;
    let comps = solve_rational(&g.comps, &g.ring, &marks_rows(&g.ctx, false), &Error::NotInImage)?;
    Ok(IndexedVector::from_parts(&g.ctx, Flavor::Necklace, &g.ring, comps))
}

/// Ring operations of `AP_G(R)` with constants `a_V^W(U) = (G:U)p_V^W(U)/((G:V)(G:W))`.
///
/// Non-integral constants are only usable over ℚ-algebras; over torsion-free
/// rings the product is formed in `R ⊗ ℚ` and must land back in `R`.
pub fn ap_op(op: Op, x: &IndexedVector, y: Option<&IndexedVector>) -> Result<IndexedVector> {
    let y = binary(op, x, y, Flavor::Aperiodic)?;
    if op != Op::Mul {
        return Ok(componentwise(x, y, op));
    }
    let y = y.expect("checked");
    let ctx = &x.ctx;
    let sc = ctx.structure_constants();
    let n = ctx.class_count();
    // Linear in the products x_V y_W, indexed as V * n + W.
    let products: Vec<RingValue> =
        (0..n).flat_map(|v| (0..n).map(move |w| (v, w))).map(|(v, w)| x.comps[v].ring_mul(&y.comps[w])).collect();
    let rows: Rows = (0..n)
        .map(|u| sc.terms(u).iter().map(|&(v, w, _)| (v * n + w, sc.a(v, w, u).clone())).collect())
        .collect();
    let comps = apply_rational(&products, &x.ring, &rows, &Error::NonIntegralConstant)?;
    Ok(IndexedVector::from_parts(ctx, Flavor::Aperiodic, &x.ring, comps))
}

/// `φ_U(x) = Σ' φ_U(G/V) x_V / (G:V)`.
pub fn ap_ghost(x: &IndexedVector) -> Result<IndexedVector> {
    x.expect_flavor(Flavor::Aperiodic)?;
    let comps = apply_rational(&x.comps, &x.ring, &marks_rows(&x.ctx, true), &Error::NotInImage)?;
    Ok(IndexedVector::from_parts(&x.ctx, Flavor::Ghost, &x.ring, comps))
}

pub fn ap_ghost_inv(g: &IndexedVector) -> Result<IndexedVector> {
    g.expect_flavor(Flavor::Ghost)?;
    let comps = solve_rational(&g.comps, &g.ring, &marks_rows(&g.ctx, true), &Error::NotInImage)?;
    Ok(IndexedVector::from_parts(&g.ctx, Flavor::Aperiodic, &g.ring, comps))
}

/// `θ(x)_U = (G:U) x_U`, from necklace to aperiodic coordinates.
pub fn theta(x: &IndexedVector) -> Result<IndexedVector> {
    x.expect_flavor(Flavor::Necklace)?;
    let comps = x
        .comps
        .iter()
        .enumerate()
        .map(|(u, c)| RingValue::from_int(&x.ring, x.ctx.index(u) as i64).ring_mul(c))
        .collect();
    Ok(IndexedVector::from_parts(&x.ctx, Flavor::Aperiodic, &x.ring, comps))
}

pub fn theta_inv(x: &IndexedVector) -> Result<IndexedVector> {
    x.expect_flavor(Flavor::Aperiodic)?;
    let comps = x
        .comps
        .iter()
        .enumerate()
        .map(|(u, c)| {
            c.div_integer(&BigInt::from(x.ctx.index(u)))
                .ok_or_else(|| Error::NotInvertibleIndex(x.ctx.table().class(u).label.clone()))
        })
        .collect::<Result<_>>()?;
    Ok(IndexedVector::from_parts(&x.ctx, Flavor::Necklace, &x.ring, comps))
}
