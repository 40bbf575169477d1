//! Rational-coefficient linear maps evaluated under the coefficient strategies.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{CommRing, RingSpec, RingValue};
use crate::error::{Error, Result};

/// Sparse rows: `out_i = Σ c · x_j` over `(j, c)`.
pub(crate) type Rows = Vec<Vec<(usize, BigRational)>>;

fn apply_direct(x: &[RingValue], zero: &RingValue, rows: &Rows) -> Option<Vec<RingValue>> {
    rows.iter()
        .map(|row| {
            row.iter().try_fold(zero.clone(), |acc, (j, c)| Some(acc.ring_add(&x[*j].scale_rational(c)?)))
        })
        .collect()
}

fn solve_direct(g: &[RingValue], _zero: &RingValue, rows: &Rows) -> Option<Vec<RingValue>> {
    let mut x: Vec<RingValue> = Vec::with_capacity(g.len());
    for (i, row) in rows.iter().enumerate() {
        let mut rest = g[i].clone();
        let mut diag = None;
        for (j, c) in row {
            if *j == i {
                diag = Some(c);
            } else {
                rest = rest.ring_sub(&x[*j].scale_rational(c)?);
            }
        }
        let d = diag.expect("triangular system has a diagonal");
        assert!(!d.is_zero(), "zero diagonal");
        x.push(rest.scale_rational(&d.recip())?);
    }
    Some(x)
}

/// Computes in `R` when the coefficients allow it, otherwise in `R ⊗ ℚ` followed
/// by a membership check (torsion-free `R`).
fn run(
    x: &[RingValue],
    ring: &Arc<RingSpec>,
    rows: &Rows,
    f: fn(&[RingValue], &RingValue, &Rows) -> Option<Vec<RingValue>>,
    err: &dyn Fn(String) -> Error,
) -> Result<Vec<RingValue>> {
    let zero = RingValue::zero(ring);
    let all_integral = rows.iter().flatten().all(|(_, c)| c.is_integer());
    let direct_first = ring.is_q_algebra() || !ring.is_torsion_free() || all_integral;
    if direct_first {
        if let Some(out) = f(x, &zero, rows) {
            return Ok(out);
        }
        if !ring.is_torsion_free() {
            return Err(err(format!("a required rational constant is not defined in {ring}")));
        }
    }
    let rq = Arc::new(ring.rationalization());
    let xq: Vec<RingValue> = x.iter().map(|v| v.rationalize().narrow(&rq).expect("same shape")).collect();
    let out = f(&xq, &RingValue::zero(&rq), rows).expect("rational arithmetic is total");
    out.iter()
        .map(|v| v.narrow(ring).map_err(|_| err(format!("value {v} does not lie in {ring}"))))
        .collect()
}

pub(crate) fn apply_rational(
    x: &[RingValue],
    ring: &Arc<RingSpec>,
    rows: &Rows,
    err: &dyn Fn(String) -> Error,
) -> Result<Vec<RingValue>> {
    run(x, ring, rows, apply_direct, err)
}

/// Solves the lower-triangular system `Σ_{j ≤ i} c_ij x_j = g_i`.
pub(crate) fn solve_rational(
    g: &[RingValue],
    ring: &Arc<RingSpec>,
    rows: &Rows,
    err: &dyn Fn(String) -> Error,
) -> Result<Vec<RingValue>> {
    run(g, ring, rows, solve_direct, err)
}
