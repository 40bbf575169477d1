use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::teich::TeichTable;
use super::Op;
use crate::algebra::{CommRing, Poly, RingValue};
use crate::error::{Error, Result};
use crate::group::GroupContext;

/// One summand `coeff · x_source^exponent` of a ghost component.
#[derive(Clone, Debug)]
pub struct GhostTerm {
    pub source: usize,
    /// Polynomial in the system's extra variables (constant when there are none).
    pub coeff: Poly,
    pub exponent: u64,
}

/// A triangular Witt-type ghost map `Φ_i(x) = Σ_j c_ij x_j^{e_ij}`, `j ≤ i`, with
/// integer diagonal `c_ii` and `e_ii = 1`.
#[derive(Clone, Debug)]
pub struct GhostSystem {
    pub labels: Vec<String>,
    pub extra_vars: Vec<String>,
    pub terms: Vec<Vec<GhostTerm>>,
}

impl GhostSystem {
    /// `Φ_U(α) = Σ' φ_U(G/V) α(V)^{(V:U)}` with `(V:U) = (G:U)/(G:V)`.
    pub fn for_group(ctx: &GroupContext) -> Self {
        let n = ctx.class_count();
        let terms = (0..n)
            .map(|u| {
                (0..=u)
                    .filter(|&v| ctx.mark(v, u) > 0)
                    .map(|v| GhostTerm {
                        source: v,
                        coeff: Poly::from_int(0, ctx.mark(v, u) as i64),
                        exponent: (ctx.index(u) / ctx.index(v)) as u64,
                    })
                    .collect()
            })
            .collect();
        GhostSystem { labels: ctx.labels(), extra_vars: Vec::new(), terms }
    }

    pub fn size(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates the ghost map on a vector over any ring; `extra` supplies
    /// values for the extra variables.
    pub fn apply(&self, x: &[RingValue], extra: &[RingValue]) -> Vec<RingValue> {
        let zero = x[0].zero_like();
        self.terms
            .iter()
            .map(|row| {
                row.iter().fold(zero.clone(), |acc, t| {
                    let c = t
                        .coeff
                        .eval(extra, &zero, &|c| RingValue::from_rational(zero.spec_arc(), c))
                        .expect("ghost coefficients are integral");
                    acc.ring_add(&c.ring_mul(&x[t.source].ring_pow(t.exponent)))
                })
            })
            .collect()
    }
}

/// Sum, product or negation polynomials of a Witt-type ring.
///
/// Variables are `a_0..a_{k-1}`, then `b_0..b_{k-1}`, then the extra variables.
#[derive(Clone, Debug)]
pub struct UniversalPolySet {
    pub op: Op,
    pub var_names: Vec<String>,
    pub polys: Vec<Poly>,
}

impl UniversalPolySet {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Evaluates all component polynomials; `b` is ignored for negation.
    pub fn evaluate(&self, a: &[RingValue], b: Option<&[RingValue]>, extra: &[RingValue]) -> Vec<RingValue> {
        let zero = a[0].zero_like();
        let mut values: Vec<RingValue> = a.to_vec();
        match b {
            Some(b) => values.extend_from_slice(b),
            None => values.extend(std::iter::repeat_n(zero.clone(), a.len())),
        }
        values.extend_from_slice(extra);
        let spec = zero.spec_arc().clone();
        self.polys
            .iter()
            .map(|p| {
                p.eval(&values, &zero, &|c| RingValue::from_rational(&spec, c))
                    .expect("universal polynomials have integer coefficients")
            })
            .collect()
    }
}

/// Solves the ghost equations symbolically over ℚ and asserts integrality.
pub fn derive_universal(sys: &GhostSystem, op: Op) -> Result<UniversalPolySet> {
    let k = sys.size();
    let t = sys.extra_vars.len();
    let nv = 2 * k + t;
    let extra_map: Vec<usize> = (2 * k..nv).collect();
    let coeffs: Vec<Vec<Poly>> =
        sys.terms.iter().map(|row| row.iter().map(|g| g.coeff.remap(nv, &extra_map)).collect()).collect();
    let ghost_of = |offset: usize| -> Vec<Poly> {
        sys.terms
            .iter()
            .zip(&coeffs)
            .map(|(row, cs)| {
                row.iter()
                    .zip(cs)
                    .fold(Poly::zero(nv), |acc, (g, c)| acc.add(&c.mul(&Poly::var(nv, offset + g.source).pow(g.exponent))))
            })
            .collect()
    };
    let ga = ghost_of(0);
    let targets: Vec<Poly> = match op {
        Op::Add => ga.iter().zip(ghost_of(k)).map(|(x, y)| x.add(&y)).collect(),
        Op::Mul => ga.iter().zip(ghost_of(k)).map(|(x, y)| x.mul(&y)).collect(),
        Op::Neg => ga.iter().map(Poly::neg).collect(),
    };
    let mut solved: Vec<Poly> = Vec::with_capacity(k);
    let mut powers: HashMap<(usize, u64), Poly> = HashMap::new();
    for (i, row) in sys.terms.iter().enumerate() {
        let mut rest = targets[i].clone();
        let mut diag = None;
        for (g, c) in row.iter().zip(&coeffs[i]) {
            if g.source == i {
                assert_eq!(g.exponent, 1, "diagonal exponent must be 1");
                diag = Some(c.as_constant().expect("diagonal coefficient is a constant"));
                continue;
            }
            let p = powers.entry((g.source, g.exponent)).or_insert_with(|| solved[g.source].pow(g.exponent));
            rest = rest.sub(&c.mul(p));
        }
        let d = diag.expect("ghost system has a diagonal term");
        let s = rest.div_rational(&d);
        // With a parameter the coefficients need only be integer-valued in it.
        let ok = match t {
            0 => s.is_integral(),
            1 => s.coefficients_in(nv - 1).iter().all(|(_, c)| c.is_numerical()),
            _ => unreachable!("at most one parameter"),
        };
        if !ok {
            return Err(Error::IntegralityViolation(format!(
                "{} polynomial at {} has a non-integral coefficient",
                op.poly_name(),
                sys.labels[i]
            )));
        }
        solved.push(s);
    }
    let mut var_names: Vec<String> = sys.labels.iter().map(|l| format!("a_{l}")).collect();
    var_names.extend(sys.labels.iter().map(|l| format!("b_{l}")));
    var_names.extend(sys.extra_vars.iter().cloned());
    Ok(UniversalPolySet { op, var_names, polys: solved })
}

/// Lazily derived per-group data for the ring functors.
#[derive(Default)]
pub(crate) struct BurnsideCache {
    universal: [OnceLock<Arc<UniversalPolySet>>; 3],
    pub(crate) teich: OnceLock<TeichTable>,
    pub(crate) nu: OnceLock<Vec<OnceLock<Vec<Vec<i64>>>>>,
}

fn op_slot(op: Op) -> usize {
    match op {
        Op::Add => 0,
        Op::Mul => 1,
        Op::Neg => 2,
    }
}

impl GroupContext {
    /// Universal polynomials of `W_G` for `op`, derived once.
    pub fn universal(&self, op: Op) -> Arc<UniversalPolySet> {
        self.cache.universal[op_slot(op)]
            .get_or_init(|| {
                Arc::new(derive_universal(&GhostSystem::for_group(self), op).unwrap_or_else(|e| panic!("{e}")))
            })
            .clone()
    }

    /// Installs externally persisted universal polynomials (checked by the caller).
    pub fn preload_universal(&self, set: UniversalPolySet) -> bool {
        self.cache.universal[op_slot(set.op)].set(Arc::new(set)).is_ok()
    }

    pub fn universal_is_cached(&self, op: Op) -> bool {
        self.cache.universal[op_slot(op)].get().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> Arc<GroupContext> {
        GroupContext::parse(s).unwrap()
    }

    fn show(set: &UniversalPolySet, i: usize) -> String {
        set.polys[i].to_string_with(&set.var_names)
    }

    #[test]
    fn c2_polynomials() {
        let c = ctx("C2");
        let sum = c.universal(Op::Add);
        assert_eq!(show(&sum, 0), "a_C2+b_C2");
        let expect = Poly::parse("a_E+b_E-a_C2*b_C2", &sum.var_names).unwrap();
        assert_eq!(sum.polys[1], expect);
        let prod = c.universal(Op::Mul);
        assert_eq!(prod.polys[0], Poly::parse("a_C2*b_C2", &prod.var_names).unwrap());
        let expect = Poly::parse("a_C2^2*b_E+a_E*b_C2^2+2*a_E*b_E", &prod.var_names).unwrap();
        assert_eq!(prod.polys[1], expect);
        let neg = c.universal(Op::Neg);
        assert_eq!(neg.polys[1], Poly::parse("-a_E-a_C2^2", &neg.var_names).unwrap());
    }

    #[test]
    fn top_class_is_trivial() {
        for s in ["S3", "D4", "C4"] {
            let c = ctx(s);
            let names = c.universal(Op::Add).var_names.clone();
            let top = &c.labels()[0];
            assert_eq!(c.universal(Op::Add).polys[0], Poly::parse(&format!("a_{top}+b_{top}"), &names).unwrap());
            assert_eq!(c.universal(Op::Mul).polys[0], Poly::parse(&format!("a_{top}*b_{top}"), &names).unwrap());
            assert_eq!(c.universal(Op::Neg).polys[0], Poly::parse(&format!("-a_{top}"), &names).unwrap());
        }
    }
}
