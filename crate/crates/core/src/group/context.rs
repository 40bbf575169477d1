use std::sync::{Arc, OnceLock, Weak};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::lattice::{MarksMatrix, SubgroupClassTable};
use super::{mask_elements, mask_size, FiniteGroup, Mask};
use crate::burnside::BurnsideCache;
use crate::error::Result;

/// Knobs applied when deriving tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Negate one structure constant; used to check that the verifiers catch bugs.
    pub inject_fault: bool,
}

/// One double coset `V g W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub rep: usize,
    /// G-class of `V ∩ gWg⁻¹`.
    pub z_class: usize,
    pub size: usize,
}

/// A U-orbit on `G/V`, summarised by the U-class of its stabilizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResTerm {
    pub w: usize,
    pub multiplicity: usize,
}

/// Necklace constants `p_V^W(U)` and aperiodic constants `a_V^W(U)`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    p: Vec<Vec<Vec<i64>>>,
    a: Vec<Vec<Vec<BigRational>>>,
    /// Nonzero `(V, W, p)` terms per target class `U`.
    terms: Vec<Vec<(usize, usize, i64)>>,
}

impl StructureConstants {
    pub fn p(&self, v: usize, w: usize, u: usize) -> i64 {
        self.p[v][w][u]
    }

    pub fn a(&self, v: usize, w: usize, u: usize) -> &BigRational {
        &self.a[v][w][u]
    }

    pub fn terms(&self, u: usize) -> &[(usize, usize, i64)] {
        &self.terms[u]
    }

    pub fn aperiodic_integral(&self) -> bool {
        self.a.iter().flatten().flatten().all(BigRational::is_integer)
    }
}

struct SubContext {
    ctx: Arc<GroupContext>,
    embedding: Vec<usize>,
}

/// A group together with its lattice data, derived once and shared.
pub struct GroupContext {
    group: FiniteGroup,
    table: SubgroupClassTable,
    marks: MarksMatrix,
    options: BuildOptions,
    structure: OnceLock<StructureConstants>,
    subs: Vec<OnceLock<SubContext>>,
    ind_maps: Vec<OnceLock<Vec<usize>>>,
    res_data: Vec<OnceLock<Vec<Vec<ResTerm>>>>,
    pub(crate) cache: BurnsideCache,
    this: Weak<GroupContext>,
}

impl std::fmt::Debug for GroupContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupContext({})", self.group.name())
    }
}

impl GroupContext {
    pub fn new(group: FiniteGroup) -> Arc<Self> {
        Self::with_options(group, BuildOptions::default())
    }

    pub fn with_options(group: FiniteGroup, options: BuildOptions) -> Arc<Self> {
        let table = SubgroupClassTable::build(&group);
        let marks = MarksMatrix::build(&group, &table);
        let n = table.len();
        Arc::new_cyclic(|this| GroupContext {
            this: this.clone(),
            group,
            table,
            marks,
            options,
            structure: OnceLock::new(),
            subs: (0..n).map(|_| OnceLock::new()).collect(),
            ind_maps: (0..n).map(|_| OnceLock::new()).collect(),
            res_data: (0..n).map(|_| OnceLock::new()).collect(),
            cache: BurnsideCache::default(),
        })
    }

    pub fn parse(spec: &str) -> Result<Arc<Self>> {
        Ok(Self::new(FiniteGroup::parse(spec)?))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn table(&self) -> &SubgroupClassTable {
        &self.table
    }

    pub fn marks(&self) -> &MarksMatrix {
        &self.marks
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn class_count(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.table.labels()
    }

    /// `(G : V)` for class `v`.
    pub fn index(&self, v: usize) -> usize {
        self.table.class(v).index
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn mark(&self, v: usize, u: usize) -> usize {
        self.marks.mark(v, u)
    }

    pub fn subconjugate(&self, u: usize, v: usize) -> bool {
        self.marks.subconjugate(u, v)
    }

    /// One entry per double coset `V g W`, using the stored representatives.
    pub fn double_cosets(&self, v: usize, w: usize) -> Vec<DoubleCoset> {
        let g = &self.group;
        let vm = self.table.class(v).rep;
        let wm = self.table.class(w).rep;
        let mut covered: Mask = 0;
        let mut out = Vec::new();
        for x in 0..g.order() {
            if covered & (1 << x) != 0 {
                continue;
            }
            let mut dc: Mask = 0;
            for a in mask_elements(vm) {
                dc |= g.left_coset(g.mul(a, x), wm);
            }
            covered |= dc;
            let z = vm & g.conjugate(x, wm);
            out.push(DoubleCoset { rep: x, z_class: self.table.classify(z), size: mask_size(dc) });
        }
        out
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        self.structure.get_or_init(|| self.build_structure())
    }

    fn build_structure(&self) -> StructureConstants {
        let n = self.class_count();
        let mut p = vec![vec![vec![0i64; n]; n]; n];
        for v in 0..n {
            for w in v..n {
                for dc in self.double_cosets(v, w) {
                    p[v][w][dc.z_class] += 1;
                }
                if w != v {
                    p[w][v] = p[v][w].clone();
                }
            }
        }
        if self.options.inject_fault && n > 1 {
            let e = n - 1;
            p[e][e][e] = -p[e][e][e];
        }
        let a = (0..n)
            .map(|v| {
                (0..n)
                    .map(|w| {
                        (0..n)
                            .map(|u| {
                                BigRational::new(
                                    BigInt::from(self.index(u) as i64 * p[v][w][u]),
                                    BigInt::from(self.index(v) * self.index(w)),
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut terms = vec![Vec::new(); n];
        for v in 0..n {
            for w in 0..n {
                for (u, t) in terms.iter_mut().enumerate() {
                    if p[v][w][u] != 0 {
                        t.push((v, w, p[v][w][u]));
                    }
                }
            }
        }
        StructureConstants { p, a, terms }
    }

    fn sub(&self, u: usize) -> &SubContext {
        self.subs[u].get_or_init(|| {
            let c = self.table.class(u);
            let (h, embedding) = self.group.subgroup_as_group(c.rep, &c.label);
            SubContext { ctx: GroupContext::with_options(h, self.options), embedding }
        })
    }

    /// The representative of class `u` as a group in its own right; the class
    /// of `G` itself gives back this context.
    pub fn subgroup_context(&self, u: usize) -> Arc<GroupContext> {
        if u == 0 {
            if let Some(me) = self.this.upgrade() {
                return me;
            }
        }
        self.sub(u).ctx.clone()
    }

    /// Element indices of the representative of class `u`, in its own ordering.
    pub fn embedding(&self, u: usize) -> &[usize] {
        &self.sub(u).embedding
    }

    /// Maps each class of `U` (as its own group) to the G-class fusing it.
    pub fn ind_class_map(&self, u: usize) -> &[usize] {
        self.ind_maps[u].get_or_init(|| {
            let sub = self.sub(u);
            sub.ctx
                .table()
                .classes()
                .iter()
                .map(|c| self.table.classify(lift_mask(c.rep, &sub.embedding)))
                .collect()
        })
    }

    /// For each G-class `V`, the U-orbits on `G/V` grouped by stabilizer U-class.
    pub fn res_orbit_data(&self, u: usize, v: usize) -> &[ResTerm] {
        &self.res_data[u].get_or_init(|| (0..self.class_count()).map(|v| self.build_res(u, v)).collect())[v]
    }

    fn build_res(&self, u: usize, v: usize) -> Vec<ResTerm> {
        let g = &self.group;
        let sub = self.sub(u);
        let um = self.table.class(u).rep;
        let vm = self.table.class(v).rep;
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in sub.embedding.iter().enumerate() {
            pos[x] = i;
        }
        let ut = sub.ctx.table();
        let mut counts = vec![0usize; ut.len()];
        let mut covered: Mask = 0;
        for x in 0..g.order() {
            if covered & (1 << x) != 0 {
                continue;
            }
            for a in mask_elements(um) {
                covered |= g.left_coset(g.mul(a, x), vm);
            }
            let stab = um & g.conjugate(x, vm);
            let local = mask_elements(stab).fold(0u64, |acc, e| acc | (1 << pos[e]));
            counts[ut.classify(local)] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, m)| m > 0)
            .map(|(w, multiplicity)| ResTerm { w, multiplicity })
            .collect()
    }
}

fn lift_mask(local: Mask, embedding: &[usize]) -> Mask {
    mask_elements(local).fold(0, |acc, i| acc | (1 << embedding[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> Arc<GroupContext> {
        GroupContext::parse(s).unwrap()
    }

    fn label(c: &GroupContext, l: &str) -> usize {
        c.table().find_label(l).unwrap()
    }

    #[test]
    fn double_coset_examples() {
        let c2 = ctx("C2");
        let d = c2.double_cosets(0, 0);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].z_class, 0);
        let e = c2.double_cosets(1, 1);
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|x| x.z_class == 1));
        let s3 = ctx("S3");
        let d = s3.double_cosets(label(&s3, "C3"), label(&s3, "C2"));
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].size, 6);
        assert_eq!(d[0].z_class, label(&s3, "E"));
    }

    #[test]
    fn double_coset_sizes_sum_to_order() {
        for s in ["S3", "D4", "Q8", "A4", "S4"] {
            let c = ctx(s);
            for v in 0..c.class_count() {
                for w in 0..c.class_count() {
                    let total: usize = c.double_cosets(v, w).iter().map(|d| d.size).sum();
                    assert_eq!(total, c.order());
                }
            }
        }
    }

    #[test]
    fn structure_constant_examples() {
        let c2 = ctx("C2");
        assert_eq!(c2.structure_constants().p(1, 1, 1), 2);
        let s3 = ctx("S3");
        let (c3, c2l, e) = (label(&s3, "C3"), label(&s3, "C2"), label(&s3, "E"));
        assert_eq!(s3.structure_constants().p(c3, c2l, e), 1);
        let c6 = ctx("C6");
        let i2 = (0..4).find(|&i| c6.index(i) == 2).unwrap();
        let i3 = (0..4).find(|&i| c6.index(i) == 3).unwrap();
        for u in 0..4 {
            let expect = if c6.index(u) == 6 { 1 } else { 0 };
            assert_eq!(c6.structure_constants().p(i2, i3, u), expect);
        }
    }

    #[test]
    fn res_examples() {
        let s3 = ctx("S3");
        let (c3, c2l) = (label(&s3, "C3"), label(&s3, "C2"));
        let sub_c2 = s3.subgroup_context(c2l);
        assert_eq!(s3.res_orbit_data(c2l, c3), &[ResTerm { w: sub_c2.table().find_label("E").unwrap(), multiplicity: 1 }]);
        let sub_c3 = s3.subgroup_context(c3);
        assert_eq!(s3.res_orbit_data(c3, c2l), &[ResTerm { w: sub_c3.table().find_label("E").unwrap(), multiplicity: 1 }]);
        for v in 0..4 {
            assert_eq!(s3.res_orbit_data(0, v), &[ResTerm { w: v, multiplicity: 1 }]);
        }
    }

    #[test]
    fn ind_maps() {
        let s3 = ctx("S3");
        assert_eq!(s3.ind_class_map(0), &[0, 1, 2, 3]);
        let c2l = label(&s3, "C2");
        assert_eq!(s3.ind_class_map(c2l), &[c2l, label(&s3, "E")]);
        let d4 = ctx("D4");
        for u in 0..d4.class_count() {
            let sub = d4.subgroup_context(u);
            let m = d4.ind_class_map(u);
            assert_eq!(m.len(), sub.class_count());
            for (i, &g) in m.iter().enumerate() {
                assert_eq!(sub.table().class(i).order, d4.table().class(g).order);
            }
        }
    }
}
