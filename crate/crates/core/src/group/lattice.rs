use std::collections::HashMap;

use num_rational::BigRational;

use super::{mask_elements, mask_size, FiniteGroup, Mask};
use crate::algebra::UniTriMatrix;

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub label: String,
    /// Conjugate whose sorted element list is lexicographically least.
    pub rep: Mask,
    pub order: usize,
    pub index: usize,
    /// `(N_G(V) : V)`.
    pub normalizer_index: usize,
    pub conjugates: Vec<Mask>,
}

/// Conjugacy classes of subgroups ordered by `(index, key of representative)`,
/// so the full group comes first and subconjugates never precede their overgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    classes: Vec<SubgroupClass>,
    lookup: HashMap<Mask, usize>,
}

fn is_cyclic(g: &FiniteGroup, h: Mask) -> bool {
    mask_elements(h).any(|x| g.closure(1 << x) == h)
}

fn is_abelian_sub(g: &FiniteGroup, h: Mask) -> bool {
    let el: Vec<usize> = mask_elements(h).collect();
    el.iter().all(|&a| el.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

fn involutions(g: &FiniteGroup, h: Mask) -> usize {
    mask_elements(h).filter(|&x| x != 0 && g.mul(x, x) == 0).count()
}

fn structural_label(g: &FiniteGroup, h: Mask) -> String {
    let n = mask_size(h);
    if n == 1 {
        return "E".into();
    }
    if is_cyclic(g, h) {
        return format!("C{n}");
    }
    let abelian = is_abelian_sub(g, h);
    match (n, abelian, involutions(g, h)) {
        (4, true, _) => "V4".into(),
        (6, false, _) => "S3".into(),
        (8, false, 1) => "Q8".into(),
        (8, false, _) => "D4".into(),
        (12, false, 3) => "A4".into(),
        (12, false, 7) => "D6".into(),
        (24, false, 9) => "S4".into(),
        _ => format!("H{n}"),
    }
}

fn elements_key(h: Mask) -> Vec<usize> {
    mask_elements(h).collect()
}

impl SubgroupClassTable {
    pub fn build(g: &FiniteGroup) -> Self {
        let subs = g.all_subgroups();
        let mut class_of: HashMap<Mask, usize> = HashMap::new();
        let mut raw: Vec<Vec<Mask>> = Vec::new();
        for &h in &subs {
            if class_of.contains_key(&h) {
                continue;
            }
            let mut conj: Vec<Mask> = (0..g.order()).map(|x| g.conjugate(x, h)).collect();
            conj.sort_unstable();
            conj.dedup();
            for &c in &conj {
                class_of.insert(c, raw.len());
            }
            raw.push(conj);
        }
        let mut classes: Vec<SubgroupClass> = raw
            .into_iter()
            .map(|mut conjugates| {
                conjugates.sort_by_key(|&c| elements_key(c));
                let rep = conjugates[0];
                let order = mask_size(rep);
                let normalizer = (0..g.order()).filter(|&x| g.conjugate(x, rep) == rep).count();
                SubgroupClass {
                    label: String::new(),
                    rep,
                    order,
                    index: g.order() / order,
                    normalizer_index: normalizer / order,
                    conjugates,
                }
            })
            .collect();
        classes.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| elements_key(a.rep).cmp(&elements_key(b.rep))));
        let base: Vec<String> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { g.name().to_string() } else { structural_label(g, c.rep) })
            .collect();
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for (i, c) in classes.iter_mut().enumerate() {
            let total = base.iter().filter(|b| **b == base[i]).count();
            c.label = if total > 1 {
                let k = seen.entry(&base[i]).or_insert(0);
                *k += 1;
                format!("{}_{}", base[i], k)
            } else {
                base[i].clone()
            };
        }
        let mut lookup = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.conjugates {
                lookup.insert(m, i);
            }
        }
        SubgroupClassTable { classes, lookup }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.index).collect()
    }

    /// Class index of a subgroup given as a mask. Panics on a non-subgroup.
    pub fn classify(&self, h: Mask) -> usize {
        *self.lookup.get(&h).expect("mask is a subgroup")
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    pub fn trivial_class(&self) -> usize {
        self.classes.len() - 1
    }
}

/// `φ_U(G/V) = |{g : g⁻¹Ug ⊆ V}| / |V|`.
pub fn mark(g: &FiniteGroup, u: Mask, v: Mask) -> usize {
    let fixing = (0..g.order()).filter(|&x| g.conjugate(g.inverse(x), u) & !v == 0).count();
    fixing / mask_size(v)
}

/// The table of marks `ζ(V, W) = φ_W(G/V)` and its rational inverse.
#[derive(Clone, Debug)]
pub struct MarksMatrix {
    marks: Vec<Vec<usize>>,
    zeta: UniTriMatrix<BigRational>,
    mu: UniTriMatrix<BigRational>,
}

impl MarksMatrix {
    pub fn build(g: &FiniteGroup, t: &SubgroupClassTable) -> Self {
        let n = t.len();
        let marks: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..n).map(|w| mark(g, t.class(w).rep, t.class(v).rep)).collect())
            .collect();
        let zeta = UniTriMatrix::new(
            t.labels(),
            marks
                .iter()
                .map(|row| row.iter().map(|&m| BigRational::from_integer(m.into())).collect())
                .collect(),
        );
        let mu = zeta.invert().expect("marks have a nonzero diagonal");
        MarksMatrix { marks, zeta, mu }
    }

    /// `φ_W(G/V)` for class indices `v`, `w`.
    pub fn mark(&self, v: usize, w: usize) -> usize {
        self.marks[v][w]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.marks
    }

    pub fn zeta(&self) -> &UniTriMatrix<BigRational> {
        &self.zeta
    }

    pub fn mu(&self) -> &UniTriMatrix<BigRational> {
        &self.mu
    }

    /// `U ≲ V`: `U` is subconjugate to `V`.
    pub fn subconjugate(&self, u: usize, v: usize) -> bool {
        self.marks[v][u] > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> (FiniteGroup, SubgroupClassTable) {
        let g = FiniteGroup::parse(s).unwrap();
        let t = SubgroupClassTable::build(&g);
        (g, t)
    }

    #[test]
    fn class_counts_and_indices() {
        assert_eq!(table("C2").1.labels(), vec!["C2", "E"]);
        assert_eq!(table("S3").1.indices(), vec![1, 2, 3, 6]);
        assert_eq!(table("D4").1.indices(), vec![1, 2, 2, 2, 4, 4, 4, 8]);
        assert_eq!(table("S4").1.len(), 11);
        assert_eq!(table("Q8").1.len(), 6);
        assert_eq!(table("A4").1.len(), 5);
    }

    #[test]
    fn labels_are_structural_and_unique() {
        assert_eq!(table("S3").1.labels(), vec!["S3", "C3", "C2", "E"]);
        let d4 = table("D4").1.labels();
        let mut uniq = d4.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), d4.len());
        assert!(d4.contains(&"C4".to_string()));
    }

    #[test]
    fn s3_marks() {
        let (g, t) = table("S3");
        let m = MarksMatrix::build(&g, &t);
        assert_eq!(m.rows(), &[vec![1, 1, 1, 1], vec![0, 2, 0, 2], vec![0, 0, 1, 3], vec![0, 0, 0, 6]]);
    }

    #[test]
    fn diagonal_is_normalizer_index() {
        for s in ["C6", "S3", "D4", "Q8", "A4", "S4", "D6"] {
            let (g, t) = table(s);
            let m = MarksMatrix::build(&g, &t);
            for (i, c) in t.classes().iter().enumerate() {
                assert_eq!(m.mark(i, i), c.normalizer_index, "{s} {}", c.label);
                for j in 0..i {
                    assert_eq!(m.mark(i, j), 0);
                }
            }
        }
    }
}
