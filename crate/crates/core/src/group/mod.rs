//! Finite groups, their subgroup lattices up to conjugacy, tables of marks and
//! double-coset structure constants.

mod context;
mod lattice;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use context::{BuildOptions, GroupContext, ResTerm, StructureConstants};
pub use lattice::{MarksMatrix, SubgroupClass, SubgroupClassTable};

/// Default bound on group order.
pub const DEFAULT_ORDER_BOUND: usize = 24;
/// Subgroups are stored as `u64` bitmasks over element indices.
pub const MAX_ORDER: usize = 64;

/// A subgroup given as a bitmask of element indices.
pub type Mask = u64;

/// A finite group stored by its multiplication table.
///
/// Permutation groups list their elements in lexicographic order of image
/// vectors, so the identity is always element 0.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    perms: Option<Vec<Vec<u8>>>,
    table: Vec<usize>,
    inv: Vec<usize>,
    order: usize,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

type Perm = Vec<u8>;

fn compose(a: &[u8], b: &[u8]) -> Perm {
    // (a * b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn cycle_perm(n: usize, cycles: &[Vec<usize>]) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    for c in cycles {
        for (k, &x) in c.iter().enumerate() {
            p[x - 1] = (c[(k + 1) % c.len()] - 1) as u8;
        }
    }
    p
}

fn n_cycle(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

impl FiniteGroup {
    /// Parses a builtin name (`C<n>`, `D<n>`, `S<n>`, `A<n>`, `Q8`) or a list of
    /// generators in cycle notation such as `[(1 2 3 4), (1 3)]`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::parse_with_bound(spec, DEFAULT_ORDER_BOUND)
    }

    pub fn parse_with_bound(spec: &str, bound: usize) -> Result<Self> {
        let s = spec.trim();
        if s.starts_with('[') || s.starts_with('(') {
            let gens = parse_generators(s)?;
            return Self::from_permutations("G", &gens, bound);
        }
        let (head, digits) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
        let n: usize = digits
            .parse()
            .map_err(|_| Error::InvalidGroup(format!("unknown group '{s}'")))?;
        let gens: Vec<Perm> = match (head, n) {
            (_, 0) => return Err(Error::InvalidGroup(format!("unknown group '{s}'"))),
            ("C", 1) => vec![vec![0]],
            ("C", n) if n <= MAX_ORDER => vec![cycle_perm(n, &[n_cycle(n)])],
            ("D", 1) => vec![cycle_perm(2, &[vec![1, 2]])],
            ("D", 2) => vec![cycle_perm(4, &[vec![1, 2], vec![3, 4]]), cycle_perm(4, &[vec![1, 3], vec![2, 4]])],
            ("D", n) if 2 * n <= MAX_ORDER => {
                let flips: Vec<Vec<usize>> = (2..=n).filter(|&i| i < n + 2 - i).map(|i| vec![i, n + 2 - i]).collect();
                vec![cycle_perm(n, &[n_cycle(n)]), cycle_perm(n, &flips)]
            }
            ("S", 1) => vec![vec![0]],
            ("S", 2) => vec![cycle_perm(2, &[vec![1, 2]])],
            ("S", n) if n <= 4 => vec![cycle_perm(n, &[vec![1, 2]]), cycle_perm(n, &[n_cycle(n)])],
            ("A", 1..=2) => vec![vec![0]],
            ("A", 3) => vec![cycle_perm(3, &[n_cycle(3)])],
            ("A", 4) => vec![cycle_perm(4, &[vec![1, 2, 3]]), cycle_perm(4, &[vec![2, 3, 4]])],
            ("Q", 8) => vec![
                cycle_perm(8, &[vec![1, 2, 3, 4], vec![5, 6, 7, 8]]),
                cycle_perm(8, &[vec![1, 5, 3, 7], vec![2, 8, 4, 6]]),
            ],
            _ => return Err(Error::InvalidGroup(format!("unknown group '{s}'"))),
        };
        Self::from_permutations(s, &gens, bound)
    }

    /// The group generated by permutations of `{0, ..., n-1}` given as image vectors.
    pub fn from_permutations(name: &str, gens: &[Vec<u8>], bound: usize) -> Result<Self> {
        let bound = bound.min(MAX_ORDER);
        let degree = gens.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut padded = Vec::with_capacity(gens.len());
        for g in gens {
            let mut p = g.clone();
            p.extend(g.len() as u8..degree as u8);
            let mut seen = vec![false; degree];
            for &x in &p {
                if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::NotAGroup(format!("generator {g:?} is not a permutation")));
                }
            }
            padded.push(p);
        }
        let id: Perm = (0..degree as u8).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &padded {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    if seen.len() > bound {
                        return Err(Error::OrderBoundExceeded { order: seen.len(), bound });
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut perms: Vec<Perm> = seen.into_iter().collect();
        perms.sort();
        let order = perms.len();
        let index: std::collections::HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                table[i * order + j] = index[&compose(&perms[i], &perms[j])];
            }
        }
        let inv = (0..order).map(|i| (0..order).find(|&j| table[i * order + j] == 0).expect("inverse")).collect();
        Ok(FiniteGroup { name: name.to_string(), perms: Some(perms), table, inv, order })
    }

    /// A group given by its multiplication table; every group axiom is checked.
    pub fn from_table(name: &str, rows: &[Vec<usize>], bound: usize) -> Result<Self> {
        let n = rows.len();
        let bound = bound.min(MAX_ORDER);
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > bound {
            return Err(Error::OrderBoundExceeded { order: n, bound });
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not closed".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inv0 = Vec::with_capacity(n);
        for a in 0..n {
            let i = (0..n)
                .find(|&b| rows[a][b] == e)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inv0.push(i);
        }
        // Put the identity first and keep the remaining order.
        let mut order_vec: Vec<usize> = vec![e];
        order_vec.extend((0..n).filter(|&x| x != e));
        let mut pos = vec![0; n];
        for (i, &x) in order_vec.iter().enumerate() {
            pos[x] = i;
        }
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos[rows[order_vec[i]][order_vec[j]]];
            }
        }
        let inv = order_vec.iter().map(|&x| pos[inv0[x]]).collect();
        Ok(FiniteGroup { name: name.to_string(), perms: None, table, inv, order: n })
    }

    /// The subgroup `H` as a group in its own right, elements in increasing
    /// index order, together with the embedding of its elements into `self`.
    pub fn subgroup_as_group(&self, h: Mask, name: &str) -> (FiniteGroup, Vec<usize>) {
        let emb: Vec<usize> = mask_elements(h).collect();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let n = emb.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos[self.mul(emb[i], emb[j])];
            }
        }
        let inv = emb.iter().map(|&x| pos[self.inv[x]]).collect();
        let perms = self.perms.as_ref().map(|ps| emb.iter().map(|&x| ps[x].clone()).collect());
        (FiniteGroup { name: name.to_string(), perms, table, inv, order: n }, emb)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Image vectors (0-based) when the group came from permutations.
    pub fn permutations(&self) -> Option<&[Vec<u8>]> {
        self.perms.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn full_mask(&self) -> Mask {
        if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        }
    }

    /// Subgroup generated by a set of elements.
    pub fn closure(&self, gens: Mask) -> Mask {
        let mut h: Mask = 1;
        let mut frontier = vec![0usize];
        let gen_list: Vec<usize> = mask_elements(gens).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gen_list {
                let y = self.mul(x, g);
                if h & (1 << y) == 0 {
                    h |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        h
    }

    /// `g H g^{-1}`.
    pub fn conjugate(&self, g: usize, h: Mask) -> Mask {
        let gi = self.inv[g];
        mask_elements(h).fold(0, |acc, x| acc | (1 << self.mul(self.mul(g, x), gi)))
    }

    /// Left coset `g H` as a mask.
    pub fn left_coset(&self, g: usize, h: Mask) -> Mask {
        mask_elements(h).fold(0, |acc, x| acc | (1 << self.mul(g, x)))
    }

    /// Every subgroup, found as joins of cyclic subgroups.
    pub fn all_subgroups(&self) -> Vec<Mask> {
        let cyclic: Vec<Mask> = {
            let mut c: Vec<Mask> = (0..self.order).map(|g| self.closure(1 << g)).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let mut all: HashSet<Mask> = cyclic.iter().copied().collect();
        let mut frontier: Vec<Mask> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &h in &frontier {
                for &c in &cyclic {
                    if c & !h != 0 {
                        let j = self.closure(h | c);
                        if all.insert(j) {
                            next.push(j);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut v: Vec<Mask> = all.into_iter().collect();
        v.sort_unstable();
        v
    }
}

/// Element indices contained in a mask, increasing.
pub fn mask_elements(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn mask_size(m: Mask) -> usize {
    m.count_ones() as usize
}

fn parse_generators(s: &str) -> Result<Vec<Perm>> {
    let bad = |m: &str| Error::InvalidGroup(format!("{m} in generator list '{s}'"));
    let body = s.trim();
    let body = match body.strip_prefix('[') {
        Some(b) => b.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?,
        None => body,
    };
    let mut gens: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    let mut chars = body.chars().peekable();
    let mut started = false;
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                let mut inner = String::new();
                loop {
                    match chars.next() {
                        Some(')') => break,
                        Some('(') | None => return Err(bad("unbalanced parenthesis")),
                        Some(ch) => inner.push(ch),
                    }
                }
                let pts: Vec<usize> = inner
                    .split(|ch: char| ch == ',' || ch.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| bad("bad point")))
                    .collect::<Result<_>>()?;
                if pts.contains(&0) {
                    return Err(bad("points are numbered from 1"));
                }
                let mut uniq = pts.clone();
                uniq.sort_unstable();
                uniq.dedup();
                if uniq.len() != pts.len() {
                    return Err(bad("repeated point in a cycle"));
                }
                current.push(pts);
                started = true;
            }
            ',' => {
                if !started {
                    return Err(bad("empty generator"));
                }
                gens.push(std::mem::take(&mut current));
                started = false;
            }
            c if c.is_whitespace() => {}
            _ => return Err(bad("unexpected character")),
        }
    }
    if !started {
        return Err(bad("empty generator"));
    }
    gens.push(current);
    let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
    if degree > 64 {
        return Err(bad("too many points"));
    }
    Ok(gens
        .iter()
        .map(|cycles| {
            // Cycles compose right to left.
            cycles.iter().rev().fold((0..degree as u8).collect::<Perm>(), |acc, c| {
                compose(&cycle_perm(degree, std::slice::from_ref(c)), &acc)
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (s, n) in [("C1", 1), ("C2", 2), ("C6", 6), ("C12", 12), ("D1", 2), ("D2", 4), ("D3", 6), ("D4", 8), ("D6", 12), ("S3", 6), ("S4", 24), ("A4", 12), ("Q8", 8)] {
            assert_eq!(FiniteGroup::parse(s).unwrap().order(), n, "{s}");
        }
        assert!(FiniteGroup::parse("X9").is_err());
        assert!(FiniteGroup::parse("S5").is_err());
        assert!(matches!(FiniteGroup::parse("C25"), Err(Error::OrderBoundExceeded { .. })));
    }

    #[test]
    fn generators_in_cycle_notation() {
        let g = FiniteGroup::parse("[(1 2 3 4), (1 3)]").unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let k = FiniteGroup::parse("[(1 2)(3 4), (1 3)(2 4)]").unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.is_abelian());
        assert!(FiniteGroup::parse("[(1 2 2)]").is_err());
        assert!(FiniteGroup::parse("[(1 2), ]").is_err());
    }

    #[test]
    fn identity_first_and_inverses() {
        for s in ["S3", "D4", "Q8", "A4"] {
            let g = FiniteGroup::parse(s).unwrap();
            for a in 0..g.order() {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, g.inverse(a)), 0);
            }
        }
        let q8 = FiniteGroup::parse("Q8").unwrap();
        let involutions = (1..8).filter(|&a| q8.mul(a, a) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn table_validation() {
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert_eq!(FiniteGroup::from_table("Z3", &z3, 24).unwrap().order(), 3);
        let broken = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(matches!(FiniteGroup::from_table("X", &broken, 24), Err(Error::NotAGroup(_))));
        let not_closed = vec![vec![0, 3], vec![1, 0]];
        assert!(matches!(FiniteGroup::from_table("X", &not_closed, 24), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn subgroup_counts() {
        // Known totals of subgroups (not classes).
        for (s, n) in [("C6", 4), ("S3", 6), ("D4", 10), ("Q8", 6), ("A4", 10), ("S4", 30)] {
            assert_eq!(FiniteGroup::parse(s).unwrap().all_subgroups().len(), n, "{s}");
        }
    }
}
