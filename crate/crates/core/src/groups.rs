//! Finite groups as validated multiplication tables.
//!
//! Dihedral groups follow the two-involution presentation
//! `<a, b | a^2 = b^2 = (ba)^n = 1>`; their elements, like those of groups
//! generated by permutations, are named by shortest words in the
//! generators (`1` for the identity). Cyclic groups use `0..n-1`, products
//! use tuples such as `(1,0)`, and the quaternion group uses `±1, ±i, ±j, ±k`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {law} fails at {witness:?}")]
    NotAGroup { law: &'static str, witness: Vec<String> },
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

/// How to build a group; this is also the config schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Quaternion8,
    Product { factors: Vec<GroupSpec> },
    /// Rows give `names[i] * names[j]`.
    Table { names: Vec<String>, table: Vec<Vec<String>> },
    /// The group generated by permutations of `0..degree`, each listed as
    /// its image sequence.
    Permutations { generators: Vec<(String, Vec<usize>)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
        match spec {
            GroupSpec::Cyclic { n } => Self::cyclic(*n),
            GroupSpec::Dihedral { n } => Self::dihedral(*n),
            GroupSpec::Quaternion8 => Ok(Self::quaternion8()),
            GroupSpec::Product { factors } => {
                let gs = factors.iter().map(Self::build).collect::<Result<Vec<_>, _>>()?;
                Self::product(&gs)
            }
            GroupSpec::Table { names, table } => Self::from_named_table(names, table),
            GroupSpec::Permutations { generators } => Self::from_permutations(generators),
        }
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidSpec("cyclic group needs n >= 1".into()));
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(names, |a, b| (a + b) % n)
    }

    /// `D_{2n}` realized as `rho^r sigma^s` with `a = sigma`, `b = rho sigma`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidSpec("dihedral group needs n >= 1".into()));
        }
        let code = |r: usize, s: usize| 2 * r + s;
        let mul = |x: usize, y: usize| {
            let (r1, s1, r2, s2) = (x / 2, x % 2, y / 2, y % 2);
            let r = if s1 == 0 { (r1 + r2) % n } else { (r1 + n - r2) % n };
            code(r, (s1 + s2) % 2)
        };
        let gens = [("a".to_string(), code(0, 1)), ("b".to_string(), code(1 % n, 1))];
        Self::named_by_words(2 * n, code(0, 0), &gens, mul)
    }

    pub fn quaternion8() -> FiniteGroup {
        // Unit index 0..4 = 1, i, j, k; element = 4*sign + unit.
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let label = ["1", "i", "j", "k"];
        let names = (0..8).map(|e| format!("{}{}", if e >= 4 { "-" } else { "" }, label[e % 4])).collect();
        Self::from_fn(names, |x, y| {
            let (s, u) = UNIT[x % 4][y % 4];
            4 * ((x / 4 + y / 4 + s) % 2) + u
        })
        .expect("quaternion table")
    }

    pub fn product(factors: &[FiniteGroup]) -> Result<FiniteGroup, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::InvalidSpec("empty product".into()));
        }
        let sizes: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
        let total: usize = sizes.iter().product();
        let split = |mut e: usize| {
            let mut parts = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                parts[k] = e % sizes[k];
                e /= sizes[k];
            }
            parts
        };
        let join = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (p, s)| acc * s + p);
        let names = (0..total)
            .map(|e| {
                let parts = split(e);
                let inner: Vec<&str> = parts.iter().zip(factors).map(|(p, g)| g.names[*p].as_str()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        Self::from_fn(names, |x, y| {
            let (px, py) = (split(x), split(y));
            let prod: Vec<usize> = (0..factors.len()).map(|k| factors[k].table[px[k] * sizes[k] + py[k]]).collect();
            join(&prod)
        })
    }

    pub fn from_named_table(names: &[String], table: &[Vec<String>]) -> Result<FiniteGroup, GroupError> {
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if index.len() != names.len() || names.is_empty() {
            return Err(GroupError::InvalidSpec("element names must be distinct and nonempty".into()));
        }
        if table.len() != names.len() || table.iter().any(|r| r.len() != names.len()) {
            return Err(GroupError::InvalidSpec("table must be square with one row per element".into()));
        }
        let mut flat = Vec::with_capacity(names.len() * names.len());
        for row in table {
            for entry in row {
                flat.push(*index.get(entry.as_str()).ok_or_else(|| GroupError::UnknownElement(entry.clone()))?);
            }
        }
        Self::validated(names.to_vec(), flat)
    }

    pub fn from_permutations(generators: &[(String, Vec<usize>)]) -> Result<FiniteGroup, GroupError> {
        let degree = generators.first().map(|g| g.1.len()).ok_or_else(|| GroupError::InvalidSpec("no generators".into()))?;
        for (name, p) in generators {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(GroupError::InvalidSpec(format!("{name} is not a permutation of 0..{degree}")));
            }
        }
        // Enumerate the closure, then index elements.
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for (_, g) in generators {
                let p: Vec<usize> = elems[k].iter().map(|&i| g[i]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            k += 1;
        }
        // `x * y` acts as x first, then y.
        let compose = |x: usize, y: usize| index[&elems[x].iter().map(|&i| elems[y][i]).collect::<Vec<_>>()];
        let gens: Vec<(String, usize)> = generators.iter().map(|(n, p)| (n.clone(), index[p])).collect();
        Self::named_by_words(elems.len(), 0, &gens, compose)
    }

    /// Name elements by BFS over right multiplication by the generators.
    fn named_by_words(
        order: usize,
        identity: usize,
        gens: &[(String, usize)],
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteGroup, GroupError> {
        let mut word: Vec<Option<String>> = vec![None; order];
        word[identity] = Some(String::new());
        let mut queue = VecDeque::from([identity]);
        let mut order_found = vec![identity];
        while let Some(x) = queue.pop_front() {
            for (name, g) in gens {
                let y = mul(x, *g);
                if word[y].is_none() {
                    word[y] = Some(format!("{}{}", word[x].as_deref().unwrap(), name));
                    queue.push_back(y);
                    order_found.push(y);
                }
            }
        }
        if order_found.len() != order {
            return Err(GroupError::InvalidSpec("generators do not generate the group".into()));
        }
        // Reindex in BFS order so that the identity is element 0.
        let mut pos = vec![0; order];
        for (i, &e) in order_found.iter().enumerate() {
            pos[e] = i;
        }
        let names = order_found
            .iter()
            .map(|&e| match word[e].as_deref() {
                Some("") => "1".to_string(),
                Some(w) => w.to_string(),
                None => unreachable!(),
            })
            .collect();
        Self::from_fn(names, |i, j| pos[mul(order_found[i], order_found[j])])
    }

    fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
        let n = names.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        Self::validated(names, table)
    }

    fn validated(names: Vec<String>, table: Vec<usize>) -> Result<FiniteGroup, GroupError> {
        let n = names.len();
        let at = |a: usize, b: usize| table[a * n + b];
        let nm = |xs: &[usize]| xs.iter().map(|&x| names[x].clone()).collect::<Vec<_>>();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(GroupError::InvalidSpec("element names must be distinct".into()));
        }
        if let Some(bad) = table.iter().position(|&x| x >= n) {
            return Err(GroupError::NotAGroup { law: "closure", witness: nm(&[bad / n, bad % n]) });
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup { law: "associativity", witness: nm(&[a, b, c]) });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup { law: "identity", witness: vec![] })?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| GroupError::NotAGroup { law: "inverse", witness: nm(&[a]) })?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { names, table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(self.identity)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order()).map(GroupElement)
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.table[a.0 * self.order() + b.0])
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.inverse[a.0])
    }

    pub fn pow(&self, a: GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(acc, base))
    }

    pub fn name(&self, a: GroupElement) -> &str {
        &self.names[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Result<GroupElement, GroupError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(GroupElement)
            .ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    pub fn element_order(&self, a: GroupElement) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of `gens` under multiplication (inverses come for free in a
    /// finite group).
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut out = BTreeSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if out.insert(y) {
                    frontier.push(y);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(g: &FiniteGroup, n: &str) -> GroupElement {
        g.element(n).unwrap()
    }

    #[test]
    fn dihedral_of_order_four_is_klein() {
        let g = FiniteGroup::dihedral(2).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(g.elements().all(|x| g.mul(x, x) == g.identity()));
        assert_eq!(g.names(), ["1", "a", "b", "ab"]);
    }

    #[test]
    fn dihedral_relations_hold() {
        for n in 1..=6 {
            let g = FiniteGroup::dihedral(n).unwrap();
            assert_eq!(g.order(), 2 * n);
            let gens: Vec<_> = ["a", "b"].iter().filter_map(|s| g.element(s).ok()).collect();
            let a = gens[0];
            let b = if n == 1 { a } else { gens[1] };
            assert_eq!(g.mul(a, a), g.identity());
            assert_eq!(g.mul(b, b), g.identity());
            assert_eq!(g.element_order(g.mul(b, a)), n);
            assert_eq!(g.subgroup_generated(&[a, b]).len(), 2 * n);
        }
        let d6 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d6.element_order(d6.mul(e(&d6, "b"), e(&d6, "a"))), 3);
    }

    #[test]
    fn quaternions() {
        let q = FiniteGroup::quaternion8();
        assert_eq!(q.order(), 8);
        let (i, j, k) = (e(&q, "i"), e(&q, "j"), e(&q, "k"));
        let m1 = e(&q, "-1");
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(q.mul(i, j), k), m1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), e(&q, "-k"));
        assert_eq!(q.element_order(i), 4);
        let mut sub: Vec<&str> = q.subgroup_generated(&[i]).into_iter().map(|x| q.name(x)).collect();
        sub.sort();
        assert_eq!(sub, ["-1", "-i", "1", "i"]);
        assert!(!q.is_abelian());
    }

    #[test]
    fn products_and_orders() {
        let g = FiniteGroup::build(&GroupSpec::Product {
            factors: vec![GroupSpec::Cyclic { n: 4 }, GroupSpec::Cyclic { n: 2 }],
        })
        .unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        let mut orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        orders.sort();
        assert_eq!(orders, [1, 2, 2, 2, 4, 4, 4, 4]);
        assert_eq!(g.mul(e(&g, "(1,0)"), e(&g, "(1,1)")), e(&g, "(2,1)"));
        assert_eq!(g.element_order(g.identity()), 1);
    }

    #[test]
    fn explicit_tables_are_validated() {
        let names: Vec<String> = ["e", "x"].iter().map(|s| s.to_string()).collect();
        let ok = vec![vec!["e".into(), "x".into()], vec!["x".into(), "e".into()]];
        assert_eq!(FiniteGroup::from_named_table(&names, &ok).unwrap().order(), 2);
        let bad = vec![vec!["e".into(), "x".into()], vec!["x".into(), "x".into()]];
        assert!(matches!(FiniteGroup::from_named_table(&names, &bad), Err(GroupError::NotAGroup { .. })));
        let unknown = vec![vec!["e".into(), "q".into()], vec!["x".into(), "e".into()]];
        assert!(matches!(FiniteGroup::from_named_table(&names, &unknown), Err(GroupError::UnknownElement(_))));
    }

    #[test]
    fn permutation_groups() {
        let s3 = FiniteGroup::from_permutations(&[("s".into(), vec![1, 0, 2]), ("t".into(), vec![0, 2, 1])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.name(s3.identity()), "1");
        let g36 = FiniteGroup::from_permutations(&[
            ("x".into(), vec![1, 0, 3, 4, 5, 2]),
            ("y".into(), vec![1, 2, 3, 0, 5, 4]),
        ])
        .unwrap();
        assert_eq!(g36.order(), 36);
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = GroupSpec::Product { factors: vec![GroupSpec::Dihedral { n: 3 }, GroupSpec::Quaternion8] };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&text).unwrap(), spec);
        assert_eq!(FiniteGroup::build(&spec).unwrap().order(), 48);
    }
}
