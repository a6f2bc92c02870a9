//! Small finite groups given by Cayley tables.
//!
//! These are the building blocks for the standard groupoid constructors
//! (`trg`, action groupoids, one-object groupoids). Element `0` is always the
//! identity.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order accepted by [`GroupTable::by_name`] for cyclic groups.
pub const MAX_NAMED_CYCLIC: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("group table is not square or references element {0} out of range")]
    MalformedTable(usize),
    #[error("group table has no identity element")]
    NoIdentity,
    #[error("group table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("group order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
}

impl GroupError {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupError::UnknownName(_) => "UnknownGroup",
            GroupError::MalformedTable(_) => "MalformedTable",
            GroupError::NoIdentity => "NoIdentity",
            GroupError::NotAssociative(..) => "NotAssociative",
            GroupError::NoInverse(_) => "NoInverse",
            GroupError::TooLarge { .. } => "GroupTooLarge",
        }
    }
}

/// A finite group stored as a dense multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// JSON form of an explicit group: `{"elements": [...], "table": [[...]]}`.
///
/// Table entries are element labels (strings or integers); `table[i][j]` is
/// the product `elements[i] * elements[j]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawGroup {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<crate::Label>,
    pub table: Vec<Vec<crate::Label>>,
}

impl GroupTable {
    /// Builds a group from an arbitrary table, moving the identity to index 0.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if table.len() != n {
            return Err(GroupError::MalformedTable(table.len()));
        }
        for row in &table {
            if row.len() != n {
                return Err(GroupError::MalformedTable(row.len()));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::MalformedTable(bad));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| table[a][b] == e)
                .ok_or(GroupError::NoInverse(a))?;
        }
        // reorder so that the identity comes first
        let mut order: Vec<usize> = vec![e];
        order.extend((0..n).filter(|&x| x != e));
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let mul = order
            .iter()
            .map(|&a| order.iter().map(|&b| pos[table[a][b]]).collect())
            .collect();
        let inverse = order.iter().map(|&a| pos[inv[a]]).collect();
        let labels = order.iter().map(|&a| labels[a].clone()).collect();
        Ok(GroupTable {
            name: name.into(),
            labels,
            mul,
            inverse,
        })
    }

    pub fn from_raw(raw: &RawGroup) -> Result<Self, GroupError> {
        let labels: Vec<String> = raw.elements.iter().map(|l| l.0.clone()).collect();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut table = Vec::with_capacity(raw.table.len());
        for row in &raw.table {
            let mut r = Vec::with_capacity(row.len());
            for entry in row {
                let idx = *index
                    .get(entry.0.as_str())
                    .ok_or(GroupError::MalformedTable(labels.len()))?;
                r.push(idx);
            }
            table.push(r);
        }
        let name = raw.name.clone().unwrap_or_else(|| "G".to_string());
        Self::from_table(name, labels, table)
    }

    pub fn to_raw(&self) -> RawGroup {
        RawGroup {
            name: Some(self.name.clone()),
            elements: self
                .labels
                .iter()
                .map(|l| crate::Label(l.clone()))
                .collect(),
            table: self
                .mul
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| crate::Label(self.labels[x].clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    ///
    /// The product `p * q` is the permutation `i -> p[q[i]]`.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|k| g[elems[i][k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let p: Vec<usize> = (0..degree).map(|k| elems[a][elems[b][k]]).collect();
                        index[&p]
                    })
                    .collect()
            })
            .collect();
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(name, labels, mul).expect("permutation closure is a group")
    }

    /// Cyclic group of order `n`, elements labelled `0..n` (additive notation).
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs positive order");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(format!("C{n}"), labels, mul).expect("cyclic table is a group")
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::from_table("S1", vec!["()".into()], vec![vec![0]]).unwrap();
        }
        let transposition: Vec<usize> = (0..n)
            .map(|i| match i {
                0 => 1,
                1 => 0,
                k => k,
            })
            .collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(format!("S{n}"), n, &[transposition, cycle])
    }

    pub fn alternating(n: usize) -> Self {
        assert!(n >= 3);
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        if i == 0 {
                            1
                        } else if i == 1 {
                            k
                        } else if i == k {
                            0
                        } else {
                            i
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_permutations(format!("A{n}"), n, &gens)
    }

    /// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 2);
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        if n == 2 {
            // the 2-gon degenerates; use the Klein four-group
            return Self::direct_product(&Self::cyclic(2), &Self::cyclic(2)).renamed("D2");
        }
        Self::from_permutations(format!("D{n}"), n, &[rotation, reflection])
    }

    /// Quaternion group of order 8.
    pub fn quaternion() -> Self {
        // elements (sign, unit) with unit in {1, i, j, k}
        let units = ["1", "i", "j", "k"];
        // unit multiplication: (sign, result)
        let table = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let idx = |neg: bool, u: usize| (neg as usize) * 4 + u;
        let mut labels = Vec::new();
        for neg in [false, true] {
            for u in units {
                labels.push(if neg { format!("-{u}") } else { u.to_string() });
            }
        }
        let mul = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, ua) = (a >= 4, a % 4);
                        let (sb, ub) = (b >= 4, b % 4);
                        let (s, u) = table(ua, ub);
                        idx(sa ^ sb ^ s, u)
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", labels, mul).expect("quaternion table is a group")
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let mut labels = Vec::with_capacity(na * nb);
        for x in 0..na {
            for y in 0..nb {
                labels.push(format!("({},{})", a.labels[x], b.labels[y]));
            }
        }
        let mul = (0..na * nb)
            .map(|p| {
                (0..na * nb)
                    .map(|q| a.mul[p / nb][q / nb] * nb + b.mul[p % nb][q % nb])
                    .collect()
            })
            .collect();
        Self::from_table(format!("{}x{}", a.name, b.name), labels, mul).expect("product of groups")
    }

    /// Parses names such as `C5`, `S3`, `A4`, `D4`, `Q8`, `V4` and products `C2xC2`.
    pub fn by_name(name: &str) -> Result<Self, GroupError> {
        let trimmed = name.trim();
        if trimmed.contains('x') {
            let mut parts = trimmed.split('x');
            let first = Self::by_name(parts.next().unwrap_or(""))?;
            return parts.try_fold(first, |acc, p| {
                Ok(Self::direct_product(&acc, &Self::by_name(p)?))
            });
        }
        let unknown = || GroupError::UnknownName(trimmed.to_string());
        let (head, tail) = trimmed.split_at(
            trimmed
                .find(|c: char| c.is_ascii_digit())
                .unwrap_or(trimmed.len()),
        );
        let n: Option<usize> = tail.parse().ok();
        match (head, n) {
            ("C" | "Z", Some(n)) if (1..=MAX_NAMED_CYCLIC).contains(&n) => Ok(Self::cyclic(n)),
            ("S", Some(n)) if (1..=4).contains(&n) => Ok(Self::symmetric(n)),
            ("A", Some(n)) if (3..=4).contains(&n) => Ok(Self::alternating(n)),
            ("D", Some(n)) if (2..=12).contains(&n) => Ok(Self::dihedral(n)),
            ("Q", Some(8)) => Ok(Self::quaternion()),
            ("V", Some(4)) | ("K", Some(4)) => {
                Ok(Self::direct_product(&Self::cyclic(2), &Self::cyclic(2)).renamed("V4"))
            }
            ("1", None) | ("", Some(1)) => Ok(Self::trivial()),
            _ => Err(unknown()),
        }
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for x in 1..self.order() {
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All group homomorphisms `self -> target`, as element maps.
    pub fn homomorphisms(&self, target: &GroupTable) -> Vec<Vec<usize>> {
        let gens = self.generators();
        // express every element as a word in the generators (BFS tree)
        let mut word_parent: Vec<Option<(usize, usize)>> = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut order = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    word_parent[y] = Some((x, gi));
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        let mut result = Vec::new();
        let mut images = vec![0usize; gens.len()];
        let m = target.order();
        let total = m.pow(gens.len() as u32);
        for code in 0..total {
            let mut c = code;
            for img in images.iter_mut() {
                *img = c % m;
                c /= m;
            }
            let mut map = vec![usize::MAX; self.order()];
            map[0] = 0;
            for &y in order.iter().skip(1) {
                let (x, gi) = word_parent[y].expect("reachable");
                map[y] = target.mul(map[x], images[gi]);
            }
            let ok = (0..self.order()).all(|a| {
                (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            });
            if ok {
                result.push(map);
            }
        }
        result
    }

    /// Brute-force isomorphism search over generator images, for orders up to `cap`.
    pub fn find_isomorphism(
        &self,
        other: &GroupTable,
        cap: usize,
    ) -> Result<Option<Vec<usize>>, GroupError> {
        let order = self.order();
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        if order != other.order() || self.element_order_profile() != other.element_order_profile() {
            return Ok(None);
        }
        Ok(self.homomorphisms(other).into_iter().find(|map| {
            let mut hit = vec![false; order];
            map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
        }))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    fn element_order_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for x in 0..self.order() {
            *profile.entry(self.element_order(x)).or_insert(0) += 1;
        }
        profile
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C7", 7),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("D4", 8),
            ("D6", 12),
            ("Q8", 8),
            ("V4", 4),
            ("C2xC3", 6),
        ] {
            assert_eq!(GroupTable::by_name(name).unwrap().order(), order, "{name}");
        }
        assert!(matches!(
            GroupTable::by_name("X9"),
            Err(GroupError::UnknownName(_))
        ));
    }

    #[test]
    fn isomorphism_search() {
        let c6 = GroupTable::cyclic(6);
        let c2c3 = GroupTable::by_name("C2xC3").unwrap();
        let s3 = GroupTable::symmetric(3);
        assert!(c6.find_isomorphism(&c2c3, 16).unwrap().is_some());
        assert!(c6.find_isomorphism(&s3, 16).unwrap().is_none());
        assert!(GroupTable::dihedral(4)
            .find_isomorphism(&GroupTable::quaternion(), 16)
            .unwrap()
            .is_none());
        assert!(matches!(
            GroupTable::symmetric(4).find_isomorphism(&GroupTable::symmetric(4), 16),
            Err(GroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn homomorphism_count_c4_to_c2() {
        // C4 -> C2: generator goes to either element
        assert_eq!(
            GroupTable::cyclic(4)
                .homomorphisms(&GroupTable::cyclic(2))
                .len(),
            2
        );
        // S3 -> C3: only the trivial map
        assert_eq!(
            GroupTable::symmetric(3)
                .homomorphisms(&GroupTable::cyclic(3))
                .len(),
            1
        );
    }

    #[test]
    fn rejects_non_group_table() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(GroupTable::from_table("bad", vec!["a".into(), "b".into()], bad).is_err());
    }
}
