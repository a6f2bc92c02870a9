use std::sync::Arc;

use super::{FiniteGroupoid, GroupoidError, GroupoidMorphism};
use crate::group::GroupTable;

impl FiniteGroupoid {
    /// A group as a groupoid with the single object `*`.
    pub fn from_group(group: &GroupTable) -> Self {
        let n = group.order();
        FiniteGroupoid::build(
            vec!["*".into()],
            group.labels().to_vec(),
            vec![0; n],
            vec![0; n],
            vec![group.identity()],
            (0..n).map(|g| group.inv(g)).collect(),
            |g, h| group.mul(g, h),
        )
        .expect("group tables give valid groupoids")
    }

    /// The empty groupoid.
    pub fn empty() -> Self {
        FiniteGroupoid::trivial(0)
    }

    /// Objects `0..n` with identity arrows only.
    pub fn trivial(n: usize) -> Self {
        FiniteGroupoid::build(
            (0..n).map(|a| a.to_string()).collect(),
            (0..n).map(|a| format!("1_{a}")).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            |g, _| g,
        )
        .expect("trivial groupoid is valid")
    }

    /// The pair groupoid `X × X` on objects `0..n`; arrow `(x, y)` goes from `y` to `x`.
    pub fn pair_groupoid(n: usize) -> Self {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        FiniteGroupoid::equivalence_relation(n, &all).expect("full relation is an equivalence")
    }

    /// The groupoid `X ×_Y X` of the map `nu: X -> Y`, with `X = 0..nu.len()`.
    pub fn fibered_pair(nu: &[usize]) -> Self {
        let n = nu.len();
        let rel: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| nu[x] == nu[y]).map(move |y| (x, y)))
            .collect();
        FiniteGroupoid::equivalence_relation(n, &rel).expect("kernel of a map is an equivalence")
    }

    /// The groupoid of an equivalence relation `R ⊆ X × X` on `X = 0..n`.
    ///
    /// The pair `(x, y)` is an arrow from `y` to `x`, and `(x, y)(y, z) = (x, z)`.
    pub fn equivalence_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GroupoidError> {
        let mut index = vec![usize::MAX; n * n];
        let mut rel = Vec::new();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(GroupoidError::InvalidRelation(format!(
                    "pair ({x}, {y}) outside 0..{n}"
                )));
            }
            if index[x * n + y] == usize::MAX {
                index[x * n + y] = rel.len();
                rel.push((x, y));
            }
        }
        for x in 0..n {
            if index[x * n + x] == usize::MAX {
                return Err(GroupoidError::InvalidRelation(format!(
                    "not reflexive at {x}"
                )));
            }
        }
        for &(x, y) in &rel {
            if index[y * n + x] == usize::MAX {
                return Err(GroupoidError::InvalidRelation(format!(
                    "not symmetric at ({x}, {y})"
                )));
            }
        }
        for &(x, y) in &rel {
            for z in 0..n {
                if index[y * n + z] != usize::MAX && index[x * n + z] == usize::MAX {
                    return Err(GroupoidError::InvalidRelation(format!(
                        "not transitive at ({x}, {y}), ({y}, {z})"
                    )));
                }
            }
        }
        FiniteGroupoid::build(
            (0..n).map(|a| a.to_string()).collect(),
            rel.iter().map(|(x, y)| format!("({x},{y})")).collect(),
            rel.iter().map(|&(_, y)| y).collect(),
            rel.iter().map(|&(x, _)| x).collect(),
            (0..n).map(|x| index[x * n + x]).collect(),
            rel.iter().map(|&(x, y)| index[y * n + x]).collect(),
            |g, h| index[rel[g].0 * n + rel[h].1],
        )
    }

    /// The groupoid of the smallest equivalence relation on `0..n` containing `pairs`.
    pub fn generated_equivalence(
        n: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, GroupoidError> {
        let mut class: Vec<usize> = (0..n).collect();
        fn find(class: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while class[r] != r {
                r = class[r];
            }
            class[x] = r;
            r
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(GroupoidError::InvalidRelation(format!(
                    "pair ({x}, {y}) outside 0..{n}"
                )));
            }
            let (a, b) = (find(&mut class, x), find(&mut class, y));
            class[a.max(b)] = a.min(b);
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut class, x)).collect();
        let full: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| roots[x] == roots[y])
            .collect();
        FiniteGroupoid::equivalence_relation(n, &full)
    }

    /// The action groupoid `X ⋊ G` of a right action on `X = 0..n`.
    ///
    /// `act[x][g]` is `x·g`. The arrow `(x, g)` goes from `x·g` to `x`, and sits at
    /// index `x * |G| + g`.
    pub fn action_groupoid(group: &GroupTable, act: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let n = act.len();
        let order = group.order();
        for (x, row) in act.iter().enumerate() {
            if row.len() != order {
                return Err(GroupoidError::InvalidGroupAction(format!(
                    "row {x} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&y) = row.iter().find(|&&y| y >= n) {
                return Err(GroupoidError::InvalidGroupAction(format!(
                    "{x} is sent to {y}, outside 0..{n}"
                )));
            }
            if row[group.identity()] != x {
                return Err(GroupoidError::InvalidGroupAction(format!(
                    "identity moves {x}"
                )));
            }
        }
        for x in 0..n {
            for g in 0..order {
                for h in 0..order {
                    if act[act[x][g]][h] != act[x][group.mul(g, h)] {
                        return Err(GroupoidError::InvalidGroupAction(format!(
                            "(x·{})·{} != x·({}{}) at x = {x}",
                            group.label(g),
                            group.label(h),
                            group.label(g),
                            group.label(h)
                        )));
                    }
                }
            }
        }
        let arrow = |x: usize, g: usize| x * order + g;
        FiniteGroupoid::build(
            (0..n).map(|x| x.to_string()).collect(),
            (0..n * order)
                .map(|i| format!("({},{})", i / order, group.label(i % order)))
                .collect(),
            (0..n * order).map(|i| act[i / order][i % order]).collect(),
            (0..n * order).map(|i| i / order).collect(),
            (0..n).map(|x| arrow(x, group.identity())).collect(),
            (0..n * order)
                .map(|i| {
                    let (x, g) = (i / order, i % order);
                    arrow(act[x][g], group.inv(g))
                })
                .collect(),
            |i, j| arrow(i / order, group.mul(i % order, j % order)),
        )
    }

    /// The action groupoid together with its projection `(x, g) ↦ g` onto `G` as a one-object groupoid.
    pub fn action_groupoid_with_projection(
        group: &GroupTable,
        act: &[Vec<usize>],
    ) -> Result<(Arc<Self>, GroupoidMorphism), GroupoidError> {
        let source = Arc::new(FiniteGroupoid::action_groupoid(group, act)?);
        let target = Arc::new(FiniteGroupoid::from_group(group));
        let order = group.order();
        let phi0 = vec![0; source.num_objects()];
        let phi1 = source.arrows().map(|i| i % order).collect();
        let phi = GroupoidMorphism::new(Arc::clone(&source), target, phi0, phi1)
            .map_err(|e| GroupoidError::InvalidGroupAction(e.to_string()))?;
        Ok((source, phi))
    }

    /// The induced groupoid `G^ς` of `sigma: X -> G₀`.
    ///
    /// Arrows are triples `(x, g, y)` with `ς(x) = t(g)` and `ς(y) = s(g)`, going from `y` to `x`.
    pub fn induced_groupoid(base: &FiniteGroupoid, sigma: &[usize]) -> Result<Self, GroupoidError> {
        if let Some((x, &a)) = sigma
            .iter()
            .enumerate()
            .find(|(_, &a)| a >= base.num_objects())
        {
            return Err(GroupoidError::StructureMapOutOfRange(format!(
                "element {x} is sent to object {a}, but there are {} objects",
                base.num_objects()
            )));
        }
        let n = sigma.len();
        // fibres of sigma
        let mut fibre: Vec<Vec<usize>> = vec![Vec::new(); base.num_objects()];
        for (x, &a) in sigma.iter().enumerate() {
            fibre[a].push(x);
        }
        let mut triples = Vec::new();
        for x in 0..n {
            for &g in base.arrows_into(sigma[x]) {
                for &y in &fibre[base.src(g)] {
                    triples.push((x, g, y));
                }
            }
        }
        let lookup = |x: usize, g: usize, y: usize| -> usize {
            triples.binary_search(&(x, g, y)).expect("triple exists")
        };
        FiniteGroupoid::build(
            (0..n).map(|x| x.to_string()).collect(),
            triples
                .iter()
                .map(|&(x, g, y)| format!("({x},{},{y})", base.arrow_label(g)))
                .collect(),
            triples.iter().map(|t| t.2).collect(),
            triples.iter().map(|t| t.0).collect(),
            (0..n)
                .map(|x| lookup(x, base.identity(sigma[x]), x))
                .collect(),
            triples
                .iter()
                .map(|&(x, g, y)| lookup(y, base.inverse(g), x))
                .collect(),
            |i, j| {
                let (x, g, _) = triples[i];
                let (_, h, z) = triples[j];
                lookup(x, base.mul(g, h), z)
            },
        )
    }

    /// The transitive groupoid `X × G × X` on `n` objects with isotropy `G`.
    pub fn trg(group: &GroupTable, n: usize) -> Self {
        FiniteGroupoid::induced_groupoid(&FiniteGroupoid::from_group(group), &vec![0; n])
            .expect("constant map into one object")
    }

    /// Cartesian product; objects and arrows are pairs ordered lexicographically.
    pub fn product(left: &FiniteGroupoid, right: &FiniteGroupoid) -> Self {
        let (n0, m0) = (left.num_objects(), right.num_objects());
        let m1 = right.num_arrows();
        let arrows = left.num_arrows() * m1;
        FiniteGroupoid::build(
            (0..n0 * m0)
                .map(|i| {
                    format!(
                        "({},{})",
                        left.object_label(i / m0),
                        right.object_label(i % m0)
                    )
                })
                .collect(),
            (0..arrows)
                .map(|i| {
                    format!(
                        "({},{})",
                        left.arrow_label(i / m1),
                        right.arrow_label(i % m1)
                    )
                })
                .collect(),
            (0..arrows)
                .map(|i| left.src(i / m1) * m0 + right.src(i % m1))
                .collect(),
            (0..arrows)
                .map(|i| left.tgt(i / m1) * m0 + right.tgt(i % m1))
                .collect(),
            (0..n0 * m0)
                .map(|i| left.identity(i / m0) * m1 + right.identity(i % m0))
                .collect(),
            (0..arrows)
                .map(|i| left.inverse(i / m1) * m1 + right.inverse(i % m1))
                .collect(),
            |i, j| left.mul(i / m1, j / m1) * m1 + right.mul(i % m1, j % m1),
        )
        .expect("product of groupoids is a groupoid")
    }

    /// Disjoint union; labels of the `i`-th summand are prefixed with `i.`.
    pub fn coproduct(parts: &[FiniteGroupoid]) -> Self {
        let mut object_labels = Vec::new();
        let mut arrow_labels = Vec::new();
        let (mut src, mut tgt, mut identity, mut inverse) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        // (object offset, arrow offset) of each summand
        let mut offsets = Vec::with_capacity(parts.len());
        let mut owner = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let (o, a) = (object_labels.len(), arrow_labels.len());
            offsets.push((o, a));
            object_labels.extend(p.object_labels().iter().map(|l| format!("{i}.{l}")));
            arrow_labels.extend(p.arrow_labels().iter().map(|l| format!("{i}.{l}")));
            src.extend(p.arrows().map(|g| p.src(g) + o));
            tgt.extend(p.arrows().map(|g| p.tgt(g) + o));
            identity.extend(p.objects().map(|x| p.identity(x) + a));
            inverse.extend(p.arrows().map(|g| p.inverse(g) + a));
            owner.extend(std::iter::repeat(i).take(p.num_arrows()));
        }
        FiniteGroupoid::build(
            object_labels,
            arrow_labels,
            src,
            tgt,
            identity,
            inverse,
            |g, h| {
                let i = owner[g];
                let a = offsets[i].1;
                parts[i].mul(g - a, h - a) + a
            },
        )
        .expect("coproduct of groupoids is a groupoid")
    }

    /// Interchanges source and target; `g ∘ h` in the opposite is `hg` here.
    pub fn opposite(&self) -> Self {
        FiniteGroupoid::build(
            self.object_labels().to_vec(),
            self.arrow_labels().to_vec(),
            self.arrows().map(|g| self.tgt(g)).collect(),
            self.arrows().map(|g| self.src(g)).collect(),
            self.objects().map(|a| self.identity(a)).collect(),
            self.arrows().map(|g| self.inverse(g)).collect(),
            |g, h| self.mul(h, g),
        )
        .expect("opposite of a groupoid is a groupoid")
    }

    /// Replaces labels, keeping the structure. Lengths must match.
    pub fn relabeled(&self, object_labels: Vec<String>, arrow_labels: Vec<String>) -> Self {
        assert_eq!(object_labels.len(), self.num_objects());
        assert_eq!(arrow_labels.len(), self.num_arrows());
        let mut t = self.clone();
        t.object_labels = object_labels;
        t.arrow_labels = arrow_labels;
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_counts() {
        let s3 = GroupTable::symmetric(3);
        assert_eq!(FiniteGroupoid::trg(&s3, 3).num_arrows(), 9 * 6);
        assert_eq!(FiniteGroupoid::pair_groupoid(2).num_arrows(), 4);
        let c4 = GroupTable::cyclic(4);
        // C4 acting on C4/<2> by translation
        let act: Vec<Vec<usize>> = (0..2)
            .map(|x| (0..4).map(|g| (x + g) % 2).collect())
            .collect();
        let g = FiniteGroupoid::action_groupoid(&c4, &act).unwrap();
        assert_eq!(g.num_arrows(), 2 * 4);
        assert!(g.objects().all(|x| g.isotropy(x).unwrap().order() == 2));
        assert_eq!(g.connected_components().len(), 1);
    }

    #[test]
    fn diagonal_relation_is_trivial() {
        let diag: Vec<_> = (0..4).map(|x| (x, x)).collect();
        let g = FiniteGroupoid::equivalence_relation(4, &diag).unwrap();
        assert_eq!(g.num_arrows(), 4);
        assert_eq!(g.connected_components().len(), 4);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            FiniteGroupoid::equivalence_relation(2, &[(0, 0), (1, 1), (0, 1)]),
            Err(GroupoidError::InvalidRelation(_))
        ));
        let c2 = GroupTable::cyclic(2);
        assert!(matches!(
            FiniteGroupoid::action_groupoid(&c2, &[vec![1, 0], vec![1, 1]]),
            Err(GroupoidError::InvalidGroupAction(_))
        ));
        let g = FiniteGroupoid::pair_groupoid(2);
        assert!(matches!(
            FiniteGroupoid::induced_groupoid(&g, &[0, 5]),
            Err(GroupoidError::StructureMapOutOfRange(_))
        ));
    }

    #[test]
    fn fibered_pair_components_are_fibres() {
        let g = FiniteGroupoid::fibered_pair(&[0, 1, 0, 1, 1]);
        assert_eq!(g.connected_components(), &[vec![0, 2], vec![1, 3, 4]]);
        assert_eq!(g.num_arrows(), 4 + 9);
    }

    #[test]
    fn opposite_is_involutive() {
        let g = FiniteGroupoid::trg(&GroupTable::symmetric(3), 2);
        assert_eq!(g.opposite().opposite(), g);
    }

    #[test]
    fn product_counts() {
        let a = FiniteGroupoid::pair_groupoid(2);
        let b = FiniteGroupoid::from_group(&GroupTable::cyclic(3));
        let p = FiniteGroupoid::product(&a, &b);
        assert_eq!(p.num_objects(), 2);
        assert_eq!(p.num_arrows(), 12);
        assert_eq!(p.isotropy(0).unwrap().order(), 3);
    }

    #[test]
    fn action_projection_is_a_morphism() {
        let c2 = GroupTable::cyclic(2);
        let (_, phi) =
            FiniteGroupoid::action_groupoid_with_projection(&c2, &[vec![0, 1], vec![1, 0]])
                .unwrap();
        assert_eq!(phi.target().num_objects(), 1);
    }
}
