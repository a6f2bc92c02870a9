//! Finite groupoids stored as dense tables.
//!
//! Objects and arrows are addressed by dense indices `0..n`. The original
//! labels are kept for output. Composition follows the categorical
//! convention: `compose(g, h)` is `gh`, defined exactly when
//! `src(g) == tgt(h)`, with `src(gh) = src(h)` and `tgt(gh) = tgt(g)`.

mod construct;
mod morphism;
mod raw;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{GroupError, GroupTable};

pub use morphism::{GroupoidMorphism, MorphismError, RawMorphism};
pub use raw::{ParseError, RawArrow, RawGroupoid};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("arrow `{arrow}` has unknown endpoint `{endpoint}`")]
    DanglingArrowEndpoint { arrow: String, endpoint: String },
    #[error("object `{object}` has no valid identity arrow")]
    MissingIdentity { object: String },
    #[error("identity law fails for arrow `{arrow}`")]
    IdentityLawFailure { arrow: String },
    #[error("composition ({left}, {right}): {detail}")]
    CompositionDomainMismatch {
        left: String,
        right: String,
        detail: String,
    },
    #[error("associativity fails for ({f}, {g}, {h})")]
    AssociativityFailure { f: String, g: String, h: String },
    #[error("arrow `{arrow}` has no valid inverse")]
    InverseFailure { arrow: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("not an equivalence relation: {0}")]
    InvalidRelation(String),
    #[error("not a group action: {0}")]
    InvalidGroupAction(String),
    #[error("structure map out of range: {0}")]
    StructureMapOutOfRange(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl GroupoidError {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupoidError::DuplicateId { .. } => "DuplicateId",
            GroupoidError::DanglingArrowEndpoint { .. } => "DanglingArrowEndpoint",
            GroupoidError::MissingIdentity { .. } => "MissingIdentity",
            GroupoidError::IdentityLawFailure { .. } => "IdentityLawFailure",
            GroupoidError::CompositionDomainMismatch { .. } => "CompositionDomainMismatch",
            GroupoidError::AssociativityFailure { .. } => "AssociativityFailure",
            GroupoidError::InverseFailure { .. } => "InverseFailure",
            GroupoidError::UnknownObject(_) => "UnknownObject",
            GroupoidError::UnknownArrow(_) => "UnknownArrow",
            GroupoidError::InvalidRelation(_) => "InvalidRelation",
            GroupoidError::InvalidGroupAction(_) => "InvalidGroupAction",
            GroupoidError::StructureMapOutOfRange(_) => "StructureMapOutOfRange",
            GroupoidError::Group(_) => "InvalidGroup",
        }
    }
}

/// Unvalidated tables, as produced by constructors or parsed from JSON.
#[derive(Debug, Clone)]
pub(crate) struct GroupoidTables {
    pub object_labels: Vec<String>,
    pub arrow_labels: Vec<String>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub identity: Vec<Option<usize>>,
    pub inverse: Vec<Option<usize>>,
    /// `(g, h) -> gh` for every supplied entry, possibly inconsistent.
    pub compose: HashMap<(usize, usize), usize>,
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    object_labels: Vec<String>,
    arrow_labels: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    /// arrows with a given target, ascending
    into: Vec<Vec<usize>>,
    /// arrows with a given source, ascending
    out_of: Vec<Vec<usize>>,
    /// position of an arrow inside `into[tgt(arrow)]`
    pos_in_target: Vec<usize>,
    /// `compose_table[compose_offset[g] + pos_in_target[h]] = gh` for `tgt(h) = src(g)`
    compose_offset: Vec<usize>,
    compose_table: Vec<u32>,
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

/// The group of loops at one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub base: usize,
    /// loop arrows at `base`, ascending
    pub elements: Vec<usize>,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The loops at `base` as an abstract group table (identity first).
    pub fn to_group_table(&self, g: &FiniteGroupoid) -> GroupTable {
        let pos: HashMap<usize, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i))
            .collect();
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| {
                self.elements
                    .iter()
                    .map(|&b| pos[&g.compose(a, b).expect("loops compose")])
                    .collect()
            })
            .collect();
        let labels = self
            .elements
            .iter()
            .map(|&a| g.arrow_label(a).to_string())
            .collect();
        GroupTable::from_table(format!("G^{}", g.object_label(self.base)), labels, table)
            .expect("isotropy of a valid groupoid is a group")
    }
}

impl FiniteGroupoid {
    /// Checks every groupoid axiom on the supplied tables.
    pub(crate) fn from_tables(t: GroupoidTables) -> Result<Self, GroupoidError> {
        let n0 = t.object_labels.len();
        let n1 = t.arrow_labels.len();
        let al = |a: usize| t.arrow_labels[a].clone();
        let ol = |a: usize| t.object_labels[a].clone();
        debug_assert_eq!(t.src.len(), n1);
        debug_assert_eq!(t.tgt.len(), n1);

        // identities
        let mut identity = Vec::with_capacity(n0);
        for a in 0..n0 {
            match t.identity.get(a).copied().flatten() {
                Some(i) if i < n1 && t.src[i] == a && t.tgt[i] == a => identity.push(i),
                _ => return Err(GroupoidError::MissingIdentity { object: ol(a) }),
            }
        }

        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n0];
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); n0];
        let mut pos_in_target = vec![0; n1];
        for g in 0..n1 {
            pos_in_target[g] = into[t.tgt[g]].len();
            into[t.tgt[g]].push(g);
            out_of[t.src[g]].push(g);
        }

        for (&(g, h), &gh) in &t.compose {
            if t.src[g] != t.tgt[h] {
                return Err(GroupoidError::CompositionDomainMismatch {
                    left: al(g),
                    right: al(h),
                    detail: "entry given for a non-composable pair".into(),
                });
            }
            if gh >= n1 || t.tgt[gh] != t.tgt[g] || t.src[gh] != t.src[h] {
                return Err(GroupoidError::CompositionDomainMismatch {
                    left: al(g),
                    right: al(h),
                    detail: format!(
                        "composite `{}` has wrong endpoints",
                        t.arrow_labels.get(gh).cloned().unwrap_or_default()
                    ),
                });
            }
        }

        let mut compose_offset = Vec::with_capacity(n1);
        let mut total = 0usize;
        for g in 0..n1 {
            compose_offset.push(total);
            total += into[t.src[g]].len();
        }
        let mut compose_table = vec![NONE; total];
        // deterministic scan order for error reporting
        for g in 0..n1 {
            for &h in &into[t.src[g]] {
                match t.compose.get(&(g, h)) {
                    Some(&gh) => compose_table[compose_offset[g] + pos_in_target[h]] = gh as u32,
                    None => {
                        return Err(GroupoidError::CompositionDomainMismatch {
                            left: al(g),
                            right: al(h),
                            detail: "composable pair has no composite".into(),
                        })
                    }
                }
            }
        }
        let comp =
            |g: usize, h: usize| compose_table[compose_offset[g] + pos_in_target[h]] as usize;

        for g in 0..n1 {
            if comp(g, identity[t.src[g]]) != g || comp(identity[t.tgt[g]], g) != g {
                return Err(GroupoidError::IdentityLawFailure { arrow: al(g) });
            }
        }

        for f in 0..n1 {
            for &g in &into[t.src[f]] {
                let fg = comp(f, g);
                for &h in &into[t.src[g]] {
                    if comp(fg, h) != comp(f, comp(g, h)) {
                        return Err(GroupoidError::AssociativityFailure {
                            f: al(f),
                            g: al(g),
                            h: al(h),
                        });
                    }
                }
            }
        }

        let mut inverse = Vec::with_capacity(n1);
        for g in 0..n1 {
            match t.inverse.get(g).copied().flatten() {
                Some(i)
                    if i < n1
                        && t.src[i] == t.tgt[g]
                        && t.tgt[i] == t.src[g]
                        && comp(g, i) == identity[t.tgt[g]]
                        && comp(i, g) == identity[t.src[g]] =>
                {
                    inverse.push(i)
                }
                _ => return Err(GroupoidError::InverseFailure { arrow: al(g) }),
            }
        }

        let (component_of, components) = components_of(n0, &t.src, &t.tgt);

        Ok(FiniteGroupoid {
            object_labels: t.object_labels,
            arrow_labels: t.arrow_labels,
            src: t.src,
            tgt: t.tgt,
            identity,
            inverse,
            into,
            out_of,
            pos_in_target,
            compose_offset,
            compose_table,
            component_of,
            components,
        })
    }

    /// Builds and validates a groupoid from a total composition function.
    pub(crate) fn build(
        object_labels: Vec<String>,
        arrow_labels: Vec<String>,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GroupoidError> {
        let n0 = object_labels.len();
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n0];
        for (g, &t) in tgt.iter().enumerate() {
            into[t].push(g);
        }
        let mut table = HashMap::new();
        for g in 0..arrow_labels.len() {
            for &h in &into[src[g]] {
                table.insert((g, h), compose(g, h));
            }
        }
        Self::from_tables(GroupoidTables {
            object_labels,
            arrow_labels,
            src,
            tgt,
            identity: identity.into_iter().map(Some).collect(),
            inverse: inverse.into_iter().map(Some).collect(),
            compose: table,
        })
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn num_objects(&self) -> usize {
        self.object_labels.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrow_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.object_labels.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.num_objects()
    }

    pub fn arrows(&self) -> std::ops::Range<usize> {
        0..self.num_arrows()
    }

    #[inline]
    pub fn src(&self, g: usize) -> usize {
        self.src[g]
    }

    #[inline]
    pub fn tgt(&self, g: usize) -> usize {
        self.tgt[g]
    }

    #[inline]
    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.src[g]] == g
    }

    /// `gh`, defined when `src(g) == tgt(h)`.
    #[inline]
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        if self.src[g] != self.tgt[h] {
            return None;
        }
        Some(self.compose_table[self.compose_offset[g] + self.pos_in_target[h]] as usize)
    }

    /// `gh` for a pair known to be composable.
    #[inline]
    pub(crate) fn mul(&self, g: usize, h: usize) -> usize {
        debug_assert_eq!(self.src[g], self.tgt[h]);
        self.compose_table[self.compose_offset[g] + self.pos_in_target[h]] as usize
    }

    /// Conjugate `d h d^{-1}` of a loop `h` at `src(d)`.
    pub(crate) fn conjugate(&self, d: usize, h: usize) -> usize {
        self.mul(self.mul(d, h), self.inverse[d])
    }

    /// Arrows whose target is `a`, ascending.
    pub fn arrows_into(&self, a: usize) -> &[usize] {
        &self.into[a]
    }

    /// Arrows whose source is `a`, ascending.
    pub fn arrows_out_of(&self, a: usize) -> &[usize] {
        &self.out_of[a]
    }

    /// Position of `g` in `arrows_into(tgt(g))`.
    #[inline]
    pub fn position_in_target(&self, g: usize) -> usize {
        self.pos_in_target[g]
    }

    /// The hom-set `G(x, y)`: arrows with source `x` and target `y`.
    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.into[y]
            .iter()
            .copied()
            .filter(move |&g| self.src[g] == x)
    }

    pub fn object_label(&self, a: usize) -> &str {
        &self.object_labels[a]
    }

    pub fn arrow_label(&self, g: usize) -> &str {
        &self.arrow_labels[g]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn arrow_labels(&self) -> &[String] {
        &self.arrow_labels
    }

    pub fn object_by_label(&self, label: &str) -> Result<usize, GroupoidError> {
        self.object_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GroupoidError::UnknownObject(label.to_string()))
    }

    pub fn arrow_by_label(&self, label: &str) -> Result<usize, GroupoidError> {
        self.arrow_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GroupoidError::UnknownArrow(label.to_string()))
    }

    /// Connected components, each sorted ascending, ordered by smallest object.
    pub fn connected_components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, a: usize) -> usize {
        self.component_of[a]
    }

    /// Transitive in the groupoid sense; the empty groupoid counts as transitive.
    pub fn is_transitive(&self) -> bool {
        self.components.len() <= 1
    }

    /// Whether some arrow connects `a` and `b`.
    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.component_of[a] == self.component_of[b]
    }

    /// Some arrow from `x` to `y`, if they are connected.
    pub fn some_arrow(&self, x: usize, y: usize) -> Option<usize> {
        self.hom(x, y).next()
    }

    pub fn isotropy(&self, a: usize) -> Result<IsotropyGroup, GroupoidError> {
        if a >= self.num_objects() {
            return Err(GroupoidError::UnknownObject(a.to_string()));
        }
        Ok(IsotropyGroup {
            base: a,
            elements: self.hom(a, a).collect(),
        })
    }

    /// Full subgroupoid on the given objects, with the inclusion morphism.
    pub fn full_subgroupoid(
        self: &Arc<Self>,
        objects: &[usize],
    ) -> Result<GroupoidMorphism, GroupoidError> {
        let mut keep = vec![false; self.num_objects()];
        for &a in objects {
            if a >= self.num_objects() {
                return Err(GroupoidError::UnknownObject(a.to_string()));
            }
            keep[a] = true;
        }
        let arrows: Vec<usize> = self
            .arrows()
            .filter(|&g| keep[self.src[g]] && keep[self.tgt[g]])
            .collect();
        self.restricted(objects, &arrows)
    }

    /// The groupoid formed by a subset of objects and arrows closed under the structure maps,
    /// with its inclusion. Closure is checked by validation of the result.
    pub(crate) fn restricted(
        self: &Arc<Self>,
        objects: &[usize],
        arrows: &[usize],
    ) -> Result<GroupoidMorphism, GroupoidError> {
        let mut object_pos = vec![usize::MAX; self.num_objects()];
        for (i, &a) in objects.iter().enumerate() {
            object_pos[a] = i;
        }
        let mut arrow_pos = vec![usize::MAX; self.num_arrows()];
        for (i, &g) in arrows.iter().enumerate() {
            arrow_pos[g] = i;
        }
        let sub = FiniteGroupoid::build(
            objects
                .iter()
                .map(|&a| self.object_labels[a].clone())
                .collect(),
            arrows
                .iter()
                .map(|&g| self.arrow_labels[g].clone())
                .collect(),
            arrows.iter().map(|&g| object_pos[self.src[g]]).collect(),
            arrows.iter().map(|&g| object_pos[self.tgt[g]]).collect(),
            objects
                .iter()
                .map(|&a| arrow_pos[self.identity[a]])
                .collect(),
            arrows.iter().map(|&g| arrow_pos[self.inverse[g]]).collect(),
            |i, j| arrow_pos[self.mul(arrows[i], arrows[j])],
        )?;
        Ok(GroupoidMorphism::new_unchecked(
            Arc::new(sub),
            Arc::clone(self),
            objects.to_vec(),
            arrows.to_vec(),
        ))
    }

    /// Inclusion of each connected component, in component order.
    pub fn component_inclusions(self: &Arc<Self>) -> Vec<GroupoidMorphism> {
        self.components
            .iter()
            .map(|c| {
                self.full_subgroupoid(c)
                    .expect("component is a full subgroupoid")
            })
            .collect()
    }

    /// An isomorphic copy with dense indices shuffled; labels travel with their items.
    ///
    /// `object_perm[i]` is the new index of object `i`, likewise for arrows.
    pub fn permuted(
        &self,
        object_perm: &[usize],
        arrow_perm: &[usize],
    ) -> Result<Self, GroupoidError> {
        let n0 = self.num_objects();
        let n1 = self.num_arrows();
        let mut inv_arrow = vec![0; n1];
        for (i, &p) in arrow_perm.iter().enumerate() {
            inv_arrow[p] = i;
        }
        let mut object_labels = vec![String::new(); n0];
        for (i, &p) in object_perm.iter().enumerate() {
            object_labels[p] = self.object_labels[i].clone();
        }
        let mut identity = vec![0; n0];
        for a in 0..n0 {
            identity[object_perm[a]] = arrow_perm[self.identity[a]];
        }
        FiniteGroupoid::build(
            object_labels,
            (0..n1)
                .map(|p| self.arrow_labels[inv_arrow[p]].clone())
                .collect(),
            (0..n1)
                .map(|p| object_perm[self.src[inv_arrow[p]]])
                .collect(),
            (0..n1)
                .map(|p| object_perm[self.tgt[inv_arrow[p]]])
                .collect(),
            identity,
            (0..n1)
                .map(|p| arrow_perm[self.inverse[inv_arrow[p]]])
                .collect(),
            |p, q| arrow_perm[self.mul(inv_arrow[p], inv_arrow[q])],
        )
    }
}

fn components_of(n0: usize, src: &[usize], tgt: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut parent: Vec<usize> = (0..n0).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&s, &t) in src.iter().zip(tgt) {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut component_of = vec![usize::MAX; n0];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_to_comp: HashMap<usize, usize> = HashMap::new();
    for a in 0..n0 {
        let r = find(&mut parent, a);
        let c = *root_to_comp.entry(r).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        component_of[a] = c;
        components[c].push(a);
    }
    (component_of, components)
}
