//! Right groupoid-sets.
//!
//! A right `G`-set is a carrier `X` with a structure map `ς: X -> G₀` and a
//! partial action `x·g`, defined exactly when `ς(x) = t(g)`, with
//! `ς(x·g) = s(g)`, `x·ι = x` and `(x·g)·h = x·(gh)`.

mod iso;
mod ops;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::FiniteGroupoid;
use crate::subconj::{OneObjectSubgroupoid, Subgroupoid};
use crate::Label;

pub use iso::{
    decompose, isomorphic, EquivariantMap, GSetDecomposition, IsoCertificate, IsoOutcome,
};
pub use ops::NaturalTransformation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GSetError {
    #[error("ς({element}·{arrow}) is not the source of `{arrow}`")]
    StructureMapViolation { element: String, arrow: String },
    #[error("identity does not fix `{element}`")]
    IdentityActionViolation { element: String },
    #[error("({element}·{left})·{right} differs from {element}·({left}{right})")]
    AssociativityActionViolation {
        element: String,
        left: String,
        right: String,
    },
    #[error("`{element}`·`{arrow}` is required but missing")]
    ActionDomainGap { element: String, arrow: String },
    #[error("`{element}`·`{arrow}` is given, but ς({element}) is not the target of `{arrow}`")]
    ActionOutsideDomain { element: String, arrow: String },
    #[error("conflicting values for `{element}`·`{arrow}`")]
    ConflictingAction { element: String, arrow: String },
    #[error("element `{0}` has no valid structure map value")]
    StructureMapOutOfRange(String),
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("operands live over different groupoids")]
    GroupoidMismatch,
    #[error("subgroupoid has {0} objects, expected exactly one")]
    MultiObjectSubgroupoid(usize),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("family is not natural at arrow `{0}`")]
    NotNatural(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl GSetError {
    pub fn kind(&self) -> &'static str {
        match self {
            GSetError::StructureMapViolation { .. } => "StructureMapViolation",
            GSetError::IdentityActionViolation { .. } => "IdentityActionViolation",
            GSetError::AssociativityActionViolation { .. } => "AssociativityActionViolation",
            GSetError::ActionDomainGap { .. } => "ActionDomainGap",
            GSetError::ActionOutsideDomain { .. } => "ActionOutsideDomain",
            GSetError::ConflictingAction { .. } => "ConflictingAction",
            GSetError::StructureMapOutOfRange(_) => "StructureMapOutOfRange",
            GSetError::DuplicateId(_) => "DuplicateId",
            GSetError::UnknownElement(_) => "UnknownElement",
            GSetError::UnknownObject(_) => "UnknownObject",
            GSetError::UnknownArrow(_) => "UnknownArrow",
            GSetError::GroupoidMismatch => "GroupoidMismatch",
            GSetError::MultiObjectSubgroupoid(_) => "MultiObjectSubgroupoid",
            GSetError::NotEquivariant(_) => "NotEquivariant",
            GSetError::NotNatural(_) => "NotNatural",
            GSetError::Json(_) => "MalformedJson",
        }
    }
}

/// JSON form: `{"elements": [..], "sigma": {elem: obj}, "action": [[x, g, xg], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct RawGSet {
    pub elements: Vec<Label>,
    pub sigma: BTreeMap<String, Label>,
    #[serde(default)]
    pub action: Vec<[Label; 3]>,
}

/// A validated right `G`-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightGSet {
    groupoid: Arc<FiniteGroupoid>,
    labels: Vec<String>,
    sigma: Vec<usize>,
    /// `act[offset[x] + position_in_target(g)] = x·g`
    offset: Vec<usize>,
    act: Vec<u32>,
    fibre: Vec<Vec<usize>>,
}

pub(crate) fn same_groupoid(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RightGSet {
    /// Builds the set from a total action on the defined domain and checks the axioms.
    pub fn new(
        groupoid: Arc<FiniteGroupoid>,
        labels: Vec<String>,
        sigma: Vec<usize>,
        action: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GSetError> {
        let x = RightGSet::new_unchecked(groupoid, labels, sigma, action)?;
        x.check_axioms()?;
        Ok(x)
    }

    /// Fills the tables without checking the action axioms; structure map range is still checked.
    pub(crate) fn new_unchecked(
        groupoid: Arc<FiniteGroupoid>,
        labels: Vec<String>,
        sigma: Vec<usize>,
        mut action: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GSetError> {
        assert_eq!(labels.len(), sigma.len());
        let n0 = groupoid.num_objects();
        let mut fibre = vec![Vec::new(); n0];
        for (x, &a) in sigma.iter().enumerate() {
            if a >= n0 {
                return Err(GSetError::StructureMapOutOfRange(labels[x].clone()));
            }
            fibre[a].push(x);
        }
        let mut offset = Vec::with_capacity(sigma.len() + 1);
        let mut total = 0;
        for &a in &sigma {
            offset.push(total);
            total += groupoid.arrows_into(a).len();
        }
        offset.push(total);
        let mut act = Vec::with_capacity(total);
        for (x, &a) in sigma.iter().enumerate() {
            for &g in groupoid.arrows_into(a) {
                let y = action(x, g);
                if y >= sigma.len() {
                    return Err(GSetError::UnknownElement(y.to_string()));
                }
                act.push(y as u32);
            }
        }
        Ok(RightGSet {
            groupoid,
            labels,
            sigma,
            offset,
            act,
            fibre,
        })
    }

    fn check_axioms(&self) -> Result<(), GSetError> {
        let g = &*self.groupoid;
        for x in self.elements() {
            for &a in g.arrows_into(self.sigma[x]) {
                if self.sigma[self.mul(x, a)] != g.src(a) {
                    return Err(GSetError::StructureMapViolation {
                        element: self.labels[x].clone(),
                        arrow: g.arrow_label(a).into(),
                    });
                }
            }
        }
        for x in self.elements() {
            if self.mul(x, g.identity(self.sigma[x])) != x {
                return Err(GSetError::IdentityActionViolation {
                    element: self.labels[x].clone(),
                });
            }
        }
        for x in self.elements() {
            for &a in g.arrows_into(self.sigma[x]) {
                let xa = self.mul(x, a);
                for &b in g.arrows_into(g.src(a)) {
                    if self.mul(xa, b) != self.mul(x, g.mul(a, b)) {
                        return Err(GSetError::AssociativityActionViolation {
                            element: self.labels[x].clone(),
                            left: g.arrow_label(a).into(),
                            right: g.arrow_label(b).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Validates a JSON description against `groupoid`.
    pub fn from_raw(raw: &RawGSet, groupoid: Arc<FiniteGroupoid>) -> Result<Self, GSetError> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, e) in raw.elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(GSetError::DuplicateId(e.0.clone()));
            }
        }
        let elem = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| GSetError::UnknownElement(l.to_string()))
        };
        let mut sigma = Vec::with_capacity(raw.elements.len());
        for e in &raw.elements {
            let obj = raw
                .sigma
                .get(e.as_str())
                .ok_or_else(|| GSetError::StructureMapOutOfRange(e.0.clone()))?;
            sigma.push(
                groupoid
                    .object_by_label(obj.as_str())
                    .map_err(|_| GSetError::UnknownObject(obj.0.clone()))?,
            );
        }
        for k in raw.sigma.keys() {
            elem(k)?;
        }
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for [x, g, y] in &raw.action {
            let (xi, yi) = (elem(x.as_str())?, elem(y.as_str())?);
            let gi = groupoid
                .arrow_by_label(g.as_str())
                .map_err(|_| GSetError::UnknownArrow(g.0.clone()))?;
            if groupoid.tgt(gi) != sigma[xi] {
                return Err(GSetError::ActionOutsideDomain {
                    element: x.0.clone(),
                    arrow: g.0.clone(),
                });
            }
            if let Some(prev) = table.insert((xi, gi), yi) {
                if prev != yi {
                    return Err(GSetError::ConflictingAction {
                        element: x.0.clone(),
                        arrow: g.0.clone(),
                    });
                }
            }
        }
        for (x, &a) in sigma.iter().enumerate() {
            for &g in groupoid.arrows_into(a) {
                if !table.contains_key(&(x, g)) {
                    return Err(GSetError::ActionDomainGap {
                        element: raw.elements[x].0.clone(),
                        arrow: groupoid.arrow_label(g).into(),
                    });
                }
            }
        }
        let labels = raw.elements.iter().map(|l| l.0.clone()).collect();
        RightGSet::new(groupoid, labels, sigma, |x, g| table[&(x, g)])
    }

    pub fn from_json(text: &str, groupoid: Arc<FiniteGroupoid>) -> Result<Self, GSetError> {
        let raw: RawGSet =
            serde_json::from_str(text).map_err(|e| GSetError::Json(e.to_string()))?;
        RightGSet::from_raw(&raw, groupoid)
    }

    pub fn to_raw(&self) -> RawGSet {
        let g = &*self.groupoid;
        let mut action = Vec::with_capacity(self.act.len());
        for x in self.elements() {
            for &a in g.arrows_into(self.sigma[x]) {
                action.push([
                    Label::from(self.labels[x].as_str()),
                    Label::from(g.arrow_label(a)),
                    Label::from(self.labels[self.mul(x, a)].as_str()),
                ]);
            }
        }
        RawGSet {
            elements: self
                .labels
                .iter()
                .map(|l| Label::from(l.as_str()))
                .collect(),
            sigma: self
                .elements()
                .map(|x| {
                    (
                        self.labels[x].clone(),
                        Label::from(g.object_label(self.sigma[x])),
                    )
                })
                .collect(),
            action,
        }
    }

    /// The empty `G`-set.
    pub fn empty(groupoid: Arc<FiniteGroupoid>) -> Self {
        RightGSet::new_unchecked(groupoid, Vec::new(), Vec::new(), |_, _| unreachable!())
            .expect("empty set")
    }

    /// `(G₀, id)` with `a·g = s(g)`: the unit for the fibered product.
    pub fn objects(groupoid: Arc<FiniteGroupoid>) -> Self {
        let labels = groupoid.object_labels().to_vec();
        let sigma = groupoid.objects().collect();
        let g = Arc::clone(&groupoid);
        RightGSet::new_unchecked(groupoid, labels, sigma, |_, a| g.src(a))
            .expect("objects form a G-set")
    }

    /// `(G₁, s)` with the regular action `x·g = xg`.
    pub fn regular(groupoid: Arc<FiniteGroupoid>) -> Self {
        let labels = groupoid.arrow_labels().to_vec();
        let sigma = groupoid.arrows().map(|x| groupoid.src(x)).collect();
        let g = Arc::clone(&groupoid);
        RightGSet::new_unchecked(groupoid, labels, sigma, |x, a| g.mul(x, a))
            .expect("arrows form a G-set")
    }

    /// Relabels and reorders elements: `perm[i]` is the new position of element `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let labels = (0..n).map(|p| self.labels[inv[p]].clone()).collect();
        let sigma = (0..n).map(|p| self.sigma[inv[p]]).collect();
        RightGSet::new_unchecked(Arc::clone(&self.groupoid), labels, sigma, |p, g| {
            perm[self.mul(inv[p], g)]
        })
        .expect("permutation of a G-set")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Result<usize, GSetError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GSetError::UnknownElement(label.to_string()))
    }

    #[inline]
    pub fn sigma(&self, x: usize) -> usize {
        self.sigma[x]
    }

    pub fn structure_map(&self) -> &[usize] {
        &self.sigma
    }

    /// Elements over the object `a`.
    pub fn fibre(&self, a: usize) -> &[usize] {
        &self.fibre[a]
    }

    /// `x·g`, defined when `ς(x) = t(g)`.
    pub fn act(&self, x: usize, g: usize) -> Option<usize> {
        (self.sigma[x] == self.groupoid.tgt(g)).then(|| self.mul(x, g))
    }

    #[inline]
    pub(crate) fn mul(&self, x: usize, g: usize) -> usize {
        debug_assert_eq!(self.sigma[x], self.groupoid.tgt(g));
        self.act[self.offset[x] + self.groupoid.position_in_target(g)] as usize
    }

    /// Orbits, each sorted, ordered by their smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![start];
            orbit_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &g in self.groupoid.arrows_into(self.sigma[x]) {
                    let y = self.mul(x, g);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// The loops at `ς(e)` that fix `e`.
    pub fn stabilizer(&self, e: usize) -> Result<OneObjectSubgroupoid, GSetError> {
        if e >= self.len() {
            return Err(GSetError::UnknownElement(e.to_string()));
        }
        let a = self.sigma[e];
        let arrows = self
            .groupoid
            .hom(a, a)
            .filter(|&g| self.mul(e, g) == e)
            .collect();
        Ok(OneObjectSubgroupoid::from_sorted_unchecked(
            Arc::clone(&self.groupoid),
            a,
            arrows,
        ))
    }

    /// `X^H = {x : ς(x) = a, x·h = x for all h in H}` for `H` at `a`.
    pub fn fixed_points(&self, h: &OneObjectSubgroupoid) -> Result<Vec<usize>, GSetError> {
        if !same_groupoid(&self.groupoid, h.parent()) {
            return Err(GSetError::GroupoidMismatch);
        }
        Ok(self.fixed_points_unchecked(h))
    }

    pub(crate) fn fixed_points_unchecked(&self, h: &OneObjectSubgroupoid) -> Vec<usize> {
        self.fibre[h.base()]
            .iter()
            .copied()
            .filter(|&x| h.arrows().iter().all(|&g| self.mul(x, g) == x))
            .collect()
    }

    pub(crate) fn count_fixed_points(&self, h: &OneObjectSubgroupoid) -> usize {
        self.fibre[h.base()]
            .iter()
            .filter(|&&x| h.arrows().iter().all(|&g| self.mul(x, g) == x))
            .count()
    }

    /// Fixed points of a general subgroupoid, which must have exactly one object.
    pub fn fixed_points_of(&self, h: &Subgroupoid) -> Result<Vec<usize>, GSetError> {
        let h = h
            .as_one_object()
            .ok_or_else(|| GSetError::MultiObjectSubgroupoid(h.objects().len()))?;
        self.fixed_points(&h)
    }

    /// Whether `f: self -> other` commutes with structure maps and actions.
    pub fn check_equivariant(&self, other: &RightGSet, f: &[usize]) -> Result<(), GSetError> {
        if !same_groupoid(&self.groupoid, &other.groupoid) {
            return Err(GSetError::GroupoidMismatch);
        }
        if f.len() != self.len() || f.iter().any(|&y| y >= other.len()) {
            return Err(GSetError::NotEquivariant(
                "map does not cover the domain".into(),
            ));
        }
        for x in self.elements() {
            if other.sigma[f[x]] != self.sigma[x] {
                return Err(GSetError::NotEquivariant(format!(
                    "structure map differs at `{}`",
                    self.labels[x]
                )));
            }
            for &g in self.groupoid.arrows_into(self.sigma[x]) {
                if f[self.mul(x, g)] != other.mul(f[x], g) {
                    return Err(GSetError::NotEquivariant(format!(
                        "f({}·{}) != f({})·{}",
                        self.labels[x],
                        self.groupoid.arrow_label(g),
                        self.labels[x],
                        self.groupoid.arrow_label(g)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The right coset `G`-set `G/H`, with the coset class of every arrow.
#[derive(Debug, Clone)]
pub struct CosetGSet {
    pub gset: RightGSet,
    /// smallest arrow in each class, in element order
    pub representatives: Vec<usize>,
    /// class of each arrow `g` with `t(g)` in `H₀`, otherwise `usize::MAX`
    pub class_of_arrow: Vec<usize>,
}

/// `G/H` with classes `H[(a, g)] = {hg : s(h) = a}` for `t(g) = a`, `ς = s(g)` and
/// `H[(a, g₁)]·g₂ = H[(a, g₁g₂)]`.
pub fn coset_gset(h: &Subgroupoid) -> RightGSet {
    coset_gset_with_classes(h).gset
}

pub fn coset_gset_with_classes(h: &Subgroupoid) -> CosetGSet {
    let g = Arc::clone(h.parent());
    let mut class_of_arrow = vec![usize::MAX; g.num_arrows()];
    let mut representatives = Vec::new();
    let by_source: Vec<Vec<usize>> = {
        let mut v = vec![Vec::new(); g.num_objects()];
        for &a in h.arrows() {
            v[g.src(a)].push(a);
        }
        v
    };
    for x in g.arrows() {
        if !h.contains_object(g.tgt(x)) || class_of_arrow[x] != usize::MAX {
            continue;
        }
        // x is the smallest arrow of its class since arrows are scanned in order
        let id = representatives.len();
        representatives.push(x);
        for &k in &by_source[g.tgt(x)] {
            class_of_arrow[g.mul(k, x)] = id;
        }
    }
    let sigma = representatives.iter().map(|&x| g.src(x)).collect();
    let labels = representatives
        .iter()
        .map(|&x| format!("[{},{}]", g.object_label(g.tgt(x)), g.arrow_label(x)))
        .collect();
    let gset = RightGSet::new_unchecked(Arc::clone(&g), labels, sigma, |c, a| {
        class_of_arrow[g.mul(representatives[c], a)]
    })
    .expect("cosets form a G-set");
    CosetGSet {
        gset,
        representatives,
        class_of_arrow,
    }
}
