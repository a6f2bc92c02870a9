//! Subgroupoids, conjugacy, subgroup classes and the table of marks.

mod enumerate;
mod marks;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{FiniteGroupoid, GroupoidMorphism};
use crate::Label;

pub use enumerate::{enumerate_reps, subgroups_at};
pub use marks::{mark, MarkTable, MarkTableExport, TableOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubconjError {
    #[error("not a subgroupoid: {0}")]
    NotASubgroupoid(String),
    #[error("isotropy group at `{object}` has order {order}, above the cap {cap}")]
    IsotropyTooLarge {
        object: String,
        order: usize,
        cap: usize,
    },
    #[error("conjugacy search exceeded {0} nodes")]
    SearchBudgetExceeded(usize),
    #[error("operands live over different groupoids")]
    GroupoidMismatch,
    #[error("table of marks is not block lower triangular: {0}")]
    TriangularityViolation(String),
    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl SubconjError {
    pub fn kind(&self) -> &'static str {
        match self {
            SubconjError::NotASubgroupoid(_) => "NotASubgroupoid",
            SubconjError::IsotropyTooLarge { .. } => "IsotropyTooLarge",
            SubconjError::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            SubconjError::GroupoidMismatch => "GroupoidMismatch",
            SubconjError::TriangularityViolation(_) => "TriangularityViolation",
            SubconjError::UnknownId { kind: "object", .. } => "UnknownObject",
            SubconjError::UnknownId { .. } => "UnknownArrow",
            SubconjError::Json(_) => "MalformedJson",
        }
    }
}

fn same(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// JSON form: `{"objects": [..], "arrows": [..]}` using labels of the ambient groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSubgroupoid {
    pub objects: Vec<Label>,
    pub arrows: Vec<Label>,
}

/// A collection of objects and arrows closed under identities, inverses and composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroupoid {
    parent: Arc<FiniteGroupoid>,
    objects: Vec<usize>,
    arrows: Vec<usize>,
    has_object: Vec<bool>,
    has_arrow: Vec<bool>,
}

impl Subgroupoid {
    pub fn new(
        parent: Arc<FiniteGroupoid>,
        objects: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<Self, SubconjError> {
        let mut objects = objects;
        let mut arrows = arrows;
        objects.sort_unstable();
        objects.dedup();
        arrows.sort_unstable();
        arrows.dedup();
        let g = &*parent;
        if let Some(&a) = objects.iter().find(|&&a| a >= g.num_objects()) {
            return Err(SubconjError::UnknownId {
                kind: "object",
                id: a.to_string(),
            });
        }
        if let Some(&x) = arrows.iter().find(|&&x| x >= g.num_arrows()) {
            return Err(SubconjError::UnknownId {
                kind: "arrow",
                id: x.to_string(),
            });
        }
        let mut has_object = vec![false; g.num_objects()];
        for &a in &objects {
            has_object[a] = true;
        }
        let mut has_arrow = vec![false; g.num_arrows()];
        for &x in &arrows {
            has_arrow[x] = true;
        }
        for &x in &arrows {
            if !has_object[g.src(x)] || !has_object[g.tgt(x)] {
                return Err(SubconjError::NotASubgroupoid(format!(
                    "arrow `{}` leaves the object set",
                    g.arrow_label(x)
                )));
            }
            if !has_arrow[g.inverse(x)] {
                return Err(SubconjError::NotASubgroupoid(format!(
                    "inverse of `{}` is missing",
                    g.arrow_label(x)
                )));
            }
        }
        for &a in &objects {
            if !has_arrow[g.identity(a)] {
                return Err(SubconjError::NotASubgroupoid(format!(
                    "identity of `{}` is missing",
                    g.object_label(a)
                )));
            }
        }
        for &x in &arrows {
            for &y in g.arrows_into(g.src(x)) {
                if has_arrow[y] && !has_arrow[g.mul(x, y)] {
                    return Err(SubconjError::NotASubgroupoid(format!(
                        "composite of `{}` and `{}` is missing",
                        g.arrow_label(x),
                        g.arrow_label(y)
                    )));
                }
            }
        }
        Ok(Subgroupoid {
            parent,
            objects,
            arrows,
            has_object,
            has_arrow,
        })
    }

    /// The whole groupoid as a subgroupoid of itself.
    pub fn full(parent: Arc<FiniteGroupoid>) -> Self {
        let objects = parent.objects().collect();
        let arrows = parent.arrows().collect();
        Subgroupoid::new(parent, objects, arrows).expect("a groupoid is a subgroupoid of itself")
    }

    pub fn from_raw(
        raw: &RawSubgroupoid,
        parent: Arc<FiniteGroupoid>,
    ) -> Result<Self, SubconjError> {
        let objects = raw
            .objects
            .iter()
            .map(|l| {
                parent
                    .object_by_label(l.as_str())
                    .map_err(|_| SubconjError::UnknownId {
                        kind: "object",
                        id: l.0.clone(),
                    })
            })
            .collect::<Result<_, _>>()?;
        let arrows = raw
            .arrows
            .iter()
            .map(|l| {
                parent
                    .arrow_by_label(l.as_str())
                    .map_err(|_| SubconjError::UnknownId {
                        kind: "arrow",
                        id: l.0.clone(),
                    })
            })
            .collect::<Result<_, _>>()?;
        Subgroupoid::new(parent, objects, arrows)
    }

    pub fn from_json(text: &str, parent: Arc<FiniteGroupoid>) -> Result<Self, SubconjError> {
        let raw: RawSubgroupoid =
            serde_json::from_str(text).map_err(|e| SubconjError::Json(e.to_string()))?;
        Subgroupoid::from_raw(&raw, parent)
    }

    pub fn to_raw(&self) -> RawSubgroupoid {
        RawSubgroupoid {
            objects: self
                .objects
                .iter()
                .map(|&a| Label::from(self.parent.object_label(a)))
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|&x| Label::from(self.parent.arrow_label(x)))
                .collect(),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid> {
        &self.parent
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn contains_object(&self, a: usize) -> bool {
        self.has_object[a]
    }

    pub fn contains_arrow(&self, x: usize) -> bool {
        self.has_arrow[x]
    }

    /// Arrows of the subgroupoid from `x` to `y`.
    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent.hom(x, y).filter(move |&a| self.has_arrow[a])
    }

    /// The isotropy group of the subgroupoid at one of its objects.
    pub fn isotropy(&self, a: usize) -> OneObjectSubgroupoid {
        assert!(self.has_object[a]);
        OneObjectSubgroupoid::from_sorted_unchecked(
            Arc::clone(&self.parent),
            a,
            self.hom(a, a).collect(),
        )
    }

    pub fn as_one_object(&self) -> Option<OneObjectSubgroupoid> {
        match self.objects[..] {
            [a] => Some(OneObjectSubgroupoid::from_sorted_unchecked(
                Arc::clone(&self.parent),
                a,
                self.arrows.clone(),
            )),
            _ => None,
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components of the subgroupoid itself.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let g = &*self.parent;
        let mut comp = vec![usize::MAX; g.num_objects()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &start in &self.objects {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let a = members[i];
                i += 1;
                for &x in g.arrows_into(a) {
                    if self.has_arrow[x] && comp[g.src(x)] == usize::MAX {
                        comp[g.src(x)] = id;
                        members.push(g.src(x));
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The subgroupoid as a groupoid in its own right, with its inclusion.
    pub fn inclusion(&self) -> GroupoidMorphism {
        self.parent
            .restricted(&self.objects, &self.arrows)
            .expect("validated subgroupoid")
    }
}

/// A subgroup of the isotropy group at `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneObjectSubgroupoid {
    parent: Arc<FiniteGroupoid>,
    base: usize,
    arrows: Vec<usize>,
}

impl OneObjectSubgroupoid {
    pub fn new(
        parent: Arc<FiniteGroupoid>,
        base: usize,
        arrows: Vec<usize>,
    ) -> Result<Self, SubconjError> {
        if base >= parent.num_objects() {
            return Err(SubconjError::UnknownId {
                kind: "object",
                id: base.to_string(),
            });
        }
        let sub = Subgroupoid::new(Arc::clone(&parent), vec![base], arrows)?;
        if sub.arrows.is_empty() {
            return Err(SubconjError::NotASubgroupoid(
                "identity of the base is missing".into(),
            ));
        }
        Ok(OneObjectSubgroupoid {
            parent,
            base,
            arrows: sub.arrows,
        })
    }

    pub(crate) fn from_sorted_unchecked(
        parent: Arc<FiniteGroupoid>,
        base: usize,
        arrows: Vec<usize>,
    ) -> Self {
        debug_assert!(arrows.windows(2).all(|w| w[0] < w[1]));
        OneObjectSubgroupoid {
            parent,
            base,
            arrows,
        }
    }

    pub fn trivial(parent: Arc<FiniteGroupoid>, base: usize) -> Self {
        let arrows = vec![parent.identity(base)];
        OneObjectSubgroupoid {
            parent,
            base,
            arrows,
        }
    }

    /// The full isotropy group `G^a`.
    pub fn isotropy(parent: Arc<FiniteGroupoid>, base: usize) -> Self {
        let arrows = parent.hom(base, base).collect();
        OneObjectSubgroupoid {
            parent,
            base,
            arrows,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid> {
        &self.parent
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Sorted loop arrows.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn order(&self) -> usize {
        self.arrows.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.arrows.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &OneObjectSubgroupoid) -> bool {
        self.base == other.base && self.arrows.iter().all(|&x| other.contains(x))
    }

    /// `dHd⁻¹` at `t(d)`, for `d` leaving the base.
    pub fn conjugate(&self, d: usize) -> OneObjectSubgroupoid {
        assert_eq!(self.parent.src(d), self.base);
        let mut arrows: Vec<usize> = self
            .arrows
            .iter()
            .map(|&h| self.parent.conjugate(d, h))
            .collect();
        arrows.sort_unstable();
        OneObjectSubgroupoid {
            parent: Arc::clone(&self.parent),
            base: self.parent.tgt(d),
            arrows,
        }
    }

    pub fn to_subgroupoid(&self) -> Subgroupoid {
        Subgroupoid::new(
            Arc::clone(&self.parent),
            vec![self.base],
            self.arrows.clone(),
        )
        .expect("subgroup")
    }

    /// `{arrow;labels}` display form.
    pub fn arrow_list_label(&self) -> String {
        let names: Vec<&str> = self
            .arrows
            .iter()
            .map(|&x| self.parent.arrow_label(x))
            .collect();
        format!("{{{}}}", names.join(";"))
    }
}

/// Some `d ∈ G(a, b)` with `K = dHd⁻¹`, for `H` at `a` and `K` at `b`.
pub fn conjugated_isotropy_subgroups(
    h: &OneObjectSubgroupoid,
    k: &OneObjectSubgroupoid,
) -> Option<usize> {
    if !same(&h.parent, &k.parent) || h.order() != k.order() {
        return None;
    }
    let g = &*h.parent;
    g.hom(h.base, k.base)
        .find(|&d| h.arrows.iter().all(|&x| k.contains(g.conjugate(d, x))))
}

/// Families `u_b ∈ H₀`, `g_b ∈ G(u_b, b)` for `b ∈ K₀`, in ascending order of `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyWitness {
    pub u: BTreeMap<usize, usize>,
    pub g: BTreeMap<usize, usize>,
}

/// Default node cap for [`conjugally_equivalent`].
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Decides whether `h` and `k` are conjugally equivalent by searching for families with
/// `g_{b₂}⁻¹ K(b₁, b₂) g_{b₁} = H(u_{b₁}, u_{b₂})` for all `b₁, b₂ ∈ K₀` such that every
/// object of `H` is reached from some `u_z` inside `H`.
pub fn conjugally_equivalent(
    h: &Subgroupoid,
    k: &Subgroupoid,
    node_cap: usize,
) -> Result<Option<ConjugacyWitness>, SubconjError> {
    if !same(&h.parent, &k.parent) {
        return Err(SubconjError::GroupoidMismatch);
    }
    Search::new(h, k, node_cap).run()
}

struct Search<'a> {
    g: &'a FiniteGroupoid,
    h: &'a Subgroupoid,
    k: &'a Subgroupoid,
    /// objects of K, most constrained first
    order: Vec<usize>,
    /// component of each object inside H
    h_comp: Vec<usize>,
    h_loops: Vec<usize>,
    k_loops: Vec<usize>,
    k_hom: HashMap<(usize, usize), Vec<usize>>,
    u: Vec<usize>,
    gb: Vec<usize>,
    nodes: usize,
    cap: usize,
}

impl<'a> Search<'a> {
    fn new(h: &'a Subgroupoid, k: &'a Subgroupoid, cap: usize) -> Self {
        let g = &*h.parent;
        let mut h_comp = vec![usize::MAX; g.num_objects()];
        for (i, c) in h.components().iter().enumerate() {
            for &a in c {
                h_comp[a] = i;
            }
        }
        let loops = |s: &Subgroupoid| {
            let mut v = vec![0; g.num_objects()];
            for &a in &s.objects {
                v[a] = s.hom(a, a).count();
            }
            v
        };
        let (h_loops, k_loops) = (loops(h), loops(k));
        let mut k_hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &x in &k.arrows {
            k_hom.entry((g.src(x), g.tgt(x))).or_default().push(x);
        }
        let mut order = k.objects.clone();
        order.sort_by_key(|&b| (k_loops[b], b));
        Search {
            g,
            h,
            k,
            order,
            h_comp,
            h_loops,
            k_loops,
            k_hom,
            u: vec![usize::MAX; g.num_objects()],
            gb: vec![usize::MAX; g.num_objects()],
            nodes: 0,
            cap,
        }
    }

    fn run(mut self) -> Result<Option<ConjugacyWitness>, SubconjError> {
        if self.k.objects.is_empty() {
            return Ok(self.h.objects.is_empty().then(|| ConjugacyWitness {
                u: BTreeMap::new(),
                g: BTreeMap::new(),
            }));
        }
        if self.assign(0)? {
            let u = self.k.objects.iter().map(|&b| (b, self.u[b])).collect();
            let g = self.k.objects.iter().map(|&b| (b, self.gb[b])).collect();
            Ok(Some(ConjugacyWitness { u, g }))
        } else {
            Ok(None)
        }
    }

    /// `g_{b₂}⁻¹ K(b₁, b₂) g_{b₁} = H(u_{b₁}, u_{b₂})` for assigned `b₁, b₂`.
    fn pair_ok(&self, b1: usize, b2: usize) -> bool {
        let (u1, u2) = (self.u[b1], self.u[b2]);
        let empty = Vec::new();
        let ks = self.k_hom.get(&(b1, b2)).unwrap_or(&empty);
        let h_count = if self.h_comp[u1] == self.h_comp[u2] {
            self.h_loops[u1]
        } else {
            0
        };
        if ks.len() != h_count {
            return false;
        }
        let inv2 = self.g.inverse(self.gb[b2]);
        ks.iter()
            .all(|&x| self.h.has_arrow[self.g.mul(self.g.mul(inv2, x), self.gb[b1])])
    }

    fn assign(&mut self, depth: usize) -> Result<bool, SubconjError> {
        if depth == self.order.len() {
            // every component of H must contain some u_z
            let mut hit = vec![false; self.h.components().len()];
            for &b in &self.k.objects {
                hit[self.h_comp[self.u[b]]] = true;
            }
            return Ok(hit.into_iter().all(|x| x));
        }
        let b = self.order[depth];
        for ui in 0..self.h.objects.len() {
            let u = self.h.objects[ui];
            if self.h_loops[u] != self.k_loops[b] || !self.g.connected(u, b) {
                continue;
            }
            let candidates: Vec<usize> = self.g.hom(u, b).collect();
            for gb in candidates {
                self.nodes += 1;
                if self.nodes > self.cap {
                    return Err(SubconjError::SearchBudgetExceeded(self.cap));
                }
                self.u[b] = u;
                self.gb[b] = gb;
                let consistent = self.order[..=depth]
                    .iter()
                    .all(|&c| self.pair_ok(c, b) && self.pair_ok(b, c));
                if consistent && self.assign(depth + 1)? {
                    return Ok(true);
                }
            }
        }
        self.u[b] = usize::MAX;
        self.gb[b] = usize::MAX;
        Ok(false)
    }
}
