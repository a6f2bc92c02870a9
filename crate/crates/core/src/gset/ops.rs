use std::sync::Arc;

use super::{same_groupoid, EquivariantMap, GSetError, RightGSet};
use crate::groupoid::GroupoidMorphism;

impl RightGSet {
    /// `X ⊎ Y`; elements of `X` come first, labels are prefixed with `0.` and `1.`.
    pub fn disjoint_union(&self, other: &RightGSet) -> Result<RightGSet, GSetError> {
        RightGSet::disjoint_union_all(std::slice::from_ref(self).iter().chain([other]))
    }

    /// Disjoint union of any number of sets over one groupoid; the `i`-th summand gets prefix `i.`.
    pub fn disjoint_union_all<'a>(
        parts: impl IntoIterator<Item = &'a RightGSet>,
    ) -> Result<RightGSet, GSetError> {
        let parts: Vec<&RightGSet> = parts.into_iter().collect();
        let first = parts.first().expect("at least one summand");
        let groupoid = Arc::clone(first.groupoid());
        if parts
            .iter()
            .any(|p| !same_groupoid(&groupoid, p.groupoid()))
        {
            return Err(GSetError::GroupoidMismatch);
        }
        let mut labels = Vec::new();
        let mut sigma = Vec::new();
        let mut owner = Vec::new();
        let mut offsets = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            offsets.push(sigma.len());
            labels.extend(p.labels().iter().map(|l| format!("{i}.{l}")));
            sigma.extend_from_slice(p.structure_map());
            owner.extend(std::iter::repeat(i).take(p.len()));
        }
        Ok(RightGSet::new_unchecked(groupoid, labels, sigma, |x, g| {
            let i = owner[x];
            parts[i].mul(x - offsets[i], g) + offsets[i]
        })
        .expect("union of G-sets"))
    }

    /// `X ×_{G₀} Y = {(x, y) : ς(x) = ϑ(y)}` with the diagonal action, ordered lexicographically.
    pub fn fibered_product(&self, other: &RightGSet) -> Result<RightGSet, GSetError> {
        if !same_groupoid(self.groupoid(), other.groupoid()) {
            return Err(GSetError::GroupoidMismatch);
        }
        let (pairs, index) = fibered_pairs(self, other);
        let labels = pairs
            .iter()
            .map(|&(x, y)| format!("({},{})", self.label(x), other.label(y)))
            .collect();
        let sigma = pairs.iter().map(|&(x, _)| self.sigma(x)).collect();
        Ok(
            RightGSet::new_unchecked(Arc::clone(self.groupoid()), labels, sigma, |i, g| {
                let (x, y) = pairs[i];
                index(self.mul(x, g), other.mul(y, g))
            })
            .expect("fibered product of G-sets"),
        )
    }

    /// The induced `H`-set `φ*(X) = {(x, a) : ς(x) = φ₀(a)}` with `(x, a)·h = (x·φ₁(h), s(h))`.
    pub fn induction(&self, phi: &GroupoidMorphism) -> Result<RightGSet, GSetError> {
        if !same_groupoid(self.groupoid(), phi.target()) {
            return Err(GSetError::GroupoidMismatch);
        }
        Ok(induction_with_pairs(self, phi).0)
    }

    /// Restriction to the component through the inclusion `C -> G`; same as `induction`.
    pub fn restrict(&self, inclusion: &GroupoidMorphism) -> Result<RightGSet, GSetError> {
        self.induction(inclusion)
    }

    /// Extension of a set over a vertex group to its connected component.
    ///
    /// `vertex` is the inclusion of a one-object groupoid at `a` into `G`. The result is
    /// `Y × C₀` over the component `C` of `a`, with `(y, b)·g = (y·(c_b g c_d⁻¹), d)` for `g: d -> b`,
    /// where `c_b` is the first arrow from `b` to `a` (and `c_a` the identity).
    pub fn extend_from_vertex(&self, vertex: &GroupoidMorphism) -> Result<RightGSet, GSetError> {
        if !same_groupoid(self.groupoid(), vertex.source()) || vertex.source().num_objects() != 1 {
            return Err(GSetError::GroupoidMismatch);
        }
        let g = Arc::clone(vertex.target());
        let v = vertex.source();
        let a = vertex.on_object(0);
        let comp = g.connected_components()[g.component_of(a)].clone();
        let connector = |b: usize| {
            if b == a {
                g.identity(a)
            } else {
                g.some_arrow(b, a).expect("component")
            }
        };
        let mut local = vec![usize::MAX; g.num_objects()];
        for (i, &b) in comp.iter().enumerate() {
            local[b] = i;
        }
        // loop at a in G -> arrow of the vertex groupoid
        let mut back = vec![usize::MAX; g.num_arrows()];
        for l in v.arrows() {
            back[vertex.on_arrow(l)] = l;
        }
        let k = comp.len();
        let labels = (0..self.len() * k)
            .map(|i| format!("({},{})", self.label(i / k), g.object_label(comp[i % k])))
            .collect();
        let sigma = (0..self.len() * k).map(|i| comp[i % k]).collect();
        let conn: Vec<usize> = comp.iter().map(|&b| connector(b)).collect();
        let gg = Arc::clone(&g);
        RightGSet::new_unchecked(g, labels, sigma, |i, arrow| {
            let (y, b) = (i / k, comp[i % k]);
            let d = gg.src(arrow);
            debug_assert_eq!(gg.tgt(arrow), b);
            let l = gg.mul(gg.mul(conn[local[b]], arrow), gg.inverse(conn[local[d]]));
            self.mul(y, back[l]) * k + local[d]
        })
    }
}

pub(crate) fn fibered_pairs<'a>(
    x: &'a RightGSet,
    y: &'a RightGSet,
) -> (Vec<(usize, usize)>, impl Fn(usize, usize) -> usize + 'a) {
    let mut pairs = Vec::new();
    // index of (x, y) is start[x] + position of y in its fibre
    let mut start = vec![usize::MAX; x.len()];
    let mut pos_in_fibre = vec![0; y.len()];
    for a in y.groupoid().objects() {
        for (i, &e) in y.fibre(a).iter().enumerate() {
            pos_in_fibre[e] = i;
        }
    }
    for e in x.elements() {
        start[e] = pairs.len();
        pairs.extend(y.fibre(x.sigma(e)).iter().map(|&f| (e, f)));
    }
    (pairs, move |e, f| start[e] + pos_in_fibre[f])
}

pub(crate) fn induction_with_pairs(
    x: &RightGSet,
    phi: &GroupoidMorphism,
) -> (RightGSet, Vec<(usize, usize)>) {
    let h = Arc::clone(phi.source());
    let mut pairs = Vec::new();
    for e in x.elements() {
        for a in h.objects() {
            if phi.on_object(a) == x.sigma(e) {
                pairs.push((e, a));
            }
        }
    }
    let labels = pairs
        .iter()
        .map(|&(e, a)| format!("({},{})", x.label(e), h.object_label(a)))
        .collect();
    let sigma = pairs.iter().map(|&(_, a)| a).collect();
    let hh = Arc::clone(&h);
    let set = RightGSet::new_unchecked(h, labels, sigma, |i, arrow| {
        let (e, _) = pairs[i];
        let target = (x.mul(e, phi.on_arrow(arrow)), hh.src(arrow));
        pairs.binary_search(&target).expect("induced pair")
    })
    .expect("induced G-set");
    (set, pairs)
}

/// A natural transformation `α: φ -> ψ` between morphisms `H -> G`.
///
/// `components[a]` is an arrow `φ₀(a) -> ψ₀(a)` with `α(t h)·φ(h) = ψ(h)·α(s h)` for every arrow `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalTransformation {
    phi: GroupoidMorphism,
    psi: GroupoidMorphism,
    components: Vec<usize>,
}

impl NaturalTransformation {
    pub fn new(
        phi: GroupoidMorphism,
        psi: GroupoidMorphism,
        components: Vec<usize>,
    ) -> Result<Self, GSetError> {
        if !same_groupoid(phi.source(), psi.source()) || !same_groupoid(phi.target(), psi.target())
        {
            return Err(GSetError::GroupoidMismatch);
        }
        let (h, g) = (phi.source(), phi.target());
        if components.len() != h.num_objects() {
            return Err(GSetError::NotNatural("missing components".into()));
        }
        for a in h.objects() {
            let c = components[a];
            if c >= g.num_arrows() || g.src(c) != phi.on_object(a) || g.tgt(c) != psi.on_object(a) {
                return Err(GSetError::NotNatural(format!(
                    "identity of {}",
                    h.object_label(a)
                )));
            }
        }
        for arrow in h.arrows() {
            let lhs = g.mul(components[h.tgt(arrow)], phi.on_arrow(arrow));
            let rhs = g.mul(psi.on_arrow(arrow), components[h.src(arrow)]);
            if lhs != rhs {
                return Err(GSetError::NotNatural(h.arrow_label(arrow).into()));
            }
        }
        Ok(NaturalTransformation {
            phi,
            psi,
            components,
        })
    }

    /// The identity transformation of `φ`.
    pub fn identity(phi: GroupoidMorphism) -> Self {
        let g = Arc::clone(phi.target());
        let components = phi
            .source()
            .objects()
            .map(|a| g.identity(phi.on_object(a)))
            .collect();
        NaturalTransformation {
            psi: phi.clone(),
            phi,
            components,
        }
    }

    pub fn inverse(&self) -> Self {
        let g = self.phi.target();
        NaturalTransformation {
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            components: self.components.iter().map(|&c| g.inverse(c)).collect(),
        }
    }

    /// Vertical composite `βα: φ -> χ` for `α = self: φ -> ψ` and `β: ψ -> χ`.
    pub fn then(&self, beta: &NaturalTransformation) -> Result<Self, GSetError> {
        if self.psi != beta.phi {
            return Err(GSetError::NotNatural(
                "transformations are not composable".into(),
            ));
        }
        let g = self.phi.target();
        Ok(NaturalTransformation {
            phi: self.phi.clone(),
            psi: beta.psi.clone(),
            components: self
                .components
                .iter()
                .zip(&beta.components)
                .map(|(&a, &b)| g.mul(b, a))
                .collect(),
        })
    }

    pub fn source(&self) -> &GroupoidMorphism {
        &self.phi
    }

    pub fn target(&self) -> &GroupoidMorphism {
        &self.psi
    }

    pub fn component(&self, a: usize) -> usize {
        self.components[a]
    }

    /// `α*: φ*(X) -> ψ*(X)`, `(x, a) ↦ (x·α(a)⁻¹, a)`.
    pub fn induced_map(&self, x: &RightGSet) -> Result<EquivariantMap, GSetError> {
        if !same_groupoid(x.groupoid(), self.phi.target()) {
            return Err(GSetError::GroupoidMismatch);
        }
        let g = self.phi.target();
        let (dom, dom_pairs) = induction_with_pairs(x, &self.phi);
        let (cod, cod_pairs) = induction_with_pairs(x, &self.psi);
        let map = dom_pairs
            .iter()
            .map(|&(e, a)| {
                let target = (x.mul(e, g.inverse(self.components[a])), a);
                cod_pairs.binary_search(&target).expect("image pair")
            })
            .collect();
        EquivariantMap::new(Arc::new(dom), Arc::new(cod), map)
    }
}
