use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FiniteGroupoid, GroupoidError};
use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("arrow `{arrow}` is sent to `{image}`, whose endpoints do not match")]
    EndpointMismatch { arrow: String, image: String },
    #[error("composite of `{left}` and `{right}` is not preserved")]
    CompositionNotPreserved { left: String, right: String },
    #[error("identity of `{object}` is not sent to an identity")]
    IdentityNotPreserved { object: String },
    #[error("mapping is incomplete: {0}")]
    Incomplete(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl MorphismError {
    pub fn kind(&self) -> &'static str {
        match self {
            MorphismError::EndpointMismatch { .. } => "EndpointMismatch",
            MorphismError::CompositionNotPreserved { .. } => "CompositionNotPreserved",
            MorphismError::IdentityNotPreserved { .. } => "IdentityNotPreserved",
            MorphismError::Incomplete(_) => "IncompleteMorphism",
            MorphismError::Groupoid(e) => e.kind(),
        }
    }
}

/// JSON form of a morphism: label maps for objects and arrows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawMorphism {
    pub phi0: BTreeMap<String, Label>,
    pub phi1: BTreeMap<String, Label>,
}

/// A functor `φ = (φ₀, φ₁)` between finite groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidMorphism {
    source: Arc<FiniteGroupoid>,
    target: Arc<FiniteGroupoid>,
    phi0: Vec<usize>,
    phi1: Vec<usize>,
}

impl GroupoidMorphism {
    /// Checks the functor laws on the given maps.
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        phi0: Vec<usize>,
        phi1: Vec<usize>,
    ) -> Result<Self, MorphismError> {
        if phi0.len() != source.num_objects() || phi1.len() != source.num_arrows() {
            return Err(MorphismError::Incomplete(
                "maps must cover every object and arrow".into(),
            ));
        }
        if let Some(&a) = phi0.iter().find(|&&a| a >= target.num_objects()) {
            return Err(GroupoidError::UnknownObject(a.to_string()).into());
        }
        if let Some(&g) = phi1.iter().find(|&&g| g >= target.num_arrows()) {
            return Err(GroupoidError::UnknownArrow(g.to_string()).into());
        }
        for g in source.arrows() {
            let img = phi1[g];
            if target.src(img) != phi0[source.src(g)] || target.tgt(img) != phi0[source.tgt(g)] {
                return Err(MorphismError::EndpointMismatch {
                    arrow: source.arrow_label(g).into(),
                    image: target.arrow_label(img).into(),
                });
            }
        }
        for a in source.objects() {
            if phi1[source.identity(a)] != target.identity(phi0[a]) {
                return Err(MorphismError::IdentityNotPreserved {
                    object: source.object_label(a).into(),
                });
            }
        }
        for g in source.arrows() {
            for &h in source.arrows_into(source.src(g)) {
                if phi1[source.mul(g, h)] != target.mul(phi1[g], phi1[h]) {
                    return Err(MorphismError::CompositionNotPreserved {
                        left: source.arrow_label(g).into(),
                        right: source.arrow_label(h).into(),
                    });
                }
            }
        }
        Ok(GroupoidMorphism {
            source,
            target,
            phi0,
            phi1,
        })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        phi0: Vec<usize>,
        phi1: Vec<usize>,
    ) -> Self {
        GroupoidMorphism {
            source,
            target,
            phi0,
            phi1,
        }
    }

    /// Parses label maps against the two groupoids and validates.
    pub fn from_raw(
        raw: &RawMorphism,
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
    ) -> Result<Self, MorphismError> {
        let mut phi0 = Vec::with_capacity(source.num_objects());
        for a in source.objects() {
            let l = source.object_label(a);
            let img = raw
                .phi0
                .get(l)
                .ok_or_else(|| MorphismError::Incomplete(format!("object `{l}` has no image")))?;
            phi0.push(target.object_by_label(img.as_str())?);
        }
        let mut phi1 = Vec::with_capacity(source.num_arrows());
        for g in source.arrows() {
            let l = source.arrow_label(g);
            let img = raw
                .phi1
                .get(l)
                .ok_or_else(|| MorphismError::Incomplete(format!("arrow `{l}` has no image")))?;
            phi1.push(target.arrow_by_label(img.as_str())?);
        }
        GroupoidMorphism::new(source, target, phi0, phi1)
    }

    pub fn to_raw(&self) -> RawMorphism {
        RawMorphism {
            phi0: self
                .source
                .objects()
                .map(|a| {
                    (
                        self.source.object_label(a).to_string(),
                        Label::from(self.target.object_label(self.phi0[a])),
                    )
                })
                .collect(),
            phi1: self
                .source
                .arrows()
                .map(|g| {
                    (
                        self.source.arrow_label(g).to_string(),
                        Label::from(self.target.arrow_label(self.phi1[g])),
                    )
                })
                .collect(),
        }
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let phi0 = g.objects().collect();
        let phi1 = g.arrows().collect();
        GroupoidMorphism {
            source: Arc::clone(&g),
            target: g,
            phi0,
            phi1,
        }
    }

    /// The composite `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GroupoidMorphism) -> Result<Self, MorphismError> {
        if *self.target != *other.source {
            return Err(MorphismError::Incomplete(
                "target of the first morphism is not the source of the second".into(),
            ));
        }
        Ok(GroupoidMorphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            phi0: self.phi0.iter().map(|&a| other.phi0[a]).collect(),
            phi1: self.phi1.iter().map(|&g| other.phi1[g]).collect(),
        })
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        &self.target
    }

    #[inline]
    pub fn on_object(&self, a: usize) -> usize {
        self.phi0[a]
    }

    #[inline]
    pub fn on_arrow(&self, g: usize) -> usize {
        self.phi1[g]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.phi0
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.phi1
    }
}
