use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{FiniteGroupoid, GroupoidError, GroupoidTables};
use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub id: Label,
    pub src: Label,
    pub tgt: Label,
}

/// The JSON description of a groupoid.
///
/// ```json
/// { "objects": [1, 2],
///   "arrows": [{"id": "a", "src": 1, "tgt": 2}, ...],
///   "identity": {"1": "i1", ...},
///   "inverse": {"a": "b", ...},
///   "compose": [["b", "a", "i1"], ...] }
/// ```
/// An entry `[g, h, gh]` is the composite `gh` of `h` followed by `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct RawGroupoid {
    pub objects: Vec<Label>,
    pub arrows: Vec<RawArrow>,
    #[serde(default)]
    pub identity: BTreeMap<String, Label>,
    #[serde(default)]
    pub inverse: BTreeMap<String, Label>,
    #[serde(default)]
    pub compose: Vec<[Label; 3]>,
}

impl FiniteGroupoid {
    /// Validates a raw description, reporting the first violated axiom.
    pub fn from_raw(raw: &RawGroupoid) -> Result<Self, GroupoidError> {
        let mut objects: HashMap<&str, usize> = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if objects.insert(o.as_str(), i).is_some() {
                return Err(GroupoidError::DuplicateId {
                    kind: "object",
                    id: o.0.clone(),
                });
            }
        }
        let mut arrows: HashMap<&str, usize> = HashMap::new();
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for (i, a) in raw.arrows.iter().enumerate() {
            if arrows.insert(a.id.as_str(), i).is_some() {
                return Err(GroupoidError::DuplicateId {
                    kind: "arrow",
                    id: a.id.0.clone(),
                });
            }
            for end in [&a.src, &a.tgt] {
                if !objects.contains_key(end.as_str()) {
                    return Err(GroupoidError::DanglingArrowEndpoint {
                        arrow: a.id.0.clone(),
                        endpoint: end.0.clone(),
                    });
                }
            }
            src.push(objects[a.src.as_str()]);
            tgt.push(objects[a.tgt.as_str()]);
        }
        let arrow = |l: &Label| {
            arrows
                .get(l.as_str())
                .copied()
                .ok_or_else(|| GroupoidError::UnknownArrow(l.0.clone()))
        };

        let mut identity = vec![None; raw.objects.len()];
        for (o, a) in &raw.identity {
            let i = *objects
                .get(o.as_str())
                .ok_or_else(|| GroupoidError::UnknownObject(o.clone()))?;
            identity[i] = Some(arrow(a)?);
        }
        let mut inverse = vec![None; raw.arrows.len()];
        for (g, h) in &raw.inverse {
            let i = *arrows
                .get(g.as_str())
                .ok_or_else(|| GroupoidError::UnknownArrow(g.clone()))?;
            inverse[i] = Some(arrow(h)?);
        }
        let mut compose = HashMap::new();
        for [g, h, gh] in &raw.compose {
            let (g, h, gh) = (arrow(g)?, arrow(h)?, arrow(gh)?);
            if let Some(prev) = compose.insert((g, h), gh) {
                if prev != gh {
                    return Err(GroupoidError::CompositionDomainMismatch {
                        left: raw.arrows[g].id.0.clone(),
                        right: raw.arrows[h].id.0.clone(),
                        detail: "conflicting composites".into(),
                    });
                }
            }
        }
        FiniteGroupoid::from_tables(GroupoidTables {
            object_labels: raw.objects.iter().map(|l| l.0.clone()).collect(),
            arrow_labels: raw.arrows.iter().map(|a| a.id.0.clone()).collect(),
            src,
            tgt,
            identity,
            inverse,
            compose,
        })
    }

    /// Parses and validates the JSON description.
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let raw: RawGroupoid =
            serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        Ok(FiniteGroupoid::from_raw(&raw)?)
    }

    pub fn to_raw(&self) -> RawGroupoid {
        let ol = |a: usize| Label::from(self.object_label(a));
        let al = |g: usize| Label::from(self.arrow_label(g));
        let mut compose = Vec::new();
        for g in self.arrows() {
            for &h in self.arrows_into(self.src(g)) {
                compose.push([al(g), al(h), al(self.mul(g, h))]);
            }
        }
        RawGroupoid {
            objects: self.objects().map(ol).collect(),
            arrows: self
                .arrows()
                .map(|g| RawArrow {
                    id: al(g),
                    src: ol(self.src(g)),
                    tgt: ol(self.tgt(g)),
                })
                .collect(),
            identity: self
                .objects()
                .map(|a| (self.object_label(a).to_string(), al(self.identity(a))))
                .collect(),
            inverse: self
                .arrows()
                .map(|g| (self.arrow_label(g).to_string(), al(self.inverse(g))))
                .collect(),
            compose,
        }
    }
}

/// Failure to read a JSON description: either malformed JSON or a failed axiom.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Json(_) => "MalformedJson",
            ParseError::Groupoid(e) => e.kind(),
        }
    }
}
