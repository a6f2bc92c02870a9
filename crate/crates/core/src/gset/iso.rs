use std::sync::Arc;

use serde::Serialize;

use super::{same_groupoid, GSetError, RightGSet};
use crate::subconj::{MarkTable, OneObjectSubgroupoid};

/// A verified equivariant map between two `G`-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantMap {
    dom: Arc<RightGSet>,
    cod: Arc<RightGSet>,
    map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new(
        dom: Arc<RightGSet>,
        cod: Arc<RightGSet>,
        map: Vec<usize>,
    ) -> Result<Self, GSetError> {
        dom.check_equivariant(&cod, &map)?;
        Ok(EquivariantMap { dom, cod, map })
    }

    pub fn identity(x: Arc<RightGSet>) -> Self {
        let map = x.elements().collect();
        EquivariantMap {
            dom: Arc::clone(&x),
            cod: x,
            map,
        }
    }

    pub fn dom(&self) -> &Arc<RightGSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<RightGSet> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom.len() != self.cod.len() {
            return false;
        }
        let mut seen = vec![false; self.cod.len()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(EquivariantMap {
            dom: Arc::clone(&self.cod),
            cod: Arc::clone(&self.dom),
            map: inv,
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &EquivariantMap) -> Result<Self, GSetError> {
        if *self.cod != *other.dom {
            return Err(GSetError::NotEquivariant("maps are not composable".into()));
        }
        Ok(EquivariantMap {
            dom: Arc::clone(&self.dom),
            cod: Arc::clone(&other.cod),
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        })
    }
}

/// Orbit representatives and the multiplicity `a_X(K)` of each basis class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GSetDecomposition {
    /// smallest element of each orbit, in orbit order
    pub orbit_representatives: Vec<usize>,
    /// class index of each orbit's stabilizer
    pub orbit_classes: Vec<usize>,
    /// multiplicity per basis index of the table
    pub coefficients: Vec<u64>,
}

impl GSetDecomposition {
    /// `Σ_K a_X(K)·|G/K|`, which equals the size of the decomposed set.
    pub fn reconstructed_size(&self, table: &MarkTable) -> usize {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, &c)| c as usize * table.coset(k).gset.len())
            .sum()
    }
}

/// Splits `x` into orbits and classifies each stabilizer against the table.
pub fn decompose(x: &RightGSet, table: &MarkTable) -> Result<GSetDecomposition, GSetError> {
    if !same_groupoid(x.groupoid(), table.groupoid()) {
        return Err(GSetError::GroupoidMismatch);
    }
    let mut coefficients = vec![0u64; table.len()];
    let mut orbit_representatives = Vec::new();
    let mut orbit_classes = Vec::new();
    for orbit in x.orbits() {
        let rep = orbit[0];
        let (k, _) = table.classify(&x.stabilizer(rep)?);
        coefficients[k] += 1;
        orbit_representatives.push(rep);
        orbit_classes.push(k);
    }
    Ok(GSetDecomposition {
        orbit_representatives,
        orbit_classes,
        coefficients,
    })
}

/// A basis subgroupoid with different fixed-point counts on the two sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    pub index: usize,
    pub subgroup: OneObjectSubgroupoid,
    pub left_count: usize,
    pub right_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(EquivariantMap),
    NotIsomorphic(IsoCertificate),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// For each orbit: a point `y` whose stabilizer is exactly the basis subgroup `K`, so that
/// `K[(b, g)] ↦ y·g` identifies `G/K` with the orbit.
fn normalized_points(x: &RightGSet, table: &MarkTable, dec: &GSetDecomposition) -> Vec<usize> {
    let g = x.groupoid();
    dec.orbit_representatives
        .iter()
        .map(|&rep| {
            let (_, d) = table.classify(&x.stabilizer(rep).expect("element"));
            // d: ς(rep) -> b conjugates the stabilizer onto K, so rep·d⁻¹ is fixed by K
            x.mul(rep, g.inverse(d))
        })
        .collect()
}

/// Decides `x ≅ y`, with an explicit equivariant bijection or a separating subgroupoid.
pub fn isomorphic(
    x: &RightGSet,
    y: &RightGSet,
    table: &MarkTable,
) -> Result<IsoOutcome, GSetError> {
    if !same_groupoid(x.groupoid(), y.groupoid()) {
        return Err(GSetError::GroupoidMismatch);
    }
    let dx = decompose(x, table)?;
    let dy = decompose(y, table)?;
    if dx.coefficients != dy.coefficients {
        for (k, rep) in table.reps().iter().enumerate() {
            let (l, r) = (x.count_fixed_points(rep), y.count_fixed_points(rep));
            if l != r {
                return Ok(IsoOutcome::NotIsomorphic(IsoCertificate {
                    index: k,
                    subgroup: rep.clone(),
                    left_count: l,
                    right_count: r,
                }));
            }
        }
        unreachable!(
            "the mark matrix is nonsingular, so unequal decompositions have unequal fixed points"
        );
    }
    let g = x.groupoid();
    let px = normalized_points(x, table, &dx);
    let py = normalized_points(y, table, &dy);
    // pair up orbits of equal class in order
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); table.len()];
    for (i, &k) in dy.orbit_classes.iter().enumerate().rev() {
        pending[k].push(i);
    }
    let mut map = vec![usize::MAX; x.len()];
    for (i, &k) in dx.orbit_classes.iter().enumerate() {
        let j = pending[k].pop().expect("equal multiplicities");
        let b = table.reps()[k].base();
        for &arrow in g.arrows_into(b) {
            map[x.mul(px[i], arrow)] = y.mul(py[j], arrow);
        }
    }
    let f = EquivariantMap::new(Arc::new(x.clone()), Arc::new(y.clone()), map)?;
    debug_assert!(f.is_bijective());
    Ok(IsoOutcome::Isomorphic(f))
}
