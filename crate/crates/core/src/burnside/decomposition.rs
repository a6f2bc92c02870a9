use std::sync::Arc;

use super::{BurnsideError, BurnsideRing};
use crate::groupoid::GroupoidMorphism;
use crate::subconj::{MarkTable, OneObjectSubgroupoid};

/// The group Burnside ring `B(G^a)` of one component, with the basis bijection into `B(G)`.
#[derive(Debug, Clone)]
pub struct ComponentRing {
    /// representative object of the component, its smallest id
    pub base: usize,
    /// inclusion of the isotropy group at `base` as a one-object groupoid
    pub vertex: GroupoidMorphism,
    pub ring: BurnsideRing,
    /// `global[j]` is the basis index in `B(G)` matching the `j`-th basis element of `ring`
    pub global: Vec<usize>,
}

/// `B(G) ≅ Π_a B(G^a)`, with one factor per connected component.
#[derive(Debug, Clone)]
pub struct ProductDecomposition {
    pub components: Vec<ComponentRing>,
}

impl ProductDecomposition {
    /// Splits coefficients of `B(G)` into the factor rings.
    pub fn split(&self, coeffs: &[i64]) -> Vec<Vec<i64>> {
        self.components
            .iter()
            .map(|c| c.global.iter().map(|&k| coeffs[k]).collect())
            .collect()
    }

    /// Inverse of [`split`](Self::split).
    pub fn assemble(&self, parts: &[Vec<i64>], rank: usize) -> Vec<i64> {
        let mut out = vec![0; rank];
        for (c, part) in self.components.iter().zip(parts) {
            for (&k, &v) in c.global.iter().zip(part) {
                out[k] = v;
            }
        }
        out
    }
}

/// Computes the factor rings and checks that every structure constant of `ring` is the
/// block-diagonal assembly of the factors' constants.
pub fn product_decomposition(ring: &BurnsideRing) -> Result<ProductDecomposition, BurnsideError> {
    let table = ring.table();
    let g = ring.groupoid();
    let mut components = Vec::new();
    for (i, &base) in table.bases().iter().enumerate() {
        let loops: Vec<usize> = g.hom(base, base).collect();
        let vertex = g
            .restricted(&[base], &loops)
            .map_err(|e| BurnsideError::DecompositionMismatch(e.to_string()))?;
        let v = Arc::clone(vertex.source());
        let local = Arc::new(MarkTable::new(&v, table.options())?);
        let block = table.blocks()[i].clone();
        let mut global = vec![usize::MAX; local.len()];
        for k in block.clone() {
            let rep = &table.reps()[k];
            if rep.base() != base {
                return Err(BurnsideError::DecompositionMismatch(format!(
                    "representative {k} is off the base"
                )));
            }
            // loops[j] is the j-th arrow of the vertex groupoid, and both lists are sorted
            let arrows = rep
                .arrows()
                .iter()
                .map(|x| loops.binary_search(x).expect("loop"))
                .collect();
            let s = OneObjectSubgroupoid::new(Arc::clone(&v), 0, arrows)?;
            let (j, _) = local.classify(&s);
            if global[j] != usize::MAX {
                return Err(BurnsideError::DecompositionMismatch(format!(
                    "two classes map to local class {j}"
                )));
            }
            global[j] = k;
        }
        if global.contains(&usize::MAX) || block.len() != local.len() {
            return Err(BurnsideError::DecompositionMismatch(format!(
                "component {i} has unmatched classes"
            )));
        }
        components.push(ComponentRing {
            base,
            vertex,
            ring: BurnsideRing::from_table(local)?,
            global,
        });
    }
    let d = ProductDecomposition { components };
    verify(ring, &d)?;
    Ok(d)
}

fn verify(ring: &BurnsideRing, d: &ProductDecomposition) -> Result<(), BurnsideError> {
    let n = ring.rank();
    let mut owner = vec![(usize::MAX, usize::MAX); n];
    for (i, c) in d.components.iter().enumerate() {
        for (j, &k) in c.global.iter().enumerate() {
            owner[k] = (i, j);
        }
    }
    let c = ring.constants();
    for h in 0..n {
        for k in 0..n {
            for l in 0..n {
                let (ih, jh) = owner[h];
                let (ik, jk) = owner[k];
                let (il, jl) = owner[l];
                let expect = if ih == ik && ik == il {
                    d.components[ih].ring.constants().get(jh, jk, jl)
                } else {
                    0
                };
                if c.get(h, k, l) != expect {
                    return Err(BurnsideError::DecompositionMismatch(format!(
                        "constant ({h}, {k}, {l}) is {} but the factor gives {expect}",
                        c.get(h, k, l)
                    )));
                }
            }
        }
    }
    let unit: Vec<Vec<i64>> = d.components.iter().map(|c| c.ring.one().coeffs).collect();
    if d.assemble(&unit, n) != ring.one().coeffs {
        return Err(BurnsideError::DecompositionMismatch("units differ".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::groupoid::FiniteGroupoid;
    use crate::subconj::TableOptions;

    fn ring(g: FiniteGroupoid) -> BurnsideRing {
        BurnsideRing::new(&Arc::new(g), &TableOptions::default()).unwrap()
    }

    #[test]
    fn trivial_isotropy_gives_integers() {
        let g = FiniteGroupoid::generated_equivalence(5, &[(0, 1), (2, 3)]).unwrap();
        let r = ring(g);
        let d = product_decomposition(&r).unwrap();
        assert_eq!(d.components.len(), 3);
        for c in &d.components {
            assert_eq!(c.ring.rank(), 1);
            assert_eq!(c.ring.constants().get(0, 0, 0), 1);
        }
    }

    #[test]
    fn mixed_components() {
        let g = FiniteGroupoid::coproduct(&[
            FiniteGroupoid::pair_groupoid(2),
            FiniteGroupoid::trg(&GroupTable::cyclic(3), 2),
            FiniteGroupoid::trg(&GroupTable::symmetric(3), 3),
        ]);
        let r = ring(g);
        let d = product_decomposition(&r).unwrap();
        assert_eq!(
            d.components
                .iter()
                .map(|c| c.ring.rank())
                .collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        let x: Vec<i64> = (0..r.rank() as i64).collect();
        assert_eq!(d.assemble(&d.split(&x), r.rank()), x);
    }
}
