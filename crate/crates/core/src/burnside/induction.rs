use std::sync::Arc;

use super::{BurnsideElement, BurnsideError};
use crate::groupoid::GroupoidMorphism;
use crate::gset::{decompose, same_groupoid};
use crate::subconj::MarkTable;

/// The ring map `B(G) -> B(H)` induced by `φ: H -> G`.
///
/// Column `k` holds the decomposition of `φ*(G/K)` over the table of `H`.
#[derive(Debug, Clone)]
pub struct InductionHom {
    from: Arc<MarkTable>,
    to: Arc<MarkTable>,
    columns: Vec<Vec<i64>>,
}

/// Builds `B(φ)` basiswise. `from` is the table of `G = φ.target()`, `to` that of `H = φ.source()`.
pub fn induction_hom(
    phi: &GroupoidMorphism,
    from: &Arc<MarkTable>,
    to: &Arc<MarkTable>,
) -> Result<InductionHom, BurnsideError> {
    if !same_groupoid(from.groupoid(), phi.target()) || !same_groupoid(to.groupoid(), phi.source())
    {
        return Err(BurnsideError::TableMismatch);
    }
    let columns = (0..from.len())
        .map(|k| {
            let induced = from.coset(k).gset.induction(phi)?;
            Ok(decompose(&induced, to)?
                .coefficients
                .iter()
                .map(|&c| c as i64)
                .collect())
        })
        .collect::<Result<_, BurnsideError>>()?;
    Ok(InductionHom {
        from: Arc::clone(from),
        to: Arc::clone(to),
        columns,
    })
}

impl InductionHom {
    pub fn domain(&self) -> &Arc<MarkTable> {
        &self.from
    }

    pub fn codomain(&self) -> &Arc<MarkTable> {
        &self.to
    }

    /// Image coefficients of the basis element `[G/K]`.
    pub fn column(&self, k: usize) -> &[i64] {
        &self.columns[k]
    }

    pub fn apply(&self, x: &BurnsideElement) -> Result<BurnsideElement, BurnsideError> {
        if *x.table != *self.from {
            return Err(BurnsideError::TableMismatch);
        }
        let mut coeffs = vec![0i64; self.to.len()];
        for (col, &a) in self.columns.iter().zip(&x.coeffs) {
            for (c, &v) in coeffs.iter_mut().zip(col) {
                *c += a * v;
            }
        }
        Ok(BurnsideElement {
            table: Arc::clone(&self.to),
            coeffs,
        })
    }

    /// `other ∘ self`, for `self: B(G) -> B(H)` and `other: B(H) -> B(K)`.
    pub fn then(&self, other: &InductionHom) -> Result<InductionHom, BurnsideError> {
        if *self.to != *other.from {
            return Err(BurnsideError::TableMismatch);
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let x = BurnsideElement {
                    table: Arc::clone(&self.to),
                    coeffs: col.clone(),
                };
                other.apply(&x).map(|y| y.coeffs)
            })
            .collect::<Result<_, _>>()?;
        Ok(InductionHom {
            from: Arc::clone(&self.from),
            to: Arc::clone(&other.to),
            columns,
        })
    }

    /// Column matrix, `matrix()[k]` being the image of the `k`-th basis element.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.columns
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::BurnsideRing;
    use crate::group::GroupTable;
    use crate::groupoid::FiniteGroupoid;
    use crate::subconj::TableOptions;

    fn table(g: &Arc<FiniteGroupoid>) -> Arc<MarkTable> {
        Arc::new(MarkTable::new(g, &TableOptions::default()).unwrap())
    }

    #[test]
    fn identity_induces_identity() {
        let g = Arc::new(FiniteGroupoid::trg(&GroupTable::symmetric(3), 2));
        let t = table(&g);
        let f = induction_hom(&GroupoidMorphism::identity(Arc::clone(&g)), &t, &t).unwrap();
        for k in 0..t.len() {
            let mut e = vec![0; t.len()];
            e[k] = 1;
            assert_eq!(f.column(k), e.as_slice());
        }
    }

    #[test]
    fn component_inclusion_projects() {
        let a = FiniteGroupoid::from_group(&GroupTable::cyclic(2));
        let b = FiniteGroupoid::from_group(&GroupTable::cyclic(3));
        let g = Arc::new(FiniteGroupoid::coproduct(&[a, b]));
        let t = table(&g);
        let incl = &g.component_inclusions()[1];
        let s = table(incl.source());
        let f = induction_hom(incl, &t, &s).unwrap();
        assert_eq!(
            f.matrix(),
            &[vec![0, 0], vec![0, 0], vec![1, 0], vec![0, 1]]
        );
    }

    #[test]
    fn unit_and_products_are_preserved() {
        let g = Arc::new(FiniteGroupoid::from_group(&GroupTable::symmetric(3)));
        // the rotations C3 inside S3
        let sub = g
            .hom(0, 0)
            .filter(|&x| GroupTable::symmetric(3).element_order(x) != 2)
            .collect::<Vec<_>>();
        let incl = g.restricted(&[0], &sub).unwrap();
        let h = Arc::clone(incl.source());
        let rg = BurnsideRing::from_table(table(&g)).unwrap();
        let rh = BurnsideRing::from_table(table(&h)).unwrap();
        let f = induction_hom(&incl, rg.table(), rh.table()).unwrap();
        assert_eq!(f.apply(&rg.one()).unwrap(), rh.one());
        for i in 0..rg.rank() {
            for j in 0..rg.rank() {
                let (x, y) = (rg.basis(i), rg.basis(j));
                let lhs = f.apply(&rg.mul(&x, &y).unwrap()).unwrap();
                let rhs = rh
                    .mul(&f.apply(&x).unwrap(), &f.apply(&y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
