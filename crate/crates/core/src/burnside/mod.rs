//! The Burnside rig and ring of a finite groupoid.
//!
//! Elements are coefficient vectors over the basis `[G/K]`, `K` running over the
//! representatives of a [`MarkTable`]. Products come from fibered products of coset
//! sets, stored as a cube of structure constants.

mod decomposition;
pub mod grothendieck;
mod induction;

use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::groupoid::FiniteGroupoid;
use crate::gset::{decompose, GSetError, RightGSet};
use crate::subconj::{MarkTable, SubconjError, TableOptions};

pub use decomposition::{product_decomposition, ComponentRing, ProductDecomposition};
pub use induction::{induction_hom, InductionHom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnsideError {
    #[error("elements belong to different tables")]
    TableMismatch,
    #[error("product decomposition does not match: {0}")]
    DecompositionMismatch(String),
    #[error(transparent)]
    Subconj(#[from] SubconjError),
    #[error(transparent)]
    GSet(#[from] GSetError),
}

impl BurnsideError {
    pub fn kind(&self) -> &'static str {
        match self {
            BurnsideError::TableMismatch => "TableMismatch",
            BurnsideError::DecompositionMismatch(_) => "DecompositionMismatch",
            BurnsideError::Subconj(e) => e.kind(),
            BurnsideError::GSet(e) => e.kind(),
        }
    }
}

/// `c[h][k][l]` with `[G/H]·[G/K] = Σ_L c[h][k][l]·[G/L]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    cube: Vec<i64>,
}

impl StructureConstants {
    /// Decomposes `G/H ×_{G₀} G/K` for every ordered pair of basis elements.
    pub fn compute(table: &MarkTable) -> Result<Self, BurnsideError> {
        let n = table.len();
        let row = |h: usize| -> Result<Vec<i64>, BurnsideError> {
            let mut out = vec![0i64; n * n];
            for k in 0..n {
                if table.block_of(h) != table.block_of(k) {
                    continue;
                }
                let p = table.coset(h).gset.fibered_product(&table.coset(k).gset)?;
                let d = decompose(&p, table)?;
                for (l, &c) in d.coefficients.iter().enumerate() {
                    out[k * n + l] = c as i64;
                }
            }
            Ok(out)
        };
        let rows: Vec<Vec<i64>> = if table.options().parallel {
            (0..n).into_par_iter().map(row).collect::<Result<_, _>>()?
        } else {
            (0..n).map(row).collect::<Result<_, _>>()?
        };
        Ok(StructureConstants {
            n,
            cube: rows.concat(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, h: usize, k: usize, l: usize) -> i64 {
        self.cube[(h * self.n + k) * self.n + l]
    }

    /// Coefficients of `[G/H]·[G/K]`.
    pub fn product(&self, h: usize, k: usize) -> &[i64] {
        let start = (h * self.n + k) * self.n;
        &self.cube[start..start + self.n]
    }

    /// Nonzero entries as `(h, k, l, c)`.
    pub fn sparse(&self) -> Vec<(usize, usize, usize, i64)> {
        let n = self.n;
        let mut out = Vec::new();
        for h in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let c = self.get(h, k, l);
                    if c != 0 {
                        out.push((h, k, l, c));
                    }
                }
            }
        }
        out
    }
}

/// The Burnside ring `B(G)` with its table of marks and structure constants.
#[derive(Debug, Clone)]
pub struct BurnsideRing {
    table: Arc<MarkTable>,
    constants: StructureConstants,
    unit: Vec<i64>,
}

/// An element of `B(G)`: integer coefficients over the basis of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    pub table: Arc<MarkTable>,
    pub coeffs: Vec<i64>,
}

/// An element of the Burnside rig `L(G)`: the class of an actual `G`-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideRigElement {
    pub table: Arc<MarkTable>,
    pub coeffs: Vec<u64>,
}

/// Machine-readable ring description.
#[derive(Debug, Clone, Serialize)]
pub struct RingExport {
    pub basis: Vec<String>,
    pub structure_constants: Vec<(usize, usize, usize, i64)>,
    pub unit: Vec<i64>,
}

impl BurnsideRing {
    pub fn new(g: &Arc<FiniteGroupoid>, options: &TableOptions) -> Result<Self, BurnsideError> {
        BurnsideRing::from_table(Arc::new(MarkTable::new(g, options)?))
    }

    pub fn from_table(table: Arc<MarkTable>) -> Result<Self, BurnsideError> {
        let constants = StructureConstants::compute(&table)?;
        let unit = decompose(&RightGSet::objects(Arc::clone(table.groupoid())), &table)?
            .coefficients
            .iter()
            .map(|&c| c as i64)
            .collect();
        Ok(BurnsideRing {
            table,
            constants,
            unit,
        })
    }

    pub fn table(&self) -> &Arc<MarkTable> {
        &self.table
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.table.groupoid()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn rank(&self) -> usize {
        self.table.len()
    }

    pub fn element(&self, coeffs: Vec<i64>) -> BurnsideElement {
        assert_eq!(coeffs.len(), self.rank());
        BurnsideElement {
            table: Arc::clone(&self.table),
            coeffs,
        }
    }

    pub fn zero(&self) -> BurnsideElement {
        self.element(vec![0; self.rank()])
    }

    /// The class of `(G₀, id)`.
    pub fn one(&self) -> BurnsideElement {
        self.element(self.unit.clone())
    }

    pub fn basis(&self, k: usize) -> BurnsideElement {
        let mut c = vec![0; self.rank()];
        c[k] = 1;
        self.element(c)
    }

    /// The class `[X]` of a concrete `G`-set.
    pub fn class_of(&self, x: &RightGSet) -> Result<BurnsideElement, BurnsideError> {
        let d = decompose(x, &self.table)?;
        Ok(self.element(d.coefficients.iter().map(|&c| c as i64).collect()))
    }

    fn check(&self, x: &BurnsideElement) -> Result<(), BurnsideError> {
        if Arc::ptr_eq(&x.table, &self.table) || *x.table == *self.table {
            Ok(())
        } else {
            Err(BurnsideError::TableMismatch)
        }
    }

    pub fn add(
        &self,
        x: &BurnsideElement,
        y: &BurnsideElement,
    ) -> Result<BurnsideElement, BurnsideError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn mul(
        &self,
        x: &BurnsideElement,
        y: &BurnsideElement,
    ) -> Result<BurnsideElement, BurnsideError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.mul_coeffs(&x.coeffs, &y.coeffs)))
    }

    pub(crate) fn mul_coeffs(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (h, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (k, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                for (o, &c) in out.iter_mut().zip(self.constants.product(h, k)) {
                    *o += a * b * c;
                }
            }
        }
        out
    }

    pub fn rig_zero(&self) -> BurnsideRigElement {
        BurnsideRigElement {
            table: Arc::clone(&self.table),
            coeffs: vec![0; self.rank()],
        }
    }

    pub fn rig_one(&self) -> BurnsideRigElement {
        BurnsideRigElement {
            table: Arc::clone(&self.table),
            coeffs: self.unit.iter().map(|&c| c as u64).collect(),
        }
    }

    pub fn rig_class_of(&self, x: &RightGSet) -> Result<BurnsideRigElement, BurnsideError> {
        let d = decompose(x, &self.table)?;
        Ok(BurnsideRigElement {
            table: Arc::clone(&self.table),
            coeffs: d.coefficients,
        })
    }

    /// A concrete `G`-set in the class: coefficient-many copies of each coset set.
    pub fn realize(&self, x: &BurnsideRigElement) -> RightGSet {
        let mut parts = Vec::new();
        for (k, &c) in x.coeffs.iter().enumerate() {
            for _ in 0..c {
                parts.push(&self.table.coset(k).gset);
            }
        }
        if parts.is_empty() {
            return RightGSet::empty(Arc::clone(self.table.groupoid()));
        }
        RightGSet::disjoint_union_all(parts).expect("cosets share the groupoid")
    }

    /// Coefficientwise sum, the class of a disjoint union.
    pub fn rig_add(
        &self,
        x: &BurnsideRigElement,
        y: &BurnsideRigElement,
    ) -> Result<BurnsideRigElement, BurnsideError> {
        if *x.table != *self.table || *y.table != *self.table {
            return Err(BurnsideError::TableMismatch);
        }
        Ok(BurnsideRigElement {
            table: Arc::clone(&self.table),
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// The class of the fibered product of representatives.
    pub fn rig_mul(
        &self,
        x: &BurnsideRigElement,
        y: &BurnsideRigElement,
    ) -> Result<BurnsideRigElement, BurnsideError> {
        if *x.table != *self.table || *y.table != *self.table {
            return Err(BurnsideError::TableMismatch);
        }
        let p = self.realize(x).fibered_product(&self.realize(y))?;
        self.rig_class_of(&p)
    }

    /// The image of a rig element in the ring.
    pub fn from_rig(&self, x: &BurnsideRigElement) -> BurnsideElement {
        self.element(x.coeffs.iter().map(|&c| c as i64).collect())
    }

    pub fn export(&self) -> RingExport {
        RingExport {
            basis: self.table.labels(),
            structure_constants: self.constants.sparse(),
            unit: self.unit.clone(),
        }
    }

    /// `[G/H]·[G/K] = ...` lines for human consumption.
    pub fn multiplication_table(&self) -> String {
        let labels = self.table.labels();
        let mut out = String::new();
        for h in 0..self.rank() {
            for k in 0..self.rank() {
                let terms: Vec<String> = self
                    .constants
                    .product(h, k)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(l, &c)| {
                        if c == 1 {
                            format!("[{}]", labels[l])
                        } else {
                            format!("{c}·[{}]", labels[l])
                        }
                    })
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                out.push_str(&format!("[{}]·[{}] = {rhs}\n", labels[h], labels[k]));
            }
        }
        out
    }
}

impl Add for &BurnsideElement {
    type Output = BurnsideElement;

    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        assert!(
            *self.table == *rhs.table,
            "elements of different Burnside rings"
        );
        BurnsideElement {
            table: Arc::clone(&self.table),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &BurnsideElement {
    type Output = BurnsideElement;

    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        self + &(-rhs)
    }
}

impl Neg for &BurnsideElement {
    type Output = BurnsideElement;

    fn neg(self) -> BurnsideElement {
        BurnsideElement {
            table: Arc::clone(&self.table),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl BurnsideElement {
    pub fn scale(&self, s: i64) -> BurnsideElement {
        BurnsideElement {
            table: Arc::clone(&self.table),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    fn ring(g: FiniteGroupoid) -> BurnsideRing {
        BurnsideRing::new(&Arc::new(g), &TableOptions::default()).unwrap()
    }

    #[test]
    fn cyclic_group_ring() {
        for p in [2i64, 3, 5] {
            let r = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(p as usize)));
            let (v, w) = (r.basis(0), r.basis(1));
            assert_eq!(r.one(), v);
            assert_eq!(r.mul(&v, &v).unwrap(), v);
            assert_eq!(r.mul(&v, &w).unwrap(), w);
            assert_eq!(r.mul(&w, &w).unwrap(), w.scale(p));
            assert_eq!(r.constants().get(1, 1, 1), p);
            assert_eq!(r.constants().get(1, 1, 0), 0);
        }
    }

    #[test]
    fn rig_operations() {
        let r = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(2)));
        let w = BurnsideRigElement {
            table: Arc::clone(r.table()),
            coeffs: vec![0, 1],
        };
        assert_eq!(r.rig_add(&w, &r.rig_zero()).unwrap(), w);
        assert_eq!(r.rig_mul(&w, &r.rig_one()).unwrap(), w);
        assert_eq!(r.rig_mul(&w, &w).unwrap().coeffs, vec![0, 2]);
        assert_eq!(
            r.from_rig(&r.rig_mul(&w, &w).unwrap()),
            r.mul(&r.from_rig(&w), &r.from_rig(&w)).unwrap()
        );
    }

    #[test]
    fn unit_row_and_commutativity() {
        let r = ring(FiniteGroupoid::trg(&GroupTable::symmetric(3), 2));
        let n = r.rank();
        for h in 0..n {
            for k in 0..n {
                assert_eq!(r.constants().product(h, k), r.constants().product(k, h));
                for l in 0..n {
                    assert!(r.constants().get(h, k, l) >= 0);
                    assert_eq!(r.constants().get(0, k, l), i64::from(k == l));
                }
            }
        }
    }

    #[test]
    fn table_mismatch() {
        let a = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(2)));
        let b = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(3)));
        assert_eq!(a.mul(&a.one(), &b.one()), Err(BurnsideError::TableMismatch));
    }

    #[test]
    fn multiplication_table_mentions_every_pair() {
        let r = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(2)));
        let text = r.multiplication_table();
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("= 2·[0:*|H{0}]"));
    }
}
