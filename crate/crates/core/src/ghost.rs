//! The ghost map `B(G) -> Π_H ℤ`, its injectivity, and the primitive idempotents of
//! `ℚ ⊗ B(G)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::burnside::{BurnsideElement, BurnsideError, BurnsideRing};
use crate::gset::RightGSet;
use crate::subconj::MarkTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GhostError {
    #[error("marks matrix is singular at row {0}")]
    SingularMatrix(usize),
    #[error("idempotent identity fails: {0}")]
    IdempotentCheck(String),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
}

impl GhostError {
    pub fn kind(&self) -> &'static str {
        match self {
            GhostError::SingularMatrix(_) => "SingularMatrix",
            GhostError::IdempotentCheck(_) => "IdempotentCheck",
            GhostError::Burnside(e) => e.kind(),
        }
    }
}

/// Fixed-point counts `(|X^H|)_H` of a formal difference of `G`-sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhostVector {
    pub entries: Vec<i64>,
}

impl GhostVector {
    pub fn pointwise_mul(&self, other: &GhostVector) -> GhostVector {
        GhostVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn add(&self, other: &GhostVector) -> GhostVector {
        GhostVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// An element of `ℚ ⊗ B(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalBurnsideElement {
    pub table: Arc<MarkTable>,
    pub coeffs: Vec<BigRational>,
}

impl RationalBurnsideElement {
    pub fn from_integral(x: &BurnsideElement) -> Self {
        RationalBurnsideElement {
            table: Arc::clone(&x.table),
            coeffs: x
                .coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn zero(table: Arc<MarkTable>) -> Self {
        let n = table.len();
        RationalBurnsideElement {
            table,
            coeffs: vec![BigRational::zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalBurnsideElement {
            table: Arc::clone(&self.table),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Product through the structure constants of `ring`.
    pub fn mul(&self, other: &Self, ring: &BurnsideRing) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (h, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                let ab = a * b;
                for (l, &c) in ring.constants().product(h, k).iter().enumerate() {
                    if c != 0 {
                        out[l] += &ab * BigInt::from(c);
                    }
                }
            }
        }
        RationalBurnsideElement {
            table: Arc::clone(&self.table),
            coeffs: out,
        }
    }

    /// Nonzero coefficients keyed by basis label, as reduced `p/q` strings.
    pub fn export(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.table.label(k), c.to_string()))
            .collect()
    }
}

/// The ghost matrix, entry `(H, K)` being `|(G/K)^H|`: the table of marks.
pub fn ghost_matrix(table: &MarkTable) -> Vec<Vec<i64>> {
    table
        .rows()
        .iter()
        .map(|r| r.iter().map(|&m| m as i64).collect())
        .collect()
}

/// `entries[H] = Σ_K coeffs[K]·m[H][K]`.
pub fn ghost_apply(x: &BurnsideElement) -> GhostVector {
    let entries = x
        .table
        .rows()
        .iter()
        .map(|row| row.iter().zip(&x.coeffs).map(|(&m, &c)| m as i64 * c).sum())
        .collect();
    GhostVector { entries }
}

/// `(|X^H|)_H` computed directly from fixed points.
pub fn ghost_of_gset(x: &RightGSet, table: &MarkTable) -> GhostVector {
    GhostVector {
        entries: table
            .reps()
            .iter()
            .map(|h| x.count_fixed_points(h) as i64)
            .collect(),
    }
}

/// Determinant of the ghost matrix with the row order that makes it lower triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityCertificate {
    pub determinant: BigInt,
    /// the table order, which is already triangular
    pub order: Vec<usize>,
    pub diagonal: Vec<u64>,
}

impl InjectivityCertificate {
    pub fn is_injective(&self) -> bool {
        !self.determinant.is_zero()
    }
}

/// Checks triangularity and returns the diagonal product as determinant.
pub fn ghost_injective(table: &MarkTable) -> Result<InjectivityCertificate, GhostError> {
    let n = table.len();
    for i in 0..n {
        if table.mark(i, i) == 0 {
            return Err(GhostError::SingularMatrix(i));
        }
        if (i + 1..n).any(|j| table.mark(i, j) != 0) {
            return Err(GhostError::SingularMatrix(i));
        }
    }
    let diagonal: Vec<u64> = (0..n).map(|i| table.mark(i, i)).collect();
    let determinant = diagonal
        .iter()
        .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
    Ok(InjectivityCertificate {
        determinant,
        order: (0..n).collect(),
        diagonal,
    })
}

/// Solves `m·x = v` exactly by forward substitution.
pub fn ghost_solve(table: &MarkTable, v: &[BigRational]) -> Result<Vec<BigRational>, GhostError> {
    let n = table.len();
    let mut x: Vec<BigRational> = Vec::with_capacity(n);
    for r in 0..n {
        let d = table.mark(r, r);
        if d == 0 {
            return Err(GhostError::SingularMatrix(r));
        }
        let mut acc = v[r].clone();
        for (j, xj) in x.iter().enumerate() {
            let m = table.mark(r, j);
            if m != 0 {
                acc -= xj * BigInt::from(m);
            }
        }
        x.push(acc / BigInt::from(d));
    }
    Ok(x)
}

/// The element with ghost vector `v`, if it is integral.
pub fn ghost_preimage(
    table: &Arc<MarkTable>,
    v: &GhostVector,
) -> Result<Option<BurnsideElement>, GhostError> {
    let rhs: Vec<BigRational> = v
        .entries
        .iter()
        .map(|&e| BigRational::from_integer(e.into()))
        .collect();
    let x = ghost_solve(table, &rhs)?;
    if x.iter().any(|c| !c.is_integer()) {
        return Ok(None);
    }
    let coeffs = x
        .iter()
        .map(|c| i64::try_from(c.to_integer()).expect("small coefficient"))
        .collect();
    Ok(Some(BurnsideElement {
        table: Arc::clone(table),
        coeffs,
    }))
}

/// One idempotent per basis index `H`: the element whose ghost vector is the indicator of `H`.
///
/// The family is checked against the structure constants of `ring`: every `e` is idempotent,
/// distinct ones are orthogonal, and they sum to the unit.
pub fn primitive_idempotents(
    ring: &BurnsideRing,
) -> Result<Vec<RationalBurnsideElement>, GhostError> {
    let table = ring.table();
    let n = table.len();
    let solve = |i: usize| {
        let mut rhs = vec![BigRational::zero(); n];
        rhs[i] = BigRational::one();
        ghost_solve(table, &rhs).map(|coeffs| RationalBurnsideElement {
            table: Arc::clone(table),
            coeffs,
        })
    };
    let es: Vec<RationalBurnsideElement> = if table.options().parallel {
        (0..n)
            .into_par_iter()
            .map(solve)
            .collect::<Result<_, _>>()?
    } else {
        (0..n).map(solve).collect::<Result<_, _>>()?
    };
    verify_idempotents(ring, &es)?;
    Ok(es)
}

fn verify_idempotents(
    ring: &BurnsideRing,
    es: &[RationalBurnsideElement],
) -> Result<(), GhostError> {
    let table = ring.table();
    let mut sum = RationalBurnsideElement::zero(Arc::clone(table));
    for (i, e) in es.iter().enumerate() {
        if e.is_zero() {
            return Err(GhostError::IdempotentCheck(format!("e{i} is zero")));
        }
        for (j, f) in es.iter().enumerate().skip(i) {
            let p = e.mul(f, ring);
            let ok = if i == j { p == *e } else { p.is_zero() };
            if !ok {
                return Err(GhostError::IdempotentCheck(format!("e{i}·e{j}")));
            }
        }
        sum = sum.add(e);
    }
    if sum != RationalBurnsideElement::from_integral(&ring.one()) {
        return Err(GhostError::IdempotentCheck("sum is not the unit".into()));
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

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn cyclic_idempotents() {
        for p in [2, 3, 5, 7] {
            let r = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(p as usize)));
            let es = primitive_idempotents(&r).unwrap();
            // e_G = v - w/p, e_1 = w/p
            assert_eq!(es[0].coeffs, vec![q(1, 1), q(-1, p)]);
            assert_eq!(es[1].coeffs, vec![q(0, 1), q(1, p)]);
            assert_eq!(
                ghost_injective(r.table()).unwrap().determinant,
                BigInt::from(p)
            );
        }
    }

    #[test]
    fn export_uses_fractions() {
        let r = ring(FiniteGroupoid::trg(&GroupTable::cyclic(3), 1));
        let es = primitive_idempotents(&r).unwrap();
        let e = es[1].export();
        assert_eq!(
            e.into_iter().collect::<Vec<_>>(),
            vec![("0:0|H{(0,0,0)}".to_string(), "1/3".to_string())]
        );
        let g = es[0].export();
        assert_eq!(
            g.values().cloned().collect::<Vec<_>>(),
            vec!["1".to_string(), "-1/3".to_string()]
        );
    }

    #[test]
    fn ghost_is_a_ring_map() {
        let r = ring(FiniteGroupoid::trg(&GroupTable::dihedral(4), 2));
        let n = r.rank();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (r.basis(i), r.basis(j));
                assert_eq!(
                    ghost_apply(&r.mul(&x, &y).unwrap()),
                    ghost_apply(&x).pointwise_mul(&ghost_apply(&y))
                );
            }
        }
        assert!(ghost_apply(&r.one()).entries.iter().all(|&e| e == 1));
    }

    #[test]
    fn ghost_of_cosets_matches_fixed_points() {
        let r = ring(FiniteGroupoid::trg(&GroupTable::symmetric(3), 2));
        for k in 0..r.rank() {
            let x = &r.table().coset(k).gset;
            assert_eq!(ghost_apply(&r.basis(k)), ghost_of_gset(x, r.table()));
            let back = ghost_preimage(r.table(), &ghost_of_gset(x, r.table()))
                .unwrap()
                .unwrap();
            assert_eq!(back, r.basis(k));
        }
    }

    #[test]
    fn trivial_isotropy_indicators() {
        let r = ring(FiniteGroupoid::generated_equivalence(4, &[(0, 1)]).unwrap());
        let es = primitive_idempotents(&r).unwrap();
        assert_eq!(es.len(), 3);
        for (i, e) in es.iter().enumerate() {
            let mut expect = vec![BigRational::zero(); 3];
            expect[i] = BigRational::one();
            assert_eq!(e.coeffs, expect);
        }
    }
}
