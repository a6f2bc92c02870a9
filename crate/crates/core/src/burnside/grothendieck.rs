//! The Grothendieck ring of a commutative rig, as formal differences `[a, b]`.

use std::fmt::Debug;
use std::sync::Arc;

use thiserror::Error;

use super::BurnsideRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothendieckError {
    #[error("equality is undecidable: the rig is neither cancellative nor finitely searchable")]
    UndecidableEquality,
}

impl GrothendieckError {
    pub fn kind(&self) -> &'static str {
        "UndecidableEquality"
    }
}

/// A commutative rig given by its operations.
pub trait Rig {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Whether `x + e = y + e` for some `e`.
    ///
    /// The default only settles the case `x = y`; cancellative and finite rigs override it.
    fn stably_equal(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool, GrothendieckError> {
        if x == y {
            Ok(true)
        } else {
            Err(GrothendieckError::UndecidableEquality)
        }
    }
}

/// The class `[first, second]`, read as `first - second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrothendieckPair<E> {
    pub first: E,
    pub second: E,
}

impl<E: Clone> GrothendieckPair<E> {
    pub fn new(first: E, second: E) -> Self {
        GrothendieckPair { first, second }
    }
}

/// `[a, b] = [c, d]` iff `a + d + e = c + b + e` for some `e`.
pub fn grothendieck_equal<R: Rig>(
    rig: &R,
    p: &GrothendieckPair<R::Elem>,
    q: &GrothendieckPair<R::Elem>,
) -> Result<bool, GrothendieckError> {
    rig.stably_equal(&rig.add(&p.first, &q.second), &rig.add(&q.first, &p.second))
}

pub fn pair_add<R: Rig>(
    rig: &R,
    p: &GrothendieckPair<R::Elem>,
    q: &GrothendieckPair<R::Elem>,
) -> GrothendieckPair<R::Elem> {
    GrothendieckPair::new(rig.add(&p.first, &q.first), rig.add(&p.second, &q.second))
}

/// `[a, b]·[c, d] = [ac + bd, ad + bc]`.
pub fn pair_mul<R: Rig>(
    rig: &R,
    p: &GrothendieckPair<R::Elem>,
    q: &GrothendieckPair<R::Elem>,
) -> GrothendieckPair<R::Elem> {
    let (a, b, c, d) = (&p.first, &p.second, &q.first, &q.second);
    GrothendieckPair::new(
        rig.add(&rig.mul(a, c), &rig.mul(b, d)),
        rig.add(&rig.mul(a, d), &rig.mul(b, c)),
    )
}

pub fn pair_neg<E: Clone>(p: &GrothendieckPair<E>) -> GrothendieckPair<E> {
    GrothendieckPair::new(p.second.clone(), p.first.clone())
}

/// The image `[a, 0]` of a rig element.
pub fn embed<R: Rig>(rig: &R, a: R::Elem) -> GrothendieckPair<R::Elem> {
    GrothendieckPair::new(a, rig.zero())
}

/// The natural numbers; cancellative.
#[derive(Debug, Clone, Copy, Default)]
pub struct Naturals;

impl Rig for Naturals {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, x: &u64, y: &u64) -> u64 {
        x + y
    }

    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y
    }

    fn stably_equal(&self, x: &u64, y: &u64) -> Result<bool, GrothendieckError> {
        Ok(x == y)
    }
}

impl Naturals {
    pub fn to_integer(p: &GrothendieckPair<u64>) -> i64 {
        p.first as i64 - p.second as i64
    }

    pub fn from_integer(n: i64) -> GrothendieckPair<u64> {
        if n >= 0 {
            GrothendieckPair::new(n as u64, 0)
        } else {
            GrothendieckPair::new(0, n.unsigned_abs())
        }
    }
}

/// `({0, 1}, or, and)`; finite, so stable equality is decided by search. Its ring is zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct BooleanRig;

impl Rig for BooleanRig {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, x: &bool, y: &bool) -> bool {
        *x || *y
    }

    fn mul(&self, x: &bool, y: &bool) -> bool {
        *x && *y
    }

    fn stably_equal(&self, x: &bool, y: &bool) -> Result<bool, GrothendieckError> {
        Ok([false, true]
            .iter()
            .any(|e| self.add(x, e) == self.add(y, e)))
    }
}

/// Componentwise product of two rigs.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProductRig<A, B>(pub A, pub B);

impl<A: Rig, B: Rig> Rig for ProductRig<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn zero(&self) -> Self::Elem {
        (self.0.zero(), self.1.zero())
    }

    fn one(&self) -> Self::Elem {
        (self.0.one(), self.1.one())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.0.add(&x.0, &y.0), self.1.add(&x.1, &y.1))
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.0.mul(&x.0, &y.0), self.1.mul(&x.1, &y.1))
    }

    // a witness e = (e₀, e₁) exists iff one exists in each factor
    fn stably_equal(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool, GrothendieckError> {
        Ok(self.0.stably_equal(&x.0, &y.0)? && self.1.stably_equal(&x.1, &y.1)?)
    }
}

impl<A: Rig, B: Rig> ProductRig<A, B> {
    /// `G(A × B) -> G(A) × G(B)`.
    pub fn split(
        p: &GrothendieckPair<(A::Elem, B::Elem)>,
    ) -> (GrothendieckPair<A::Elem>, GrothendieckPair<B::Elem>) {
        (
            GrothendieckPair::new(p.first.0.clone(), p.second.0.clone()),
            GrothendieckPair::new(p.first.1.clone(), p.second.1.clone()),
        )
    }

    /// `G(A) × G(B) -> G(A × B)`.
    pub fn join(
        a: &GrothendieckPair<A::Elem>,
        b: &GrothendieckPair<B::Elem>,
    ) -> GrothendieckPair<(A::Elem, B::Elem)> {
        GrothendieckPair::new(
            (a.first.clone(), b.first.clone()),
            (a.second.clone(), b.second.clone()),
        )
    }
}

/// The Burnside rig `L(G)` as coefficient vectors; cancellative, since isomorphism classes
/// of `G`-sets are determined by their decompositions.
#[derive(Debug, Clone)]
pub struct BurnsideRig {
    ring: Arc<BurnsideRing>,
}

impl BurnsideRig {
    pub fn new(ring: Arc<BurnsideRing>) -> Self {
        BurnsideRig { ring }
    }

    /// The coefficientwise difference, as an element of `B(G)`.
    pub fn to_ring(&self, p: &GrothendieckPair<Vec<u64>>) -> super::BurnsideElement {
        self.ring.element(
            p.first
                .iter()
                .zip(&p.second)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
        )
    }
}

impl Rig for BurnsideRig {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.ring.rank()]
    }

    fn one(&self) -> Vec<u64> {
        self.ring.one().coeffs.iter().map(|&c| c as u64).collect()
    }

    fn add(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    fn mul(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        let signed = |v: &Vec<u64>| v.iter().map(|&c| c as i64).collect::<Vec<_>>();
        self.ring
            .mul_coeffs(&signed(x), &signed(y))
            .iter()
            .map(|&c| c as u64)
            .collect()
    }

    fn stably_equal(&self, x: &Vec<u64>, y: &Vec<u64>) -> Result<bool, GrothendieckError> {
        Ok(x == y)
    }
}

/// `ℕ` with `max` as addition and `x ⊗ y = x + y - 1` on positive values: a rig that is
/// neither cancellative nor declared searchable, so only trivial equalities are decided.
#[derive(Debug, Clone, Copy, Default)]
pub struct OpaqueRig;

impl Rig for OpaqueRig {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, x: &u64, y: &u64) -> u64 {
        *x.max(y)
    }

    fn mul(&self, x: &u64, y: &u64) -> u64 {
        if *x == 0 || *y == 0 {
            0
        } else {
            x + y - 1
        }
    }
}
