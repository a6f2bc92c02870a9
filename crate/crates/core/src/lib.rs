//! Exact computations for finite groupoids.
//!
//! The crate builds finite groupoids and their right groupoid-sets, decides
//! conjugacy of subgroupoids and isomorphism of groupoid-sets, computes
//! tables of marks, and realizes the Burnside ring together with its product
//! decomposition over connected components, the ghost map and the primitive
//! idempotents of the rational Burnside algebra.
//!
//! ```
//! use groupoid_burnside::{group::GroupTable, FiniteGroupoid, MarkTable};
//!
//! let g = FiniteGroupoid::from_group(&GroupTable::cyclic(2)).into_arc();
//! let table = MarkTable::new(&g, &Default::default()).unwrap();
//! assert_eq!(table.matrix(), vec![vec![1, 0], vec![1, 2]]);
//! ```

pub mod burnside;
pub mod generator;
pub mod ghost;
pub mod group;
pub mod groupoid;
pub mod gset;
mod label;
pub mod random;
pub mod subconj;

pub use burnside::{BurnsideElement, BurnsideRing, StructureConstants};
pub use ghost::{GhostVector, RationalBurnsideElement};
pub use groupoid::{FiniteGroupoid, GroupoidError, GroupoidMorphism, IsotropyGroup};
pub use gset::{EquivariantMap, GSetDecomposition, GSetError, RightGSet};
pub use label::Label;
pub use subconj::{MarkTable, OneObjectSubgroupoid, Subgroupoid, TableOptions};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/groupoids.md")]
    mod groupoids {}
    #[doc = include_str!("../../../book/src/gsets.md")]
    mod gsets {}
    #[doc = include_str!("../../../book/src/conjugacy.md")]
    mod conjugacy {}
    #[doc = include_str!("../../../book/src/marks.md")]
    mod marks {}
    #[doc = include_str!("../../../book/src/burnside-ring.md")]
    mod burnside_ring {}
    #[doc = include_str!("../../../book/src/ghost.md")]
    mod ghost {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
