//! Seeded random fixtures: groupoids, `G`-sets and Burnside ring elements.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::group::GroupTable;
use crate::groupoid::FiniteGroupoid;
use crate::gset::{coset_gset, RightGSet};
use crate::subconj::subgroups_at;

pub use rand::SeedableRng;

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for [`random_groupoid`].
#[derive(Debug, Clone, Copy)]
pub struct GroupoidBounds {
    pub max_arrows: usize,
    pub max_isotropy: usize,
    pub max_components: usize,
}

impl Default for GroupoidBounds {
    fn default() -> Self {
        GroupoidBounds {
            max_arrows: 200,
            max_isotropy: 12,
            max_components: 3,
        }
    }
}

fn small_groups(max_order: usize) -> Vec<GroupTable> {
    let mut out: Vec<GroupTable> = (1..=max_order.min(12)).map(GroupTable::cyclic).collect();
    let named = [
        GroupTable::symmetric(3),
        GroupTable::by_name("V4").expect("named group"),
        GroupTable::dihedral(4),
        GroupTable::quaternion(),
        GroupTable::dihedral(5),
        GroupTable::alternating(4),
        GroupTable::dihedral(6),
    ];
    out.extend(named.into_iter().filter(|g| g.order() <= max_order));
    out
}

/// A right action of `group` on `n` points, as a union of coset actions `Hg·x = H(gx)`.
fn random_action(rng: &mut impl Rng, group: &GroupTable, max_points: usize) -> Vec<Vec<usize>> {
    let order = group.order();
    let mut act: Vec<Vec<usize>> = Vec::new();
    loop {
        let gens: Vec<usize> = (0..rng.gen_range(0..=2))
            .map(|_| rng.gen_range(0..order))
            .collect();
        let mut h = group.closure(&gens);
        if order / h.len() > max_points {
            h = (0..order).collect();
        }
        if !act.is_empty() && act.len() + order / h.len() > max_points {
            break;
        }
        // right cosets Hg, numbered in order of first appearance
        let mut coset_of = vec![usize::MAX; order];
        let mut reps = Vec::new();
        for g in 0..order {
            if coset_of[g] == usize::MAX {
                for &k in &h {
                    coset_of[group.mul(k, g)] = reps.len();
                }
                reps.push(g);
            }
        }
        let offset = act.len();
        for &r in &reps {
            act.push(
                (0..order)
                    .map(|x| offset + coset_of[group.mul(r, x)])
                    .collect(),
            );
        }
        if act.len() >= max_points || rng.gen_bool(0.5) {
            break;
        }
    }
    act
}

/// A transitive or action-groupoid component within the arrow budget.
fn random_component(rng: &mut impl Rng, bounds: &GroupoidBounds, budget: usize) -> FiniteGroupoid {
    let groups: Vec<GroupTable> = small_groups(bounds.max_isotropy)
        .into_iter()
        .filter(|g| g.order() <= budget)
        .collect();
    let group = groups.choose(rng).expect("the trivial group fits").clone();
    if rng.gen_bool(0.3) && group.order() > 1 {
        // the action groupoid has at most |X|·|G| arrows
        let max_points = (budget / group.order()).clamp(1, 6);
        let act = random_action(rng, &group, max_points);
        return FiniteGroupoid::action_groupoid(&group, &act).expect("coset action");
    }
    let max_n = (1..=6)
        .take_while(|n| n * n * group.order() <= budget)
        .last()
        .unwrap_or(1);
    FiniteGroupoid::trg(&group, rng.gen_range(1..=max_n))
}

fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A random strongly finite groupoid with shuffled object and arrow ids.
pub fn random_groupoid(rng: &mut impl Rng, bounds: &GroupoidBounds) -> FiniteGroupoid {
    let k = rng.gen_range(1..=bounds.max_components.max(1));
    let mut parts = Vec::new();
    let mut used = 0;
    for _ in 0..k {
        let budget = bounds.max_arrows.saturating_sub(used);
        if budget == 0 {
            break;
        }
        let c = random_component(rng, bounds, budget);
        used += c.num_arrows();
        parts.push(c);
    }
    let g = FiniteGroupoid::coproduct(&parts);
    let objects = random_permutation(rng, g.num_objects());
    let arrows = random_permutation(rng, g.num_arrows());
    g.permuted(&objects, &arrows).expect("relabelled groupoid")
}

/// A union of random coset sets with at most `max_size` elements, shuffled.
pub fn random_gset(rng: &mut impl Rng, g: &Arc<FiniteGroupoid>, max_size: usize) -> RightGSet {
    let mut parts: Vec<RightGSet> = Vec::new();
    let mut size = 0;
    let attempts = rng.gen_range(0..=4);
    for _ in 0..attempts {
        if g.num_objects() == 0 {
            break;
        }
        let a = rng.gen_range(0..g.num_objects());
        let subs = subgroups_at(g, a, usize::MAX).expect("no cap");
        let h = subs.choose(rng).expect("trivial subgroup");
        let x = coset_gset(&h.to_subgroupoid());
        if size + x.len() <= max_size {
            size += x.len();
            parts.push(x);
        }
    }
    if parts.is_empty() {
        return RightGSet::empty(Arc::clone(g));
    }
    let x = RightGSet::disjoint_union_all(parts.iter()).expect("same groupoid");
    let perm = random_permutation(rng, x.len());
    x.permuted(&perm)
}

/// Coefficients in `-bound..=bound`.
pub fn random_coeffs(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}
