//! Brute-force oracles shared by the integration tests. None of them call into the
//! table-of-marks, decomposition or isomorphism code they are compared against.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use groupoid_burnside::random::{self, GroupoidBounds};
use groupoid_burnside::{FiniteGroupoid, MarkTable, OneObjectSubgroupoid, RightGSet};

/// Arrows `g` with `x·g` defined, i.e. those with target `ς(x)`.
fn acting(x: &RightGSet, e: usize) -> Vec<usize> {
    let g = x.groupoid();
    g.arrows().filter(|&a| g.tgt(a) == x.sigma(e)).collect()
}

/// Number of equivariant maps `x -> y`, by backtracking over all structure-preserving assignments.
pub fn count_equivariant_maps(x: &RightGSet, y: &RightGSet) -> u64 {
    count_maps(x, y, false)
}

/// Number of equivariant bijections `x -> y`.
pub fn count_isomorphisms(x: &RightGSet, y: &RightGSet) -> u64 {
    count_maps(x, y, true)
}

fn count_maps(x: &RightGSet, y: &RightGSet, injective: bool) -> u64 {
    if injective && x.len() != y.len() {
        return 0;
    }
    let acts: Vec<Vec<usize>> = x.elements().map(|e| acting(x, e)).collect();
    let mut f = vec![usize::MAX; x.len()];
    let mut used = vec![false; y.len()];
    fn go(
        i: usize,
        x: &RightGSet,
        y: &RightGSet,
        acts: &[Vec<usize>],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        injective: bool,
    ) -> u64 {
        if i == x.len() {
            return 1;
        }
        let mut total = 0;
        for t in y.elements() {
            if y.sigma(t) != x.sigma(i) || (injective && used[t]) {
                continue;
            }
            f[i] = t;
            // every arrow relating i to an assigned element in either direction
            let ok = acts[i].iter().all(|&g| {
                let xi = x.act(i, g).expect("acting arrow");
                xi > i || f[xi] == y.act(t, g).expect("same fibre")
            }) && (0..i).all(|j| {
                acts[j]
                    .iter()
                    .all(|&g| x.act(j, g) != Some(i) || y.act(f[j], g) == Some(t))
            });
            if ok {
                used[t] = true;
                total += go(i + 1, x, y, acts, f, used, injective);
                used[t] = false;
            }
        }
        f[i] = usize::MAX;
        total
    }
    go(0, x, y, &acts, &mut f, &mut used, injective)
}

/// `|X^H|` straight from the action.
pub fn fixed_count(x: &RightGSet, h: &OneObjectSubgroupoid) -> usize {
    x.elements()
        .filter(|&e| x.sigma(e) == h.base() && h.arrows().iter().all(|&a| x.act(e, a) == Some(e)))
        .count()
}

/// Fixed-point vector over the representatives of a table.
pub fn fixed_vector(x: &RightGSet, table: &MarkTable) -> Vec<usize> {
    table.reps().iter().map(|h| fixed_count(x, h)).collect()
}

/// `d S d⁻¹` as a sorted arrow list, for a loop set `S` at `src(d)`.
fn conjugated(g: &FiniteGroupoid, d: usize, s: &[usize]) -> Vec<usize> {
    let inv = g.inverse(d);
    let mut out: Vec<usize> = s
        .iter()
        .map(|&a| g.compose(g.compose(d, a).unwrap(), inv).unwrap())
        .collect();
    out.sort_unstable();
    out
}

/// Index of the representative conjugate to the loop set `s` at `c`.
pub fn brute_classify(table: &MarkTable, c: usize, s: &[usize]) -> usize {
    let g = table.groupoid();
    let hits: Vec<usize> = table
        .reps()
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            g.connected(c, r.base())
                && g.hom(c, r.base())
                    .any(|d| conjugated(g, d, s) == r.arrows())
        })
        .map(|(k, _)| k)
        .collect();
    assert_eq!(
        hits.len(),
        1,
        "representatives are pairwise non-conjugate and exhaustive"
    );
    hits[0]
}

/// Orbit-type counts of a groupoid-set, computed by flood fill and brute-force conjugacy.
pub fn orbit_types(x: &RightGSet, table: &MarkTable) -> Vec<i64> {
    let g = x.groupoid();
    let mut seen = vec![false; x.len()];
    let mut counts = vec![0; table.len()];
    for e in x.elements() {
        if seen[e] {
            continue;
        }
        let mut stack = vec![e];
        seen[e] = true;
        while let Some(p) = stack.pop() {
            for a in acting(x, p) {
                let q = x.act(p, a).unwrap();
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        let c = x.sigma(e);
        let mut stab: Vec<usize> = g.hom(c, c).filter(|&a| x.act(e, a) == Some(e)).collect();
        stab.sort_unstable();
        counts[brute_classify(table, c, &stab)] += 1;
    }
    counts
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Seeded fixture groupoids: `count` random groupoids within `bounds`.
pub fn groupoids(seed: u64, count: usize, bounds: &GroupoidBounds) -> Vec<Arc<FiniteGroupoid>> {
    let mut r = random::rng(seed);
    (0..count)
        .map(|_| Arc::new(random::random_groupoid(&mut r, bounds)))
        .collect()
}

pub fn small_bounds() -> GroupoidBounds {
    GroupoidBounds {
        max_arrows: 60,
        max_isotropy: 8,
        max_components: 3,
    }
}
