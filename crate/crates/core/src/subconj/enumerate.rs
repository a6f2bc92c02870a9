use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{OneObjectSubgroupoid, SubconjError};
use crate::groupoid::FiniteGroupoid;

/// Subgroup of the loops at `base` generated by `gens`, as a sorted arrow list.
fn closure(g: &FiniteGroupoid, base: usize, gens: &[usize]) -> Vec<usize> {
    let id = g.identity(base);
    let mut seen = HashSet::from([id]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        i += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All subgroups of the isotropy group at `base`, ordered by decreasing order then arrow list.
///
/// Starts from closures of at most two generators and adds one generator at a time until
/// nothing new appears.
pub fn subgroups_at(
    g: &Arc<FiniteGroupoid>,
    base: usize,
    cap: usize,
) -> Result<Vec<OneObjectSubgroupoid>, SubconjError> {
    let loops: Vec<usize> = g.hom(base, base).collect();
    if loops.len() > cap {
        return Err(SubconjError::IsotropyTooLarge {
            object: g.object_label(base).to_string(),
            order: loops.len(),
            cap,
        });
    }
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier = Vec::new();
    for (i, &x) in loops.iter().enumerate() {
        for &y in &loops[i..] {
            let s = closure(g, base, &[x, y]);
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    found.insert(vec![g.identity(base)]);
    while let Some(s) = frontier.pop() {
        for &x in &loops {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = s.clone();
            gens.push(x);
            let t = closure(g, base, &gens);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut all: Vec<Vec<usize>> = found.into_iter().collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(all
        .into_iter()
        .map(|s| OneObjectSubgroupoid::from_sorted_unchecked(Arc::clone(g), base, s))
        .collect())
}

/// Subgroup classes of one component, computed at its smallest object.
#[derive(Debug, Clone)]
pub(crate) struct ComponentClasses {
    pub base: usize,
    /// canonical representatives, in table order
    pub reps: Vec<OneObjectSubgroupoid>,
    /// every subgroup at `base` -> (local rep index, loop `l` with `l S l⁻¹ = rep`)
    pub lookup: HashMap<Vec<usize>, (usize, usize)>,
}

/// The representative of a class is the conjugate by a loop with the lexicographically
/// smallest sorted arrow list.
pub(crate) fn component_classes(
    g: &Arc<FiniteGroupoid>,
    base: usize,
    cap: usize,
) -> Result<ComponentClasses, SubconjError> {
    let subgroups = subgroups_at(g, base, cap)?;
    let loops: Vec<usize> = g.hom(base, base).collect();
    let conjugates = |s: &[usize], l: usize| -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|&h| g.conjugate(l, h)).collect();
        v.sort_unstable();
        v
    };
    // canonical key of every subgroup
    let mut key_of: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for s in &subgroups {
        let key = loops
            .iter()
            .map(|&l| conjugates(s.arrows(), l))
            .min()
            .expect("identity loop");
        key_of.insert(s.arrows(), key);
    }
    let mut reps: Vec<OneObjectSubgroupoid> = subgroups
        .iter()
        .filter(|s| key_of[s.arrows()] == s.arrows())
        .cloned()
        .collect();
    reps.sort_by(|a, b| {
        b.order()
            .cmp(&a.order())
            .then_with(|| a.arrows().cmp(b.arrows()))
    });
    let index: HashMap<&[usize], usize> = reps
        .iter()
        .enumerate()
        .map(|(i, r)| (r.arrows(), i))
        .collect();
    let mut lookup = HashMap::new();
    for s in &subgroups {
        let key = &key_of[s.arrows()];
        let l = loops
            .iter()
            .copied()
            .find(|&l| conjugates(s.arrows(), l) == *key)
            .expect("key is a conjugate");
        lookup.insert(s.arrows().to_vec(), (index[key.as_slice()], l));
    }
    Ok(ComponentClasses { base, reps, lookup })
}

/// One representative per conjugacy class of one-object subgroupoids, ordered by component,
/// then decreasing order, then sorted arrow list.
pub fn enumerate_reps(
    g: &Arc<FiniteGroupoid>,
    cap: usize,
) -> Result<Vec<OneObjectSubgroupoid>, SubconjError> {
    let mut out = Vec::new();
    for comp in g.connected_components() {
        out.extend(component_classes(g, comp[0], cap)?.reps);
    }
    Ok(out)
}
