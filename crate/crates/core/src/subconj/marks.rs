use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::component_classes;
use super::{same, OneObjectSubgroupoid, SubconjError};
use crate::groupoid::FiniteGroupoid;
use crate::gset::{coset_gset, coset_gset_with_classes, CosetGSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// largest isotropy order for subgroup enumeration
    pub subgroup_cap: usize,
    /// fill the matrix rows in parallel
    pub parallel: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            subgroup_cap: 24,
            parallel: true,
        }
    }
}

/// `|(G/K)^H|`, computed from the coset set of `K`.
pub fn mark(h: &OneObjectSubgroupoid, k: &OneObjectSubgroupoid) -> Result<u64, SubconjError> {
    if !same(h.parent(), k.parent()) {
        return Err(SubconjError::GroupoidMismatch);
    }
    Ok(coset_gset(&k.to_subgroupoid()).count_fixed_points(h) as u64)
}

/// The ordered representatives of one-object subgroupoids up to conjugacy, with their marks.
#[derive(Debug, Clone)]
pub struct MarkTable {
    groupoid: Arc<FiniteGroupoid>,
    reps: Vec<OneObjectSubgroupoid>,
    blocks: Vec<Range<usize>>,
    marks: Vec<Vec<u64>>,
    /// smallest object of each component
    bases: Vec<usize>,
    /// arrow from each object to the base of its component
    connector: Vec<usize>,
    lookup: Vec<HashMap<Vec<usize>, (usize, usize)>>,
    cosets: Vec<CosetGSet>,
    options: TableOptions,
}

impl PartialEq for MarkTable {
    fn eq(&self, other: &Self) -> bool {
        same(&self.groupoid, &other.groupoid) && self.reps == other.reps
    }
}

impl Eq for MarkTable {}

/// Machine-readable form of a table of marks.
#[derive(Debug, Clone, Serialize)]
pub struct MarkTableExport {
    pub order: Vec<String>,
    pub blocks: Vec<[usize; 2]>,
    pub matrix: Vec<Vec<u64>>,
}

impl MarkTable {
    pub fn new(g: &Arc<FiniteGroupoid>, options: &TableOptions) -> Result<Self, SubconjError> {
        let mut reps = Vec::new();
        let mut blocks = Vec::new();
        let mut bases = Vec::new();
        let mut lookup = Vec::new();
        for comp in g.connected_components() {
            let classes = component_classes(g, comp[0], options.subgroup_cap)?;
            let start = reps.len();
            reps.extend(classes.reps);
            blocks.push(start..reps.len());
            bases.push(classes.base);
            lookup.push(
                classes
                    .lookup
                    .into_iter()
                    .map(|(s, (i, l))| (s, (i + start, l)))
                    .collect::<HashMap<_, _>>(),
            );
        }
        let connector = g
            .objects()
            .map(|a| {
                let b = bases[g.component_of(a)];
                if a == b {
                    g.identity(a)
                } else {
                    g.some_arrow(a, b).expect("same component")
                }
            })
            .collect();
        let build = |k: &OneObjectSubgroupoid| coset_gset_with_classes(&k.to_subgroupoid());
        let cosets: Vec<CosetGSet> = if options.parallel {
            reps.par_iter().map(build).collect()
        } else {
            reps.iter().map(build).collect()
        };
        let row = |h: &OneObjectSubgroupoid| -> Vec<u64> {
            cosets
                .iter()
                .map(|c| c.gset.count_fixed_points(h) as u64)
                .collect()
        };
        let marks = if options.parallel {
            reps.par_iter().map(row).collect()
        } else {
            reps.iter().map(row).collect()
        };
        let table = MarkTable {
            groupoid: Arc::clone(g),
            reps,
            blocks,
            marks,
            bases,
            connector,
            lookup,
            cosets,
            options: *options,
        };
        table.verify()?;
        Ok(table)
    }

    /// Nonzero diagonal, `m[H][K]·m[K][H] = 0` off the diagonal, zero outside the
    /// component blocks and above the diagonal.
    pub fn verify(&self) -> Result<(), SubconjError> {
        let n = self.len();
        let block_of = |i: usize| {
            self.blocks
                .iter()
                .position(|b| b.contains(&i))
                .expect("in a block")
        };
        for i in 0..n {
            if self.marks[i][i] == 0 {
                return Err(SubconjError::TriangularityViolation(format!(
                    "zero diagonal at {i}"
                )));
            }
            for j in 0..n {
                let m = self.marks[i][j];
                if i != j && m * self.marks[j][i] != 0 {
                    return Err(SubconjError::TriangularityViolation(format!(
                        "m[{i}][{j}]·m[{j}][{i}] != 0"
                    )));
                }
                if m != 0 && (j > i || block_of(i) != block_of(j)) {
                    return Err(SubconjError::TriangularityViolation(format!(
                        "nonzero entry at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn options(&self) -> &TableOptions {
        &self.options
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[OneObjectSubgroupoid] {
        &self.reps
    }

    /// Index ranges of the component blocks, in component order.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, k: usize) -> usize {
        self.groupoid.component_of(self.reps[k].base())
    }

    /// The smallest object of each component.
    pub fn bases(&self) -> &[usize] {
        &self.bases
    }

    pub fn mark(&self, h: usize, k: usize) -> u64 {
        self.marks[h][k]
    }

    pub fn matrix(&self) -> Vec<Vec<u64>> {
        self.marks.clone()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.marks
    }

    /// The coset set `G/K` of the `k`-th representative.
    pub fn coset(&self, k: usize) -> &CosetGSet {
        &self.cosets[k]
    }

    /// Class index of a one-object subgroupoid `S` at `s`, and an arrow `d: s -> b` with
    /// `dSd⁻¹` equal to the representative at `b`.
    pub fn classify(&self, s: &OneObjectSubgroupoid) -> (usize, usize) {
        let g = &*self.groupoid;
        let c = self.connector[s.base()];
        let mut moved: Vec<usize> = s.arrows().iter().map(|&h| g.conjugate(c, h)).collect();
        moved.sort_unstable();
        let (k, l) = self.lookup[g.component_of(s.base())][&moved];
        (k, g.mul(l, c))
    }

    /// Row and column label `component:object|H{arrows}`.
    pub fn label(&self, k: usize) -> String {
        let r = &self.reps[k];
        format!(
            "{}:{}|H{}",
            self.block_of(k),
            self.groupoid.object_label(r.base()),
            r.arrow_list_label()
        )
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|k| self.label(k)).collect()
    }

    pub fn export(&self) -> MarkTableExport {
        MarkTableExport {
            order: self.labels(),
            blocks: self.blocks.iter().map(|b| [b.start, b.end]).collect(),
            matrix: self.marks.clone(),
        }
    }
}
