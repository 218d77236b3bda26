//! Finite parameter grids for sweeps.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::model::{ParamVec, VecFamily};
use crate::ParamFamily;

/// Every valid `(n, S, R)` with `dim ∈ dims`, `1 ≤ n_i ≤ n_max`, family
/// entries in `0..=entry_max` and family sizes in `1..=family_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dims: Vec<usize>,
    pub n_max: usize,
    pub entry_max: usize,
    pub family_max: usize,
    /// Keep one representative per orbit under permuting colors.
    pub up_to_color_symmetry: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            dims: vec![1, 2],
            n_max: 5,
            entry_max: 3,
            family_max: 2,
            up_to_color_symmetry: true,
        }
    }
}

fn families(d: usize, entry_max: usize, family_max: usize) -> Vec<VecFamily> {
    let vectors: Vec<ParamVec> = (0..d)
        .map(|_| 0..=entry_max)
        .multi_cartesian_product()
        .map(ParamVec::new)
        .collect();
    (1..=family_max)
        .flat_map(|k| vectors.iter().cloned().combinations(k))
        .map(|members| VecFamily::new(members).expect("distinct members"))
        .collect()
}

fn permute(v: &ParamVec, perm: &[usize]) -> ParamVec {
    ParamVec::new(perm.iter().map(|&p| v[p]).collect())
}

fn permute_family(f: &VecFamily, perm: &[usize]) -> VecFamily {
    VecFamily::new(f.iter().map(|v| permute(v, perm)).collect()).expect("permutation keeps members distinct")
}

type Key = (ParamVec, VecFamily, VecFamily);

fn is_canonical(key: &Key) -> bool {
    let d = key.0.dim();
    (0..d).permutations(d).all(|p| {
        let image = (permute(&key.0, &p), permute_family(&key.1, &p), permute_family(&key.2, &p));
        *key <= image
    })
}

impl GridSpec {
    /// Points in a fixed order: by dimension, then `n`, then `S`, then `R`.
    pub fn points(&self) -> Vec<ParamFamily> {
        let mut out = Vec::new();
        for &d in &self.dims {
            let fams = families(d, self.entry_max, self.family_max);
            let hosts = (0..d).map(|_| 1..=self.n_max).multi_cartesian_product().map(ParamVec::new);
            for n in hosts {
                for s in &fams {
                    if !s.iter().all(|sv| sv.is_below(&n)) {
                        continue;
                    }
                    for r in &fams {
                        if !r.iter().all(|rv| s.iter().all(|sv| sv.is_below(rv))) {
                            continue;
                        }
                        let key = (n.clone(), s.clone(), r.clone());
                        if self.up_to_color_symmetry && !is_canonical(&key) {
                            continue;
                        }
                        out.push(ParamFamily::new(key.0, key.1, key.2).expect("filtered to valid points"));
                    }
                }
            }
        }
        out
    }
}
