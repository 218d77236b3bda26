//! The two extremal start sets: one for pattern families with a
//! componentwise minimum, one for profile families with a componentwise
//! maximum. Each comes with an addition order that percolates.
//!
//! Index sets below are 1-based, `[k] = {1, …, k}`.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{down_closure, q_value, Count, FormulaError};
use crate::model::{build_host, ColoredHypergraph, EdgeMask, EdgeSet, ModelError, ParamVec, PartsChoice, VertexUniverse};
use crate::percolation::{PercolationTrace, TraceJson, TraceStep};
use crate::serde_util::count_as_number;
use crate::ParamFamily;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("R has no componentwise minimum")]
    NoMinimum,
    #[error("minimum pattern {r} does not fit in host {n}")]
    MinimumDoesNotFit { r: ParamVec, n: ParamVec },
    #[error("S has no componentwise maximum")]
    NoMaximum,
    #[error("no pattern of R fits in the host")]
    NoFittingPattern,
    #[error("no admissible profile above {0}")]
    NoAdmissibleProfile(ParamVec),
    #[error("chosen profile {s} for {m} is not an admissible member of S")]
    InadmissibleChoice { m: ParamVec, s: ParamVec },
}

/// How the minimum-pattern construction picks, for each `m` in the
/// down-closure, a profile `s_m ∈ S` with `s_m ≥ m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum SChoice {
    #[default]
    LexLeast,
    LexGreatest,
    Explicit(BTreeMap<ParamVec, ParamVec>),
}

/// Why an edge was removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RemovalLabel {
    /// Removed for down-closure element `m`, tail sets `t` (descending).
    MinR { m: ParamVec, t: Vec<Vec<usize>> },
    /// Removed for pattern `r`, parts `w` (descending).
    MaxS { r: ParamVec, w: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub edge: EdgeMask,
    pub label: RemovalLabel,
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub host: ColoredHypergraph,
    /// The surviving edges.
    pub kept: EdgeSet,
    /// Removed edges in addition order.
    pub removed: Vec<Removal>,
    pub order: PercolationTrace,
    /// The closed-form value `|E| − q`.
    pub formula: Count,
}

#[derive(Serialize)]
pub struct ConstructionJson {
    #[serde(flatten)]
    pub trace: TraceJson,
    pub removed_count: usize,
    #[serde(serialize_with = "count_as_number")]
    pub formula: Count,
}

impl ConstructionResult {
    pub fn to_json(&self) -> ConstructionJson {
        ConstructionJson {
            trace: TraceJson::new(self.host.universe(), &self.kept, &self.order),
            removed_count: self.removed.len(),
            formula: self.formula.clone(),
        }
    }
}

/// `{a, …, b}` as a vector (empty when `a > b`).
fn interval(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn class_set(u: &VertexUniverse, color: usize, one_based: impl IntoIterator<Item = usize>) -> EdgeMask {
    let zero: Vec<usize> = one_based.into_iter().map(|x| x - 1).collect();
    u.class_subset(color, &zero).expect("indices inside the class")
}

fn descending(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All tuples `(X_1, …, X_d)` with `X_i` an `k_i`-subset of `pools[i]`,
/// each subset returned ascending.
fn product_of_subsets(pools: &[Vec<usize>], ks: &[usize]) -> Vec<Vec<Vec<usize>>> {
    pools
        .iter()
        .zip(ks)
        .map(|(pool, &k)| pool.iter().copied().combinations(k).collect::<Vec<_>>())
        .multi_cartesian_product()
        .collect()
}

fn parts_from(u: &VertexUniverse, sets: &[Vec<usize>]) -> PartsChoice {
    let zero: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(|x| x - 1).collect()).collect();
    PartsChoice::colored(u, &zero).expect("parts inside their classes")
}

fn finish(
    family: &ParamFamily,
    host: ColoredHypergraph,
    mut labelled: Vec<(Vec<Vec<usize>>, Removal, ParamVec, PartsChoice)>,
) -> Result<ConstructionResult, ConstructError> {
    labelled.sort_by(|a, b| a.0.cmp(&b.0));
    let mut kept = host.edges().clone();
    let mut removed = Vec::with_capacity(labelled.len());
    let mut steps = Vec::with_capacity(labelled.len());
    for (_, removal, pattern, witness) in labelled {
        let fresh = kept.remove(&removal.edge);
        debug_assert!(fresh, "edge removed twice");
        steps.push(TraceStep {
            edge: removal.edge,
            pattern,
            witness,
        });
        removed.push(removal);
    }
    let edges = Count::from(host.edge_count());
    let formula = edges - q_value(family)?;
    Ok(ConstructionResult {
        host,
        kept,
        removed,
        order: PercolationTrace { steps },
        formula,
    })
}

fn pick_profile(family: &ParamFamily, m: &ParamVec, choice: &SChoice) -> Result<ParamVec, ConstructError> {
    let mut admissible = family.s().iter().filter(|s| m.is_below(s));
    let picked = match choice {
        SChoice::LexLeast => admissible.next().cloned(),
        SChoice::LexGreatest => admissible.next_back().cloned(),
        SChoice::Explicit(map) => match map.get(m) {
            Some(s) if family.s().contains(s) && m.is_below(s) => Some(s.clone()),
            Some(s) => {
                return Err(ConstructError::InadmissibleChoice {
                    m: m.clone(),
                    s: s.clone(),
                })
            }
            None => admissible.next().cloned(),
        },
    };
    picked.ok_or_else(|| ConstructError::NoAdmissibleProfile(m.clone()))
}

/// Start set for a pattern family with componentwise minimum `r̃`.
///
/// For every `m` below some profile, removes the edges
/// `⋃_i (T_i ∪ [s_{m,i} − m_i])` with `T_i` an `m_i`-subset of
/// `[n_i] ∖ [r̃_i − m_i + 1]`. Edges are re-added in increasing order of
/// `(T_1, …, T_d)`, each `T_i` listed descending, using the copy on
/// `[r̃_i − m_i] ∪ T_i`.
pub fn construct_min_r(family: &ParamFamily, choice: &SChoice) -> Result<ConstructionResult, ConstructError> {
    let rt = family.r().componentwise_min().ok_or(ConstructError::NoMinimum)?.clone();
    let n = family.n();
    if !rt.is_below(n) {
        return Err(ConstructError::MinimumDoesNotFit { r: rt, n: n.clone() });
    }
    let host = build_host(n, family.s())?;
    let u = host.universe().clone();
    let d = family.dim();
    let mut labelled = Vec::new();
    for m in down_closure(family.s()) {
        let sm = pick_profile(family, &m, choice)?;
        let pools: Vec<Vec<usize>> = (0..d).map(|i| interval(rt[i] - m[i] + 2, n[i])).collect();
        for tails in product_of_subsets(&pools, &m) {
            let edge = (0..d).fold(EdgeMask::EMPTY, |acc, i| {
                acc | class_set(&u, i, tails[i].iter().copied().chain(interval(1, sm[i] - m[i])))
            });
            let witness: Vec<Vec<usize>> = (0..d)
                .map(|i| interval(1, rt[i] - m[i]).into_iter().chain(tails[i].iter().copied()).collect())
                .collect();
            let key: Vec<Vec<usize>> = tails.iter().cloned().map(descending).collect();
            let removal = Removal {
                edge,
                label: RemovalLabel::MinR {
                    m: m.clone(),
                    t: key.clone(),
                },
            };
            labelled.push((key, removal, rt.clone(), parts_from(&u, &witness)));
        }
    }
    finish(family, host, labelled)
}

/// Start set for a profile family with componentwise maximum `s̃`.
///
/// Removes every edge `⋃_i W_i` with `W_i` an `s̃_i`-subset of
/// `[n_i] ∖ [r_i − s̃_i]` for some fitting `r`. Edges are re-added in
/// increasing order of `(W_1, …, W_d)`, each listed descending, using the
/// copy on `[r_i − s̃_i] ∪ W_i` for the first such `r`.
pub fn construct_max_s(family: &ParamFamily) -> Result<ConstructionResult, ConstructError> {
    let st = family.s().componentwise_max().ok_or(ConstructError::NoMaximum)?.clone();
    let fitting = family.fitting_patterns();
    if fitting.is_empty() {
        return Err(ConstructError::NoFittingPattern);
    }
    let n = family.n();
    let host = build_host(n, family.s())?;
    let u = host.universe().clone();
    let d = family.dim();
    let mut seen = EdgeSet::new();
    let mut labelled = Vec::new();
    for r in &fitting {
        let pools: Vec<Vec<usize>> = (0..d).map(|i| interval(r[i] - st[i] + 1, n[i])).collect();
        for parts in product_of_subsets(&pools, &st) {
            let edge = (0..d).fold(EdgeMask::EMPTY, |acc, i| acc | class_set(&u, i, parts[i].iter().copied()));
            if !seen.insert(edge) {
                continue;
            }
            let witness: Vec<Vec<usize>> = (0..d)
                .map(|i| interval(1, r[i] - st[i]).into_iter().chain(parts[i].iter().copied()).collect())
                .collect();
            let key: Vec<Vec<usize>> = parts.iter().cloned().map(descending).collect();
            let removal = Removal {
                edge,
                label: RemovalLabel::MaxS {
                    r: r.clone(),
                    w: key.clone(),
                },
            };
            labelled.push((key, removal, r.clone(), parts_from(&u, &witness)));
        }
    }
    finish(family, host, labelled)
}

/// Recovers `(m, T)` from an edge removed by [`construct_min_r`]: in each
/// color take the longest prefix `[l]` of the edge, the rest is `T_i`.
pub fn min_r_label(u: &VertexUniverse, edge: EdgeMask) -> (ParamVec, Vec<Vec<usize>>) {
    let mut m = Vec::with_capacity(u.dim());
    let mut tails = Vec::with_capacity(u.dim());
    for i in 0..u.dim() {
        let idx: Vec<usize> = u.class_indices(edge, i).into_iter().map(|x| x + 1).collect();
        let prefix = idx.iter().enumerate().take_while(|(k, &x)| x == k + 1).count();
        let tail = descending(idx[prefix..].to_vec());
        m.push(tail.len());
        tails.push(tail);
    }
    (ParamVec::new(m), tails)
}
