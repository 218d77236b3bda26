//! Convolution of parameter vectors along index functions, and the
//! colored-to-uncolored reduction built on it.

use serde::Serialize;

use super::FormulaError;
use crate::model::{ParamVec, VecFamily};

/// Default cap on `d` for the `d^d` enumeration of index functions.
pub const DEFAULT_CONV_CAP: usize = 8;

/// A total map `[d] → [d]`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IndexFunction {
    table: Vec<usize>,
}

impl IndexFunction {
    pub fn new(table: Vec<usize>) -> Result<Self, FormulaError> {
        let d = table.len();
        if table.iter().any(|&x| x >= d) {
            return Err(FormulaError::Precondition(format!(
                "index function {table:?} leaves [0, {d})"
            )));
        }
        Ok(IndexFunction { table })
    }

    pub fn identity(d: usize) -> Self {
        IndexFunction {
            table: (0..d).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x], true))
    }
}

/// `(v∘f)_i = Σ_{j ∈ f⁻¹(i)} v_j`.
pub fn convolve(v: &ParamVec, f: &IndexFunction) -> ParamVec {
    assert_eq!(v.dim(), f.dim(), "convolution needs matching lengths");
    let mut out = vec![0; v.dim()];
    for (j, &x) in v.iter().enumerate() {
        out[f.apply(j)] += x;
    }
    ParamVec::new(out)
}

fn check_cap(d: usize, cap: usize) -> Result<(), FormulaError> {
    if d > cap {
        return Err(FormulaError::CapExceeded { d, cap });
    }
    Ok(())
}

/// All `d^d` index functions in lexicographic order of their tables.
pub fn all_index_functions(d: usize) -> impl Iterator<Item = IndexFunction> {
    let total = d.checked_pow(d as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut table = vec![0; d];
        for slot in table.iter_mut().rev() {
            *slot = code % d;
            code /= d;
        }
        IndexFunction { table }
    })
}

/// All permutations of `[d]` in lexicographic order.
pub fn permutations(d: usize) -> Vec<IndexFunction> {
    use itertools::Itertools;
    (0..d)
        .permutations(d)
        .map(|table| IndexFunction { table })
        .collect()
}

fn preserves(s: &VecFamily, f: &IndexFunction) -> bool {
    s.iter().all(|sv| s.contains(&convolve(sv, f)))
}

/// `Conv(S) = { f : [d] → [d] | s∘f ∈ S for all s ∈ S }`.
pub fn conv_set(s: &VecFamily, cap: usize) -> Result<Vec<IndexFunction>, FormulaError> {
    check_cap(s.dim(), cap)?;
    Ok(all_index_functions(s.dim())
        .filter(|f| preserves(s, f))
        .collect())
}

/// `R∘(Conv(S) ∩ S_d)`: the pattern family seen by colored copies when
/// uncolored copies may permute colors compatibly with `S`.
pub fn reduction_family(r: &VecFamily, s: &VecFamily, cap: usize) -> Result<VecFamily, FormulaError> {
    check_cap(s.dim(), cap)?;
    if r.dim() != s.dim() {
        return Err(crate::model::ModelError::DimensionMismatch {
            expected: s.dim(),
            found: r.dim(),
        }
        .into());
    }
    let perms: Vec<IndexFunction> = permutations(s.dim())
        .into_iter()
        .filter(|f| preserves(s, f))
        .collect();
    Ok(VecFamily::from_iter_dedup(
        r.iter()
            .flat_map(|rv| perms.iter().map(move |f| convolve(rv, f))),
    )?)
}

/// The three hypotheses of the colored-to-uncolored reduction, evaluated
/// separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionChecks {
    /// `Conv(S) ⊆ S_d`.
    pub conv_is_permutations: bool,
    /// No coordinate where two profiles differ by exactly one.
    pub no_unit_gaps: bool,
    /// Every `(i, r)` has some `s` with `s_i ≠ 0` and `r_i ≥ s_i + 1`.
    pub room_in_every_part: bool,
}

impl ReductionChecks {
    pub fn all(&self) -> bool {
        self.conv_is_permutations && self.no_unit_gaps && self.room_in_every_part
    }
}

pub fn reduction_conditions(
    s: &VecFamily,
    r: &VecFamily,
    cap: usize,
) -> Result<ReductionChecks, FormulaError> {
    let d = s.dim();
    let conv_is_permutations = conv_set(s, cap)?.iter().all(IndexFunction::is_permutation);
    let no_unit_gaps = (0..d).all(|i| {
        s.iter()
            .all(|a| s.iter().all(|b| a[i].abs_diff(b[i]) != 1))
    });
    let room_in_every_part = (0..d).all(|i| {
        r.iter()
            .all(|rv| s.iter().any(|sv| sv[i] != 0 && rv[i] > sv[i]))
    });
    Ok(ReductionChecks {
        conv_is_permutations,
        no_unit_gaps,
        room_in_every_part,
    })
}
