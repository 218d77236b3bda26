//! Exact closed forms for colored and uncolored weak saturation numbers
//! of tensor products of cliques.
//!
//! All values are arbitrary-precision integers. Binomials follow the
//! total convention `C(a, b) = 0` whenever `b < 0` or `a < b` (this covers
//! negative `a`), and empty products are `1`.

mod conv;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedSub, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::model::{ModelError, ParamFamily, ParamVec, VecFamily};
use crate::serde_util::count_as_number;

pub use conv::{
    all_index_functions, conv_set, convolve, permutations, reduction_conditions,
    reduction_family, IndexFunction, ReductionChecks, DEFAULT_CONV_CAP,
};

/// Exact nonnegative count.
pub type Count = BigUint;

/// Inclusion–exclusion over more patterns than this is refused.
pub const MAX_INCLUSION_EXCLUSION: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension {d} exceeds the enumeration cap {cap}")]
    CapExceeded { d: usize, cap: usize },
    #[error("inclusion-exclusion over {size} patterns exceeds the cap {cap}")]
    FamilyTooLarge { size: usize, cap: usize },
}

/// `C(a, b)` with the total convention.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < b {
        return BigUint::zero();
    }
    // a ≥ b ≥ 0 here
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for k in 0..b {
        acc *= BigUint::from((a - k) as u64);
        acc /= BigUint::from((k + 1) as u64);
    }
    acc
}

fn binom_u(a: usize, b: usize) -> BigUint {
    binomial(a as i64, b as i64)
}

/// `↓S`: every nonnegative vector lying below some member of `S`.
pub fn down_closure(s: &VecFamily) -> Vec<ParamVec> {
    let mut out = BTreeSet::new();
    for sv in s {
        let mut cur = vec![0usize; sv.dim()];
        loop {
            out.insert(ParamVec::new(cur.clone()));
            // odometer step inside the box [0, sv]
            let mut i = 0;
            while i < cur.len() {
                if cur[i] < sv[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == cur.len() {
                break;
            }
        }
    }
    out.into_iter().collect()
}

/// `|E(K[S;n])| = Σ_{s∈S} Π_i C(n_i, s_i)`.
pub fn host_edge_count(n: &ParamVec, s: &VecFamily) -> Count {
    s.iter()
        .map(|sv| {
            n.iter()
                .zip(sv.iter())
                .map(|(&a, &b)| binom_u(a, b))
                .product::<BigUint>()
        })
        .sum()
}

/// `Π_{i : m_i ≠ 0} C(m_i − 1 + n_i − top_i, m_i)`.
fn shifted_product(m: &ParamVec, n: &ParamVec, top: &[usize]) -> BigUint {
    (0..m.dim())
        .filter(|&i| m[i] != 0)
        .map(|i| {
            let mi = m[i] as i64;
            binomial(mi - 1 + n[i] as i64 - top[i] as i64, mi)
        })
        .product()
}

fn check_ie_size(size: usize) -> Result<(), FormulaError> {
    if size > MAX_INCLUSION_EXCLUSION {
        return Err(FormulaError::FamilyTooLarge {
            size,
            cap: MAX_INCLUSION_EXCLUSION,
        });
    }
    Ok(())
}

/// Calls `visit(|Q|, max_Q)` for every non-empty subfamily `Q` of
/// `members`, where `max_Q` is the componentwise maximum.
fn for_each_subfamily(members: &[ParamVec], d: usize, mut visit: impl FnMut(usize, &[usize])) {
    fn rec(
        members: &[ParamVec],
        k: usize,
        size: usize,
        top: &mut Vec<usize>,
        visit: &mut dyn FnMut(usize, &[usize]),
    ) {
        if k == members.len() {
            if size > 0 {
                visit(size, top);
            }
            return;
        }
        rec(members, k + 1, size, top, visit);
        let saved = top.clone();
        for (t, &x) in top.iter_mut().zip(members[k].iter()) {
            *t = (*t).max(x);
        }
        rec(members, k + 1, size + 1, top, visit);
        *top = saved;
    }
    let mut top = vec![0; d];
    rec(members, 0, 0, &mut top, &mut visit);
}

fn into_count(v: BigInt) -> Count {
    assert!(!v.is_negative(), "inclusion-exclusion produced a negative count");
    v.to_biguint().expect("nonnegative")
}

/// `q(n, S, R)`: the dimension bound of the rank certificate.
///
/// `Σ_{m∈↓S} Σ_{∅≠Q⊆R(n)} (−1)^{|Q|+1} Π_{i:m_i≠0} C(m_i − 1 + n_i − max_{r∈Q} r_i, m_i)`,
/// and `0` when no pattern fits.
pub fn q_value(family: &ParamFamily) -> Result<Count, FormulaError> {
    let fit = family.fitting_patterns();
    check_ie_size(fit.len())?;
    let down = down_closure(family.s());
    let n = family.n();
    let mut total = BigInt::zero();
    for_each_subfamily(&fit, family.dim(), |size, top| {
        let inner: BigUint = down.iter().map(|m| shifted_product(m, n, top)).sum();
        let inner = BigInt::from(inner);
        if size % 2 == 1 {
            total += inner;
        } else {
            total -= inner;
        }
    });
    Ok(into_count(total))
}

/// Sufficient conditions under which the formula is known to be attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TightCase {
    /// `R` has a componentwise minimum.
    MinR,
    /// `S` has a componentwise maximum.
    MaxS,
}

/// Colored weak saturation lower bound `|E(K[S;n])| − q(n,S,R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwsatFormula {
    #[serde(serialize_with = "count_as_number")]
    pub edges: Count,
    #[serde(serialize_with = "count_as_number")]
    pub q: Count,
    #[serde(serialize_with = "count_as_number")]
    pub cwsat: Count,
    pub tight_guaranteed: bool,
}

pub fn cwsat_formula(family: &ParamFamily) -> Result<CwsatFormula, FormulaError> {
    let edges = host_edge_count(family.n(), family.s());
    let q = q_value(family)?;
    let cwsat = edges
        .checked_sub(&q)
        .expect("q(n,S,R) never exceeds the host edge count");
    Ok(CwsatFormula {
        edges,
        q,
        cwsat,
        tight_guaranteed: tight_case(family).is_some(),
    })
}

/// Which tightness hypothesis holds, checking the maximum-`s` case first.
pub fn tight_case(family: &ParamFamily) -> Option<TightCase> {
    if family.s().componentwise_max().is_some() {
        Some(TightCase::MaxS)
    } else if family.r().componentwise_min().is_some() {
        Some(TightCase::MinR)
    } else {
        None
    }
}

/// Single-pattern closed form `Σ_{m∈↓S} Π_{i:m_i≠0} C(m_i − 1 + n_i − r_i, m_i)`.
pub fn q_single(n: &ParamVec, s: &VecFamily, r: &ParamVec) -> Result<Count, FormulaError> {
    if r.dim() != n.dim() || s.dim() != n.dim() {
        return Err(ModelError::DimensionMismatch {
            expected: n.dim(),
            found: if r.dim() != n.dim() { r.dim() } else { s.dim() },
        }
        .into());
    }
    if !r.is_below(n) || s.iter().any(|sv| !sv.is_below(r)) {
        return Err(FormulaError::Precondition(format!(
            "need n ≥ r ≥ s for every s, got n = {n}, r = {r}, S = {s:?}"
        )));
    }
    Ok(down_closure(s)
        .iter()
        .map(|m| shifted_product(m, n, r))
        .sum())
}

fn constant_vec(d: usize, s: usize) -> ParamVec {
    ParamVec::new(vec![s; d])
}

fn check_symmetric(n: &ParamVec, s: usize, r: &VecFamily) -> Result<(), FormulaError> {
    if r.dim() != n.dim() {
        return Err(ModelError::DimensionMismatch {
            expected: n.dim(),
            found: r.dim(),
        }
        .into());
    }
    let sv = constant_vec(n.dim(), s);
    if !sv.is_below(n) || r.iter().any(|rv| !sv.is_below(rv)) {
        return Err(FormulaError::Precondition(format!(
            "need n_i ≥ {s} and r_i ≥ {s} for every coordinate"
        )));
    }
    Ok(())
}

/// `R∘S_d`: every coordinate permutation of every member of `R`.
pub fn permuted_family(r: &VecFamily) -> Result<VecFamily, FormulaError> {
    let d = r.dim();
    if d > DEFAULT_CONV_CAP {
        return Err(FormulaError::CapExceeded {
            d,
            cap: DEFAULT_CONV_CAP,
        });
    }
    let perms = permutations(d);
    Ok(VecFamily::from_iter_dedup(
        r.iter()
            .flat_map(|rv| perms.iter().map(move |f| convolve(rv, f))),
    )?)
}

/// `q̃(n, s, R)`: tuples `T ∈ Π_i C([n_i], s)` such that for some `r ∈ R`
/// and permutation `σ`, `T_i ⊆ [n_i] ∖ [r_{σ(i)} − s]` for all `i`.
/// Evaluated by inclusion–exclusion over `R∘S_d`.
pub fn q_tilde(n: &ParamVec, s: usize, r: &VecFamily) -> Result<Count, FormulaError> {
    check_symmetric(n, s, r)?;
    let perm = permuted_family(r)?;
    check_ie_size(perm.len())?;
    let mut total = BigInt::zero();
    for_each_subfamily(perm.members(), n.dim(), |size, top| {
        let term: BigUint = (0..n.dim())
            .map(|i| binomial(n[i] as i64 - top[i] as i64 + s as i64, s as i64))
            .product();
        let term = BigInt::from(term);
        if size % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    });
    Ok(into_count(total))
}

/// Uncolored `wsat(K[s;n], K[s;R])` for a constant profile `s`.
pub fn wsat_formula_symmetric(n: &ParamVec, s: usize, r: &VecFamily) -> Result<Count, FormulaError> {
    check_symmetric(n, s, r)?;
    if s == 0 {
        let total = n.sum();
        let fits = r.iter().any(|rv| rv.sum() <= total);
        return Ok(if fits { Count::zero() } else { Count::one() });
    }
    let edges: BigUint = n.iter().map(|&ni| binom_u(ni, s)).product();
    let qt = q_tilde(n, s, r)?;
    Ok(edges
        .checked_sub(&qt)
        .expect("q̃ never exceeds the host edge count"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[usize]) -> ParamVec {
        ParamVec::new(v.to_vec())
    }

    fn fam(vs: &[&[usize]]) -> VecFamily {
        VecFamily::new(vs.iter().map(|v| pv(v)).collect()).unwrap()
    }

    fn family(n: &[usize], s: &[&[usize]], r: &[&[usize]]) -> ParamFamily {
        ParamFamily::new(pv(n), fam(s), fam(r)).unwrap()
    }

    fn c(x: u64) -> Count {
        Count::from(x)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), c(10));
        assert_eq!(binomial(5, 0), c(1));
        assert_eq!(binomial(0, 0), c(1));
        assert_eq!(binomial(2, 3), c(0));
        assert_eq!(binomial(-1, 0), c(0));
        assert_eq!(binomial(-3, 2), c(0));
        assert_eq!(binomial(4, -1), c(0));
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigUint>().unwrap());
    }

    #[test]
    fn down_closure_examples() {
        assert_eq!(down_closure(&fam(&[&[2]])), vec![pv(&[0]), pv(&[1]), pv(&[2])]);
        assert_eq!(
            down_closure(&fam(&[&[1, 0], &[0, 1]])),
            vec![pv(&[0, 0]), pv(&[0, 1]), pv(&[1, 0])]
        );
        assert_eq!(down_closure(&fam(&[&[2, 1]])).len(), 6);
    }

    #[test]
    fn q_examples() {
        assert_eq!(
            q_value(&family(&[4, 4], &[&[1, 0], &[0, 1]], &[&[2, 1], &[1, 2]])).unwrap(),
            c(7)
        );
        assert_eq!(q_value(&family(&[4, 4], &[&[2, 1]], &[&[2, 2]])).unwrap(), c(18));
        assert_eq!(q_value(&family(&[3, 2], &[&[1, 1], &[2, 0]], &[&[3, 2]])).unwrap(), c(1));
        assert_eq!(q_value(&family(&[4], &[&[2]], &[&[3]])).unwrap(), c(3));
        // no pattern fits
        assert_eq!(q_value(&family(&[2], &[&[1]], &[&[3]])).unwrap(), c(0));
    }

    #[test]
    fn cwsat_examples() {
        let f = cwsat_formula(&family(&[4, 4], &[&[2, 1]], &[&[2, 2]])).unwrap();
        assert_eq!((f.cwsat.clone(), f.tight_guaranteed), (c(6), true));
        let f = cwsat_formula(&family(&[4, 4], &[&[1, 0], &[0, 1]], &[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!((f.cwsat.clone(), f.tight_guaranteed), (c(1), false));
        let f = cwsat_formula(&family(&[3, 3], &[&[1, 1]], &[&[2, 2]])).unwrap();
        assert_eq!(f.cwsat, c(5));
        let f = cwsat_formula(&family(&[2], &[&[1]], &[&[3]])).unwrap();
        assert_eq!(f.cwsat, f.edges);
    }

    #[test]
    fn q_single_examples() {
        assert_eq!(q_single(&pv(&[3, 3]), &fam(&[&[1, 1]]), &pv(&[2, 2])).unwrap(), c(4));
        assert_eq!(q_single(&pv(&[3, 4]), &fam(&[&[1, 1], &[0, 2]]), &pv(&[3, 4])).unwrap(), c(1));
        assert_eq!(q_single(&pv(&[5]), &fam(&[&[2]]), &pv(&[3])).unwrap(), c(6));
        assert!(matches!(
            q_single(&pv(&[2]), &fam(&[&[2]]), &pv(&[3])),
            Err(FormulaError::Precondition(_))
        ));
    }

    #[test]
    fn q_tilde_examples() {
        assert_eq!(q_tilde(&pv(&[4]), 2, &fam(&[&[3]])).unwrap(), c(3));
        assert_eq!(q_tilde(&pv(&[3, 3]), 1, &fam(&[&[2, 2]])).unwrap(), c(4));
        assert_eq!(q_tilde(&pv(&[4, 4]), 2, &fam(&[&[4, 4]])).unwrap(), c(1));
        assert!(matches!(
            q_tilde(&pv(&[1, 4]), 2, &fam(&[&[2, 2]])),
            Err(FormulaError::Precondition(_))
        ));
    }

    #[test]
    fn symmetric_wsat_examples() {
        assert_eq!(wsat_formula_symmetric(&pv(&[4]), 2, &fam(&[&[3]])).unwrap(), c(3));
        assert_eq!(wsat_formula_symmetric(&pv(&[3, 3]), 1, &fam(&[&[2, 2]])).unwrap(), c(5));
        assert_eq!(wsat_formula_symmetric(&pv(&[1, 1]), 0, &fam(&[&[3, 3]])).unwrap(), c(1));
        assert_eq!(wsat_formula_symmetric(&pv(&[3, 3]), 0, &fam(&[&[3, 3]])).unwrap(), c(0));
    }
}
