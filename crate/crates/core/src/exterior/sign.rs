//! Sign bookkeeping for interior products of per-color interval blocks.
//!
//! For `r ≥ s ≥ m` and tails `T_i` of size `m_i` inside
//! `[m_i − 1] ∪ ([n_i] ∖ [r_i])`,
//!
//! ```text
//! ⋀_i e_{[r_i]∖[s_i]}  ⌟  ⋀_i e_{T_i ∪ [r_i]∖[m_i]}  =  ± ⋀_i e_{T_i ∪ [s_i]∖[m_i]}
//! ```
//!
//! and the sign exponent splits as `a(r, s) + b(r, T) + c(s, T)`, where
//!
//! ```text
//! a(r, s) =  Σ_i r_i Σ_{j ∈ J(i)} s_j
//! b(r, T) =  Σ_i r_i |T_i ∖ [m_i − 1]|
//! c(s, T) = −Σ_i s_i (|T_i ∖ [m_i − 1]| + Σ_{j ∈ J(i)} s_j)
//! ```
//!
//! With colors ordered increasingly the split holds for `J(i) = {j > i}`.
//! Taking `J(i)` to be every other color agrees with it in dimension one
//! only; that variant is kept as [`SignRule::AllOtherColors`] so the
//! difference can be examined.

use super::{ExtElement, ExteriorError};
use crate::model::{EdgeMask, ParamVec, VertexUniverse};

/// Which colors `j` enter the cross sums for color `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignRule {
    /// `j > i`.
    #[default]
    LaterColors,
    /// `j ≠ i`.
    AllOtherColors,
}

impl SignRule {
    fn cross(self, v: &[usize], i: usize) -> i64 {
        let sum: usize = match self {
            SignRule::LaterColors => v[i + 1..].iter().sum(),
            SignRule::AllOtherColors => v.iter().sum::<usize>() - v[i],
        };
        sum as i64
    }

    /// `a(r, s)`, the part of the exponent depending on both `r` and `s`.
    pub fn pattern_profile_exponent(self, r: &[usize], s: &[usize]) -> i64 {
        (0..r.len()).map(|i| r[i] as i64 * self.cross(s, i)).sum()
    }
}

fn check(r: &ParamVec, s: &ParamVec, m: &ParamVec, tails: &[Vec<usize>]) -> Result<Vec<i64>, ExteriorError> {
    let d = r.dim();
    if s.dim() != d || m.dim() != d || tails.len() != d {
        return Err(ExteriorError::Precondition("dimensions disagree".into()));
    }
    let mut tail_sizes = Vec::with_capacity(d);
    for i in 0..d {
        if !(r[i] >= s[i] && s[i] >= m[i]) {
            return Err(ExteriorError::Precondition(format!("need r ≥ s ≥ m in color {}", i + 1)));
        }
        let t = &tails[i];
        let mut sorted = t.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != m[i] || t.len() != m[i] {
            return Err(ExteriorError::Precondition(format!("tail {} must have {} distinct elements", i + 1, m[i])));
        }
        if t.iter().any(|&x| x == 0 || (x >= m[i] && x <= r[i])) {
            return Err(ExteriorError::Precondition(format!(
                "tail {} must lie in [m−1] ∪ ([n]∖[r])",
                i + 1
            )));
        }
        tail_sizes.push(t.iter().filter(|&&x| x + 1 > m[i]).count() as i64);
    }
    Ok(tail_sizes)
}

/// The sign exponent `a(r,s) + b(r,T) + c(s,T)` modulo 2. Tails are
/// 1-based index sets.
pub fn sign_decompose_exponent(
    r: &ParamVec,
    s: &ParamVec,
    m: &ParamVec,
    tails: &[Vec<usize>],
    rule: SignRule,
) -> Result<u8, ExteriorError> {
    let tail = check(r, s, m, tails)?;
    let a = rule.pattern_profile_exponent(r, s);
    let b: i64 = (0..r.dim()).map(|i| r[i] as i64 * tail[i]).sum();
    let c: i64 = -(0..r.dim())
        .map(|i| s[i] as i64 * (tail[i] + rule.cross(s, i)))
        .sum::<i64>();
    Ok((a + b + c).rem_euclid(2) as u8)
}

/// Both sides computed directly: the interior product on the left and the
/// unsigned wedge on the right, over the universe with class sizes `n`.
pub fn sign_decompose_sides(
    n: &ParamVec,
    r: &ParamVec,
    s: &ParamVec,
    m: &ParamVec,
    tails: &[Vec<usize>],
) -> Result<(ExtElement, ExtElement), ExteriorError> {
    check(r, s, m, tails)?;
    let u = VertexUniverse::new(n.clone())?;
    if !r.is_below(n) || tails.iter().zip(n.iter()).any(|(t, &ni)| t.iter().any(|&x| x > ni)) {
        return Err(ExteriorError::Precondition("pattern or tails leave the host".into()));
    }
    let block = |color: usize, one_based: Vec<usize>| -> Result<ExtElement, ExteriorError> {
        let zero: Vec<usize> = one_based.into_iter().map(|x| x - 1).collect();
        ExtElement::basis(u.total(), u.class_subset(color, &zero)?)
    };
    let wedge_all = |sets: Vec<Vec<usize>>| -> Result<ExtElement, ExteriorError> {
        sets.into_iter()
            .enumerate()
            .try_fold(ExtElement::one(u.total()), |acc, (i, set)| acc.wedge(&block(i, set)?))
    };
    let d = r.dim();
    let left = wedge_all((0..d).map(|i| (s[i] + 1..=r[i]).collect()).collect())?;
    let right = wedge_all(
        (0..d)
            .map(|i| tails[i].iter().copied().chain(m[i] + 1..=r[i]).collect())
            .collect(),
    )?;
    let target = wedge_all(
        (0..d)
            .map(|i| tails[i].iter().copied().chain(m[i] + 1..=s[i]).collect())
            .collect(),
    )?;
    Ok((left.interior(&right)?, target))
}

/// The mask `⋃_i ([r_i] ∖ [s_i]) × {i}`.
pub fn interval_blocks(u: &VertexUniverse, r: &ParamVec, s: &ParamVec) -> EdgeMask {
    (0..u.dim()).fold(EdgeMask::EMPTY, |acc, i| acc | EdgeMask::range(u.offset(i) + s[i], r[i] - s[i]))
}
