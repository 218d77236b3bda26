//! Integer parameter vectors and the families built from them.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// A nonnegative integer vector of length `d`: host sizes `n`, uniformity
/// profiles `s`, pattern sizes `r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamVec(Vec<usize>);

impl ParamVec {
    pub fn new(entries: Vec<usize>) -> Self {
        ParamVec(entries)
    }

    pub fn zeros(d: usize) -> Self {
        ParamVec(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// `self_i ≤ other_i` for every coordinate.
    pub fn is_below(&self, other: &ParamVec) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Deref for ParamVec {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for ParamVec {
    fn from(v: Vec<usize>) -> Self {
        ParamVec(v)
    }
}

impl<const N: usize> From<[usize; N]> for ParamVec {
    fn from(v: [usize; N]) -> Self {
        ParamVec(v.to_vec())
    }
}

impl fmt::Debug for ParamVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ParamVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite, non-empty, duplicate-free set of vectors of one dimension.
/// Members are kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VecFamily {
    members: Vec<ParamVec>,
}

impl VecFamily {
    pub fn new(members: Vec<ParamVec>) -> Result<Self, ModelError> {
        let first = members.first().ok_or(ModelError::EmptyFamily)?;
        let d = first.dim();
        if d == 0 {
            return Err(ModelError::ZeroDimension);
        }
        for v in &members {
            if v.dim() != d {
                return Err(ModelError::DimensionMismatch {
                    expected: d,
                    found: v.dim(),
                });
            }
        }
        let mut sorted = members;
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::DuplicateVector(w[0].clone()));
            }
        }
        Ok(VecFamily { members: sorted })
    }

    /// Builds a family from an iterator that may repeat members.
    pub fn from_iter_dedup<I: IntoIterator<Item = ParamVec>>(iter: I) -> Result<Self, ModelError> {
        let mut v: Vec<ParamVec> = iter.into_iter().collect();
        v.sort();
        v.dedup();
        VecFamily::new(v)
    }

    pub fn single(v: ParamVec) -> Result<Self, ModelError> {
        VecFamily::new(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ParamVec> {
        self.members.iter()
    }

    pub fn members(&self) -> &[ParamVec] {
        &self.members
    }

    pub fn contains(&self, v: &ParamVec) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// The member lying componentwise below every other member, if any.
    pub fn componentwise_min(&self) -> Option<&ParamVec> {
        self.members
            .iter()
            .find(|cand| self.members.iter().all(|v| cand.is_below(v)))
    }

    /// The member lying componentwise above every other member, if any.
    pub fn componentwise_max(&self) -> Option<&ParamVec> {
        self.members
            .iter()
            .find(|cand| self.members.iter().all(|v| v.is_below(cand)))
    }
}

impl<'a> IntoIterator for &'a VecFamily {
    type Item = &'a ParamVec;
    type IntoIter = std::slice::Iter<'a, ParamVec>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for VecFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl<'de> Deserialize<'de> for VecFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let members = Vec::<ParamVec>::deserialize(de)?;
        VecFamily::new(members).map_err(serde::de::Error::custom)
    }
}

/// Host sizes together with the uniformity family `S` and the pattern
/// family `R`, validated against `n_i ≥ s_i` and `r_i ≥ s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamFamily {
    n: ParamVec,
    s: VecFamily,
    r: VecFamily,
}

impl ParamFamily {
    pub fn new(n: ParamVec, s: VecFamily, r: VecFamily) -> Result<Self, ModelError> {
        let d = n.dim();
        if d == 0 {
            return Err(ModelError::ZeroDimension);
        }
        for fam in [&s, &r] {
            if fam.dim() != d {
                return Err(ModelError::DimensionMismatch {
                    expected: d,
                    found: fam.dim(),
                });
            }
        }
        for sv in &s {
            if !sv.is_below(&n) {
                return Err(ModelError::ProfileExceedsHost {
                    s: sv.clone(),
                    n: n.clone(),
                });
            }
            for rv in &r {
                if !sv.is_below(rv) {
                    return Err(ModelError::PatternBelowProfile {
                        r: rv.clone(),
                        s: sv.clone(),
                    });
                }
            }
        }
        Ok(ParamFamily { n, s, r })
    }

    pub fn dim(&self) -> usize {
        self.n.dim()
    }

    pub fn n(&self) -> &ParamVec {
        &self.n
    }

    pub fn s(&self) -> &VecFamily {
        &self.s
    }

    pub fn r(&self) -> &VecFamily {
        &self.r
    }

    /// `R(n)`: the patterns that fit inside the host.
    pub fn fitting_patterns(&self) -> Vec<ParamVec> {
        fitting_patterns(&self.n, &self.r)
    }
}

/// `R(n) = { r ∈ R | r ≤ n }`, in the family's order.
pub fn fitting_patterns(n: &ParamVec, r: &VecFamily) -> Vec<ParamVec> {
    r.iter().filter(|rv| rv.is_below(n)).cloned().collect()
}
