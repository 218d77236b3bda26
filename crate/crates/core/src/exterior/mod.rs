//! Exact exterior algebra over the rationals on a universe of `dim`
//! ordered vertices. Basis elements `e_S` are indexed by vertex masks.

mod basis;
mod matrix;
mod sign;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::{EdgeMask, ModelError};

pub use basis::{
    colorful_generic_basis, generic_block, BasisJson, ColorfulBasis, DEFAULT_BLOCK_CAP, DEFAULT_SEED,
    MAX_SAMPLING_ATTEMPTS,
};
pub use matrix::{orthogonalize, RationalMatrix};
pub use sign::{interval_blocks, sign_decompose_exponent, sign_decompose_sides, SignRule};

#[derive(Debug, Error)]
pub enum ExteriorError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("elements live on universes of sizes {left} and {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("mask {0:?} leaves the universe")]
    MaskOutsideUniverse(EdgeMask),
    #[error("block size {size} exceeds the minor-verification cap {cap}")]
    BlockCapExceeded { size: usize, cap: usize },
    #[error("no generic block of size {size} after {attempts} samples")]
    GeneratorExhausted { size: usize, attempts: usize },
    #[error("{0}")]
    Precondition(String),
}

/// `inv(S, T) = |{(s, t) ∈ S × T : s > t}|`.
pub fn inv_count(s: EdgeMask, t: EdgeMask) -> usize {
    t.iter().map(|x| s.count_above(x)).sum()
}

/// `(−1)^{inv(S, T)}`.
pub fn sign(s: EdgeMask, t: EdgeMask) -> i8 {
    if inv_count(s, t).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(x: BigRational, sgn: i8) -> BigRational {
    if sgn < 0 {
        -x
    } else {
        x
    }
}

/// A sparse element of the exterior algebra with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement {
    dim: usize,
    terms: BTreeMap<EdgeMask, BigRational>,
}

impl ExtElement {
    pub fn zero(dim: usize) -> Self {
        ExtElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `e_∅`.
    pub fn one(dim: usize) -> Self {
        Self::basis(dim, EdgeMask::EMPTY).expect("empty mask fits")
    }

    /// `e_S`.
    pub fn basis(dim: usize, s: EdgeMask) -> Result<Self, ExteriorError> {
        Self::from_terms(dim, [(s, BigRational::one())])
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (EdgeMask, BigRational)>,
    {
        let universe = EdgeMask::range(0, dim);
        let mut out = Self::zero(dim);
        for (mask, c) in terms {
            if !mask.is_subset_of(universe) {
                return Err(ExteriorError::MaskOutsideUniverse(mask));
            }
            out.add_term(mask, c);
        }
        Ok(out)
    }

    /// The grade-one element `Σ_v coeffs[v] e_v`.
    pub fn vector(coeffs: &[BigRational]) -> Self {
        let mut out = Self::zero(coeffs.len());
        for (v, c) in coeffs.iter().enumerate() {
            out.add_term(EdgeMask::bit(v), c.clone());
        }
        out
    }

    fn add_term(&mut self, mask: EdgeMask, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<EdgeMask, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, mask: EdgeMask) -> BigRational {
        self.terms.get(&mask).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Masks with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = EdgeMask> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        ExtElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::UniverseMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn bilinear<F>(&self, other: &Self, rule: F) -> Result<Self, ExteriorError>
    where
        F: Fn(EdgeMask, EdgeMask) -> Option<(EdgeMask, i8)>,
    {
        self.check(other)?;
        let mut out = Self::zero(self.dim);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if let Some((m, sgn)) = rule(a, b) {
                    out.add_term(m, signed(x * y, sgn));
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ other`, from `e_S ∧ e_T = sgn(S, T) e_{S∪T}` for disjoint
    /// `S, T` and zero otherwise.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.bilinear(other, |s, t| s.is_disjoint(t).then(|| (s | t, sign(s, t))))
    }

    /// Left interior product `self ⌟ other`, from
    /// `e_T ⌟ e_S = sgn(S∖T, T) e_{S∖T}` when `T ⊆ S` and zero otherwise.
    pub fn interior(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.bilinear(other, |t, s| {
            t.is_subset_of(s).then(|| {
                let rest = s.minus(t);
                (rest, sign(rest, t))
            })
        })
    }

    /// Scalar product in which the `e_S` are orthonormal.
    pub fn inner(&self, other: &Self) -> Result<BigRational, ExteriorError> {
        self.check(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(m, x)| large.terms.get(m).map(|y| x * y))
            .fold(BigRational::zero(), |a, b| a + b))
    }

    /// Restriction to the given masks.
    pub fn restrict(&self, keep: impl Fn(EdgeMask) -> bool) -> Self {
        ExtElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, x)| (m, x.clone()))
                .collect(),
        }
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: &ExtElement) -> ExtElement {
        assert_eq!(self.dim, rhs.dim, "universe mismatch");
        let mut out = self.clone();
        for (&m, x) in &rhs.terms {
            out.add_term(m, x.clone());
        }
        out
    }
}

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        ExtElement {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, x)| (m, -x)).collect(),
        }
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: &ExtElement) -> ExtElement {
        self + &(-rhs)
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, x)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{x}·e{m:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, vs: &[usize]) -> ExtElement {
        ExtElement::basis(dim, EdgeMask::from_positions(vs.iter().copied())).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inversion_examples() {
        let m = |v: &[usize]| EdgeMask::from_positions(v.iter().copied());
        assert_eq!(inv_count(m(&[]), m(&[0, 1])), 0);
        assert_eq!(inv_count(m(&[1]), m(&[0])), 1);
        assert_eq!(inv_count(m(&[0, 2]), m(&[1])), 1);
        assert_eq!(sign(m(&[0, 2]), m(&[1])), -1);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(3, &[0]).wedge(&e(3, &[1])).unwrap(), e(3, &[0, 1]));
        assert_eq!(e(3, &[1]).wedge(&e(3, &[0])).unwrap(), -&e(3, &[0, 1]));
        assert!(e(3, &[0]).wedge(&e(3, &[0])).unwrap().is_zero());
        assert!(matches!(
            e(3, &[0]).wedge(&e(4, &[1])),
            Err(ExteriorError::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn interior_examples() {
        assert_eq!(ExtElement::one(3).interior(&e(3, &[0, 2])).unwrap(), e(3, &[0, 2]));
        assert_eq!(e(3, &[0]).interior(&e(3, &[0, 1])).unwrap(), -&e(3, &[1]));
        assert!(e(3, &[2]).interior(&e(3, &[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn inner_examples() {
        let v1 = ExtElement::vector(&[q(1), q(1), q(0)]);
        let v2 = ExtElement::vector(&[q(0), q(1), q(1)]);
        let w = v1.wedge(&v2).unwrap();
        assert_eq!(w.terms().len(), 3);
        assert_eq!(w.inner(&w).unwrap(), q(3));
        assert_eq!(e(3, &[0]).inner(&e(3, &[0, 1])).unwrap(), q(0));
        assert_eq!(e(3, &[0, 1]).inner(&e(3, &[0, 1])).unwrap(), q(1));
    }

    #[test]
    fn masks_are_checked() {
        assert!(matches!(
            ExtElement::basis(2, EdgeMask::bit(2)),
            Err(ExteriorError::MaskOutsideUniverse(_))
        ));
    }
}
