//! Vertex subsets as bitmasks over the color-ordered universe.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

use itertools::Itertools;

/// Storage word for vertex masks. One machine word unless the `wide`
/// feature is enabled.
#[cfg(not(feature = "wide"))]
pub type Word = u64;
#[cfg(feature = "wide")]
pub type Word = u128;

/// A subset of the vertex universe. Bit `p` is the vertex at position `p`
/// of the color-compatible order. Ordering is numeric ("mask order").
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeMask(pub Word);

impl EdgeMask {
    pub const EMPTY: EdgeMask = EdgeMask(0);
    /// Largest universe a mask can address.
    pub const CAPACITY: usize = Word::BITS as usize;

    pub fn bit(pos: usize) -> Self {
        debug_assert!(pos < Self::CAPACITY);
        EdgeMask((1 as Word) << pos)
    }

    /// Mask of positions `start .. start + len`.
    pub fn range(start: usize, len: usize) -> Self {
        if len == 0 {
            return Self::EMPTY;
        }
        let ones = if len >= Self::CAPACITY {
            Word::MAX
        } else {
            ((1 as Word) << len) - 1
        };
        EdgeMask(ones << start)
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        positions
            .into_iter()
            .fold(Self::EMPTY, |acc, p| acc | Self::bit(p))
    }

    pub fn contains(self, pos: usize) -> bool {
        pos < Self::CAPACITY && self.0 >> pos & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: EdgeMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: EdgeMask) -> bool {
        self.0 & other.0 == 0
    }

    /// Set difference `self ∖ other`.
    pub fn minus(self, other: EdgeMask) -> EdgeMask {
        EdgeMask(self.0 & !other.0)
    }

    /// Positions in ascending order.
    pub fn iter(self) -> Positions {
        Positions(self.0)
    }

    /// Number of elements of `self` strictly greater than `pos`.
    pub fn count_above(self, pos: usize) -> usize {
        if pos + 1 >= Self::CAPACITY {
            return 0;
        }
        (self.0 >> (pos + 1)).count_ones() as usize
    }
}

impl BitOr for EdgeMask {
    type Output = EdgeMask;
    fn bitor(self, rhs: EdgeMask) -> EdgeMask {
        EdgeMask(self.0 | rhs.0)
    }
}

impl BitAnd for EdgeMask {
    type Output = EdgeMask;
    fn bitand(self, rhs: EdgeMask) -> EdgeMask {
        EdgeMask(self.0 & rhs.0)
    }
}

impl BitXor for EdgeMask {
    type Output = EdgeMask;
    fn bitxor(self, rhs: EdgeMask) -> EdgeMask {
        EdgeMask(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for EdgeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the set bits of a mask.
#[derive(Clone)]
pub struct Positions(Word);

impl Iterator for Positions {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

/// All `k`-element subsets of `mask`, in lexicographic order of their
/// ascending position lists. `k = 0` yields the empty mask once.
pub fn k_subsets(mask: EdgeMask, k: usize) -> impl Iterator<Item = EdgeMask> {
    let positions: Vec<usize> = mask.iter().collect();
    positions
        .into_iter()
        .combinations(k)
        .map(EdgeMask::from_positions)
}
