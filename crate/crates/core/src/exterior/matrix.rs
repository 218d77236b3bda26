//! Dense exact rational matrices and row orthogonalization.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::linalg::{det_integer, integer_row};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
    cols: usize,
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl RationalMatrix {
    /// Rows must share one length.
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RationalMatrix { rows, cols }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation(&(0..n).collect::<Vec<_>>())
    }

    /// Row `i` has its one in column `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::new(
            perm.iter()
                .map(|&p| {
                    (0..n)
                        .map(|j| if j == p { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.rows[i][j] = x;
    }

    /// `A Aᵀ`.
    pub fn gram(&self) -> RationalMatrix {
        Self::new(
            self.rows
                .iter()
                .map(|a| self.rows.iter().map(|b| dot(a, b)).collect())
                .collect(),
        )
    }

    pub fn rows_orthogonal(&self) -> bool {
        let g = self.gram();
        (0..self.nrows()).all(|i| {
            (0..self.nrows()).all(|j| if i == j { g.get(i, j) > &BigRational::zero() } else { g.get(i, j).is_zero() })
        })
    }

    pub fn has_zero_row(&self) -> bool {
        self.rows.iter().any(|r| r.iter().all(Zero::is_zero))
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        let sub: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect())
            .collect();
        crate::linalg::det_rational(&sub)
    }

    /// True when every square minor is nonzero (`Σ_k C(m,k)²` checks for an
    /// `m × m` matrix).
    pub fn all_minors_nonzero(&self) -> bool {
        // positive row scaling does not change which minors vanish
        let ints: Vec<Vec<BigInt>> = self.rows.iter().map(|r| integer_row(r)).collect();
        let (m, n) = (self.nrows(), self.cols);
        (1..=m.min(n)).all(|k| {
            let col_sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
            (0..m).combinations(k).collect::<Vec<_>>().par_iter().all(|rs| {
                col_sets.iter().all(|cs| {
                    let sub = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| ints[i][j].clone()).collect())
                        .collect();
                    !det_integer(sub).is_zero()
                })
            })
        })
    }
}

/// For `i = 1..n` and `j < i`, replaces row `v_i` by
/// `⟨v_j, v_j⟩ v_i − ⟨v_i, v_j⟩ v_j`. Rows that are already pairwise
/// orthogonal with unit length are left unchanged. Singular input can
/// produce zero rows (see [`RationalMatrix::has_zero_row`]).
pub fn orthogonalize(a: &RationalMatrix) -> RationalMatrix {
    orthogonalize_with(a, |_| {})
}

/// Same elimination, applying `tidy` to each row after it is finished.
pub(crate) fn orthogonalize_with(a: &RationalMatrix, tidy: impl Fn(&mut Vec<BigRational>)) -> RationalMatrix {
    let mut rows = a.rows.clone();
    for i in 0..rows.len() {
        for j in 0..i {
            let vj = &rows[j];
            let njj = dot(vj, vj);
            let nij = dot(&rows[i], vj);
            let next: Vec<BigRational> = rows[i].iter().zip(vj).map(|(x, y)| &njj * x - &nij * y).collect();
            rows[i] = next;
        }
        tidy(&mut rows[i]);
    }
    RationalMatrix { rows, cols: a.cols }
}
