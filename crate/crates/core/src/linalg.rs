//! Fraction-free (Bareiss) elimination over the integers, with rational
//! entry points that clear denominators row by row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank of an integer matrix given by rows.
pub fn rank_integer(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let Some(cols) = a.first().map(Vec::len) else {
        return 0;
    };
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix.
pub fn det_integer(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&p| !a[p][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = &pivot_row[k] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The row scaled by the least common multiple of its denominators.
pub fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Divides an integer vector by the gcd of its entries (keeps sign).
pub fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    rank_integer(rows.iter().map(|r| integer_row(r)).collect())
}

pub fn det_rational(rows: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigInt::one();
    let ints = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    BigRational::new(det_integer(ints), scale)
}

/// Rank by plain Gaussian elimination over the rationals; slow, used as a
/// cross-check.
pub fn rank_gauss(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    let Some(cols) = a.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (upper, lower) = a.split_at_mut(i);
            let (pivot, row) = (&upper[r], &mut lower[0]);
            let f = &row[c] / &pivot[c];
            for (x, y) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Sign of an integer as −1, 0 or 1.
pub fn signum(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det_integer(m(&[&[2, 1], &[1, 2]])), BigInt::from(3));
        assert_eq!(det_integer(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_integer(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(det_integer(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(det_integer(vec![]), BigInt::one());
    }

    #[test]
    fn ranks_with_skipped_columns() {
        assert_eq!(rank_integer(m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]])), 2);
        assert_eq!(rank_integer(m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]])), 1);
        assert_eq!(rank_integer(vec![]), 0);
        assert_eq!(rank_integer(m(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 1, 1, 1], &[1, 0, 0, 1]])), 3);
    }

    #[test]
    fn rational_det() {
        let half = BigRational::new(1.into(), 2.into());
        let rows = vec![vec![half.clone(), BigRational::zero()], vec![BigRational::zero(), half]];
        assert_eq!(det_rational(&rows), BigRational::new(1.into(), 4.into()));
    }
}
