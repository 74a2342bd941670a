//! Exact big-integer and rational arithmetic shared by the closed-form
//! invariant evaluators and the zero-tolerance verification paths.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient C(n, k); returns 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial with signed arguments; 0 for negative or out-of-range arguments.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    BigInt::from(binomial(n as u64, k as u64))
}

/// Binomial as an exact rational, convenient in product formulas.
pub fn binomial_rational(n: i64, k: i64) -> BigRational {
    BigRational::from_integer(binomial_signed(n, k))
}

/// Determinant of a square rational matrix by exact Gaussian elimination.
pub fn rational_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return BigRational::zero(),
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let (upper, lower) = a.split_at_mut(col + 1);
        let lead = &upper[col];
        for below in lower.iter_mut() {
            if below[col].is_zero() {
                continue;
            }
            let factor = &below[col] / &pivot;
            for (entry, v) in below[col..].iter_mut().zip(&lead[col..]) {
                *entry -= &factor * v;
            }
        }
    }
    det
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    assert!(m.iter().all(|row| row.len() == cols), "ragged matrix");
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot_row = match (row..rows).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        a.swap(pivot_row, row);
        let pivot = a[row][col].clone();
        let (upper, lower) = a.split_at_mut(row + 1);
        let lead = &upper[row];
        for below in lower.iter_mut() {
            if below[col].is_zero() {
                continue;
            }
            let factor = &below[col] / &pivot;
            for (entry, v) in below[col..].iter_mut().zip(&lead[col..]) {
                *entry -= &factor * v;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
