//! Arbitrary-precision rationals, binomial coefficients, and exact
//! determinants.
//!
//! Rationals are [`num::BigRational`]: always reduced, denominator positive,
//! displayed as `p/q` (`p` alone when the denominator is 1). Everything else
//! in the crate funnels its arithmetic through this module.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Integer::from(p), Integer::from(q))
}

/// Binomial coefficient `n` choose `k`, with the convention that the value
/// is 0 whenever `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        // exact at every step: acc holds C(n, i) and (i+1) | C(n, i)*(n-i)
        acc = acc * Integer::from(n - i) / Integer::from(i + 1);
    }
    acc
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("determinant requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    BadEntryCount { rows: usize, cols: usize, len: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<Rational>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::BadEntryCount {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

/// Exact determinant. The 0x0 determinant is 1 by convention.
///
/// Denominators are cleared row by row and the integer matrix is reduced by
/// fraction-free Bareiss elimination; 1x1 and 2x2 matrices take the direct
/// cofactor formulas instead.
pub fn det_exact(m: &RationalMatrix) -> Result<Rational, MatrixError> {
    if m.rows != m.cols {
        return Err(MatrixError::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    match n {
        0 => return Ok(Rational::one()),
        1 => return Ok(m.get(0, 0).clone()),
        2 => {
            return Ok(m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0));
        }
        _ => {}
    }

    // Clear denominators: scale row i by the lcm of its denominators.
    let mut a: Vec<Vec<Integer>> = Vec::with_capacity(n);
    let mut scale = Integer::one();
    for i in 0..n {
        let mut row_lcm = Integer::one();
        for j in 0..n {
            row_lcm = num::integer::lcm(row_lcm, m.get(i, j).denom().clone());
        }
        let row = (0..n)
            .map(|j| {
                let e = m.get(i, j);
                e.numer() * (&row_lcm / e.denom())
            })
            .collect();
        scale *= row_lcm;
        a.push(row);
    }
    let det = det_bareiss(a);
    Ok(Rational::new(det, scale))
}

/// Fraction-free Bareiss elimination; every division is exact.
fn det_bareiss(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    let mut negate = false;
    let mut prev = Integer::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = Integer::zero();
        }
        prev = a[k][k].clone();
    }
    let det = std::mem::take(&mut a[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}

/// Rational Gaussian elimination, kept as an internal cross-check for the
/// Bareiss path.
#[allow(dead_code)]
pub(crate) fn det_gaussian(m: &RationalMatrix) -> Result<Rational, MatrixError> {
    if m.rows != m.cols {
        return Err(MatrixError::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut det = Rational::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(i) => i,
            None => return Ok(Rational::zero()),
        };
        if pivot != k {
            a.swap(k, pivot);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &a[k][k];
            for j in k..n {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    Ok(det)
}
