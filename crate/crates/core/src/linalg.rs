//! Exact dense linear algebra over the rationals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Q;

/// Solution of `A x = b` by Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// A particular solution; free variables are set to zero.
    pub x: Vec<Q>,
    pub rank: usize,
    /// Columns without a pivot.
    pub free: Vec<usize>,
}

/// Solves `A x = b` exactly, pivoting on the first nonzero entry of each
/// column. Returns [`Error::SingularSystem`] when the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Result<Solution> {
    let rows = a.len();
    if rows != b.len() {
        return Err(Error::InvalidInput(
            "row count does not match right-hand side".into(),
        ));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput("ragged matrix".into()));
    }
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::from_integer(1.into()) / &m[row][col];
        for x in &mut m[row] {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }

    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Err(Error::SingularSystem);
    }

    let mut x = vec![Q::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
    Ok(Solution {
        x,
        rank: pivots.len(),
        free,
    })
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination on
/// the common-denominator integer matrix.
pub fn determinant(a: &[Vec<Q>]) -> Result<Q> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;

    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(Q::one());
    }
    let lcm = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|q| q.numer() * (&lcm / q.denom())).collect())
        .collect();

    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(Q::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = sign * &m[n - 1][n - 1];
    let scale = num_traits::pow(lcm, n);
    Ok(Q::new(det, scale))
}
