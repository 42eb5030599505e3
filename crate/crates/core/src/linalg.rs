//! Exact dense linear algebra over the rationals.
//!
//! Small kernels only: the matrices here are degree slices of graded
//! quotients and pairing matrices, all of desk scale. Column scan order is
//! significant for basis selection, so row reduction is plain left-to-right
//! Gauss-Jordan without pivoting heuristics.

use crate::rational::Q;
use num::{One, Zero};

pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form in place. Returns the pivot column indices in
/// increasing order. Zero rows are moved to the bottom.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &inv;
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Exact determinant of a square matrix.
pub fn det(m: &Matrix) -> Q {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det: matrix not square");
    let mut work = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            work.swap(c, p);
            d = -d;
        }
        d *= work[c][c].clone();
        let inv = work[c][c].clone();
        for j in c..n {
            work[c][j] = &work[c][j] / &inv;
        }
        for i in (c + 1)..n {
            if !work[i][c].is_zero() {
                let f = work[i][c].clone();
                for j in c..n {
                    let t = &work[c][j] * &f;
                    work[i][j] = &work[i][j] - t;
                }
            }
        }
    }
    d
}

/// Exact inverse; `None` when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "invert: matrix not square");
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let inv = invert(a)?;
    Some(mat_vec(&inv, b))
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Q::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
