//! Dense Gaussian elimination over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. After the call the first `pivots.len()` rows are the pivot rows
/// in column order; the remaining rows are zero.
pub fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(&mut rows, ncols).len()
}

/// Basis of `{ c : A c = 0 }` for the matrix with the given rows, one
/// vector per free column in increasing column order.
pub fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[k][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `A c = b` for the matrix with columns `columns`; `None` if
/// inconsistent. With dependent columns the free coordinates are zero.
pub fn solve(columns: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = columns.len();
    let nrows = b.len();
    let mut rows: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, m + 1);
    if pivots.last() == Some(&m) {
        return None;
    }
    let mut x = vec![Rational::zero(); m];
    for (k, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[k][m].clone();
    }
    Some(x)
}
