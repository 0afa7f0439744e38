//! Dense linear algebra over an exact field, for the small systems that
//! arise in graded pieces.

use crate::field::{Field, Scalar};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn row_reduce(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let v = &rows[i][j] - &(&f * &rows[r][j]);
                        rows[i][j] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{v : M v = 0}` for the matrix with the given rows.
pub fn kernel_basis(rows: Vec<Vec<Scalar>>, ncols: usize, field: &Field) -> Vec<Vec<Scalar>> {
    let mut rows = rows;
    let pivots = row_reduce(&mut rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    let mut rows = rows;
    row_reduce(&mut rows, ncols).len()
}
