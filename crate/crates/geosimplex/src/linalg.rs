//! Small dense linear-algebra kernels used by the rank and null-space
//! decisions. Two routes are kept deliberately separate: fraction-exact
//! Gaussian elimination for rational mode and Householder QR with column
//! pivoting for floating mode.
#![allow(clippy::needless_range_loop)]

use crate::scalar::Scalar;

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

/// Null-space basis via Gauss-Jordan elimination with per-column partial
/// pivoting. With `tol = 0` the rank decision is exact.
pub fn gauss_null_space<S: Scalar>(rows: &[Vec<S>], ncols: usize, tol: &S) -> Vec<Vec<S>> {
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let nrows = a.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0usize;

    for col in 0..ncols {
        // Largest magnitude entry in this column at or below the current rank.
        let mut best: Option<usize> = None;
        for (r, row) in a.iter().enumerate().skip(rank) {
            let mag = row[col].abs();
            if mag > *tol {
                match best {
                    Some(b) if a[b][col].abs() >= mag => {}
                    _ => best = Some(r),
                }
            }
        }
        let Some(pivot_row) = best else { continue };
        a.swap(rank, pivot_row);
        let pivot = a[rank][col].clone();
        for entry in a[rank].iter_mut() {
            *entry = entry.clone() / pivot.clone();
        }
        for r in 0..nrows {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..ncols {
                let delta = factor.clone() * a[rank][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for &(r, c) in &pivots {
            v[c] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Null-space basis via Householder QR with column pivoting. Columns whose
/// remaining norm falls at or below `tol` are treated as dependent.
pub fn qrcp_null_space(rows: &[Vec<f64>], ncols: usize, tol: f64) -> Vec<Vec<f64>> {
    let nrows = rows.len();
    let mut r: Vec<Vec<f64>> = rows.to_vec();
    let mut perm: Vec<usize> = (0..ncols).collect();
    let steps = nrows.min(ncols);
    let mut rank = 0usize;

    for k in 0..steps {
        // Pivot on the column with the largest remaining norm.
        let mut best_col = k;
        let mut best_norm = 0.0f64;
        for j in k..ncols {
            let norm_sq: f64 = (k..nrows).map(|i| r[i][j] * r[i][j]).sum();
            if norm_sq > best_norm {
                best_norm = norm_sq;
                best_col = j;
            }
        }
        if best_norm.sqrt() <= tol {
            break;
        }
        if best_col != k {
            for row in r.iter_mut() {
                row.swap(k, best_col);
            }
            perm.swap(k, best_col);
        }

        // Householder reflector for column k.
        let norm = best_norm.sqrt();
        let alpha = if r[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..nrows).map(|i| r[i][k]).collect();
        v[0] -= alpha;
        let v_norm_sq: f64 = v.iter().map(|x| x * x).sum();
        if v_norm_sq > 0.0 {
            let beta = 2.0 / v_norm_sq;
            for j in k..ncols {
                let proj: f64 = (k..nrows).map(|i| v[i - k] * r[i][j]).sum();
                let scale = beta * proj;
                for i in k..nrows {
                    r[i][j] -= scale * v[i - k];
                }
            }
        }
        r[k][k] = alpha;
        for i in k + 1..nrows {
            r[i][k] = 0.0;
        }
        rank += 1;
    }

    // Back-substitute each trailing column of R against the leading r x r block.
    let mut basis = Vec::with_capacity(ncols - rank);
    for j in rank..ncols {
        let mut y = vec![0.0f64; rank];
        for i in (0..rank).rev() {
            let mut acc = -r[i][j];
            for (c, y_c) in y.iter().enumerate().skip(i + 1) {
                acc -= r[i][c] * y_c;
            }
            y[i] = acc / r[i][i];
        }
        let mut z = vec![0.0f64; ncols];
        for (c, y_c) in y.iter().enumerate() {
            z[perm[c]] = *y_c;
        }
        z[perm[j]] = 1.0;
        basis.push(z);
    }
    basis
}

/// Solves a square system by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot magnitude falls at or below `tol`.
pub fn solve_square<S: Scalar>(rows: &[Vec<S>], rhs: &[S], tol: &S) -> Option<Vec<S>> {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(rhs.len(), n);
    let mut a = rows.to_vec();
    let mut b = rhs.to_vec();

    for col in 0..n {
        let mut best = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[best][col].abs() {
                best = r;
            }
        }
        if a[best][col].abs() <= *tol {
            return None;
        }
        a.swap(col, best);
        b.swap(col, best);
        let pivot = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / pivot.clone();
            for c in col..n {
                let delta = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
            let delta = factor * b[col].clone();
            b[r] = b[r].clone() - delta;
        }
    }

    let mut x = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for (c, x_c) in x.iter().enumerate().skip(i + 1) {
            acc = acc - a[i][c].clone() * x_c.clone();
        }
        x[i] = acc / a[i][i].clone();
    }
    Some(x)
}
