//! Small dense linear algebra over a [`Scalar`] backend.

use crate::scalar::Scalar;

/// Row-major square or rectangular matrix.
pub type Matrix<S> = Vec<Vec<S>>;

pub fn zeros<S: Scalar>(rows: usize, cols: usize) -> Matrix<S> {
    vec![vec![S::zero(); cols]; rows]
}

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = S::one();
    }
    m
}

pub fn max_abs<S: Scalar>(m: &Matrix<S>) -> f64 {
    m.iter().flatten().map(Scalar::norm).fold(0.0, f64::max)
}

/// Index of the pivot in `col` among rows `from..`: the first nonzero entry
/// in exact mode, the largest entry in float mode.
fn pivot<S: Scalar>(m: &Matrix<S>, col: usize, from: usize, threshold: f64) -> Option<usize> {
    let rows = from..m.len();
    if S::EXACT {
        rows.into_iter().find(|&r| !m[r][col].is_exact_zero())
    } else {
        rows.into_iter()
            .map(|r| (r, m[r][col].norm()))
            .filter(|&(_, v)| v > threshold)
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(r, _)| r)
    }
}

pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.len();
    let mut a = m.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = pivot(&a, col, col, 0.0) else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det = det * piv.clone();
        for r in col + 1..n {
            if a[r][col].is_exact_zero() {
                continue;
            }
            let factor = a[r][col].clone() / piv.clone();
            for c in col..n {
                let v = a[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - v;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Option<Matrix<S>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity::<S>(n);
    for col in 0..n {
        let p = pivot(&a, col, col, 0.0)?;
        a.swap(p, col);
        inv.swap(p, col);
        let piv = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].clone() / piv.clone();
            inv[col][c] = inv[col][c].clone() / piv.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let va = a[col][c].clone() * factor.clone();
                let vi = inv[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - va;
                inv[r][c] = inv[r][c].clone() - vi;
            }
        }
    }
    Some(inv)
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let (rows, inner, cols) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out: Matrix<S> = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_exact_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] = out[i][j].clone() + a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    out
}

/// Solution of a possibly over-determined system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<S> {
    /// One particular solution (free variables set to zero).
    pub x: Vec<S>,
    /// Largest |A x − b| over all rows.
    pub residual: f64,
    pub rank: usize,
}

/// Row-reduces `[A | b]`. Returns `None` when the system is inconsistent
/// (exactly in rational mode, beyond `threshold` in float mode).
pub fn solve_consistent<S: Scalar>(a: &Matrix<S>, b: &[S], threshold: f64) -> Option<LinearSolution<S>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Matrix<S> = a.iter().zip(b).map(|(row, v)| {
        let mut r = row.clone();
        r.push(v.clone());
        r
    }).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = pivot(&m, col, row, threshold) else { continue };
        m.swap(p, row);
        let piv = m[row][col].clone();
        for c in col..=cols {
            m[row][c] = m[row][c].clone() / piv.clone();
        }
        for r in 0..rows {
            if r == row || m[r][col].is_exact_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=cols {
                let v = m[row][c].clone() * factor.clone();
                m[r][c] = m[r][c].clone() - v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut x = vec![S::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    let mut residual = 0.0f64;
    let mut consistent = true;
    for (i, arow) in a.iter().enumerate() {
        let mut acc = -b[i].clone();
        for (aij, xj) in arow.iter().zip(&x) {
            acc = acc + aij.clone() * xj.clone();
        }
        residual = residual.max(acc.norm());
        if !acc.is_negligible(threshold) {
            consistent = false;
        }
    }
    consistent.then_some(LinearSolution { x, residual, rank: pivots.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq, CQ, C64};

    #[test]
    fn exact_inverse_round_trips() {
        let m = vec![
            vec![CQ::from_ratio(1, 2), cq((0, 1), (-1, 3))],
            vec![cq((0, 1), (1, 3)), CQ::from_ratio(3, 2)],
        ];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(determinant(&m), CQ::from_ratio(3, 4) - CQ::from_ratio(1, 9));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = vec![vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)], vec![C64::new(2.0, 0.0), C64::new(4.0, 0.0)]];
        assert!(inverse(&m).is_none());
        assert_eq!(determinant(&m), C64::new(0.0, 0.0));
    }

    #[test]
    fn overdetermined_consistent_and_inconsistent() {
        let one = CQ::one;
        let a = vec![vec![one(), CQ::zero()], vec![CQ::zero(), one()], vec![one(), one()]];
        let sol = solve_consistent(&a, &[one(), CQ::from_i64(2), CQ::from_i64(3)], 0.0).unwrap();
        assert_eq!(sol.x, vec![one(), CQ::from_i64(2)]);
        assert_eq!(sol.rank, 2);
        assert!(solve_consistent(&a, &[one(), CQ::from_i64(2), CQ::from_i64(4)], 0.0).is_none());
    }
}
