use super::Matrix;
use crate::error::{Error, Result};

/// Determinant by LU factorization with partial pivoting. The `0 × 0`
/// determinant is `1`.
pub fn determinant(a: &Matrix) -> f64 {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| libm::fabs(m[(i, col)]).total_cmp(&libm::fabs(m[(j, col)])))
            .expect("non-empty range");
        if m[(pivot, col)] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                let t = m[(col, k)];
                m[(col, k)] = m[(pivot, k)];
                m[(pivot, k)] = t;
            }
            det = -det;
        }
        let d = m[(col, col)];
        det *= d;
        for r in col + 1..n {
            let f = m[(r, col)] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[(r, k)] -= f * m[(col, k)];
            }
        }
    }
    det
}

/// Solves `A Y = B` for square `A` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension("solve: shapes do not conform".into()));
    }
    let n = a.rows();
    let nrhs = b.cols();
    let mut m = a.clone();
    let mut y = b.clone();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| libm::fabs(m[(i, col)]).total_cmp(&libm::fabs(m[(j, col)])))
            .expect("non-empty range");
        if libm::fabs(m[(pivot, col)]) <= f64::EPSILON * scale {
            return Err(Error::Singular("linear solve".into()));
        }
        if pivot != col {
            for k in 0..n {
                let t = m[(col, k)];
                m[(col, k)] = m[(pivot, k)];
                m[(pivot, k)] = t;
            }
            for k in 0..nrhs {
                let t = y[(col, k)];
                y[(col, k)] = y[(pivot, k)];
                y[(pivot, k)] = t;
            }
        }
        let d = m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                m[(r, k)] -= f * m[(col, k)];
            }
            for k in 0..nrhs {
                y[(r, k)] -= f * y[(col, k)];
            }
        }
    }
    for k in 0..nrhs {
        for r in (0..n).rev() {
            let s: f64 = (r + 1..n).map(|c| m[(r, c)] * y[(c, k)]).sum::<f64>();
            y[(r, k)] = (y[(r, k)] - s) / m[(r, r)];
        }
    }
    Ok(y)
}

/// Cholesky solve of the symmetric positive definite system `A x = b`, in
/// place on `b`. `a` is overwritten by its factor. Returns `false` when `A`
/// is not numerically positive definite.
pub(crate) fn cholesky_solve_in_place(a: &mut [f64], n: usize, b: &mut [f64]) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let d = libm::sqrt(d);
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= a[i * n + k] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= a[k * n + i] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    true
}
