use alloc::vec::Vec;

use super::{Matrix, SymmetricMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi eigen-decomposition. Returns eigenvalues in descending order
/// and the matching orthonormal eigenvectors as the columns of a matrix.
///
/// Jacobi rotations are slower than tridiagonal QR but deliver eigenvalues
/// with high relative accuracy, which matters for the sign tests built on top.
pub fn symmetric_eigen(m: &SymmetricMatrix) -> Result<(Vec<f64>, Matrix)> {
    let n = m.n();
    let mut a = m.as_matrix().clone();
    let mut v = Matrix::identity(n);

    let mut converged = n < 2;
    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| libm::fabs(a[(p, q)])).sum();
        if off == 0.0 {
            converged = true;
            break;
        }
        let thresh = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = 100.0 * libm::fabs(apq);
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                if sweep > 3 && libm::fabs(app) + g == libm::fabs(app) && libm::fabs(aqq) + g == libm::fabs(aqq) {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                if libm::fabs(apq) <= thresh {
                    continue;
                }
                let h = aqq - app;
                let t = if libm::fabs(h) + g == libm::fabs(h) {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (libm::fabs(theta) + libm::sqrt(1.0 + theta * theta));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    a[(k, p)] = np;
                    a[(p, k)] = np;
                    a[(k, q)] = nq;
                    a[(q, k)] = nq;
                }
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}
