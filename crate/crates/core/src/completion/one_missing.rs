use alloc::vec::Vec;

use super::PartialSymmetricMatrix;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::linalg::{det_sign, determinant, principal_submatrix, Tolerance};

/// Result of [`one_missing_entry_solve`]. Determinants refer to the relabelled
/// matrix with the unknown at position `(1, n)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OneMissingEntry {
    /// The unknown entry in the original labels, `i < j`.
    pub unknown: (usize, usize),
    /// `permutation[k]` is the original label placed at position `k + 1`.
    pub permutation: Vec<usize>,
    /// `[a, b, c]` with `det M(t) = a t² + b t + c`.
    pub coefficients: [f64; 3],
    /// Real values of the unknown making the completion singular, ascending.
    pub roots: Vec<f64>,
    /// `det(M(0)_{1,n})² + det(M_{1n,1n}) det(M(0))`, a quarter of the
    /// quadratic's discriminant.
    pub discriminant: f64,
    /// `det(M_{1,1}) det(M_{n,n})`, equal to the discriminant.
    pub det_product: f64,
    pub deficient_completable: bool,
    /// `det M(t)` vanishes for every `t`.
    pub identically_singular: bool,
}

/// Completes `K_n°` minus one off-diagonal entry. The determinant of the
/// completion is the quadratic
/// `−det(M_{1n,1n}) t² + 2 (−1)^{n+1} det(M(0)_{1,n}) t + det(M(0))` in the
/// unknown `t`, so a completion of rank below `n` exists exactly when it has
/// a real root.
pub fn one_missing_entry_solve(m: &PartialSymmetricMatrix, tol: Tolerance) -> Result<OneMissingEntry> {
    let n = m.n();
    let unknowns = m.unknowns();
    let (i, j) = match unknowns.as_slice() {
        [(i, j)] if i != j && n >= 2 => (*i, *j),
        _ => {
            return Err(Error::UnsupportedPattern(
                "expected a fully specified pattern missing exactly one off-diagonal entry".into(),
            ))
        }
    };
    let mut permutation = Vec::with_capacity(n);
    permutation.push(i);
    permutation.extend((1..=n).filter(|&v| v != i && v != j));
    permutation.push(j);

    let zero = m.zero_fill();
    let p = crate::linalg::SymmetricMatrix::from_upper(n, |r, s| zero.get(permutation[r] - 1, permutation[s] - 1));
    let last = n - 1;
    let full = p.as_matrix();
    let d0 = determinant(full);
    let d1n1n = determinant(&full.minor(&[0, last], &[0, last]));
    let c = determinant(&full.minor(&[0], &[last]));
    let d11 = determinant(&full.minor(&[0], &[0]));
    let dnn = determinant(&full.minor(&[last], &[last]));
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let cs = sign * c;
    let coefficients = [-d1n1n, 2.0 * cs, d0];
    let discriminant = c * c + d1n1n * d0;
    let det_product = d11 * dnn;

    let inner = VertexSet::full(n).without(1).without(n);
    let s1n1n = det_sign(&principal_submatrix(&p, inner)?, tol)?;
    let s11 = det_sign(&principal_submatrix(&p, VertexSet::full(n).without(1))?, tol)?;
    let snn = det_sign(&principal_submatrix(&p, VertexSet::full(n).without(n))?, tol)?;
    let s0 = det_sign(&p, tol)?;

    let mut roots = Vec::new();
    let mut identically_singular = false;
    let deficient_completable;
    if s1n1n != 0 {
        deficient_completable = s11 * snn >= 0;
        if deficient_completable {
            let q = libm::sqrt(discriminant.max(0.0));
            let head = if cs >= 0.0 { cs + q } else { cs - q };
            if head == 0.0 {
                roots.extend([0.0, 0.0]);
            } else {
                roots.push(head / d1n1n);
                roots.push(-d0 / head);
            }
        }
    } else {
        // Degree drops to one: det M(t) = 2 c t + det M(0).
        let scale = zero.max_abs().max(1.0);
        let c_zero = libm::fabs(c) <= tol.rank_tol * libm::pow(scale, (n - 1) as f64);
        deficient_completable = !c_zero || s0 == 0;
        if !c_zero {
            roots.push(-d0 / (2.0 * cs));
        } else if s0 == 0 {
            identically_singular = true;
        }
    }
    // Adding zero turns -0.0 into 0.0.
    roots.iter_mut().for_each(|r| *r += 0.0);
    roots.sort_by(f64::total_cmp);

    Ok(OneMissingEntry {
        unknown: (i, j),
        permutation,
        coefficients,
        roots,
        discriminant,
        det_product,
        deficient_completable,
        identically_singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{numeric_rank, SymmetricMatrix};
    use crate::SemisimpleGraph;
    use alloc::vec;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn missing(rows: &[Vec<f64>], i: usize, j: usize) -> PartialSymmetricMatrix {
        let n = rows.len();
        let g = SemisimpleGraph::complete_looped(n).unwrap();
        let mut gc = SemisimpleGraph::new(n).unwrap();
        for (a, b) in g.edges() {
            if (a, b) != (i, j) {
                gc.insert_edge(a, b).unwrap();
            }
        }
        let m = SymmetricMatrix::from_rows(rows).unwrap();
        PartialSymmetricMatrix::from_symmetric(gc, &m).unwrap()
    }

    #[test]
    fn two_by_two_examples() {
        let r = one_missing_entry_solve(&missing(&[vec![1.0, 0.0], vec![0.0, -1.0]], 1, 2), tol()).unwrap();
        assert!(!r.deficient_completable && r.roots.is_empty());
        let r = one_missing_entry_solve(&missing(&[vec![1.0, 0.0], vec![0.0, 4.0]], 1, 2), tol()).unwrap();
        assert!(r.deficient_completable);
        assert_eq!(r.roots, vec![-2.0, 2.0]);
    }

    #[test]
    fn three_by_three_example() {
        let rows = [vec![2.0, 1.0, 0.0], vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]];
        let r = one_missing_entry_solve(&missing(&rows, 1, 3), tol()).unwrap();
        assert_eq!(r.coefficients, [-1.0, 2.0, 0.0]);
        assert!(r.deficient_completable);
        assert!(r.roots[0].abs() < 1e-14 && (r.roots[1] - 2.0).abs() < 1e-14);
        assert_eq!((r.discriminant, r.det_product), (1.0, 1.0));
    }

    #[test]
    fn relabels_interior_unknown() {
        let rows =
            [vec![3.0, 1.0, 0.5, 0.2], vec![1.0, 2.0, 0.3, 0.0], vec![0.5, 0.3, 1.0, 0.7], vec![0.2, 0.0, 0.7, 2.0]];
        let m = missing(&rows, 2, 4);
        let r = one_missing_entry_solve(&m, tol()).unwrap();
        assert_eq!(r.permutation, vec![2, 1, 3, 4]);
        for &t in &r.roots {
            let x = m.completion(&[t]).unwrap();
            assert!(numeric_rank(&x, Tolerance::new(1e-9, 1e-7).unwrap()).unwrap() < 4);
        }
    }

    #[test]
    fn rejects_other_patterns() {
        let g = SemisimpleGraph::from_edges(2, &[(1, 1), (2, 2), (1, 2)]).unwrap();
        let m = PartialSymmetricMatrix::from_symmetric(g, &SymmetricMatrix::identity(2)).unwrap();
        assert!(matches!(one_missing_entry_solve(&m, tol()), Err(Error::UnsupportedPattern(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn discriminant_identity_and_roots(n in 2usize..=6, v in proptest::collection::vec(-1.0f64..1.0, 36),
                                          pick in any::<(usize, usize)>()) {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|r| (0..n).map(|s| v[r.min(s) * 6 + r.max(s)]).collect())
                .collect();
            let i = 1 + pick.0 % (n - 1);
            let j = i + 1 + pick.1 % (n - i);
            let m = missing(&rows, i, j);
            let r = one_missing_entry_solve(&m, tol()).unwrap();
            let scale = r.discriminant.abs().max(r.det_product.abs()).max(1.0);
            prop_assert!((r.discriminant - r.det_product).abs() <= 1e-8 * scale);
            for &t in &r.roots {
                let x = m.completion(&[t]).unwrap();
                let [a, b, c] = r.coefficients;
                let val = a * t * t + b * t + c;
                let mag = (a * t * t).abs() + (b * t).abs() + c.abs();
                prop_assert!(val.abs() <= 1e-8 * mag.max(1e-300));
                prop_assert!((determinant(x.as_matrix()) - val).abs() <= 1e-8 * mag.max(1.0));
            }
        }
    }
}
