use super::*;
use alloc::vec;
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn sym(rows: &[&[f64]]) -> SymmetricMatrix {
    SymmetricMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn inertia_examples() {
    assert_eq!(inertia(&SymmetricMatrix::diagonal(&[1.0, -1.0]), tol()).unwrap(), Inertia::new(1, 1, 0));
    assert_eq!(inertia(&SymmetricMatrix::zeros(3), tol()).unwrap(), Inertia::new(0, 0, 3));
    assert_eq!(inertia(&sym(&[&[2.0, 1.0], &[1.0, 1.0]]), tol()).unwrap(), Inertia::new(2, 0, 0));
}

#[test]
fn rank_examples() {
    assert_eq!(numeric_rank(&SymmetricMatrix::identity(4), tol()).unwrap(), 4);
    let v = [0.3, -1.2, 2.5];
    let outer = SymmetricMatrix::from_upper(3, |i, j| v[i] * v[j]);
    assert_eq!(numeric_rank(&outer, tol()).unwrap(), 1);
    assert_eq!(numeric_rank(&SymmetricMatrix::diagonal(&[1.0, 1e-15]), tol()).unwrap(), 1);
}

#[test]
fn det_sign_examples() {
    assert_eq!(det_sign(&SymmetricMatrix::diagonal(&[1.0, -1.0, -1.0]), tol()).unwrap(), 1);
    assert_eq!(det_sign(&SymmetricMatrix::diagonal(&[1.0, -1.0]), tol()).unwrap(), -1);
    assert_eq!(det_sign(&sym(&[&[1.0, 2.0], &[2.0, 4.0]]), tol()).unwrap(), 0);
}

#[test]
fn principal_submatrix_examples() {
    let a = sym(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 5.0], &[3.0, 5.0, 6.0]]);
    let s = principal_submatrix(&a, VertexSet::from_labels([1, 3])).unwrap();
    assert_eq!(s.to_rows(), vec![vec![1.0, 3.0], vec![3.0, 6.0]]);
    assert_eq!(principal_submatrix(&a, VertexSet::full(3)).unwrap(), a);
    let e = principal_submatrix(&a, VertexSet::empty()).unwrap();
    assert_eq!(e.n(), 0);
    assert_eq!(det_sign(&e, tol()).unwrap(), 1);
    assert_eq!(determinant(e.as_matrix()), 1.0);
    assert!(principal_submatrix(&a, VertexSet::from_labels([4])).is_err());
}

#[test]
fn schur_examples() {
    let i2 = SymmetricMatrix::identity(2);
    assert_eq!(schur_rank(&i2, &Matrix::zeros(2, 2), &i2, tol()).unwrap(), 4);
    let one = SymmetricMatrix::diagonal(&[1.0]);
    let x = Matrix::from_rows(&[vec![2.0]]).unwrap();
    assert_eq!(schur_rank(&one, &x, &SymmetricMatrix::diagonal(&[4.0]), tol()).unwrap(), 1);
    let b = SymmetricMatrix::diagonal(&[1.0, -1.0]);
    assert_eq!(schur_rank(&i2, &Matrix::identity(2), &b, tol()).unwrap(), 3);
    assert!(schur_rank(&SymmetricMatrix::zeros(1), &x, &one, tol()).is_err());
}

#[test]
fn pluecker_examples() {
    assert_eq!(pluecker_residual(&Matrix::identity(3)).unwrap(), 0.0);
    let m = Matrix::from_rows(&[vec![3.0, 5.0], vec![7.0, 11.0]]).unwrap();
    assert_eq!(pluecker_residual(&m).unwrap(), 0.0);
    assert!(pluecker_residual(&Matrix::identity(1)).is_err());
}

#[test]
fn diagonalize_examples() {
    let (c, vals) = orthogonal_diagonalize(&SymmetricMatrix::diagonal(&[3.0, 1.0])).unwrap();
    assert_eq!(vals, vec![3.0, 1.0]);
    assert_eq!(c, Matrix::identity(2));
    let (_, vals) = orthogonal_diagonalize(&sym(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
    assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);
}

#[test]
fn near_threshold_flag() {
    let r = inertia_report(&SymmetricMatrix::diagonal(&[1.0, 5e-8]), tol()).unwrap();
    assert!(r.near_threshold);
    let r = inertia_report(&SymmetricMatrix::diagonal(&[1.0, -0.5]), tol()).unwrap();
    assert!(!r.near_threshold);
}

#[test]
fn non_finite_rejected() {
    let mut a = SymmetricMatrix::identity(2);
    a.set(0, 1, f64::NAN);
    assert_eq!(inertia(&a, tol()), Err(Error::NonFinite(1, 2)));
}

fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-2.0f64..2.0, n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j]))
}

fn arb_symmetric(n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    arb_matrix(n).prop_map(|m| SymmetricMatrix::from_upper(m.rows(), |i, j| m[(i, j)]))
}

fn max_product_scale(a: &Matrix) -> f64 {
    let t = pluecker_terms(a).unwrap();
    t.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sylvester_law(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let a = SymmetricMatrix::from_upper(n, |_, _| rng.next());
        let p = Matrix::from_fn(n, n, |i, j| rng.next() + if i == j { 3.0 } else { 0.0 });
        let before = inertia(&a, tol()).unwrap();
        let after = inertia(&a.congruence(&p).unwrap(), tol()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn schur_rank_matches_assembled(na in 1usize..=4, nb in 1usize..=4, seed in any::<u64>(), low in any::<bool>()) {
        let mut rng = Lcg(seed);
        let a = SymmetricMatrix::from_upper(na, |i, j| rng.next() + if i == j { 4.0 * rng.sign() } else { 0.0 });
        let x = Matrix::from_fn(na, nb, |_, _| rng.next());
        let mut b = SymmetricMatrix::from_upper(nb, |_, _| rng.next());
        if low {
            // Make the Schur complement vanish so the rank drops.
            let s = schur_complement(&a, &x, &SymmetricMatrix::zeros(nb)).unwrap();
            b = SymmetricMatrix::from_upper(nb, |i, j| -s.get(i, j));
        }
        let whole = a.assemble(&x, &b).unwrap();
        prop_assert_eq!(schur_rank(&a, &x, &b, tol()).unwrap(), numeric_rank(&whole, tol()).unwrap());
    }

    #[test]
    fn det_sign_matches_eigen_product(a in (1usize..=6).prop_flat_map(arb_symmetric)) {
        let (vals, _) = symmetric_eigen(&a).unwrap();
        if numeric_rank(&a, tol()).unwrap() == a.n() {
            let prod: f64 = vals.iter().product();
            prop_assert_eq!(det_sign(&a, tol()).unwrap(), if prod > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn diagonalization_reconstructs(a in (1usize..=6).prop_flat_map(arb_symmetric)) {
        let (c, vals) = orthogonal_diagonalize(&a).unwrap();
        let n = a.n();
        let ctc = c.transpose().matmul(&c).unwrap();
        let d = SymmetricMatrix::diagonal(&vals);
        let back = c.matmul(d.as_matrix()).unwrap().matmul(&c.transpose()).unwrap();
        let scale = a.max_abs().max(1.0);
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ctc[(i, j)] - id).abs() < 1e-10);
                prop_assert!((back[(i, j)] - a.get(i, j)).abs() < 1e-10 * scale);
            }
        }
        prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pluecker_identity(a in (2usize..=6).prop_flat_map(arb_matrix)) {
        let r = pluecker_residual(&a).unwrap();
        prop_assert!(r.abs() / max_product_scale(&a) <= 1e-10, "residual {}", r);
    }
}

/// Tiny deterministic generator for tests that need many correlated draws.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    fn sign(&mut self) -> f64 {
        if self.next() >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}
