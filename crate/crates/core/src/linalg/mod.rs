//! Dense real matrices with the symmetric-matrix primitives the completion
//! procedures rely on: inertia, numeric rank, determinant sign, Schur
//! complements and determinant identities.
//!
//! Rank and sign decisions are relative-tolerance eigenvalue tests: an
//! eigenvalue `λ` counts as zero when `|λ| <= rank_tol * max(1, max|λ|)`.

mod eigen;
mod lu;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

pub use eigen::symmetric_eigen;
pub(crate) use lu::cholesky_solve_in_place;
pub use lu::{determinant, solve};

/// Default relative eigenvalue threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;
/// Default residual threshold for the numeric oracle.
pub const DEFAULT_OPT_TOL: f64 = 1e-7;

/// Numeric thresholds shared by the rank tests and the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerance {
    pub rank_tol: f64,
    pub opt_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rank_tol: DEFAULT_RANK_TOL, opt_tol: DEFAULT_OPT_TOL }
    }
}

impl Tolerance {
    pub fn new(rank_tol: f64, opt_tol: f64) -> Result<Self> {
        let ok = |t: f64| t.is_finite() && t > 0.0;
        if !ok(rank_tol) || !ok(opt_tol) {
            return Err(Error::Config("tolerances must be finite and strictly positive".into()));
        }
        Ok(Tolerance { rank_tol, opt_tol })
    }

    /// Absolute eigenvalue cut-off for a spectrum with largest magnitude `max_abs`.
    pub fn threshold(&self, max_abs: f64) -> f64 {
        self.rank_tol * max_abs.max(1.0)
    }
}

/// Dense row-major rectangular matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension("matmul inner dimensions differ".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Copy with the listed (0-based) rows and columns deleted.
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> Matrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !drop_rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !drop_cols.contains(j)).collect();
        Matrix::from_fn(keep_r.len(), keep_c.len(), |i, j| self[(keep_r[i], keep_c[j])])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(libm::fabs(*x)))
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        f.write_str("]")
    }
}

/// Dense symmetric matrix. Writes through [`SymmetricMatrix::set`] update both
/// triangles, so `get(i, j) == get(j, i)` holds exactly.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix {
    inner: Matrix,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { inner: Matrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        SymmetricMatrix { inner: Matrix::identity(n) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = SymmetricMatrix::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds from the upper triangle of `f(i, j)`, `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts a square matrix whose asymmetry is at most `rel_tol` relative
    /// to its largest entry; the result is the symmetric part.
    pub fn from_matrix(m: &Matrix, rel_tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(alloc::format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let scale = m.max_abs().max(f64::MIN_POSITIVE);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_finite() {
                    return Err(Error::NonFinite(i + 1, j + 1));
                }
                if libm::fabs(m[(i, j)] - m[(j, i)]) > rel_tol * scale {
                    return Err(Error::Dimension(alloc::format!(
                        "entries ({}, {}) and ({}, {}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(SymmetricMatrix::from_upper(m.rows(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)])))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        SymmetricMatrix::from_matrix(&Matrix::from_rows(rows)?, 1e-12)
    }

    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.inner[(i, j)] = v;
        self.inner[(j, i)] = v;
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.n() {
            for j in i..self.n() {
                if !self.get(i, j).is_finite() {
                    return Err(Error::NonFinite(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// Congruence `Pᵀ A P`.
    pub fn congruence(&self, p: &Matrix) -> Result<SymmetricMatrix> {
        let m = p.transpose().matmul(&self.inner)?.matmul(p)?;
        Ok(SymmetricMatrix::from_upper(m.rows(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)])))
    }

    /// Block matrix `[[self, x], [xᵀ, b]]`.
    pub fn assemble(&self, x: &Matrix, b: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        let (na, nb) = (self.n(), b.n());
        if x.rows() != na || x.cols() != nb {
            return Err(Error::Dimension(alloc::format!(
                "off-diagonal block is {}x{}, expected {na}x{nb}",
                x.rows(),
                x.cols()
            )));
        }
        Ok(SymmetricMatrix::from_upper(na + nb, |i, j| match (i < na, j < na) {
            (true, true) => self.get(i, j),
            (true, false) => x[(i, j - na)],
            _ => b.get(i - na, j - na),
        }))
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.max_abs()
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symmetric{:?}", self.inner)
    }
}

/// `(positives, negatives, kernel)` eigenvalue counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Inertia {
    pub positives: usize,
    pub negatives: usize,
    pub kernel: usize,
}

impl Inertia {
    pub const fn new(positives: usize, negatives: usize, kernel: usize) -> Self {
        Inertia { positives, negatives, kernel }
    }

    pub fn n(&self) -> usize {
        self.positives + self.negatives + self.kernel
    }

    pub fn rank(&self) -> usize {
        self.positives + self.negatives
    }

    pub fn is_full_rank(&self) -> bool {
        self.kernel == 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positives, self.negatives, self.kernel)
    }
}

/// Inertia together with a flag for spectra that sit close to the rank
/// threshold (some `|λ|` within a factor 10 of it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InertiaReport {
    pub inertia: Inertia,
    pub near_threshold: bool,
}

/// Inertia with the near-threshold flag.
pub fn inertia_report(a: &SymmetricMatrix, tol: Tolerance) -> Result<InertiaReport> {
    a.check_finite()?;
    let (values, _) = symmetric_eigen(a)?;
    Ok(classify_spectrum(&values, tol))
}

pub(crate) fn classify_spectrum(values: &[f64], tol: Tolerance) -> InertiaReport {
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
    let thr = tol.threshold(max_abs);
    let mut inertia = Inertia::default();
    let mut near_threshold = false;
    for &v in values {
        let a = libm::fabs(v);
        if a <= thr {
            inertia.kernel += 1;
        } else if v > 0.0 {
            inertia.positives += 1;
        } else {
            inertia.negatives += 1;
        }
        if a >= thr / 10.0 && a <= thr * 10.0 {
            near_threshold = true;
        }
    }
    InertiaReport { inertia, near_threshold }
}

/// Eigenvalue sign counts under the relative threshold of `tol`.
pub fn inertia(a: &SymmetricMatrix, tol: Tolerance) -> Result<Inertia> {
    Ok(inertia_report(a, tol)?.inertia)
}

/// `n` minus the kernel dimension reported by [`inertia`].
pub fn numeric_rank(a: &SymmetricMatrix, tol: Tolerance) -> Result<usize> {
    Ok(inertia(a, tol)?.rank())
}

/// Sign of the determinant read off the inertia: `0` when singular at `tol`,
/// else `(-1)^negatives`. The `0 × 0` matrix has sign `+1`.
pub fn det_sign(a: &SymmetricMatrix, tol: Tolerance) -> Result<i8> {
    let i = inertia(a, tol)?;
    Ok(if i.kernel > 0 {
        0
    } else if i.negatives % 2 == 0 {
        1
    } else {
        -1
    })
}

/// Principal submatrix on the 1-based labels in `keep`, in increasing order.
pub fn principal_submatrix(a: &SymmetricMatrix, keep: VertexSet) -> Result<SymmetricMatrix> {
    let idx: Vec<usize> = keep.iter().map(|v| v - 1).collect();
    if let Some(&bad) = idx.iter().find(|&&i| i >= a.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad + 1, n: a.n() });
    }
    Ok(SymmetricMatrix::from_upper(idx.len(), |i, j| a.get(idx[i], idx[j])))
}

/// `rank(A) + rank(B − Xᵀ A⁻¹ X)`, the rank of `[[A, X], [Xᵀ, B]]` for
/// invertible `A`.
pub fn schur_rank(a: &SymmetricMatrix, x: &Matrix, b: &SymmetricMatrix, tol: Tolerance) -> Result<usize> {
    let ia = inertia(a, tol)?;
    if !ia.is_full_rank() {
        return Err(Error::Singular("leading block of the Schur complement".into()));
    }
    Ok(ia.rank() + numeric_rank(&schur_complement(a, x, b)?, tol)?)
}

/// `B − Xᵀ A⁻¹ X`, symmetrized.
pub fn schur_complement(a: &SymmetricMatrix, x: &Matrix, b: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    if x.rows() != a.n() || x.cols() != b.n() {
        return Err(Error::Dimension("Schur blocks do not conform".into()));
    }
    let ainv_x = solve(a.as_matrix(), x)?;
    let s = x.transpose().matmul(&ainv_x)?;
    Ok(SymmetricMatrix::from_upper(b.n(), |i, j| b.get(i, j) - 0.5 * (s[(i, j)] + s[(j, i)])))
}

/// The three products `det(A)det(A_{1n,1n})`, `det(A_{1,1})det(A_{n,n})` and
/// `det(A_{1,n})det(A_{n,1})`, where `A_{S,T}` deletes rows `S` and columns `T`.
pub fn pluecker_terms(a: &Matrix) -> Result<[f64; 3]> {
    if !a.is_square() || a.rows() < 2 {
        return Err(Error::Dimension("need a square matrix of size at least 2".into()));
    }
    let l = a.rows() - 1;
    let d = |r: &[usize], c: &[usize]| determinant(&a.minor(r, c));
    Ok([d(&[], &[]) * d(&[0, l], &[0, l]), d(&[0], &[0]) * d(&[l], &[l]), d(&[0], &[l]) * d(&[l], &[0])])
}

/// Left-hand side of `det(A)det(A_{1n,1n}) − det(A_{1,1})det(A_{n,n}) +
/// det(A_{1,n})det(A_{n,1})`, which vanishes identically.
pub fn pluecker_residual(a: &Matrix) -> Result<f64> {
    let [t0, t1, t2] = pluecker_terms(a)?;
    Ok(t0 - t1 + t2)
}

/// `(C, values)` with `Cᵀ C = I`, `Cᵀ A C = diag(values)`, values descending.
pub fn orthogonal_diagonalize(a: &SymmetricMatrix) -> Result<(Matrix, Vec<f64>)> {
    a.check_finite()?;
    let (values, vectors) = symmetric_eigen(a)?;
    Ok((vectors, values))
}

#[cfg(test)]
mod tests;
