use alloc::vec;
use alloc::vec::Vec;

use super::{esd, PartialSymmetricMatrix};
use crate::error::{Error, Result};
use crate::linalg::{
    inertia, numeric_rank, orthogonal_diagonalize, solve, Inertia, Matrix, SymmetricMatrix, Tolerance,
};

fn nonsingular_inertia(a: &SymmetricMatrix, what: &str, tol: Tolerance) -> Result<Inertia> {
    let i = inertia(a, tol)?;
    if i.kernel > 0 {
        return Err(Error::Singular(alloc::format!("{what} has inertia {i}")));
    }
    Ok(i)
}

/// `max(n, m) + esd(A, B)`: the minimum completion rank of the two-clique
/// partial matrix with nonsingular diagonal blocks `A` (`n × n`) and `B`.
pub fn clique_pair_min_rank(a: &SymmetricMatrix, b: &SymmetricMatrix, tol: Tolerance) -> Result<usize> {
    let ia = nonsingular_inertia(a, "first block", tol)?;
    let ib = nonsingular_inertia(b, "second block", tol)?;
    Ok(a.n().max(b.n()) + esd(ia, ib)?)
}

/// Minimum-rank completion `[[A, X], [Xᵀ, B]]` of two disjoint cliques.
#[derive(Debug, Clone)]
pub struct PairCompletion {
    pub x: Matrix,
    pub completion: SymmetricMatrix,
    pub rank: usize,
    /// Number of same-sign eigenvalue pairs coupled into rank-one blocks.
    pub matched: usize,
}

/// Builds the off-diagonal block in the joint eigenbasis: each same-sign pair
/// `(α, β)` becomes the rank-one block `[[α, √(αβ)], [√(αβ), β]]`, pairing
/// positives with positives and negatives with negatives.
pub fn clique_pair_complete(a: &SymmetricMatrix, b: &SymmetricMatrix, tol: Tolerance) -> Result<PairCompletion> {
    let target = clique_pair_min_rank(a, b, tol)?;
    let ia = inertia(a, tol)?;
    let ib = inertia(b, tol)?;
    let (c, alpha) = orthogonal_diagonalize(a)?;
    let (d, beta) = orthogonal_diagonalize(b)?;
    let (na, nb) = (a.n(), b.n());

    let mut xd = Matrix::zeros(na, nb);
    let pos = ia.positives.min(ib.positives);
    let neg = ia.negatives.min(ib.negatives);
    for r in 0..pos {
        xd[(r, r)] = libm::sqrt(alpha[r] * beta[r]);
    }
    for r in 0..neg {
        let (i, k) = (na - 1 - r, nb - 1 - r);
        xd[(i, k)] = libm::sqrt(alpha[i] * beta[k]);
    }
    let x = c.matmul(&xd)?.matmul(&d.transpose())?;
    let completion = a.assemble(&x, b)?;
    let rank = numeric_rank(&completion, tol)?;
    if rank != target {
        return Err(Error::Internal(alloc::format!("clique-pair completion has rank {rank}, expected {target}")));
    }
    Ok(PairCompletion { x, completion, rank, matched: pos + neg })
}

/// Completion of a union of `k >= 2` cliques with rank `n_1 + n_2`.
#[derive(Debug, Clone)]
pub struct MultiCliqueCompletion {
    /// Full matrix, blocks laid out in the order they were passed in.
    pub completion: SymmetricMatrix,
    pub rank: usize,
    /// `n_1 + n_2` for the two largest blocks.
    pub target_rank: usize,
    /// Block indices (0-based, input order) in the roles `1, 2, 3, ...`.
    pub roles: Vec<usize>,
    /// Same-sign eigenvalue pairs of blocks 1 and 2 coupled to move the
    /// inertia of the leading `(n_1 + n_2)`-block: positive for positive
    /// pairs, negative for negative pairs, `0` when that block is left
    /// block-diagonal.
    pub coupled_pairs: i64,
}

/// Completion of rank `n_1 + n_2` for a union of cliques with nonsingular
/// diagonal blocks, `n_1 >= n_2` the two largest sizes.
///
/// Blocks 1 and 2 form an invertible leading block `A` whose inertia
/// `(P, Q)` dominates every block's inertia, coupling same-sign eigenvalue
/// pairs of blocks 1 and 2 where the plain block-diagonal choice does not.
/// Every further block `M_j` is written as `Y_jᵀ A⁻¹ Y_j` using distinct
/// same-sign eigenvectors of `A`, and the cross blocks between later cliques
/// are set to `Y_iᵀ A⁻¹ Y_j`, so the Schur complement of `A` vanishes.
pub fn multi_clique_complete(blocks: &[SymmetricMatrix], tol: Tolerance) -> Result<MultiCliqueCompletion> {
    let k = blocks.len();
    if k < 2 {
        return Err(Error::UnsupportedPattern("need at least two cliques".into()));
    }
    let inertias = blocks
        .iter()
        .enumerate()
        .map(|(j, b)| nonsingular_inertia(b, &alloc::format!("block {}", j + 1), tol))
        .collect::<Result<Vec<_>>>()?;

    let mut roles: Vec<usize> = (0..k).collect();
    roles.sort_by(|&i, &j| blocks[j].n().cmp(&blocks[i].n()));
    // Among the blocks eligible for role 2 (second-largest size), take the one
    // with the largest sign disagreement against block 1.
    let n2 = blocks[roles[1]].n();
    let mut best = 1;
    let mut best_esd = esd(inertias[roles[0]], inertias[roles[1]])?;
    for pos in 2..k {
        if blocks[roles[pos]].n() != n2 {
            break;
        }
        let e = esd(inertias[roles[0]], inertias[roles[pos]])?;
        if e > best_esd || (e == best_esd && roles[pos] < roles[best]) {
            best = pos;
            best_esd = e;
        }
    }
    roles.swap(1, best);

    let (b1, b2) = (&blocks[roles[0]], &blocks[roles[1]]);
    let (i1, i2) = (inertias[roles[0]], inertias[roles[1]]);
    let (n1, n2) = (b1.n(), b2.n());
    let big_n = n1 + n2;
    let max_p = inertias.iter().map(|i| i.positives).max().unwrap_or(0);
    let max_q = inertias.iter().map(|i| i.negatives).max().unwrap_or(0);
    let (p0, q0) = ((i1.positives + i2.positives) as i64, (i1.negatives + i2.negatives) as i64);
    let t: i64 = if q0 < max_q as i64 {
        max_q as i64 - q0
    } else if p0 < max_p as i64 {
        -(max_p as i64 - p0)
    } else {
        0
    };
    let feasible = t <= i1.positives.min(i2.positives) as i64
        && -t <= i1.negatives.min(i2.negatives) as i64
        && p0 - t >= max_p as i64
        && q0 + t >= max_q as i64;
    if !feasible {
        return Err(Error::Internal("no admissible inertia for the leading block".into()));
    }

    let (c, alpha) = orthogonal_diagonalize(b1)?;
    let (d, beta) = orthogonal_diagonalize(b2)?;
    let mut xd = Matrix::zeros(n1, n2);
    for r in 0..t.unsigned_abs() as usize {
        let (i, j) = if t > 0 { (r, r) } else { (n1 - 1 - r, n2 - 1 - r) };
        xd[(i, j)] = libm::sqrt(2.0 * alpha[i] * beta[j]);
    }
    let x12 = c.matmul(&xd)?.matmul(&d.transpose())?;
    let a = b1.assemble(&x12, b2)?;
    let ia = inertia(&a, tol)?;
    let (pp, qq) = ((p0 - t) as usize, (q0 + t) as usize);
    if ia != Inertia::new(pp, qq, 0) {
        return Err(Error::Internal(alloc::format!("leading block has inertia {ia}, expected ({pp},{qq},0)")));
    }
    let (u, lambda) = orthogonal_diagonalize(&a)?;

    let rest: usize = roles[2..].iter().map(|&j| blocks[j].n()).sum();
    let mut y = Matrix::zeros(big_n, rest);
    let mut col = 0;
    for &j in &roles[2..] {
        let (e, m) = orthogonal_diagonalize(&blocks[j])?;
        let nj = blocks[j].n();
        let ij = inertias[j];
        let mut yd = Matrix::zeros(big_n, nj);
        for r in 0..ij.positives {
            yd[(r, r)] = libm::sqrt(lambda[r] * m[r]);
        }
        for r in 0..ij.negatives {
            let (q, p) = (big_n - 1 - r, nj - 1 - r);
            yd[(q, p)] = libm::sqrt(lambda[q] * m[p]);
        }
        let yj = u.matmul(&yd)?.matmul(&e.transpose())?;
        for r in 0..big_n {
            for s in 0..nj {
                y[(r, col + s)] = yj[(r, s)];
            }
        }
        col += nj;
    }
    let lower = y.transpose().matmul(&solve(a.as_matrix(), &y)?)?;

    // Sorted layout: roles[0], roles[1], then the rest, each block contiguous.
    let total = big_n + rest;
    let mut sorted = SymmetricMatrix::from_upper(total, |r, s| match (r < big_n, s < big_n) {
        (true, true) => a.get(r, s),
        (true, false) => y[(r, s - big_n)],
        _ => 0.5 * (lower[(r - big_n, s - big_n)] + lower[(s - big_n, r - big_n)]),
    });
    let mut start = big_n;
    for &j in &roles[2..] {
        let nj = blocks[j].n();
        for r in 0..nj {
            for s in r..nj {
                sorted.set(start + r, start + s, blocks[j].get(r, s));
            }
        }
        start += nj;
    }

    let mut offsets = vec![0usize; k];
    for j in 1..k {
        offsets[j] = offsets[j - 1] + blocks[j - 1].n();
    }
    let mut place = Vec::with_capacity(total);
    for &j in &roles {
        place.extend((0..blocks[j].n()).map(|r| offsets[j] + r));
    }
    let mut completion = SymmetricMatrix::zeros(total);
    for r in 0..total {
        for s in r..total {
            completion.set(place[r], place[s], sorted.get(r, s));
        }
    }

    let rank = numeric_rank(&completion, tol)?;
    if rank > big_n {
        return Err(Error::Internal(alloc::format!("multi-clique completion has rank {rank}, expected {big_n}")));
    }
    Ok(MultiCliqueCompletion { completion, rank, target_rank: big_n, roles, coupled_pairs: t })
}

/// Completion of a partial matrix whose pattern is a disjoint union of
/// looped cliques, in the original labelling.
#[derive(Debug, Clone)]
pub struct CliqueUnionCompletion {
    pub completion: SymmetricMatrix,
    pub rank: usize,
    pub target_rank: usize,
    /// `true` when `target_rank` is the minimum completion rank (one or two
    /// cliques); for three or more cliques it is the maximum typical rank.
    pub minimum: bool,
    pub method: &'static str,
}

/// Dispatches a clique-union partial matrix to the one-, two- or
/// many-clique construction.
pub fn complete_clique_union(m: &PartialSymmetricMatrix, tol: Tolerance) -> Result<CliqueUnionCompletion> {
    let g = m.pattern();
    let comps = g.components();
    if g.n() == 0 || !g.is_looped() || !comps.iter().all(|&c| g.is_fully_specified(c)) {
        return Err(Error::UnsupportedPattern("pattern is not a disjoint union of looped cliques".into()));
    }
    let blocks: Vec<SymmetricMatrix> = comps.iter().map(|&c| m.restrict(c).zero_fill()).collect();
    let place: Vec<usize> = comps.iter().flat_map(|c| c.iter().map(|v| v - 1)).collect();
    let (local, target, minimum, method) = match blocks.len() {
        1 => {
            let r = numeric_rank(&blocks[0], tol)?;
            (blocks[0].clone(), r, true, "single-clique")
        }
        2 => {
            let pc = clique_pair_complete(&blocks[0], &blocks[1], tol)?;
            (pc.completion, pc.rank, true, "clique-pair")
        }
        _ => {
            let mc = multi_clique_complete(&blocks, tol)?;
            (mc.completion, mc.target_rank, false, "multi-clique")
        }
    };
    let mut completion = SymmetricMatrix::zeros(g.n());
    for r in 0..g.n() {
        for s in r..g.n() {
            completion.set(place[r], place[s], local.get(r, s));
        }
    }
    // Specified entries are copied back verbatim.
    for (i, j, v) in m.entries() {
        completion.set(i - 1, j - 1, v);
    }
    let rank = numeric_rank(&completion, tol)?;
    Ok(CliqueUnionCompletion { completion, rank, target_rank: target, minimum, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::schur_rank;
    use crate::SemisimpleGraph;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn d(v: &[f64]) -> SymmetricMatrix {
        SymmetricMatrix::diagonal(v)
    }

    #[test]
    fn pair_min_rank_examples() {
        assert_eq!(clique_pair_min_rank(&d(&[1.0, 1.0]), &d(&[-1.0, -1.0]), tol()), Ok(4));
        assert_eq!(clique_pair_min_rank(&d(&[1.0]), &d(&[4.0]), tol()), Ok(1));
        assert_eq!(clique_pair_min_rank(&d(&[1.0, -1.0]), &d(&[1.0, -1.0]), tol()), Ok(2));
        assert!(clique_pair_min_rank(&d(&[0.0]), &d(&[1.0]), tol()).is_err());
    }

    #[test]
    fn pair_complete_examples() {
        let pc = clique_pair_complete(&d(&[1.0]), &d(&[4.0]), tol()).unwrap();
        assert!((pc.x[(0, 0)].abs() - 2.0).abs() < 1e-12);
        assert_eq!(pc.rank, 1);

        let pc = clique_pair_complete(&d(&[1.0, 1.0]), &d(&[-1.0, -1.0]), tol()).unwrap();
        assert_eq!((pc.rank, pc.matched), (4, 0));

        // The rank-two completion of diag(2, -3) against (8) couples 2 with 8
        // through x = √16 = 4.
        let pc = clique_pair_complete(&d(&[2.0, -3.0]), &d(&[8.0]), tol()).unwrap();
        assert_eq!(pc.rank, 2);
        assert!((pc.x[(0, 0)].abs() - 4.0).abs() < 1e-12 && pc.x[(1, 0)].abs() < 1e-12);
        let wrong = Matrix::from_fn(2, 1, |i, _| if i == 0 { 2.0 } else { 0.0 });
        assert_eq!(schur_rank(&d(&[2.0, -3.0]), &wrong, &d(&[8.0]), tol()).unwrap(), 3);
    }

    #[test]
    fn multi_clique_examples() {
        let mc = multi_clique_complete(&[d(&[1.0]), d(&[-1.0]), d(&[1.0])], tol()).unwrap();
        assert_eq!((mc.rank, mc.target_rank), (2, 2));
        assert_eq!(mc.roles, vec![0, 1, 2]);
        for (j, v) in [1.0, -1.0, 1.0].iter().enumerate() {
            assert_eq!(mc.completion.get(j, j), *v);
        }

        let mc = multi_clique_complete(&[d(&[1.0, 1.0]), d(&[-1.0, -1.0]), d(&[5.0])], tol()).unwrap();
        assert_eq!(mc.rank, 4);

        let mc = multi_clique_complete(&[d(&[3.0, -1.0]), d(&[2.0])], tol()).unwrap();
        assert!(mc.rank <= 3);
    }

    #[test]
    fn multi_clique_hard_inertias() {
        // Blocks whose inertias force coupling inside the leading block.
        let mc = multi_clique_complete(&[d(&[1.0, -1.0]), d(&[-2.0, -3.0]), d(&[4.0, 5.0])], tol()).unwrap();
        assert_eq!(mc.rank, 4);
        let mc = multi_clique_complete(&[d(&[1.0]), d(&[-2.0]), d(&[2.0]), d(&[-7.0])], tol()).unwrap();
        assert_eq!(mc.rank, 2);
        let mc = multi_clique_complete(&[d(&[1.0]), d(&[2.0]), d(&[-2.0])], tol()).unwrap();
        assert_eq!(mc.rank, 2);
    }

    #[test]
    fn clique_union_layout() {
        let g = SemisimpleGraph::from_edges(3, &[(1, 1), (3, 3), (1, 3), (2, 2)]).unwrap();
        let m = PartialSymmetricMatrix::new(g, &[(1, 1, 1.0), (3, 3, 2.0), (1, 3, 0.5), (2, 2, 3.0)]).unwrap();
        let c = complete_clique_union(&m, tol()).unwrap();
        assert_eq!(c.completion.get(0, 2), 0.5);
        assert_eq!(c.completion.get(1, 1), 3.0);
        assert_eq!(c.rank, c.target_rank);
        let path = SemisimpleGraph::from_edges(2, &[(1, 2)]).unwrap();
        let m = PartialSymmetricMatrix::new(path, &[(1, 2, 1.0)]).unwrap();
        assert!(matches!(complete_clique_union(&m, tol()), Err(Error::UnsupportedPattern(_))));
    }

    fn block(seed: &[f64], n: usize) -> SymmetricMatrix {
        let mut s = SymmetricMatrix::from_upper(n, |i, j| seed[i * 4 + j]);
        for i in 0..n {
            let v = s.get(i, i);
            s.set(i, i, v + if v >= 0.0 { 2.0 } else { -2.0 });
        }
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pair_rank_is_formula(na in 1usize..=4, nb in 1usize..=4,
                                sa in proptest::collection::vec(-1.0f64..1.0, 16),
                                sb in proptest::collection::vec(-1.0f64..1.0, 16)) {
            let (a, b) = (block(&sa, na), block(&sb, nb));
            prop_assume!(inertia(&a, tol()).unwrap().kernel == 0 && inertia(&b, tol()).unwrap().kernel == 0);
            let pc = clique_pair_complete(&a, &b, tol()).unwrap();
            prop_assert_eq!(pc.rank, clique_pair_min_rank(&a, &b, tol()).unwrap());
        }

        #[test]
        fn definite_opposite_blocks_are_always_full_rank(na in 1usize..=4, nb in 1usize..=4,
                                x in proptest::collection::vec(-10.0f64..10.0, 16)) {
            let a = SymmetricMatrix::from_upper(na, |i, j| if i == j { 1.0 + i as f64 } else { 0.1 });
            let b = SymmetricMatrix::from_upper(nb, |i, j| if i == j { -2.0 - j as f64 } else { -0.2 });
            let xm = Matrix::from_fn(na, nb, |i, j| x[i * 4 + j]);
            prop_assert_eq!(numeric_rank(&a.assemble(&xm, &b).unwrap(), tol()).unwrap(), na + nb);
        }

        #[test]
        fn multi_clique_reaches_two_largest(sizes in proptest::collection::vec(1usize..=3, 2..=5),
                                            seed in proptest::collection::vec(-1.0f64..1.0, 16 * 5)) {
            let blocks: Vec<_> = sizes.iter().enumerate().map(|(j, &n)| block(&seed[16 * j..], n)).collect();
            prop_assume!(blocks.iter().all(|b| inertia(b, tol()).unwrap().kernel == 0));
            let mc = multi_clique_complete(&blocks, tol()).unwrap();
            let mut s = sizes.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(mc.rank, s[0] + s[1]);
            let mut off = 0;
            for b in &blocks {
                for i in 0..b.n() {
                    for j in 0..b.n() {
                        prop_assert_eq!(mc.completion.get(off + i, off + j), b.get(i, j));
                    }
                }
                off += b.n();
            }
        }
    }
}
