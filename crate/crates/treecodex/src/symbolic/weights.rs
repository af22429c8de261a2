//! Weighted-count identities: the Matrix Tree Theorem at the symbolic
//! level, the factored determinant of the uniform weighting, and the
//! ascent/descent product formula.

use crate::blob::WeightedToken;
use crate::error::Result;
use crate::symbolic::matrix::SymMatrix;
use crate::symbolic::poly::{MultiPoly, Var};
use crate::tree::{enumerate_trees_bounded, RootedTree};

/// Edge weighting for the counting identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Every edge into j weighs b_j.
    UniformB,
    /// Ascents i -> j (j > i >= 1) weigh a(i,j); all other edges weigh b_j.
    Ucsd,
}

/// The weight of the edge i -> j. Edges out of the root keep the b-weight
/// under both schemes; they never occur in a spanning tree.
pub fn edge_weight(w: Weighting, i: usize, j: usize) -> MultiPoly {
    match w {
        Weighting::UniformB => MultiPoly::var(Var::B(j as i32)),
        Weighting::Ucsd => {
            if i >= 1 && j > i {
                MultiPoly::var(Var::A(i as u16, j as u16))
            } else {
                MultiPoly::var(Var::B(j as i32))
            }
        }
    }
}

/// The full (n+1) x (n+1) weighted Laplacian, rows and columns indexed from
/// 0: off-diagonal (i,j) holds -W(i->j) and the diagonal holds the sum of
/// the weights of the edges with tail at i, so every row sums to zero.
/// `minor_at_origin` drops row and column 0.
pub fn laplacian(n: usize, w: Weighting) -> SymMatrix {
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        let mut diag = MultiPoly::zero();
        for k in 0..=n {
            if k != i {
                diag = diag.add(&edge_weight(w, i, k));
            }
        }
        for j in 0..=n {
            if i == j {
                row.push(diag.clone());
            } else {
                row.push(edge_weight(w, i, j).neg());
            }
        }
        rows.push(row);
    }
    SymMatrix::new(0, rows)
}

/// The weight of a tree: the product of its edge weights.
pub fn tree_weight(t: &RootedTree, w: Weighting) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for v in 1..=t.n() {
        acc = acc.mul(&edge_weight(w, v, t.succ(v)));
    }
    acc
}

/// Sum of the weights of all rooted trees on {0..n}, by enumeration. This
/// is the oracle side of the Matrix Tree Theorem check.
pub fn tree_weight_sum(n: usize, w: Weighting) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero();
    for t in enumerate_trees_bounded(n, crate::tree::ENUMERATION_BOUND)? {
        acc = acc.add(&tree_weight(&t, w));
    }
    Ok(acc)
}

/// Matrix Tree Theorem instance: the reduced Laplacian determinant equals
/// the enumerated weighted tree sum.
pub fn mtt_check(n: usize, w: Weighting) -> Result<bool> {
    let det = laplacian(n, w).minor_at_origin().det()?;
    Ok(det == tree_weight_sum(n, w)?)
}

/// The closed form of the uniform-b reduced determinant:
/// b0 * (b0 + ... + bn)^(n-1).
pub fn uniform_b_closed_form(n: usize) -> MultiPoly {
    let sum = MultiPoly::sum_of((0..=n).map(|j| Var::B(j as i32)));
    MultiPoly::var(Var::B(0)).mul(&sum.pow(n as u32 - 1))
}

/// The ascent/descent product formula:
/// b0 * prod_{i=2..n} [ sum_{k<i} b_k + sum_{j>=i} a(i-1, j) ], expanded.
pub fn ucsd_product(n: usize) -> MultiPoly {
    let mut acc = MultiPoly::var(Var::B(0));
    for i in 2..=n {
        let mut bracket = MultiPoly::sum_of((0..i).map(|k| Var::B(k as i32)));
        bracket = bracket.add(&MultiPoly::sum_of(
            (i..=n).map(|j| Var::A((i - 1) as u16, j as u16)),
        ));
        acc = acc.mul(&bracket);
    }
    acc
}

/// Per-vertex ascent/descent degree counts read off a weighted code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    /// Row j holds (I_A, I_D, O_A, O_D) for vertex j.
    pub rows: Vec<DegreeRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegreeRow {
    pub in_ascending: usize,
    pub in_descending: usize,
    pub out_ascending: usize,
    pub out_descending: usize,
}

impl DegreeStats {
    pub fn n(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Degree table of a weighted code: descending indegree counts b_j tokens,
/// ascent tokens list the ascending edges outright, and every non-root
/// vertex spends its single out-edge on one side or the other.
pub fn code_stats(tokens: &[WeightedToken]) -> Result<DegreeStats> {
    crate::blob::validate_weighted(tokens)?;
    let n = tokens.len();
    let mut rows = vec![DegreeRow::default(); n + 1];
    for tok in tokens {
        match *tok {
            WeightedToken::B(j) => rows[j].in_descending += 1,
            WeightedToken::A(i, j) => {
                rows[i].out_ascending += 1;
                rows[j].in_ascending += 1;
            }
        }
    }
    for j in 1..=n {
        rows[j].out_descending = 1 - rows[j].out_ascending;
    }
    Ok(DegreeStats { rows })
}

/// Degree table read directly off a tree's edges; the oracle for
/// [`code_stats`].
pub fn tree_stats(t: &RootedTree) -> DegreeStats {
    let n = t.n();
    let mut rows = vec![DegreeRow::default(); n + 1];
    for i in 1..=n {
        let j = t.succ(i);
        if j > i {
            rows[i].out_ascending += 1;
            rows[j].in_ascending += 1;
        } else {
            rows[i].out_descending += 1;
            rows[j].in_descending += 1;
        }
    }
    DegreeStats { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blob::blob_encode_weighted;
    use crate::symbolic::poly::Mono;
    use crate::tree::random_tree;

    fn b(j: i32) -> MultiPoly {
        MultiPoly::var(Var::B(j))
    }

    #[test]
    fn reduced_uniform_laplacian_matches_the_displayed_three_by_three() {
        let m = laplacian(3, Weighting::UniformB).minor_at_origin();
        assert_eq!(m.origin(), 1);
        assert_eq!(*m.at(1, 1), b(0).add(&b(2)).add(&b(3)));
        assert_eq!(*m.at(1, 2), b(2).neg());
        assert_eq!(*m.at(2, 1), b(1).neg());
        assert_eq!(*m.at(3, 3), b(0).add(&b(1)).add(&b(2)));
    }

    #[test]
    fn ucsd_laplacian_matches_the_displayed_four_by_four() {
        let m = laplacian(4, Weighting::Ucsd).minor_at_origin();
        // row 1 diagonal: b0 + a12 + a13 + a14 (the +-b1 loop pair cancels)
        let a = |i: u16, j: u16| MultiPoly::var(Var::A(i, j));
        assert_eq!(*m.at(1, 1), b(0).add(&a(1, 2)).add(&a(1, 3)).add(&a(1, 4)));
        assert_eq!(*m.at(1, 2), a(1, 2).neg());
        assert_eq!(*m.at(2, 1), b(1).neg());
        assert_eq!(
            *m.at(4, 4),
            b(0).add(&b(1)).add(&b(2)).add(&b(3))
        );
    }

    #[test]
    fn full_laplacian_rows_sum_to_zero() {
        for n in 1..=6 {
            for w in [Weighting::UniformB, Weighting::Ucsd] {
                let m = laplacian(n, w);
                for i in 0..=n {
                    assert!(m.row_sum(i).is_zero(), "n={n} row {i}");
                }
            }
        }
    }

    #[test]
    fn small_determinants_are_known() {
        let det = laplacian(2, Weighting::UniformB).minor_at_origin().det().unwrap();
        let expected = b(0).pow(2).add(&b(0).mul(&b(1))).add(&b(0).mul(&b(2)));
        assert_eq!(det, expected);
        assert_eq!(tree_weight_sum(2, Weighting::UniformB).unwrap(), expected);
        assert_eq!(tree_weight_sum(1, Weighting::UniformB).unwrap(), b(0));
    }

    #[test]
    fn uniform_determinant_factors_for_small_n() {
        for n in 1..=4 {
            let det = laplacian(n, Weighting::UniformB).minor_at_origin().det().unwrap();
            assert_eq!(det, uniform_b_closed_form(n), "n={n}");
        }
    }

    #[test]
    fn mtt_holds_for_small_n() {
        for n in 1..=4 {
            assert!(mtt_check(n, Weighting::UniformB).unwrap(), "uniform n={n}");
            assert!(mtt_check(n, Weighting::Ucsd).unwrap(), "ucsd n={n}");
        }
    }

    #[test]
    fn ucsd_product_expands_to_the_tree_sum() {
        assert_eq!(ucsd_product(1), b(0));
        for n in 1..=4 {
            assert_eq!(
                ucsd_product(n),
                tree_weight_sum(n, Weighting::Ucsd).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn ucsd_product_equals_the_final_upper_triangular_determinant() {
        // diagonal: b0, then the bracket for each i = 2..n; strictly upper
        // entries do not affect the determinant, so build the diagonal part
        let n = 4usize;
        let mut rows = vec![vec![MultiPoly::zero(); n]; n];
        rows[0][0] = b(0);
        for i in 2..=n {
            let mut bracket = MultiPoly::sum_of((0..i).map(|k| Var::B(k as i32)));
            bracket = bracket.add(&MultiPoly::sum_of(
                (i..=n).map(|j| Var::A((i - 1) as u16, j as u16)),
            ));
            rows[i - 1][i - 1] = bracket;
        }
        // garbage above the diagonal, as left behind by the row reduction
        rows[0][1] = MultiPoly::var(Var::A(1, 2)).neg();
        rows[0][2] = MultiPoly::var(Var::A(1, 3)).neg();
        rows[0][3] = MultiPoly::var(Var::A(1, 4)).neg();
        let m = SymMatrix::new(1, rows);
        assert_eq!(m.det().unwrap(), ucsd_product(n));
    }

    #[test]
    fn monomial_count_matches_cayley_for_small_n() {
        for n in 1..=4usize {
            let det = laplacian(n, Weighting::UniformB).minor_at_origin().det().unwrap();
            assert!(det.terms().all(|(_, c)| c > 0));
            assert_eq!(det.coefficient_sum() as usize, (n + 1).pow(n as u32 - 1));
        }
    }

    #[test]
    fn stats_of_the_worked_code() {
        let toks = crate::blob::weighted_code_from_str("b0,a1_3,b2,b0,a4_5").unwrap();
        let s = code_stats(&toks).unwrap();
        let expect = [
            // (I_A, I_D, O_A, O_D) per vertex 0..=5
            (0, 2, 0, 0),
            (0, 0, 1, 0),
            (0, 1, 0, 1),
            (1, 0, 0, 1),
            (0, 0, 1, 0),
            (1, 0, 0, 1),
        ];
        for (j, &(ia, id, oa, od)) in expect.iter().enumerate() {
            assert_eq!(
                (s.rows[j].in_ascending, s.rows[j].in_descending, s.rows[j].out_ascending, s.rows[j].out_descending),
                (ia, id, oa, od),
                "vertex {j}"
            );
        }
    }

    #[test]
    fn stats_of_the_trivial_code() {
        let s = code_stats(&[WeightedToken::B(0)]).unwrap();
        assert_eq!(s.rows[0].in_descending, 1);
        assert_eq!(s.rows[0].in_ascending + s.rows[0].out_ascending + s.rows[0].out_descending, 0);
        assert_eq!(s.rows[1].out_descending, 1);
    }

    #[test]
    fn stats_agree_with_direct_edge_classification() {
        for seed in 0..1000 {
            let t = random_tree(50, seed);
            let s = code_stats(&blob_encode_weighted(&t)).unwrap();
            let direct = tree_stats(&t);
            assert_eq!(s, direct, "seed {seed}");
        }
    }

    #[test]
    fn substituting_root_weights_gives_forest_sums() {
        // splitting b0 into per-root weights turns the tree sum into the
        // forest sum, checked by brute-force forest enumeration at k = 2
        use num_bigint::BigInt;
        let k = 2usize;
        for m in 1..=3usize {
            let n = m + k - 1;
            let det = laplacian(m, Weighting::UniformB).minor_at_origin().det().unwrap();
            let split = MultiPoly::sum_of((1..=k).map(|r| Var::B(-(r as i32))));
            let substituted = det.substitute(Var::B(0), &split);
            // forest sum by enumeration over all successor assignments
            let alphabet: Vec<i64> = (-(k as i64)..=-1).chain(1..=m as i64).collect();
            let mut forest_sum = MultiPoly::zero();
            let total = alphabet.len().pow(m as u32);
            for mut idx in 0..total {
                let mut succ = Vec::with_capacity(m);
                for _ in 0..m {
                    succ.push(alphabet[idx % alphabet.len()]);
                    idx /= alphabet.len();
                }
                if let Ok(f) = crate::forest::RootedForest::from_successors(k, succ) {
                    let mut w = MultiPoly::one();
                    for v in 1..=m {
                        w = w.mul(&MultiPoly::var(Var::B(f.succ(v) as i32)));
                    }
                    forest_sum = forest_sum.add(&w);
                }
            }
            assert_eq!(substituted, forest_sum, "k={k} m={m} n={n}");
            // spot-check with an integer evaluation as well
            let point = |v: Var| match v {
                Var::B(j) => BigInt::from(7 + j.rem_euclid(5)),
                _ => BigInt::from(1),
            };
            assert_eq!(substituted.eval(point), forest_sum.eval(point));
        }
    }

    #[test]
    fn rendering_used_by_the_cli_is_stable() {
        let det = laplacian(2, Weighting::UniformB).minor_at_origin().det().unwrap();
        assert_eq!(det.to_string(), "b0*b1 + b0*b2 + b0^2");
        let m = Mono::from(vec![(Var::B(0), 2), (Var::B(1), 1)]);
        assert_eq!(m.to_string(), "b0^2*b1");
    }
}
