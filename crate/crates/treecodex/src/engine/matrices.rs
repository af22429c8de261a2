//! Monomial tables of the pipeline stage matrices, used to enumerate stage
//! elements exhaustively at small n.

use crate::engine::array::{Entry, SignedArray, Sym};

/// The monomials available in one matrix cell.
pub type CellMonos = Vec<(Sym, bool)>;

/// Row-subtraction without cancellation: the target row keeps its monomials
/// and gains the negation of the source row's.
fn subtract_into(target: &mut [CellMonos], source: &[CellMonos]) {
    for (cell, src) in target.iter_mut().zip(source) {
        cell.extend(src.iter().map(|&(s, neg)| (s, !neg)));
    }
}

fn uppers(n: usize) -> CellMonos {
    (0..=n).map(|k| (Sym::Upper(k), false)).collect()
}

/// The happy-pipeline matrix at step `i` (primed after in-entry
/// cancellation), rows and columns 0..=n. Row 0 holds the placeholder; rows
/// above n-i are already reduced.
pub fn happy_matrix(n: usize, i: usize, primed: bool) -> Vec<Vec<CellMonos>> {
    assert!(i <= n);
    assert!(primed || i >= 1, "the chain starts at the primed step 0");
    let mut m = vec![vec![CellMonos::new(); n + 1]; n + 1];
    // row 0: placeholder minus b0, then -b_j
    m[0][0] = vec![(Sym::Lambda, false), (Sym::Lower(0), true)];
    for j in 1..=n {
        m[0][j] = vec![(Sym::Lower(j), true)];
    }
    let plain_rows_up_to = if primed { n - i } else { n - i + 1 };
    for r in 1..=n {
        if r <= plain_rows_up_to {
            for j in 0..=n {
                if j == r {
                    let mut diag = uppers(n);
                    diag.push((Sym::Lower(r), true));
                    m[r][j] = diag;
                } else {
                    m[r][j] = vec![(Sym::Lower(j), true)];
                }
            }
        } else {
            m[r][0] = vec![(Sym::Lambda, true)];
            m[r][r] = uppers(n);
        }
    }
    if !primed {
        // row n-i+1 is mid-subtraction: original row minus row 0, uncancelled
        let row = n - i + 1;
        let row0 = m[0].clone();
        let mut original = vec![CellMonos::new(); n + 1];
        for j in 0..=n {
            if j == row {
                let mut diag = uppers(n);
                diag.push((Sym::Lower(row), true));
                original[j] = diag;
            } else {
                original[j] = vec![(Sym::Lower(j), true)];
            }
        }
        subtract_into(&mut original, &row0);
        m[row] = original;
    }
    m
}

/// Blob-pipeline matrices, rows and columns 1..=n (index 0 of the returned
/// grid is row/column 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlobMat {
    /// C_i' for 0 <= i <= n-1; the last one is written in lower case after
    /// the closing substitution.
    Cp(usize),
    R(usize),
    Rp(usize),
    C(usize),
}

fn lower_range(from: usize, to: usize, neg: bool) -> CellMonos {
    (from..=to).map(|k| (Sym::Lower(k), neg)).collect()
}

pub fn blob_matrix(n: usize, which: BlobMat) -> Vec<Vec<CellMonos>> {
    let grid = |f: &dyn Fn(usize, usize) -> CellMonos| -> Vec<Vec<CellMonos>> {
        (1..=n).map(|r| (1..=n).map(|c| f(r, c)).collect()).collect()
    };
    // C_i' cell content before any substitution
    let cp = |i: usize, r: usize, c: usize| -> CellMonos {
        let blob_row = n - i;
        if r < blob_row {
            if c == r {
                let mut diag = uppers(n);
                diag.push((Sym::Lower(r), true));
                diag
            } else if c <= blob_row {
                vec![(Sym::Lower(c), true)]
            } else {
                lower_range(c, n, true)
            }
        } else if r == blob_row {
            if c == r {
                let mut diag = uppers(n);
                diag.extend(lower_range(blob_row, n, true));
                diag
            } else if c < blob_row {
                vec![(Sym::Lower(c), true)]
            } else {
                lower_range(c, n, true)
            }
        } else if c == r {
            uppers(n)
        } else {
            CellMonos::new()
        }
    };
    match which {
        BlobMat::Cp(i) if i == n - 1 && n > 1 => {
            // closing substitution: upper-case becomes lower-case and the
            // top-left entry cancels down to b0
            grid(&|r, c| {
                if r == 1 && c == 1 {
                    vec![(Sym::Lower(0), false)]
                } else if r == 1 {
                    lower_range(c, n, true)
                } else if r == c {
                    (0..=n).map(|k| (Sym::Lower(k), false)).collect()
                } else {
                    CellMonos::new()
                }
            })
        }
        BlobMat::Cp(i) => {
            assert!(i < n - 1 || n == 1);
            grid(&|r, c| cp(i, r, c))
        }
        BlobMat::R(i) => {
            assert!((1..n).contains(&i));
            let mut m = grid(&|r, c| cp(i - 1, r, c));
            let source = m[n - i - 1].clone(); // row n-i
            subtract_into(&mut m[n - i], &source); // into row n-i+1
            m
        }
        BlobMat::Rp(i) => {
            assert!((1..n).contains(&i));
            let mut m = grid(&|r, c| cp(i - 1, r, c));
            let row = &mut m[n - i];
            for cell in row.iter_mut() {
                cell.clear();
            }
            row[n - i - 1] = (0..=n).map(|k| (Sym::Upper(k), true)).collect();
            row[n - i] = uppers(n);
            m
        }
        BlobMat::C(i) => {
            assert!((1..n).contains(&i));
            let mut m = blob_matrix(n, BlobMat::Rp(i));
            // add column n-i+1 into column n-i
            for r in 0..n {
                let moved = m[r][n - i].clone();
                m[r][n - i - 1].extend(moved);
            }
            m
        }
    }
}

/// Dandelion-pipeline matrices, rows and columns 1..=n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DandMat {
    /// N_i' for 0 <= i <= n-1.
    Np(usize),
    N(usize),
}

pub fn dand_matrix(n: usize, which: DandMat) -> Vec<Vec<CellMonos>> {
    let np = |i: usize, r: usize, c: usize| -> CellMonos {
        if r <= n - i {
            if c == r {
                let mut diag = uppers(n);
                diag.push((Sym::Lower(r), true));
                diag
            } else {
                vec![(Sym::Lower(c), true)]
            }
        } else if c == 1 {
            (0..=n).map(|k| (Sym::Upper(k), true)).collect()
        } else if c == r {
            uppers(n)
        } else {
            CellMonos::new()
        }
    };
    let grid = |f: &dyn Fn(usize, usize) -> CellMonos| -> Vec<Vec<CellMonos>> {
        (1..=n).map(|r| (1..=n).map(|c| f(r, c)).collect()).collect()
    };
    match which {
        DandMat::Np(i) => {
            assert!(i <= n - 1);
            grid(&|r, c| np(i, r, c))
        }
        DandMat::N(i) => {
            assert!((1..n).contains(&i));
            let mut m = grid(&|r, c| np(i - 1, r, c));
            let source = m[0].clone(); // row 1
            subtract_into(&mut m[n - i], &source); // into row n-i+1
            m
        }
    }
}

/// Every one-entry-per-row-and-column selection from a monomial grid whose
/// rows start at `lo`; `need_lambda` keeps only selections containing the
/// placeholder.
pub fn arrays_from(grid: &[Vec<CellMonos>], lo: usize, need_lambda: bool) -> Vec<SignedArray> {
    let k = grid.len();
    let mut out = Vec::new();
    let mut picked: Vec<Entry> = Vec::with_capacity(k);
    fn rec(
        grid: &[Vec<CellMonos>],
        lo: usize,
        row: usize,
        used: u64,
        picked: &mut Vec<Entry>,
        out: &mut Vec<SignedArray>,
        need_lambda: bool,
    ) {
        let k = grid.len();
        if row == k {
            let arr = SignedArray::new(lo, picked.clone());
            if !need_lambda || picked.iter().any(|e| e.sym == Sym::Lambda) {
                out.push(arr);
            }
            return;
        }
        for (c, cell) in grid[row].iter().enumerate() {
            if used & (1 << c) != 0 {
                continue;
            }
            for &(sym, neg) in cell {
                picked.push(Entry { col: c + lo, sym, neg });
                rec(grid, lo, row + 1, used | (1 << c), picked, out, need_lambda);
                picked.pop();
            }
        }
    }
    rec(grid, lo, 0, 0, &mut picked, &mut out, need_lambda);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn happy_step_zero_matches_the_displayed_three_by_three() {
        // n = 2: rows (lam-b0, -b1, -b2 / -b0, B-b1, -b2 / -b0, -b1, B-b2)
        let m = happy_matrix(2, 0, true);
        assert_eq!(m[0][0], vec![(Sym::Lambda, false), (Sym::Lower(0), true)]);
        assert_eq!(m[1][1].len(), 4); // B0 B1 B2 -b1
        assert_eq!(m[2][0], vec![(Sym::Lower(0), true)]);
        // after the first subtraction the last row mixes in the negated row 0
        let m1 = happy_matrix(2, 1, false);
        assert_eq!(
            m1[2][0],
            vec![(Sym::Lower(0), true), (Sym::Lambda, true), (Sym::Lower(0), false)]
        );
        assert_eq!(m1[2][2].len(), 5); // B0 B1 B2 -b2 +b2
        // and the cancelled version keeps only -lam and the uppers
        let m1p = happy_matrix(2, 1, true);
        assert_eq!(m1p[2][0], vec![(Sym::Lambda, true)]);
        assert_eq!(m1p[2][1], CellMonos::new());
        assert_eq!(m1p[2][2].len(), 3);
    }

    #[test]
    fn blob_chain_shapes_at_n_3() {
        let c0 = blob_matrix(3, BlobMat::Cp(0));
        assert_eq!(c0[0][0].len(), 5); // B0..B3 -b1
        assert_eq!(c0[2][1], vec![(Sym::Lower(2), true)]);
        let r1 = blob_matrix(3, BlobMat::R(1));
        // row 3, column 2: -b2 - (B - b2): -b2, -B0..B3, +b2
        assert_eq!(r1[2][1].len(), 6);
        let c1 = blob_matrix(3, BlobMat::C(1));
        // row 3, column 2: -B + B
        assert_eq!(c1[2][1].len(), 8);
        let c1p = blob_matrix(3, BlobMat::Cp(1));
        assert_eq!(c1p[2][1], CellMonos::new());
        assert_eq!(c1p[2][2].len(), 4); // plain B on the diagonal
        // blob row 2 diagonal: B - b2 - b3
        assert_eq!(c1p[1][1].len(), 6);
        // closing substitution
        let c2p = blob_matrix(3, BlobMat::Cp(2));
        assert_eq!(c2p[0][0], vec![(Sym::Lower(0), false)]);
        assert_eq!(c2p[1][1].len(), 4); // b0..b3
        assert_eq!(c2p[0][1], vec![(Sym::Lower(2), true), (Sym::Lower(3), true)]);
    }

    #[test]
    fn dandelion_chain_shapes_at_n_3() {
        let n0 = dand_matrix(3, DandMat::Np(0));
        assert_eq!(n0[2][2].len(), 5);
        let n1 = dand_matrix(3, DandMat::N(1));
        // row 3 col 1: -b1 - (B - b1): -b1, -B0..B3, +b1
        assert_eq!(n1[2][0].len(), 6);
        let n1p = dand_matrix(3, DandMat::Np(1));
        assert_eq!(n1p[2][0].len(), 4); // -B
        assert_eq!(n1p[2][1], CellMonos::new());
    }

    #[test]
    fn array_enumeration_respects_lambda_filtering() {
        let m = happy_matrix(2, 0, true);
        let arrays = arrays_from(&m, 0, true);
        // the placeholder sits at (0,0) only, so rows 1..2 pick freely from
        // 4 + 1 or 1 monomials per allowed column
        assert!(arrays.iter().all(|a| a.entry(0).sym == Sym::Lambda));
        // rows 1..2 pick the diagonal (B0,B1,B2,-b) or the crossed pair:
        // 4*4 + 1
        assert_eq!(arrays.len(), 17);
    }
}
