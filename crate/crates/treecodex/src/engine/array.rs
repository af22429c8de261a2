//! Signed arrays: one monomial entry per row and column of a stage matrix,
//! carrying the sign the determinant would assign.

use std::fmt;

use crate::error::{Error, Result};

/// A matrix-entry symbol. Upper-case entries are drawn from the diagonal
/// matrix of loop-tracking weights, lower-case ones from the negated
/// adjacency side; the placeholder occupies the root corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    Lambda,
    /// B_j
    Upper(usize),
    /// b_j
    Lower(usize),
}

impl Sym {
    /// The label the symbol points at; the placeholder has none.
    pub fn subscript(&self) -> Option<usize> {
        match *self {
            Sym::Lambda => None,
            Sym::Upper(j) | Sym::Lower(j) => Some(j),
        }
    }

    pub fn is_upper(&self) -> bool {
        matches!(self, Sym::Upper(_))
    }

    pub fn is_lower(&self) -> bool {
        matches!(self, Sym::Lower(_))
    }
}

/// One selected entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Entry {
    pub col: usize,
    pub sym: Sym,
    pub neg: bool,
}

/// One entry per row and per column, rows `lo..lo+k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedArray {
    lo: usize,
    entries: Vec<Entry>,
}

impl SignedArray {
    pub fn new(lo: usize, entries: Vec<Entry>) -> Self {
        let a = Self { lo, entries };
        a.assert_valid();
        a
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn hi(&self) -> usize {
        self.lo + self.size() - 1
    }

    pub fn entry(&self, row: usize) -> &Entry {
        &self.entries[row - self.lo]
    }

    pub fn entry_mut(&mut self, row: usize) -> &mut Entry {
        &mut self.entries[row - self.lo]
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &Entry)> + '_ {
        self.entries.iter().enumerate().map(|(i, e)| (i + self.lo, e))
    }

    /// The row whose entry covers `col`.
    pub fn row_covering(&self, col: usize) -> usize {
        self.rows()
            .find(|(_, e)| e.col == col)
            .map(|(r, _)| r)
            .expect("every column is covered")
    }

    /// Exchanges the entries of two rows, optionally negating both (a row
    /// operation in the determinant sense).
    pub fn swap_rows(&mut self, r1: usize, r2: usize, negate: bool) {
        self.entries.swap(r1 - self.lo, r2 - self.lo);
        if negate {
            let e1 = self.entry_mut(r1);
            e1.neg = !e1.neg;
            let e2 = self.entry_mut(r2);
            e2.neg = !e2.neg;
        }
        self.assert_valid();
    }

    /// Moves the entries covering two columns into each other's column,
    /// leaving rows and signs alone.
    pub fn swap_cols(&mut self, c1: usize, c2: usize) {
        let r1 = self.row_covering(c1);
        let r2 = self.row_covering(c2);
        self.entry_mut(r1).col = c2;
        self.entry_mut(r2).col = c1;
        self.assert_valid();
    }

    /// Permutation parity times the parity of negated entries:
    /// the sign the array's term carries in the determinant.
    pub fn sign(&self) -> i64 {
        let k = self.size();
        let mut perm: Vec<usize> = self.entries.iter().map(|e| e.col - self.lo).collect();
        let mut parity = 1i64;
        for i in 0..k {
            while perm[i] != i {
                let j = perm[i];
                perm.swap(i, j);
                parity = -parity;
            }
        }
        let negs = self.entries.iter().filter(|e| e.neg).count();
        if negs % 2 == 1 {
            -parity
        } else {
            parity
        }
    }

    fn assert_valid(&self) {
        debug_assert!(
            {
                let mut cols: Vec<usize> = self.entries.iter().map(|e| e.col).collect();
                cols.sort_unstable();
                cols.dedup();
                cols.len() == self.size()
                    && cols.iter().all(|&c| c >= self.lo && c <= self.hi())
            },
            "one entry per row and column"
        );
    }

    /// Canonical rendering: row-major (row,col,symbol,flag) tuples, flag D
    /// for upper-case or placeholder entries and A for lower-case ones.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (row, e) in self.rows() {
            let sign = if e.neg { "-" } else { "" };
            let sym = match e.sym {
                Sym::Lambda => "λ".to_string(),
                Sym::Upper(j) => format!("B{j}"),
                Sym::Lower(j) => format!("b{j}"),
            };
            let flag = if e.sym.is_lower() { 'A' } else { 'D' };
            out.push_str(&format!("({row},{},{sign}{sym},{flag})", e.col));
        }
        out
    }
}

impl fmt::Display for SignedArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Toggles the diagonality of `cycle` in a plain square array: every cycle
/// edge `r -> j` moves between the diagonal form `B_j` at (r, r) and the
/// off-diagonal form `-b_j` at (r, j), leaving other rows alone and
/// flipping the sign.
pub fn toggle_cycle(a: &SignedArray, cycle: &[usize]) -> Result<SignedArray> {
    if cycle.is_empty() {
        return Err(Error::NotACycle(cycle.to_vec()));
    }
    // the cycle must be successor-closed in the represented digraph
    for (i, &v) in cycle.iter().enumerate() {
        let next = cycle[(i + 1) % cycle.len()];
        if v < a.lo() || v > a.hi() {
            return Err(Error::NotACycle(cycle.to_vec()));
        }
        let target = a.entry(v).sym.subscript();
        if target != Some(next) {
            return Err(Error::NotACycle(cycle.to_vec()));
        }
    }
    let mut out = a.clone();
    for (i, &v) in cycle.iter().enumerate() {
        let next = cycle[(i + 1) % cycle.len()];
        let e = out.entry_mut(v);
        match e.sym {
            Sym::Upper(j) => {
                debug_assert!(!e.neg);
                *e = Entry { col: next, sym: Sym::Lower(j), neg: true };
            }
            Sym::Lower(j) => {
                debug_assert!(e.neg);
                *e = Entry { col: v, sym: Sym::Upper(j), neg: false };
            }
            Sym::Lambda => return Err(Error::NotACycle(cycle.to_vec())),
        }
    }
    out.assert_valid();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upper(col: usize, j: usize) -> Entry {
        Entry { col, sym: Sym::Upper(j), neg: false }
    }

    #[test]
    fn sign_counts_parity_and_negations() {
        let diag = SignedArray::new(1, vec![upper(1, 3), upper(2, 1), upper(3, 0)]);
        assert_eq!(diag.sign(), 1);
        let crossed = SignedArray::new(
            1,
            vec![
                Entry { col: 2, sym: Sym::Lower(2), neg: true },
                Entry { col: 1, sym: Sym::Lower(1), neg: true },
                upper(3, 0),
            ],
        );
        // transposition (-1) with two negated entries (+1)
        assert_eq!(crossed.sign(), -1);
    }

    #[test]
    fn toggling_the_three_cycle_of_the_worked_example() {
        // graph 1 -> 3, 2 -> 4, 3 -> 4, 4 -> 1: cycle (1 3 4), edge 2 -> 4 fixed
        let diag = SignedArray::new(
            1,
            vec![upper(1, 3), upper(2, 4), upper(3, 4), upper(4, 1)],
        );
        let off = toggle_cycle(&diag, &[1, 3, 4]).unwrap();
        assert_eq!(
            off.render(),
            "(1,3,-b3,A)(2,2,B4,D)(3,4,-b4,A)(4,1,-b1,A)"
        );
        assert_eq!(off.sign(), -diag.sign());
        assert_eq!(toggle_cycle(&off, &[1, 3, 4]).unwrap(), diag);
    }

    #[test]
    fn toggling_a_loop_moves_it_off_the_diagonal_in_spirit() {
        // edges 1 -> 0, 2 -> 0, 3 -> 3, 4 -> 1
        let diag = SignedArray::new(
            1,
            vec![upper(1, 0), upper(2, 0), upper(3, 3), upper(4, 1)],
        );
        let off = toggle_cycle(&diag, &[3]).unwrap();
        let e = off.entry(3);
        assert_eq!((e.col, e.sym, e.neg), (3, Sym::Lower(3), true));
        assert_eq!(off.sign(), -1);
        assert_eq!(toggle_cycle(&off, &[3]).unwrap(), diag);
    }

    #[test]
    fn non_cycles_are_rejected() {
        let diag = SignedArray::new(1, vec![upper(1, 2), upper(2, 0)]);
        assert!(matches!(toggle_cycle(&diag, &[1, 2]), Err(Error::NotACycle(_))));
        assert!(matches!(toggle_cycle(&diag, &[]), Err(Error::NotACycle(_))));
    }
}
