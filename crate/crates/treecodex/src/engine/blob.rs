//! Involutions of the blob pipeline: alternating row and column operations
//! walk a growing blob of identified vertices down the matrix chain, with
//! graph-and-partial-code stages in between.

use crate::engine::array::{Entry, SignedArray, Sym};
use crate::engine::matrices::{arrays_from, blob_matrix, BlobMat};
use crate::engine::{find_cycles, largest_cycle, BlobPair, Element, Side, Stage};
use crate::tree::RootedTree;

pub(crate) fn beta(n: usize, lo: Stage, hi: Stage, elem: &Element, side: Side) -> (Element, Side) {
    match (lo, hi) {
        (Stage::BTrees, Stage::BGp { .. }) => mu0_primed(n, elem, side),
        (Stage::BGp { i }, Stage::BCodes) => rho_n(n, i, elem, side),
        (Stage::BGp { i }, Stage::BS { .. }) => rho(n, i + 1, elem, side),
        (Stage::BS { i }, Stage::BSp { .. }) => rho_primed(n, i, elem, side),
        (Stage::BSp { i }, Stage::BT { .. }) => kappa(n, i, elem, side),
        (Stage::BT { i }, Stage::BTp { .. }) => {
            if i == n - 1 {
                kappa_subst(elem, side)
            } else {
                kappa_primed(n, i, elem, side)
            }
        }
        (Stage::BTp { i }, Stage::BG { .. }) => mu(n, i, elem, side, false),
        (Stage::BG { i }, Stage::BGp { .. }) => mu(n, i, elem, side, true),
        other => panic!("no involution joins {other:?}"),
    }
}

/// Trees pair with all-diagonal arrays of the reduced matrix; cyclic arrays
/// toggle the cycle with the greatest element.
fn mu0_primed(n: usize, elem: &Element, side: Side) -> (Element, Side) {
    match elem {
        Element::Tree(t) => {
            let entries = (1..=n)
                .map(|v| Entry { col: v, sym: Sym::Upper(t.succ(v)), neg: false })
                .collect();
            (Element::Array(SignedArray::new(1, entries)), Side::Hi)
        }
        Element::Array(arr) => {
            let cycles = find_cycles(1, n, |v| {
                let j = arr.entry(v).sym.subscript().unwrap();
                if j == 0 {
                    None
                } else {
                    Some(j)
                }
            });
            if cycles.is_empty() {
                let succ: Vec<usize> =
                    (1..=n).map(|v| arr.entry(v).sym.subscript().unwrap()).collect();
                (
                    Element::Tree(RootedTree::from_successors(succ).unwrap()),
                    Side::Lo,
                )
            } else {
                debug_assert_eq!(side, Side::Hi);
                let cycle = largest_cycle(&cycles, |v| v);
                (Element::Array(toggle_in_blob(arr, cycle, n + 1)), side)
            }
        }
        other => panic!("expected a tree or array, got {other:?}"),
    }
}

/// Row subtraction of row n-i from row n-i+1: the fresh monomials there
/// (positive lower-case, negative upper-case) pair by interchanging and
/// negating the two rows.
fn rho(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let row = n - i + 1;
    let e = arr.entry(row);
    let internal = (e.sym.is_lower() && !e.neg) || (e.sym.is_upper() && e.neg);
    if internal {
        debug_assert_eq!(side, Side::Hi);
        let mut out = arr.clone();
        out.swap_rows(n - i, row, true);
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// In-entry cancellation in row n-i+1: vanishing +-b pairs flip sign.
fn rho_primed(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let row = n - i + 1;
    if arr.entry(row).sym.is_lower() {
        debug_assert_eq!(side, Side::Lo);
        let mut out = arr.clone();
        let e = out.entry_mut(row);
        e.neg = !e.neg;
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// Column addition of column n-i+1 into column n-i: the fresh monomials in
/// column n-i (a positive upper in the reduced row, or lower-case entries
/// with subscripts from the old column) pair by exchanging the two columns.
fn kappa(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let col = n - i;
    let r = arr.row_covering(col);
    let e = arr.entry(r);
    let internal = (r == n - i + 1 && e.sym.is_upper() && !e.neg)
        || (e.sym.is_lower() && e.neg && e.sym.subscript().unwrap() >= n - i + 1);
    if internal {
        debug_assert_eq!(side, Side::Hi);
        let mut out = arr.clone();
        out.swap_cols(col, col + 1);
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// In-entry cancellation at position (n-i+1, n-i): the +-B pair flips sign.
fn kappa_primed(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let row = n - i + 1;
    if arr.entry(row).col == n - i {
        debug_assert_eq!(side, Side::Lo);
        let mut out = arr.clone();
        let e = out.entry_mut(row);
        e.neg = !e.neg;
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// The closing substitution: upper-case becomes lower-case, cancelling
/// everything in column 1 except the b0 left in the corner. Arrays whose
/// column-1 entry survives cross over, lower-cased; all other arrays pair
/// with their cancellation partner, the sign flip of that entry.
fn kappa_subst(elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let r = arr.row_covering(1);
    let e = *arr.entry(r);
    match (r, e.sym, e.neg) {
        (1, Sym::Upper(0), false) => {
            // survives: cross over into the all-lower world
            let entries = arr
                .rows()
                .map(|(_, e)| Entry {
                    col: e.col,
                    sym: Sym::Lower(e.sym.subscript().unwrap()),
                    neg: e.neg,
                })
                .collect();
            (Element::Array(SignedArray::new(1, entries)), Side::Hi)
        }
        (1, Sym::Lower(0), false) => {
            // the lower-cased copy crossing back
            debug_assert_eq!(side, Side::Hi);
            let entries = arr
                .rows()
                .map(|(_, e)| Entry {
                    col: e.col,
                    sym: Sym::Upper(e.sym.subscript().unwrap()),
                    neg: e.neg,
                })
                .collect();
            (Element::Array(SignedArray::new(1, entries)), Side::Lo)
        }
        _ => {
            // internal pair: the entry cancels against its case-flipped,
            // sign-flipped partner once B j = b j
            debug_assert_eq!(side, Side::Lo);
            let mut out = arr.clone();
            let entry = out.entry_mut(r);
            let j = entry.sym.subscript().unwrap();
            if r == 1 {
                // diagonal corner: positive uppers against negative lowers
                entry.sym = if entry.neg { Sym::Upper(j) } else { Sym::Lower(j) };
            }
            entry.neg = !entry.neg;
            (Element::Array(out), side)
        }
    }
}

/// Matrix-Tree pairing against the blob graph: arrays whose rows 1..=blob
/// draw a spanning tree cross over to (tree, partial code) pairs; the rest
/// toggle the cycle whose labels reach highest, the blob counting as n.
/// `primed` distinguishes G_i - G_i' from T_i' - G_i, which share elements.
fn mu(n: usize, i: usize, elem: &Element, side: Side, primed: bool) -> (Element, Side) {
    let lower_case = i == n - 1; // stages past the substitution
    match elem {
        Element::Array(arr) => {
            let blob = n - i;
            let cycles = find_cycles(1, blob, |v| {
                let j = arr.entry(v).sym.subscript().unwrap();
                if j == 0 {
                    None
                } else {
                    Some(j.min(blob))
                }
            });
            if cycles.is_empty() {
                let pair = BlobPair {
                    blob,
                    succ: (0..blob)
                        .map(|v| if v == 0 { 0 } else { arr.entry(v).sym.subscript().unwrap() })
                        .collect(),
                    blob_succ: arr.entry(blob).sym.subscript().unwrap(),
                    code: (blob + 1..=n).map(|r| arr.entry(r).sym.subscript().unwrap()).collect(),
                };
                let out_side = if primed { Side::Lo } else { Side::Hi };
                (Element::BlobPair(pair), out_side)
            } else {
                debug_assert!(!lower_case, "post-substitution arrays are all trees");
                let cycle = largest_cycle(&cycles, |v| if v == blob { n } else { v });
                let same = (Element::Array(toggle_in_blob(arr, cycle, blob)), side);
                same
            }
        }
        Element::BlobPair(p) => {
            let blob = p.blob;
            let case = |j: usize| if lower_case { Sym::Lower(j) } else { Sym::Upper(j) };
            let mut entries: Vec<Entry> = (1..blob)
                .map(|v| Entry { col: v, sym: case(p.succ[v]), neg: false })
                .collect();
            entries.push(Entry { col: blob, sym: case(p.blob_succ), neg: false });
            for (k, &c) in p.code.iter().enumerate() {
                entries.push(Entry { col: blob + 1 + k, sym: case(c), neg: false });
            }
            let out_side = if primed { Side::Hi } else { Side::Lo };
            (Element::Array(SignedArray::new(1, entries)), out_side)
        }
        other => panic!("expected an array or pair, got {other:?}"),
    }
}

/// Terminal matching: all-lower diagonal arrays read off their code. For
/// n = 1 the closing substitution never ran, so the cancellation pairs are
/// folded in here.
fn rho_n(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    match elem {
        Element::Array(arr) => {
            if n == 1 {
                debug_assert_eq!(i, 0);
                let e = *arr.entry(1);
                match (e.sym, e.neg) {
                    (Sym::Upper(0), false) => (Element::Code(Vec::new()), Side::Hi),
                    (Sym::Upper(j), false) => {
                        debug_assert_eq!(side, Side::Lo);
                        let out = SignedArray::new(
                            1,
                            vec![Entry { col: 1, sym: Sym::Lower(j), neg: true }],
                        );
                        (Element::Array(out), side)
                    }
                    (Sym::Lower(j), true) => {
                        debug_assert_eq!(side, Side::Lo);
                        let out = SignedArray::new(
                            1,
                            vec![Entry { col: 1, sym: Sym::Upper(j), neg: false }],
                        );
                        (Element::Array(out), side)
                    }
                    other => panic!("not a 1x1 stage entry: {other:?}"),
                }
            } else {
                debug_assert_eq!(arr.entry(1).sym, Sym::Lower(0));
                let code = (2..=n).map(|r| arr.entry(r).sym.subscript().unwrap()).collect();
                (Element::Code(code), Side::Hi)
            }
        }
        Element::Code(entries) => {
            debug_assert_eq!(side, Side::Hi);
            if n == 1 {
                let out =
                    SignedArray::new(1, vec![Entry { col: 1, sym: Sym::Upper(0), neg: false }]);
                return (Element::Array(out), Side::Lo);
            }
            let mut e = vec![Entry { col: 1, sym: Sym::Lower(0), neg: false }];
            for (k, &c) in entries.iter().enumerate() {
                e.push(Entry { col: k + 2, sym: Sym::Lower(c), neg: false });
            }
            (Element::Array(SignedArray::new(1, e)), Side::Lo)
        }
        other => panic!("expected an array or code, got {other:?}"),
    }
}

/// Toggles a cycle of the blob digraph: cycle rows keep their subscripts
/// but move between the diagonal upper form and the off-diagonal lower
/// form, where targets inside the blob share the blob's column.
fn toggle_in_blob(arr: &SignedArray, cycle_rows: &[usize], blob: usize) -> SignedArray {
    let mut out = arr.clone();
    for &r in cycle_rows {
        let e = out.entry_mut(r);
        let j = e.sym.subscript().unwrap();
        if e.neg {
            *e = Entry { col: r, sym: Sym::Upper(j), neg: false };
        } else {
            *e = Entry { col: j.min(blob), sym: Sym::Lower(j), neg: true };
        }
    }
    out
}

fn flip(side: Side) -> Side {
    match side {
        Side::Lo => Side::Hi,
        Side::Hi => Side::Lo,
    }
}

fn as_array(elem: &Element) -> &SignedArray {
    match elem {
        Element::Array(a) => a,
        other => panic!("expected an array, got {other:?}"),
    }
}

pub(crate) fn enumerate_stage(n: usize, stage: Stage) -> Vec<Element> {
    match stage {
        Stage::BTrees => crate::tree::enumerate_trees_bounded(n, 8)
            .unwrap()
            .map(Element::Tree)
            .collect(),
        Stage::BGp { i } => arrays_from(&blob_matrix(n, BlobMat::Cp(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::BS { i } => arrays_from(&blob_matrix(n, BlobMat::R(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::BSp { i } => arrays_from(&blob_matrix(n, BlobMat::Rp(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::BT { i } => arrays_from(&blob_matrix(n, BlobMat::C(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::BTp { i } => arrays_from(&blob_matrix(n, BlobMat::Cp(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::BG { i } => enumerate_pairs(n, i),
        Stage::BCodes => super::happy::enumerate_codes(n),
        other => panic!("not a blob stage: {other:?}"),
    }
}

/// All (blob tree, partial code) pairs at step i.
fn enumerate_pairs(n: usize, i: usize) -> Vec<Element> {
    let blob = n - i;
    let mut out = Vec::new();
    // successor choices for 1..blob-1 and the blob, rebased over 0..=n
    let slots = blob; // blob-1 vertices plus the blob edge
    let total = (n + 1usize).pow(slots as u32);
    let codes = (n + 1usize).pow(i as u32);
    for mut idx in 0..total {
        let mut succ = vec![0usize; blob];
        let mut choice = Vec::with_capacity(slots);
        for _ in 0..slots {
            choice.push(idx % (n + 1));
            idx /= n + 1;
        }
        for v in 1..blob {
            succ[v] = choice[v - 1];
        }
        let blob_succ = choice[blob - 1];
        // the pair is a tree on {0, 1..blob-1, blob}
        let next = |v: usize| -> Option<usize> {
            let j = if v == blob { blob_succ } else { succ[v] };
            if j == 0 {
                None
            } else {
                Some(j.min(blob))
            }
        };
        if !find_cycles(1, blob, next).is_empty() {
            continue;
        }
        for mut cidx in 0..codes {
            let mut code = Vec::with_capacity(i);
            for _ in 0..i {
                code.push(cidx % (n + 1));
                cidx /= n + 1;
            }
            out.push(Element::BlobPair(BlobPair {
                blob,
                succ: succ.clone(),
                blob_succ,
                code,
            }));
        }
    }
    out
}
