//! Involutions of the dandelion pipeline: every row subtraction takes the
//! top row, so processed vertices hang off vertex 1 with weighted edges
//! until the final dandelion-shaped trees read their codes directly.

use crate::engine::array::{Entry, SignedArray, Sym};
use crate::engine::matrices::{arrays_from, dand_matrix, DandMat};
use crate::engine::{find_cycles, largest_cycle, DandTree, Element, Side, Stage};

pub(crate) fn beta(n: usize, lo: Stage, hi: Stage, elem: &Element, side: Side) -> (Element, Side) {
    match (lo, hi) {
        (Stage::FTrees, Stage::FFp { .. }) => mu0_primed(n, elem, side),
        (Stage::FFp { i }, Stage::FCodes) if n == 1 => terminal_n1(i, elem, side),
        (Stage::FFp { i }, Stage::FD { .. }) => xi(n, i + 1, elem, side),
        (Stage::FD { i }, Stage::FDp { .. }) => xi_primed(n, i, elem, side),
        (Stage::FDp { i }, Stage::FF { .. }) => mu(n, i, elem, side, false),
        (Stage::FF { i }, Stage::FFp { .. }) => mu(n, i, elem, side, true),
        (Stage::FF { .. }, Stage::FCodes) => mu_hat(n, elem, side),
        other => panic!("no involution joins {other:?}"),
    }
}

/// Same Matrix-Tree pairing as the blob chain's opening involution.
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
                    Element::Tree(crate::tree::RootedTree::from_successors(succ).unwrap()),
                    Side::Lo,
                )
            } else {
                debug_assert_eq!(side, Side::Hi);
                let cycle = largest_cycle(&cycles, |v| v);
                (Element::Array(toggle_weighted(arr, cycle, n)), side)
            }
        }
        other => panic!("expected a tree or array, got {other:?}"),
    }
}

/// Row subtraction of row 1 from row n-i+1: fresh monomials (positive
/// lower-case, negative upper-case) pair by interchanging and negating
/// rows 1 and n-i+1.
fn xi(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let row = n - i + 1;
    let e = arr.entry(row);
    let internal = (e.sym.is_lower() && !e.neg) || (e.sym.is_upper() && e.neg);
    if internal {
        debug_assert_eq!(side, Side::Hi);
        let mut out = arr.clone();
        out.swap_rows(1, row, true);
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// In-entry cancellation in row n-i+1.
fn xi_primed(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
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

/// Matrix-Tree pairing against the altered graph whose vertices above n-i
/// point only at 1 with weighted edges.
fn mu(n: usize, i: usize, elem: &Element, side: Side, primed: bool) -> (Element, Side) {
    match elem {
        Element::Array(arr) => {
            let live = n - i;
            let cycles = find_cycles(1, n, |v| {
                if v > live {
                    Some(1)
                } else {
                    let j = arr.entry(v).sym.subscript().unwrap();
                    if j == 0 || j > n {
                        None
                    } else {
                        Some(j)
                    }
                }
            });
            if cycles.is_empty() {
                let tree = DandTree {
                    live,
                    succ: (0..=live)
                        .map(|v| if v == 0 { 0 } else { arr.entry(v).sym.subscript().unwrap() })
                        .collect(),
                    weights: (live + 1..=n)
                        .map(|r| arr.entry(r).sym.subscript().unwrap())
                        .collect(),
                };
                let out_side = if primed { Side::Lo } else { Side::Hi };
                (Element::DandTree(tree), out_side)
            } else {
                let cycle = largest_cycle(&cycles, |v| v);
                (Element::Array(toggle_weighted(arr, cycle, live)), side)
            }
        }
        Element::DandTree(t) => {
            let mut entries: Vec<Entry> = (1..=t.live)
                .map(|v| Entry { col: v, sym: Sym::Upper(t.succ[v]), neg: false })
                .collect();
            for (k, &w) in t.weights.iter().enumerate() {
                let r = t.live + 1 + k;
                entries.push(Entry { col: r, sym: Sym::Upper(w), neg: false });
            }
            let out_side = if primed { Side::Hi } else { Side::Lo };
            (Element::Array(SignedArray::new(1, entries)), out_side)
        }
        other => panic!("expected an array or tree, got {other:?}"),
    }
}

/// Terminal matching: a dandelion-shaped tree reads its code off the
/// weights of the edges out of 2..n.
fn mu_hat(n: usize, elem: &Element, side: Side) -> (Element, Side) {
    match elem {
        Element::DandTree(t) => {
            debug_assert_eq!(t.live, 1);
            debug_assert_eq!(t.succ[1], 0, "dandelion-shaped trees send 1 to the root");
            (Element::Code(t.weights.clone()), Side::Hi)
        }
        Element::Code(entries) => {
            debug_assert_eq!(side, Side::Hi);
            let tree = DandTree { live: 1, succ: vec![0, 0], weights: entries.clone() };
            let _ = n;
            (Element::DandTree(tree), Side::Lo)
        }
        other => panic!("expected a tree or code, got {other:?}"),
    }
}

/// For n = 1 the chain is trees, the 1x1 matrix, codes; the upper/lower
/// cancellation pairs fold into the terminal matching.
fn terminal_n1(i: usize, elem: &Element, side: Side) -> (Element, Side) {
    debug_assert_eq!(i, 0);
    match elem {
        Element::Array(arr) => {
            let e = *arr.entry(1);
            match (e.sym, e.neg) {
                (Sym::Upper(0), false) => (Element::Code(Vec::new()), Side::Hi),
                (Sym::Upper(j), false) => {
                    debug_assert_eq!(side, Side::Lo);
                    let out =
                        SignedArray::new(1, vec![Entry { col: 1, sym: Sym::Lower(j), neg: true }]);
                    (Element::Array(out), side)
                }
                (Sym::Lower(j), true) => {
                    debug_assert_eq!(side, Side::Lo);
                    let out =
                        SignedArray::new(1, vec![Entry { col: 1, sym: Sym::Upper(j), neg: false }]);
                    (Element::Array(out), side)
                }
                other => panic!("not a 1x1 stage entry: {other:?}"),
            }
        }
        Element::Code(_) => {
            debug_assert_eq!(side, Side::Hi);
            let out = SignedArray::new(1, vec![Entry { col: 1, sym: Sym::Upper(0), neg: false }]);
            (Element::Array(out), Side::Lo)
        }
        other => panic!("expected an array or code, got {other:?}"),
    }
}

/// Toggles a cycle: rows at or below `live` move between the upper diagonal
/// form and the lower off-diagonal form; weighted rows keep their upper
/// case and move between the diagonal and column 1.
fn toggle_weighted(arr: &SignedArray, cycle_rows: &[usize], live: usize) -> SignedArray {
    let mut out = arr.clone();
    for &r in cycle_rows {
        let e = out.entry_mut(r);
        let j = e.sym.subscript().unwrap();
        if r > live {
            // weighted edge r -> 1 with weight B_j
            *e = if e.neg {
                Entry { col: r, sym: Sym::Upper(j), neg: false }
            } else {
                Entry { col: 1, sym: Sym::Upper(j), neg: true }
            };
        } else {
            *e = if e.neg {
                Entry { col: r, sym: Sym::Upper(j), neg: false }
            } else {
                Entry { col: j, sym: Sym::Lower(j), neg: true }
            };
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
        Stage::FTrees => crate::tree::enumerate_trees_bounded(n, 8)
            .unwrap()
            .map(Element::Tree)
            .collect(),
        Stage::FFp { i } => arrays_from(&dand_matrix(n, DandMat::Np(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::FD { i } => arrays_from(&dand_matrix(n, DandMat::N(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::FDp { i } => arrays_from(&dand_matrix(n, DandMat::Np(i)), 1, false)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::FF { i } => enumerate_dand_trees(n, i),
        Stage::FCodes => super::happy::enumerate_codes(n),
        other => panic!("not a dandelion stage: {other:?}"),
    }
}

/// All altered-graph trees at step i: live successors for 1..=n-i plus a
/// weight for every parked vertex.
fn enumerate_dand_trees(n: usize, i: usize) -> Vec<Element> {
    let live = n - i;
    let mut out = Vec::new();
    let succ_total = (n + 1usize).pow(live as u32);
    let w_total = (n + 1usize).pow(i as u32);
    for mut idx in 0..succ_total {
        let mut succ = vec![0usize; live + 1];
        for v in 1..=live {
            succ[v] = idx % (n + 1);
            idx /= n + 1;
        }
        let next = |v: usize| -> Option<usize> {
            if v > live {
                Some(1)
            } else if succ[v] == 0 {
                None
            } else {
                Some(succ[v])
            }
        };
        if !find_cycles(1, n, next).is_empty() {
            continue;
        }
        for mut widx in 0..w_total {
            let mut weights = Vec::with_capacity(i);
            for _ in 0..i {
                weights.push(widx % (n + 1));
                widx /= n + 1;
            }
            out.push(Element::DandTree(DandTree { live, succ: succ.clone(), weights }));
        }
    }
    out
}
