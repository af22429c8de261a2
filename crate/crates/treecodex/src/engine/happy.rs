//! Involutions of the happy pipeline: the placeholder-corner matrix chain
//! that subtracts row 0 from each other row in turn, ending at signed
//! monomials and codes.

use crate::engine::array::{Entry, SignedArray, Sym};
use crate::engine::matrices::{arrays_from, happy_matrix};
use crate::engine::{mtt_involution, Element, Monomial, Side, Stage};

pub(crate) fn beta(n: usize, lo: Stage, hi: Stage, elem: &Element, side: Side) -> (Element, Side) {
    match (lo, hi) {
        (Stage::HTrees, Stage::HMat { .. }) => phi0(elem, side),
        (Stage::HMat { i, primed: true }, Stage::HMat { .. }) => phi_i_primed(n, i, elem, side),
        (Stage::HMat { i, primed: false }, Stage::HMat { .. }) => phi_i(n, i, elem, side),
        (Stage::HMat { .. }, Stage::HMonomials) => phi_n_primed(n, elem, side),
        (Stage::HMonomials, Stage::HCodes) => phi_last(elem, side),
        other => panic!("no involution joins {other:?}"),
    }
}

/// Trees pair with their all-diagonal placeholder arrays; cyclic arrays
/// pair by toggling the cycle with the greatest vertex.
fn phi0(elem: &Element, side: Side) -> (Element, Side) {
    let out = mtt_involution(elem);
    match (&out, elem) {
        (Element::Array(_), Element::Tree(_)) => (out, Side::Hi),
        (Element::Tree(_), Element::Array(_)) => (out, Side::Lo),
        _ => (out, side), // toggled array stays on its side
    }
}

/// Row subtraction: new monomials in the subtracted row (the negated
/// placeholder and positive lower-case entries) pair internally by
/// interchanging and negating rows 0 and n-i; everything else crosses over.
fn phi_i_primed(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let row = n - i;
    let e = arr.entry(row);
    let internal = matches!(e.sym, Sym::Lambda if e.neg) || (e.sym.is_lower() && !e.neg);
    if internal {
        debug_assert_eq!(side, Side::Hi, "new monomials only exist below the subtraction");
        let mut out = arr.clone();
        out.swap_rows(0, row, true);
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// In-entry cancellation: the vanishing +-b pairs in row n-i+1 pair up by a
/// sign flip; surviving entries cross over.
fn phi_i(n: usize, i: usize, elem: &Element, side: Side) -> (Element, Side) {
    let arr = as_array(elem);
    let row = n - i + 1;
    if arr.entry(row).sym.is_lower() {
        debug_assert_eq!(side, Side::Lo, "cancelled monomials only exist above");
        let mut out = arr.clone();
        let e = out.entry_mut(row);
        e.neg = !e.neg;
        (Element::Array(out), side)
    } else {
        (elem.clone(), flip(side))
    }
}

/// Arrays of the final matrix match monomials: the non-placeholder entries
/// read in column order, with the determinant's sign.
fn phi_n_primed(n: usize, elem: &Element, side: Side) -> (Element, Side) {
    match elem {
        Element::Array(arr) => {
            debug_assert_eq!(side, Side::Lo);
            let mut syms = vec![Sym::Upper(0); n];
            for (_, e) in arr.rows() {
                if e.sym != Sym::Lambda {
                    syms[e.col - 1] = e.sym;
                }
            }
            let m = Monomial { syms };
            debug_assert_eq!(m.sign(), arr.sign());
            (Element::Monomial(m), Side::Hi)
        }
        Element::Monomial(m) => {
            debug_assert_eq!(side, Side::Hi);
            let mut entries = Vec::with_capacity(n + 1);
            match m.syms.iter().position(Sym::is_lower) {
                None => {
                    entries.push(Entry { col: 0, sym: Sym::Lambda, neg: false });
                    for (p, &s) in m.syms.iter().enumerate() {
                        entries.push(Entry { col: p + 1, sym: s, neg: false });
                    }
                }
                Some(idx) => {
                    let r = idx + 1;
                    debug_assert_eq!(m.syms[idx], Sym::Lower(r));
                    entries.push(Entry { col: r, sym: Sym::Lower(r), neg: true });
                    for (p, &s) in m.syms.iter().enumerate() {
                        let v = p + 1;
                        if v == r {
                            entries.push(Entry { col: 0, sym: Sym::Lambda, neg: true });
                        } else {
                            entries.push(Entry { col: v, sym: s, neg: false });
                        }
                    }
                }
            }
            (Element::Array(SignedArray::new(0, entries)), Side::Lo)
        }
        other => panic!("expected an array or monomial, got {other:?}"),
    }
}

/// The closing monomial swap: a product led by B_0 crosses to the codes;
/// any other all-upper product lower-cases its first factor and exchanges
/// it with the factor at the position its subscript names.
fn phi_last(elem: &Element, side: Side) -> (Element, Side) {
    match elem {
        Element::Monomial(m) => {
            debug_assert_eq!(side, Side::Lo);
            if let Some(idx) = m.syms.iter().position(Sym::is_lower) {
                // negative monomial: upper-case b_m and move it back to the
                // front
                let mut syms = m.syms.clone();
                syms.swap(0, idx);
                let Sym::Lower(j) = syms[0] else { unreachable!() };
                syms[0] = Sym::Upper(j);
                (Element::Monomial(Monomial { syms }), side)
            } else if m.syms[0] == Sym::Upper(0) {
                let code = m.syms[1..]
                    .iter()
                    .map(|s| s.subscript().unwrap())
                    .collect();
                (Element::Code(code), Side::Hi)
            } else {
                let mut syms = m.syms.clone();
                let Sym::Upper(j1) = syms[0] else { panic!("positions hold B or b") };
                syms[0] = Sym::Lower(j1);
                syms.swap(0, j1 - 1);
                (Element::Monomial(Monomial { syms }), side)
            }
        }
        Element::Code(entries) => {
            debug_assert_eq!(side, Side::Hi);
            let mut syms = vec![Sym::Upper(0)];
            syms.extend(entries.iter().map(|&c| Sym::Upper(c)));
            (Element::Monomial(Monomial { syms }), Side::Lo)
        }
        other => panic!("expected a monomial or code, got {other:?}"),
    }
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
        Stage::HTrees => crate::tree::enumerate_trees_bounded(n, 8)
            .unwrap()
            .map(Element::Tree)
            .collect(),
        Stage::HMat { i, primed } => arrays_from(&happy_matrix(n, i, primed), 0, true)
            .into_iter()
            .map(Element::Array)
            .collect(),
        Stage::HMonomials => {
            // all-upper products plus the single-lower variants b_m at m
            let mut out = Vec::new();
            let mut stack = vec![Vec::<Sym>::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == n {
                    out.push(Element::Monomial(Monomial { syms: prefix }));
                    continue;
                }
                for j in 0..=n {
                    let mut next = prefix.clone();
                    next.push(Sym::Upper(j));
                    stack.push(next);
                }
            }
            let uppers = out.len();
            for m in 1..=n {
                for k in 0..uppers {
                    let Element::Monomial(mono) = &out[k] else { unreachable!() };
                    let mut syms = mono.syms.clone();
                    if syms[m - 1] == Sym::Upper(m) {
                        syms[m - 1] = Sym::Lower(m);
                        out.push(Element::Monomial(Monomial { syms }));
                    }
                }
            }
            out
        }
        Stage::HCodes => enumerate_codes(n),
        other => panic!("not a happy stage: {other:?}"),
    }
}

pub(crate) fn enumerate_codes(n: usize) -> Vec<Element> {
    let total = (n + 1).pow(n as u32 - 1);
    (0..total)
        .map(|mut idx| {
            let mut entries = Vec::with_capacity(n - 1);
            for _ in 0..n - 1 {
                entries.push(idx % (n + 1));
                idx /= n + 1;
            }
            Element::Code(entries)
        })
        .collect()
}
