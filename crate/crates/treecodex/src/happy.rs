//! The Happy code: surgery on the path from 1 to the root, the fast
//! permutation algorithm over the naïve code, and the inverse.
//!
//! Encoding repeatedly detaches j = succ(1) and parks it in a cycle: as a
//! loop when j exceeds every cycle vertex so far, otherwise spliced in right
//! after the largest cycle vertex J. The code is the successor list of
//! vertices 2..n in the resulting happy functional digraph. Edges off the
//! path from 1 are never touched.

use crate::error::{Error, Result};
use crate::tree::{CodeVector, Cycle, RootedTree};

#[inline]
fn is_root(m: usize, x: usize) -> bool {
    x == 0 || x > m
}

/// Happy surgery over an active range; returns the code entries
/// (successors of 2..m) and the root vertex 1 finally points at.
pub(crate) fn encode_core(m: usize, succ: &mut [usize]) -> (Vec<usize>, usize) {
    let mut big_j = 0usize; // largest vertex on any cycle so far
    while !is_root(m, succ[1]) {
        let j = succ[1];
        succ[1] = succ[j];
        if big_j == 0 || j >= big_j {
            succ[j] = j;
            big_j = j;
        } else {
            succ[j] = succ[big_j];
            succ[big_j] = j;
        }
    }
    (succ[2..=m].to_vec(), succ[1])
}

/// Tree-surgery Happy encoder.
pub fn happy_encode(t: &RootedTree) -> CodeVector {
    let mut succ = t.succ_buf();
    let (code, root) = encode_core(t.n(), &mut succ);
    debug_assert_eq!(root, 0);
    CodeVector::from_raw(code)
}

/// Fast Happy encoding straight from a naïve code, by permuting slots.
///
/// Slot i holds succ(i) with a lower-case flag marking cycle membership;
/// the rightmost lower-case slot is the largest cycle vertex, tracked here
/// as a running index. Fails with `NotATree` when position 1 never reaches
/// the root within n iterations.
pub fn happy_encode_fast(nc: &[usize]) -> Result<CodeVector> {
    let n = nc.len();
    if n == 0 || nc.iter().any(|&x| x > n) {
        return Err(Error::NotATree);
    }
    let (code, root) = encode_fast_core(n, nc)?;
    debug_assert_eq!(root, 0);
    Ok(CodeVector::from_raw(code))
}

pub(crate) fn encode_fast_core(m: usize, nc: &[usize]) -> Result<(Vec<usize>, usize)> {
    let mut p = vec![0usize; m + 1];
    p[1..=m].copy_from_slice(nc);
    let mut lower = vec![false; m + 1];
    let mut big_j = 0usize;
    let mut iterations = 0usize;
    while !is_root(m, p[1]) {
        iterations += 1;
        if iterations > m {
            return Err(Error::NotATree);
        }
        let a = p[1];
        p[1] = p[a];
        p[a] = a;
        lower[a] = true;
        // the rightmost lower-case slot past a is the tracked maximum
        if cfg!(debug_assertions) && m <= 512 {
            let scanned = (a + 1..=m).rev().find(|&k| lower[k]).unwrap_or(0);
            let tracked = if big_j > a { big_j } else { 0 };
            debug_assert_eq!(scanned, tracked);
        }
        if big_j > a {
            p.swap(a, big_j);
        } else {
            big_j = a;
        }
    }
    Ok((p[2..=m].to_vec(), p[1]))
}

/// Inverse surgery: rebuild the digraph from the code, then repeatedly take
/// the largest cycle vertex J, extract k = succ(J) from its cycle and splice
/// k onto the path right after 1, until no cycles remain.
pub fn happy_decode(c: &CodeVector) -> RootedTree {
    let succ = decode_core(c.n(), c.entries(), 0);
    RootedTree::from_valid_buf(succ)
}

pub(crate) fn decode_core(m: usize, code: &[usize], root: usize) -> Vec<usize> {
    debug_assert_eq!(code.len(), m - 1);
    let mut succ = vec![0usize; m + 1];
    succ[1] = root;
    succ[2..=m].copy_from_slice(code);
    let mut cycles = cycles_among(m, &succ);
    // the largest cycle vertex stays maximal within its cycle until the
    // cycle dissolves, so cycles can be processed in descending order
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    for &j_max in &cycles {
        loop {
            let k = succ[j_max];
            if k == j_max {
                succ[j_max] = succ[1];
                succ[1] = j_max;
                break;
            }
            succ[j_max] = succ[k];
            succ[k] = succ[1];
            succ[1] = k;
        }
    }
    succ
}

/// Max vertex of every cycle among the active vertices.
fn cycles_among(m: usize, succ: &[usize]) -> Vec<usize> {
    let mut state = vec![0u8; m + 1];
    let mut maxima = Vec::new();
    let mut stack = Vec::new();
    for start in 1..=m {
        if state[start] != 0 {
            continue;
        }
        let mut v = start;
        while !is_root(m, v) && state[v] == 0 {
            state[v] = 1;
            stack.push(v);
            v = succ[v];
        }
        if !is_root(m, v) && state[v] == 1 {
            let first = stack.iter().position(|&u| u == v).unwrap();
            maxima.push(*stack[first..].iter().max().unwrap());
        }
        for &u in &stack {
            state[u] = 2;
        }
        stack.clear();
    }
    maxima
}

/// One active-cycle insertion, traced: an active loop at `loop_vertex` and
/// an active `cycle` are merged by repeatedly swapping the successors of the
/// two largest active vertices and toggling the activity of the cycle
/// holding the original maximum. Returns the final cycle (with `loop_vertex`
/// inserted right after the maximum) and the number of iterations; a pure
/// all-ascending cycle of length c takes exactly 2^c - 1.
pub fn escher_insert_trace(loop_vertex: usize, cycle: &Cycle) -> Result<(Cycle, u64)> {
    if cycle.max() < loop_vertex {
        return Err(Error::PreconditionViolated(format!(
            "cycle maximum {} is below the loop vertex {}",
            cycle.max(),
            loop_vertex
        )));
    }
    if cycle.vertices().contains(&loop_vertex) {
        return Err(Error::PreconditionViolated(format!(
            "loop vertex {loop_vertex} already lies on the cycle"
        )));
    }
    let big_j = cycle.max();
    let mut succ = std::collections::HashMap::new();
    succ.insert(loop_vertex, loop_vertex);
    let verts = cycle.vertices();
    for (i, &v) in verts.iter().enumerate() {
        succ.insert(v, verts[(i + 1) % verts.len()]);
    }
    let mut active: std::collections::HashMap<usize, bool> =
        succ.keys().map(|&v| (v, true)).collect();

    let mut iterations = 0u64;
    loop {
        let cycles = decompose(&succ);
        // per-cycle activity is consistent across members
        for cyc in &cycles {
            debug_assert!(cyc.iter().all(|v| active[v] == active[&cyc[0]]));
        }
        if cycles.iter().all(|cyc| !active[&cyc[0]]) {
            let home = cycles
                .into_iter()
                .find(|cyc| cyc.contains(&big_j))
                .expect("the original maximum stays on a cycle");
            return Ok((Cycle::new(home).unwrap(), iterations));
        }
        iterations += 1;
        let mut live: Vec<usize> = active
            .iter()
            .filter(|&(_, &a)| a)
            .map(|(&v, _)| v)
            .collect();
        live.sort_unstable_by(|a, b| b.cmp(a));
        assert!(live.len() >= 2, "an active cycle always has a partner");
        let (p, q) = (live[0], live[1]);
        let m = succ[&q];
        let sp = succ[&p];
        succ.insert(q, sp);
        succ.insert(p, m);
        // toggle the activity of the cycle now containing the original max
        let cycles = decompose(&succ);
        let home = cycles
            .iter()
            .find(|cyc| cyc.contains(&big_j))
            .expect("the original maximum stays on a cycle");
        let flipped = !active[&home[0]];
        for &v in home {
            active.insert(v, flipped);
        }
    }
}

/// Successor-ordered cycles of a permutation given as a map.
fn decompose(succ: &std::collections::HashMap<usize, usize>) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let mut cycles = Vec::new();
    let mut keys: Vec<usize> = succ.keys().copied().collect();
    keys.sort_unstable();
    for &start in &keys {
        if seen.contains(&start) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = start;
        while seen.insert(v) {
            cyc.push(v);
            v = succ[&v];
        }
        debug_assert_eq!(v, start, "permutations decompose into cycles");
        cycles.push(cyc);
    }
    cycles
}
