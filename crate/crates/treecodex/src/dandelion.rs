//! The Dandelion code: weighted tree surgery that re-points n, n-1, ..., 2
//! at vertex 1, the fast cycle-decomposition algorithm, and both inverses.
//!
//! The fast encoder is the production path: it splits the interior of the
//! path from 1 into maximal segments each ending at a running maximum,
//! closes each segment into a cycle, and reads the code off the rewritten
//! successors. The weighted surgery of the original construction is kept as
//! a second implementation for differential testing.

use crate::tree::{CodeVector, RootedTree};

#[inline]
fn is_root(m: usize, x: usize) -> bool {
    x == 0 || x > m
}

/// Fast Dandelion encoding over an active range; returns the code entries
/// (new successors of 2..m) and the root at the end of 1's path.
pub(crate) fn encode_core(m: usize, succ: &mut [usize]) -> (Vec<usize>, usize) {
    // interior of the path from 1, then the root it drains into
    let mut interior = Vec::new();
    let mut v = succ[1];
    while !is_root(m, v) {
        interior.push(v);
        v = succ[v];
    }
    let root = v;
    // split at running maxima scanned left to right: a position ends a
    // segment when it dominates everything after it
    let mut start = 0;
    while start < interior.len() {
        let mut end = start;
        let mut best = interior[start];
        for (i, &u) in interior.iter().enumerate().skip(start + 1) {
            if u > best {
                best = u;
                end = i;
            }
        }
        // interior[start..=end] becomes the cycle s1 -> s2 -> ... -> s1
        for i in start..end {
            succ[interior[i]] = interior[i + 1];
        }
        succ[interior[end]] = interior[start];
        start = end + 1;
    }
    (succ[2..=m].to_vec(), root)
}

/// Fast Dandelion encoder.
pub fn dandelion_encode_fast(t: &RootedTree) -> CodeVector {
    let mut succ = t.succ_buf();
    let (code, root) = encode_core(t.n(), &mut succ);
    debug_assert_eq!(root, 0);
    CodeVector::from_raw(code)
}

/// Production encoder: the fast algorithm.
pub fn dandelion_encode(t: &RootedTree) -> CodeVector {
    dandelion_encode_fast(t)
}

/// Weighted tree surgery, the defining construction: processes vertices n
/// down to 2, re-pointing each at 1 with the old successor as the edge
/// weight; when that closes a cycle through 1, the weight swaps with
/// succ(1) and 1 is re-pointed past the cycle.
pub fn dandelion_encode_surgery(t: &RootedTree) -> CodeVector {
    let m = t.n();
    let mut succ = t.succ_buf();
    let mut weight = vec![0usize; m + 1];
    for v in (2..=m).rev() {
        let old = succ[v];
        let k = succ[1];
        weight[v] = old;
        succ[v] = 1;
        // re-pointing v at 1 closes a cycle iff v already lay on 1's path
        let mut cycle = false;
        let mut x = k;
        let mut steps = 0;
        while !is_root(m, x) {
            if x == v {
                cycle = true;
                break;
            }
            debug_assert!(x < v, "1's path stays among unprocessed vertices");
            x = succ[x];
            steps += 1;
            assert!(steps <= m, "cycle test walk must terminate");
        }
        if cycle {
            succ[1] = old;
            weight[v] = k;
        }
    }
    CodeVector::from_raw(weight[2..=m].to_vec())
}

/// Fast inverse: read cycles off the code digraph, order them by descending
/// maximum, rotate each maximum to the back, and chain the concatenation
/// between 1 and the root.
pub fn dandelion_decode(c: &CodeVector) -> RootedTree {
    let succ = decode_core(c.n(), c.entries(), 0);
    RootedTree::from_valid_buf(succ)
}

pub(crate) fn decode_core(m: usize, code: &[usize], root: usize) -> Vec<usize> {
    debug_assert_eq!(code.len(), m - 1);
    let mut succ = vec![0usize; m + 1];
    succ[1] = root;
    succ[2..=m].copy_from_slice(code);

    // cycles among the active vertices, each listed max-first
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut state = vec![0u8; m + 1];
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
            let cyc = &stack[first..];
            let top = cyc.iter().enumerate().max_by_key(|(_, &u)| u).unwrap().0;
            let mut rotated = Vec::with_capacity(cyc.len());
            rotated.extend_from_slice(&cyc[top..]);
            rotated.extend_from_slice(&cyc[..top]);
            cycles.push(rotated);
        }
        for &u in &stack {
            state[u] = 2;
        }
        stack.clear();
    }
    cycles.sort_unstable_by(|a, b| b[0].cmp(&a[0]));

    // concatenate with each maximum last, walk 1 -> ... -> root
    let mut prev = 1usize;
    for cyc in &cycles {
        for &u in cyc[1..].iter().chain(std::iter::once(&cyc[0])) {
            succ[prev] = u;
            prev = u;
        }
    }
    succ[prev] = root;
    succ
}

/// Inverse of the weighted surgery: hang every vertex off 1 by its coded
/// weight, then restore 2, 3, ..., n in order, undoing cycle swaps.
pub fn dandelion_decode_surgery(c: &CodeVector) -> RootedTree {
    let m = c.n();
    let mut weight = vec![0usize; m + 1];
    weight[2..=m].copy_from_slice(c.entries());
    let mut succ = vec![0usize; m + 1];
    succ[1] = 0;
    for i in 2..=m {
        let k = weight[i];
        succ[i] = k;
        // a cycle appears iff i is reachable from k; vertices past i still
        // hang off 1 by their weighted edges
        let mut x = k;
        let mut cycle = false;
        let mut steps = 0;
        while !is_root(m, x) {
            if x == i {
                cycle = true;
                break;
            }
            x = if x > i { 1 } else { succ[x] };
            steps += 1;
            assert!(steps <= m + 1, "cycle test walk must terminate");
        }
        if cycle {
            let mid = succ[1];
            succ[1] = k;
            succ[i] = mid;
        }
    }
    RootedTree::from_valid_buf(succ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::happy::happy_encode;
    use crate::tree::{enumerate_trees, random_tree, RootedTree};
    use std::collections::HashSet;

    fn tree(succ: &[usize]) -> RootedTree {
        RootedTree::from_successors(succ.to_vec()).unwrap()
    }

    #[test]
    fn known_codes_via_surgery() {
        assert_eq!(
            dandelion_encode_surgery(&tree(&[2, 3, 0, 2, 1])).to_string(),
            "3,2,2,1"
        );
        assert_eq!(
            dandelion_encode_surgery(&tree(&[3, 0, 4, 2])).to_string(),
            "2,4,3"
        );
        assert_eq!(
            dandelion_encode_surgery(&tree(&[6, 4, 2, 0, 4, 2, 4])).to_string(),
            "4,2,2,4,6,4"
        );
    }

    #[test]
    fn known_codes_via_the_fast_algorithm() {
        assert_eq!(
            dandelion_encode_fast(&tree(&[9, 4, 7, 0, 4, 9, 0, 1, 3])).to_string(),
            "4,7,0,4,9,3,1,9"
        );
        // the path tree 1 -> 6 -> 4 -> 9 -> 8 -> 3 -> 2 -> 5 -> 7 -> 0
        assert_eq!(
            dandelion_encode_fast(&tree(&[6, 5, 2, 9, 7, 4, 0, 3, 8])).to_string(),
            "5,2,9,7,4,3,8,6"
        );
        // succ(1) = 0 leaves the naive code untouched
        assert_eq!(
            dandelion_encode_fast(&tree(&[0, 4, 2, 0, 4])).to_string(),
            "4,2,0,4"
        );
        assert_eq!(
            dandelion_encode_fast(&tree(&[6, 4, 2, 0, 4, 2, 4])).to_string(),
            "4,2,2,4,6,4"
        );
    }

    #[test]
    fn decode_inverts_known_codes() {
        assert_eq!(
            dandelion_decode(&"4,7,0,4,9,3,1,9".parse().unwrap()),
            tree(&[9, 4, 7, 0, 4, 9, 0, 1, 3])
        );
        assert_eq!(
            dandelion_decode(&CodeVector::from_entries(vec![]).unwrap()),
            tree(&[0])
        );
        assert_eq!(
            dandelion_decode_surgery(&"3,2,2,1".parse().unwrap()),
            tree(&[2, 3, 0, 2, 1])
        );
        assert_eq!(
            dandelion_decode_surgery(&"2,4,3".parse().unwrap()),
            tree(&[3, 0, 4, 2])
        );
    }

    #[test]
    fn bijective_at_n_3() {
        let mut seen = HashSet::new();
        for a in 0..=3 {
            for b in 0..=3 {
                let c = CodeVector::from_entries(vec![a, b]).unwrap();
                let t = dandelion_decode(&c);
                assert_eq!(dandelion_encode(&t), c);
                assert_eq!(dandelion_decode_surgery(&c), t);
                seen.insert(t);
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn surgery_and_fast_encoders_agree() {
        for n in 1..=5 {
            for t in enumerate_trees(n).unwrap() {
                assert_eq!(dandelion_encode_surgery(&t), dandelion_encode_fast(&t));
            }
        }
        for seed in 0..200 {
            let t = random_tree(500, seed);
            assert_eq!(dandelion_encode_surgery(&t), dandelion_encode_fast(&t), "seed {seed}");
        }
    }

    #[test]
    fn both_decoders_agree_exhaustively_at_n_4() {
        for n in 1..=4usize {
            let total = (n + 1).pow(n as u32 - 1);
            for mut idx in 0..total {
                let mut entries = Vec::with_capacity(n - 1);
                for _ in 0..n - 1 {
                    entries.push(idx % (n + 1));
                    idx /= n + 1;
                }
                let c = CodeVector::from_entries(entries).unwrap();
                assert_eq!(dandelion_decode(&c), dandelion_decode_surgery(&c));
            }
        }
    }

    #[test]
    fn off_path_code_entries_equal_successors() {
        for seed in 0..100 {
            let t = random_tree(60, seed);
            let interior: HashSet<usize> = {
                let p = t.path(1);
                p[1..p.len() - 1].iter().copied().collect()
            };
            let c = dandelion_encode(&t);
            for v in 2..=t.n() {
                if !interior.contains(&v) {
                    assert_eq!(c.entries()[v - 2], t.succ(v), "vertex {v}");
                }
            }
        }
    }

    #[test]
    fn path_reversal_swaps_happy_and_dandelion() {
        for n in 1..=5 {
            for t in enumerate_trees(n).unwrap() {
                let r = t.reverse_path();
                assert_eq!(happy_encode(&r), dandelion_encode(&t));
                assert_eq!(dandelion_encode(&r), happy_encode(&t));
            }
        }
        for seed in 0..500 {
            let t = random_tree(500, seed);
            let r = t.reverse_path();
            assert_eq!(happy_encode(&r), dandelion_encode(&t), "seed {seed}");
        }
    }
}
