//! The classical Prüfer codec, kept as the baseline bijection for
//! cross-checks against the matrix-born codes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::tree::{CodeVector, RootedTree};

/// Encodes a tree by repeatedly recording the successor of the least leaf
/// and deleting it, until two vertices remain.
pub fn prufer_encode(t: &RootedTree) -> CodeVector {
    let n = t.n();
    let mut indeg = vec![0usize; n + 1];
    for v in 1..=n {
        indeg[t.succ(v)] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (1..=n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut code = Vec::with_capacity(n.saturating_sub(1));
    for _ in 0..n - 1 {
        let leaf = leaves.pop().expect("a tree always has a least leaf").0;
        let parent = t.succ(leaf);
        code.push(parent);
        indeg[parent] -= 1;
        if indeg[parent] == 0 && parent != 0 {
            leaves.push(Reverse(parent));
        }
    }
    CodeVector::from_raw(code)
}

/// Rebuilds the tree from a code by tracking remaining indegrees: the count
/// of a label in the code is its indegree (one less than the indegree for
/// the root). Total on the code space.
pub fn prufer_decode(c: &CodeVector) -> RootedTree {
    let n = c.n();
    let mut remaining = vec![0usize; n + 1];
    for &e in c.entries() {
        remaining[e] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (1..=n).filter(|&v| remaining[v] == 0).map(Reverse).collect();
    let mut succ = vec![0usize; n + 1];
    for &e in c.entries() {
        let leaf = leaves.pop().expect("code space always leaves a leaf").0;
        succ[leaf] = e;
        remaining[e] -= 1;
        if remaining[e] == 0 && e != 0 {
            leaves.push(Reverse(e));
        }
    }
    // exactly one vertex is still unassigned; its edge goes to the root
    let last = leaves.pop().expect("one vertex is left over").0;
    succ[last] = 0;
    debug_assert!(leaves.is_empty());
    RootedTree::from_valid_buf(succ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_trees, random_tree, RootedTree};
    use std::collections::HashSet;

    fn tree(succ: &[usize]) -> RootedTree {
        RootedTree::from_successors(succ.to_vec()).unwrap()
    }

    #[test]
    fn known_codes() {
        assert_eq!(
            prufer_encode(&tree(&[6, 4, 2, 0, 4, 2, 4])).to_string(),
            "6,2,4,2,4,4"
        );
        assert_eq!(prufer_encode(&tree(&[0])).entries(), &[] as &[usize]);
        // star: every leaf's successor is the root
        assert_eq!(prufer_encode(&tree(&[0, 0, 0, 0])).entries(), &[0, 0, 0]);
    }

    #[test]
    fn decode_inverts_the_worked_example() {
        let c: CodeVector = "6,2,4,2,4,4".parse().unwrap();
        assert_eq!(prufer_decode(&c), tree(&[6, 4, 2, 0, 4, 2, 4]));
        let empty = CodeVector::from_entries(vec![]).unwrap();
        assert_eq!(prufer_decode(&empty), tree(&[0]));
    }

    #[test]
    fn decode_is_a_bijection_at_n_3() {
        let mut seen = HashSet::new();
        for a in 0..=3 {
            for b in 0..=3 {
                let c = CodeVector::from_entries(vec![a, b]).unwrap();
                let t = prufer_decode(&c);
                assert_eq!(prufer_encode(&t), c);
                seen.insert(t);
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn round_trips_exhaustively_to_n_5() {
        for n in 1..=5 {
            for t in enumerate_trees(n).unwrap() {
                assert_eq!(prufer_decode(&prufer_encode(&t)), t);
            }
        }
    }

    #[test]
    fn round_trips_on_large_random_trees() {
        for seed in 0..20 {
            let t = random_tree(10_000, seed);
            assert_eq!(prufer_decode(&prufer_encode(&t)), t);
        }
    }

    #[test]
    fn code_counts_equal_indegrees() {
        for seed in 0..50 {
            let t = random_tree(40, seed);
            let c = prufer_encode(&t);
            let mut indeg = vec![0usize; t.n() + 1];
            for v in 1..=t.n() {
                indeg[t.succ(v)] += 1;
            }
            let mut counts = vec![0usize; t.n() + 1];
            for &e in c.entries() {
                counts[e] += 1;
            }
            assert_eq!(counts[0], indeg[0] - 1);
            for j in 1..=t.n() {
                assert_eq!(counts[j], indeg[j], "label {j}");
            }
        }
    }
}
