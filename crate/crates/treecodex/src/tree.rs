//! Core types for labelled rooted trees and functional digraphs.
//!
//! Vertices are labelled `0..=n` with 0 the root. A tree or digraph is stored
//! as a successor map: `succ(i)` is the head of the unique edge out of `i`.
//! The text format for a tree is the single line `s1 s2 ... sn` meaning
//! `succ(i) = si`; a code is the comma-separated line `c1,...,c(n-1)` (empty
//! for n = 1).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on exhaustive tree enumeration: (n+1)^(n-1) trees.
pub const ENUMERATION_BOUND: usize = 8;

/// A total successor map on `{1..n}` with values in `{0..n}`.
///
/// This is the naïve-code domain: nothing is promised about reaching the
/// root. Vertex 0 never has an outgoing edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionalDigraph {
    /// `succ[v]` for `v in 1..=n`; slot 0 is unused and kept at 0.
    succ: Vec<usize>,
}

impl FunctionalDigraph {
    /// Builds a digraph from the successor list `(succ(1), ..., succ(n))`.
    pub fn from_successors(successors: Vec<usize>) -> Result<Self> {
        let n = successors.len();
        if n == 0 {
            return Err(Error::Parse("a digraph needs at least one vertex".into()));
        }
        if let Some(&bad) = successors.iter().find(|&&s| s > n) {
            return Err(Error::Parse(format!("successor {bad} out of range 0..={n}")));
        }
        let mut succ = Vec::with_capacity(n + 1);
        succ.push(0);
        succ.extend(successors);
        Ok(Self { succ })
    }

    pub fn n(&self) -> usize {
        self.succ.len() - 1
    }

    pub fn succ(&self, v: usize) -> usize {
        self.succ[v]
    }

    /// The successor list `(succ(1), ..., succ(n))`.
    pub fn successors(&self) -> &[usize] {
        &self.succ[1..]
    }
}

/// A rooted tree on `{0..n}`: every vertex reaches 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    succ: Vec<usize>,
}

impl RootedTree {
    /// Validates `(succ(1), ..., succ(n))` as a tree.
    pub fn from_successors(successors: Vec<usize>) -> Result<Self> {
        validate_tree(&FunctionalDigraph::from_successors(successors)?)
    }

    pub fn n(&self) -> usize {
        self.succ.len() - 1
    }

    pub fn succ(&self, v: usize) -> usize {
        self.succ[v]
    }

    pub fn successors(&self) -> &[usize] {
        &self.succ[1..]
    }

    pub fn digraph(&self) -> FunctionalDigraph {
        FunctionalDigraph::from_successors(self.successors().to_vec()).unwrap()
    }

    pub(crate) fn succ_buf(&self) -> Vec<usize> {
        self.succ.clone()
    }

    /// Wraps a successor buffer that is already known to be a tree.
    pub(crate) fn from_valid_buf(succ: Vec<usize>) -> Self {
        debug_assert!(walk_to_root(&succ, 1).is_some() || succ.len() == 1);
        debug_assert!((1..succ.len()).all(|v| walk_to_root(&succ, v).is_some()));
        Self { succ }
    }

    /// The path `(x, succ(x), ..., 0)`.
    pub fn path(&self, x: usize) -> Vec<usize> {
        path_in(&self.succ, x).expect("trees always reach the root")
    }

    /// Reverses the order of the vertices strictly between 1 and 0 on the
    /// path from 1; all other edges are unchanged. An involution.
    pub fn reverse_path(&self) -> RootedTree {
        let p = self.path(1);
        let interior = &p[1..p.len() - 1];
        let mut succ = self.succ.clone();
        if interior.len() >= 1 {
            succ[1] = interior[interior.len() - 1];
            for i in (1..interior.len()).rev() {
                succ[interior[i]] = interior[i - 1];
            }
            succ[interior[0]] = 0;
        }
        RootedTree::from_valid_buf(succ)
    }
}

/// A functional digraph with no edge out of 0 in which vertex 1 reaches 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HappyFunctionalDigraph {
    inner: FunctionalDigraph,
}

impl HappyFunctionalDigraph {
    pub fn from_successors(successors: Vec<usize>) -> Result<Self> {
        let d = FunctionalDigraph::from_successors(successors)?;
        Self::from_digraph(d)
    }

    pub fn from_digraph(d: FunctionalDigraph) -> Result<Self> {
        if walk_to_root(&d.succ, 1).is_none() {
            return Err(Error::NoPathToRoot { vertex: 1 });
        }
        Ok(Self { inner: d })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn succ(&self, v: usize) -> usize {
        self.inner.succ(v)
    }

    pub fn successors(&self) -> &[usize] {
        self.inner.successors()
    }

    /// The path from `x` to 0, or `NoPathToRoot` if `x` sits in a component
    /// whose chain enters a cycle.
    pub fn path(&self, x: usize) -> Result<Vec<usize>> {
        path_in(&self.inner.succ, x).ok_or(Error::NoPathToRoot { vertex: x })
    }
}

/// A code: a sequence of length n-1 over the labels `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeVector {
    n: usize,
    entries: Vec<usize>,
}

impl CodeVector {
    /// Builds a code from its entries; `n` is the length plus one.
    pub fn from_entries(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len() + 1;
        if let Some(&bad) = entries.iter().find(|&&c| c > n) {
            return Err(Error::Parse(format!("code entry {bad} out of range 0..={n}")));
        }
        Ok(Self { n, entries })
    }

    pub(crate) fn from_raw(entries: Vec<usize>) -> Self {
        Self { n: entries.len() + 1, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}

/// A cycle of a functional digraph, in successor order starting at its
/// largest vertex. Loops are length-1 cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    verts: Vec<usize>,
}

impl Cycle {
    /// Builds a cycle from a successor-ordered vertex list, rotating it so
    /// the largest label comes first.
    pub fn new(verts: Vec<usize>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::NotACycle(verts));
        }
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return Err(Error::NotACycle(verts));
        }
        let top = verts
            .iter()
            .enumerate()
            .max_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = Vec::with_capacity(verts.len());
        rotated.extend_from_slice(&verts[top..]);
        rotated.extend_from_slice(&verts[..top]);
        Ok(Self { verts: rotated })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> usize {
        self.verts[0]
    }

    /// The cycle rotated so its largest label comes last.
    pub fn max_last(&self) -> Vec<usize> {
        let mut v = self.verts[1..].to_vec();
        v.push(self.verts[0]);
        v
    }
}

/// Follows successors from `x` to 0; `None` if the chain enters a cycle.
/// The returned path includes both endpoints.
pub(crate) fn path_in(succ: &[usize], x: usize) -> Option<Vec<usize>> {
    let n = succ.len() - 1;
    let mut path = vec![x];
    let mut v = x;
    while v != 0 {
        v = succ[v];
        path.push(v);
        if path.len() > n + 1 {
            return None;
        }
    }
    Some(path)
}

fn walk_to_root(succ: &[usize], x: usize) -> Option<usize> {
    let n = succ.len() - 1;
    let mut v = x;
    for _ in 0..=n {
        if v == 0 {
            return Some(0);
        }
        v = succ[v];
    }
    None
}

/// Types a digraph as a tree iff every vertex reaches 0; the successor map
/// is unchanged. On failure reports one offending cycle.
pub fn validate_tree(d: &FunctionalDigraph) -> Result<RootedTree> {
    let n = d.n();
    // 0 = unknown, 1 = on the current walk, 2 = reaches root
    let mut state = vec![0u8; n + 1];
    state[0] = 2;
    let mut stack = Vec::new();
    for start in 1..=n {
        if state[start] != 0 {
            continue;
        }
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            stack.push(v);
            v = d.succ(v);
        }
        if state[v] == 1 {
            // walked into our own path: extract the cycle
            let first = stack.iter().position(|&u| u == v).unwrap();
            return Err(Error::CycleFound { cycle: stack[first..].to_vec() });
        }
        for &u in &stack {
            state[u] = 2;
        }
        stack.clear();
    }
    Ok(RootedTree { succ: d.succ.clone() })
}

/// The sequence `(succ(1), ..., succ(n))`.
pub fn naive_code(d: &FunctionalDigraph) -> Vec<usize> {
    d.successors().to_vec()
}

/// All cycles of the digraph, each in successor order. Vertices that drain
/// into the root component (or hang off a cycle) appear in none.
pub fn cycles_of(d: &FunctionalDigraph) -> Vec<Cycle> {
    let n = d.n();
    let mut state = vec![0u8; n + 1];
    state[0] = 2;
    let mut cycles = Vec::new();
    let mut stack = Vec::new();
    for start in 1..=n {
        if state[start] != 0 {
            continue;
        }
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            stack.push(v);
            v = d.succ(v);
        }
        if state[v] == 1 {
            let first = stack.iter().position(|&u| u == v).unwrap();
            cycles.push(Cycle::new(stack[first..].to_vec()).unwrap());
        }
        for &u in &stack {
            state[u] = 2;
        }
        stack.clear();
    }
    cycles.sort_by_key(|c| c.max());
    cycles
}

/// Iterator over every rooted tree on `{0..n}`, produced by decoding the
/// (n+1)^(n-1) Dandelion codes in lexicographic order.
pub struct TreeEnumeration {
    n: usize,
    code: Vec<usize>,
    done: bool,
}

impl Iterator for TreeEnumeration {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let tree = crate::dandelion::dandelion_decode(&CodeVector::from_raw(self.code.clone()));
        // lexicographic increment over base n+1
        let mut i = self.code.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.code[i] < self.n {
                self.code[i] += 1;
                for c in &mut self.code[i + 1..] {
                    *c = 0;
                }
                break;
            }
        }
        Some(tree)
    }
}

/// Yields each rooted tree on `{0..n}` exactly once; count is (n+1)^(n-1).
/// Refuses n above [`ENUMERATION_BOUND`].
pub fn enumerate_trees(n: usize) -> Result<TreeEnumeration> {
    enumerate_trees_bounded(n, ENUMERATION_BOUND)
}

/// As [`enumerate_trees`] with an explicit cap.
pub fn enumerate_trees_bounded(n: usize, bound: usize) -> Result<TreeEnumeration> {
    if n == 0 || n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(TreeEnumeration { n, code: vec![0; n - 1], done: false })
}

/// A uniform random tree on `{0..n}`, deterministic for a fixed seed.
///
/// Draws a uniform code (ChaCha8 keyed by `seed`, n-1 draws from `0..=n` via
/// `Rng::gen_range`, in order) and Dandelion-decodes it; uniformity on codes
/// transports to trees along the bijection.
pub fn random_tree(n: usize, seed: u64) -> RootedTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

/// As [`random_tree`] but drawing from a caller-supplied generator.
pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> RootedTree {
    assert!(n >= 1, "trees need at least one non-root vertex");
    let entries: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..=n)).collect();
    crate::dandelion::dandelion_decode(&CodeVector::from_raw(entries))
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_successors(self.successors(), f)
    }
}

impl fmt::Display for FunctionalDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_successors(self.successors(), f)
    }
}

fn fmt_successors(succ: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, s) in succ.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

impl FromStr for FunctionalDigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let successors = s
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("bad successor {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        FunctionalDigraph::from_successors(successors)
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        validate_tree(&s.parse::<FunctionalDigraph>()?)
    }
}

impl fmt::Display for CodeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CodeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return CodeVector::from_entries(Vec::new());
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad code entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CodeVector::from_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(succ: &[usize]) -> RootedTree {
        RootedTree::from_successors(succ.to_vec()).unwrap()
    }

    #[test]
    fn validate_rejects_the_naive_code_with_a_loop_and_a_cycle() {
        let d = FunctionalDigraph::from_successors(vec![3, 2, 0, 5, 4]).unwrap();
        match validate_tree(&d) {
            Err(Error::CycleFound { cycle }) => assert_eq!(cycle, vec![2]),
            other => panic!("expected CycleFound, got {other:?}"),
        }
        // but it is a happy functional digraph: 1 -> 3 -> 0
        assert!(HappyFunctionalDigraph::from_digraph(d).is_ok());
    }

    #[test]
    fn validate_accepts_the_smallest_tree_and_a_seven_vertex_tree() {
        assert_eq!(tree(&[0]).successors(), &[0]);
        let t = tree(&[6, 4, 2, 0, 4, 2, 4]);
        assert_eq!(t.n(), 7);
    }

    #[test]
    fn path_follows_successors_to_the_root() {
        let t = tree(&[3, 0, 4, 2]); // 1 -> 3 -> 4 -> 2 -> 0
        assert_eq!(t.path(1), vec![1, 3, 4, 2, 0]);
        assert_eq!(t.path(0), vec![0]);
        let t = tree(&[9, 4, 7, 0, 4, 9, 0, 1, 3]);
        assert_eq!(t.path(1), vec![1, 9, 3, 7, 0]);
    }

    #[test]
    fn path_fails_off_the_root_component() {
        let h = HappyFunctionalDigraph::from_successors(vec![3, 2, 0, 5, 4]).unwrap();
        assert_eq!(h.path(1).unwrap(), vec![1, 3, 0]);
        assert_eq!(h.path(4), Err(Error::NoPathToRoot { vertex: 4 }));
    }

    #[test]
    fn naive_code_is_the_successor_list() {
        let t = tree(&[7, 4, 9, 0, 4, 7, 3, 1, 0]);
        assert_eq!(naive_code(&t.digraph()), vec![7, 4, 9, 0, 4, 7, 3, 1, 0]);
        assert_eq!(naive_code(&tree(&[0]).digraph()), vec![0]);
        assert_eq!(
            naive_code(&tree(&[6, 4, 2, 0, 4, 2, 4]).digraph()),
            vec![6, 4, 2, 0, 4, 2, 4]
        );
    }

    #[test]
    fn cycles_of_finds_the_loop_and_the_two_cycle() {
        let d = FunctionalDigraph::from_successors(vec![3, 2, 0, 5, 4]).unwrap();
        let cycles = cycles_of(&d);
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].vertices(), &[2]);
        assert_eq!(cycles[1].vertices(), &[5, 4]);
        assert!(cycles_of(&tree(&[6, 4, 2, 0, 4, 2, 4]).digraph()).is_empty());
    }

    #[test]
    fn cycles_of_matches_the_dandelion_cycle_decomposition_example() {
        // digraph of the code (5,2,9,7,4,3,8,6) with succ(1) = 0
        let d = FunctionalDigraph::from_successors(vec![0, 5, 2, 9, 7, 4, 3, 8, 6]).unwrap();
        let cycles = cycles_of(&d);
        let mut sets: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| {
                let mut v = c.vertices().to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec![2, 3, 5, 7], vec![4, 6, 9], vec![8]]);
    }

    #[test]
    fn enumeration_counts_match_cayley() {
        assert_eq!(enumerate_trees(1).unwrap().count(), 1);
        let trees: Vec<_> = enumerate_trees(2).unwrap().collect();
        assert_eq!(trees.len(), 3);
        let mut succs: Vec<_> = trees.iter().map(|t| t.successors().to_vec()).collect();
        succs.sort();
        assert_eq!(succs, vec![vec![0, 0], vec![0, 1], vec![2, 0]]);
        assert_eq!(enumerate_trees(4).unwrap().count(), 125);
        assert!(matches!(enumerate_trees(9), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn enumeration_agrees_with_brute_force_filtering() {
        // oracle: filter all (n+1)^n successor maps through validate_tree
        for n in 1..=4 {
            let mut brute = Vec::new();
            let total = (n + 1usize).pow(n as u32);
            for mut idx in 0..total {
                let mut succ = Vec::with_capacity(n);
                for _ in 0..n {
                    succ.push(idx % (n + 1));
                    idx /= n + 1;
                }
                if let Ok(t) = RootedTree::from_successors(succ) {
                    brute.push(t);
                }
            }
            brute.sort();
            let mut enumerated: Vec<_> = enumerate_trees(n).unwrap().collect();
            enumerated.sort();
            assert_eq!(brute, enumerated, "n = {n}");
        }
    }

    #[test]
    fn random_tree_is_deterministic_per_seed() {
        assert_eq!(random_tree(1, 7).successors(), &[0]);
        assert_eq!(random_tree(5, 42), random_tree(5, 42));
    }

    #[test]
    fn reverse_path_reverses_the_interior() {
        // 1 -> 6 -> 4 -> 9 -> 8 -> 3 -> 2 -> 5 -> 7 -> 0
        let t = tree(&[6, 5, 2, 9, 7, 4, 0, 3, 8]);
        let r = t.reverse_path();
        // 1 -> 7 -> 5 -> 2 -> 3 -> 8 -> 9 -> 4 -> 6 -> 0
        assert_eq!(r.path(1), vec![1, 7, 5, 2, 3, 8, 9, 4, 6, 0]);
        assert_eq!(r.reverse_path(), t);

        let t = tree(&[0, 1]);
        assert_eq!(t.reverse_path(), t);

        let t = tree(&[3, 4, 2, 0]); // 1 -> 3 -> 2 -> 4 -> 0
        let r = t.reverse_path();
        assert_eq!(r.path(1), vec![1, 4, 2, 3, 0]);
    }

    #[test]
    fn text_formats_round_trip() {
        let t: RootedTree = "6 4 2 0 4 2 4".parse().unwrap();
        assert_eq!(t.to_string(), "6 4 2 0 4 2 4");
        let c: CodeVector = "6,2,4,2,4,4".parse().unwrap();
        assert_eq!(c.to_string(), "6,2,4,2,4,4");
        assert_eq!(c.n(), 7);
        let empty: CodeVector = "".parse().unwrap();
        assert_eq!(empty.n(), 1);
        assert_eq!(empty.to_string(), "");
    }
}
