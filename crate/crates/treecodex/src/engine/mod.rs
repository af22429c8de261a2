//! The matrix pipelines behind the codes: chains of signed sets joined by
//! sign-reversing involutions, walked with the Garsia-Milne involution
//! principle. Exponentially slower than the tree surgery, this is the
//! defining construction the fast codecs are checked against.
//!
//! A walk holds an element of one difference `S_d - S_{d+1}` at a time,
//! always with positive membership sign. Applying the involution flips that
//! sign; the negative-identity step then re-reads the element in the
//! neighbouring difference. An element landing in `S_{d+1}` with positive
//! intrinsic sign moves the walk down the chain, one landing in `S_d` with
//! negative intrinsic sign moves it back up, and the walk ends on reaching
//! the final all-positive stage.

pub mod array;
mod blob;
mod dandelion;
mod happy;
mod matrices;

pub use array::{toggle_cycle, Entry, SignedArray, Sym};
pub use matrices::CellMonos;

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{CodeVector, RootedTree};

/// Which side of the difference `S_d - S_{d+1}` an element is viewed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lo,
    Hi,
}

/// A monomial of the happy pipeline's penultimate stage: one symbol per
/// position 1..n, all upper-case or with a single lower-case b_m in
/// position m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub syms: Vec<Sym>,
}

impl Monomial {
    pub fn sign(&self) -> i64 {
        if self.syms.iter().any(Sym::is_lower) {
            -1
        } else {
            1
        }
    }

    fn render(&self) -> String {
        self.syms
            .iter()
            .map(|s| match s {
                Sym::Upper(j) => format!("B{j}"),
                Sym::Lower(j) => format!("b{j}"),
                Sym::Lambda => "λ".to_string(),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A blob-stage pair: a tree whose vertices `blob..=n` have been identified
/// into one generalized vertex, plus the code built so far (most recent
/// entry first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlobPair {
    /// Smallest label inside the blob.
    pub blob: usize,
    /// `succ[v]` for v in 1..blob; targets >= blob point into the blob.
    pub succ: Vec<usize>,
    /// The blob's single outgoing edge.
    pub blob_succ: usize,
    pub code: Vec<usize>,
}

impl BlobPair {
    fn render(&self) -> String {
        let succ = self.succ[1..]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let code = self
            .code
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "(tree[{succ} | blob{{{}..}}→{}], code=({code}))",
            self.blob, self.blob_succ
        )
    }
}

/// A dandelion-stage tree: vertices above `live` have been re-pointed at 1
/// and carry their old successors as edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DandTree {
    pub live: usize,
    /// `succ[v]` for v in 1..=live.
    pub succ: Vec<usize>,
    /// `weights[v - live - 1]` for v in live+1..=n.
    pub weights: Vec<usize>,
}

impl DandTree {
    fn render(&self) -> String {
        let succ = self.succ[1..]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let w = self
            .weights
            .iter()
            .enumerate()
            .map(|(k, v)| format!("w{}=B{v}", self.live + 1 + k))
            .collect::<Vec<_>>()
            .join(" ");
        format!("(tree[{succ}] {w})")
    }
}

/// An element of some pipeline stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Tree(RootedTree),
    Array(SignedArray),
    Monomial(Monomial),
    BlobPair(BlobPair),
    DandTree(DandTree),
    Code(Vec<usize>),
}

impl Element {
    /// Intrinsic sign: trees, pairs and codes are always positive.
    pub fn sign(&self) -> i64 {
        match self {
            Element::Array(a) => a.sign(),
            Element::Monomial(m) => m.sign(),
            _ => 1,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Element::Tree(t) => format!("tree[{t}]"),
            Element::Array(a) => a.render(),
            Element::Monomial(m) => m.render(),
            Element::BlobPair(p) => p.render(),
            Element::DandTree(d) => d.render(),
            Element::Code(c) => format!(
                "code({})",
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Stage identifiers across the three pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    // happy
    HTrees,
    HMat { i: usize, primed: bool },
    HMonomials,
    HCodes,
    // blob
    BTrees,
    BGp { i: usize },
    BS { i: usize },
    BSp { i: usize },
    BT { i: usize },
    BTp { i: usize },
    BG { i: usize },
    BCodes,
    // dandelion
    FTrees,
    FFp { i: usize },
    FD { i: usize },
    FDp { i: usize },
    FF { i: usize },
    FCodes,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Stage::HTrees => write!(f, "A0"),
            Stage::HMat { i, primed } => write!(f, "A{i}{}", if primed { "'" } else { "" }),
            Stage::HMonomials => write!(f, "An+1"),
            Stage::HCodes => write!(f, "An+1'"),
            Stage::BTrees => write!(f, "G0"),
            Stage::BGp { i } => write!(f, "G{i}'"),
            Stage::BS { i } => write!(f, "S{i}"),
            Stage::BSp { i } => write!(f, "S{i}'"),
            Stage::BT { i } => write!(f, "T{i}"),
            Stage::BTp { i } => write!(f, "T{i}'"),
            Stage::BG { i } => write!(f, "G{i}"),
            Stage::BCodes => write!(f, "Sn"),
            Stage::FTrees => write!(f, "F0"),
            Stage::FFp { i } => write!(f, "F{i}'"),
            Stage::FD { i } => write!(f, "D{i}"),
            Stage::FDp { i } => write!(f, "D{i}'"),
            Stage::FF { i } => write!(f, "F{i}"),
            Stage::FCodes => write!(f, "Fn-1'"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineKind {
    Happy,
    Blob,
    Dandelion,
}

/// A chain of signed sets with one sign-reversing involution per
/// consecutive pair; immutable once built.
#[derive(Debug, Clone)]
pub struct Pipeline {
    kind: PipelineKind,
    n: usize,
    stages: Vec<Stage>,
}

/// One recorded walk transition.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub step: usize,
    pub stage: Stage,
    /// Membership sign within the current difference.
    pub sign: i64,
    pub element: Element,
}

impl TraceStep {
    pub fn render(&self) -> String {
        format!(
            "STEP {} | stage={} | sign={} | {}",
            self.step,
            self.stage,
            if self.sign >= 0 { '+' } else { '-' },
            self.element.render()
        )
    }
}

/// The happy pipeline: trees, the 2n+2 matrix stages, monomials, codes.
pub fn happy_pipeline(n: usize) -> Pipeline {
    assert!(n >= 1);
    let mut stages = vec![Stage::HTrees];
    for i in 0..=n {
        if i > 0 {
            stages.push(Stage::HMat { i, primed: false });
        }
        stages.push(Stage::HMat { i, primed: true });
    }
    stages.push(Stage::HMonomials);
    stages.push(Stage::HCodes);
    debug_assert_eq!(stages.len(), 2 * n + 4);
    Pipeline { kind: PipelineKind::Happy, n, stages }
}

/// The blob pipeline: trees, then row/column/graph stages per step, down to
/// the codes.
pub fn blob_pipeline(n: usize) -> Pipeline {
    assert!(n >= 1);
    let mut stages = vec![Stage::BTrees, Stage::BGp { i: 0 }];
    for i in 1..n {
        stages.push(Stage::BS { i });
        stages.push(Stage::BSp { i });
        stages.push(Stage::BT { i });
        stages.push(Stage::BTp { i });
        stages.push(Stage::BG { i });
        stages.push(Stage::BGp { i });
    }
    stages.push(Stage::BCodes);
    Pipeline { kind: PipelineKind::Blob, n, stages }
}

/// The dandelion pipeline: trees, then row/graph stages per step, ending at
/// the codes read off the dandelion-shaped trees.
pub fn dandelion_pipeline(n: usize) -> Pipeline {
    assert!(n >= 1);
    let mut stages = vec![Stage::FTrees, Stage::FFp { i: 0 }];
    for i in 1..n {
        stages.push(Stage::FD { i });
        stages.push(Stage::FDp { i });
        stages.push(Stage::FF { i });
        if i < n - 1 {
            stages.push(Stage::FFp { i });
        }
    }
    stages.push(Stage::FCodes);
    Pipeline { kind: PipelineKind::Dandelion, n, stages }
}

impl Pipeline {
    pub fn kind(&self) -> PipelineKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// Default step budget: 8^n, saturating.
    pub fn default_budget(&self) -> u64 {
        8u64.saturating_pow(self.n as u32)
    }

    /// The involution of the difference `stages[d] - stages[d+1]`.
    pub fn beta(&self, d: usize, elem: &Element, side: Side) -> (Element, Side) {
        let lo = self.stages[d];
        let hi = self.stages[d + 1];
        match self.kind {
            PipelineKind::Happy => happy::beta(self.n, lo, hi, elem, side),
            PipelineKind::Blob => blob::beta(self.n, lo, hi, elem, side),
            PipelineKind::Dandelion => dandelion::beta(self.n, lo, hi, elem, side),
        }
    }

    /// Every element of a stage, for exhaustive involution checks at small n.
    pub fn enumerate_stage(&self, idx: usize) -> Vec<Element> {
        let stage = self.stages[idx];
        match self.kind {
            PipelineKind::Happy => happy::enumerate_stage(self.n, stage),
            PipelineKind::Blob => blob::enumerate_stage(self.n, stage),
            PipelineKind::Dandelion => dandelion::enumerate_stage(self.n, stage),
        }
    }

    /// Walks a positive element of the first stage to the unique matching
    /// element of the final stage.
    pub fn walk(
        &self,
        start: Element,
        budget: u64,
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> Result<Element> {
        let n_diffs = self.stages.len() - 1;
        let mut d = 0usize;
        let mut side = Side::Lo;
        let mut elem = start;
        let mut steps = 0usize;
        let mut applications = 0u64;
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep { step: 0, stage: self.stages[0], sign: 1, element: elem.clone() });
        }
        loop {
            // the budget bounds involution applications; the interleaved
            // negative-identity steps are bookkeeping
            if applications >= budget {
                return Err(Error::StepBudgetExceeded { budget });
            }
            applications += 1;
            let (next, nside) = self.beta(d, &elem, side);
            steps += 1;
            let elem_stage = match nside {
                Side::Lo => self.stages[d],
                Side::Hi => self.stages[d + 1],
            };
            if let Some(t) = trace.as_deref_mut() {
                // the involution leaves the element with negative membership
                t.push(TraceStep { step: steps, stage: elem_stage, sign: -1, element: next.clone() });
            }
            match nside {
                Side::Hi => {
                    debug_assert_eq!(next.sign(), 1, "down-moving elements are positive");
                    if d + 1 == n_diffs {
                        return Ok(next);
                    }
                    d += 1;
                    side = Side::Lo;
                }
                Side::Lo => {
                    debug_assert_eq!(next.sign(), -1, "up-moving elements are negative");
                    debug_assert!(d > 0, "the first stage holds only positive elements");
                    d -= 1;
                    side = Side::Hi;
                }
            }
            elem = next;
            steps += 1;
            if let Some(t) = trace.as_deref_mut() {
                // the negative-identity step re-reads it positively next door
                t.push(TraceStep { step: steps, stage: elem_stage, sign: 1, element: elem.clone() });
            }
        }
    }

    /// Encodes a tree by walking the pipeline.
    pub fn encode_tree(&self, t: &RootedTree, budget: u64) -> Result<CodeVector> {
        assert_eq!(t.n(), self.n);
        match self.walk(Element::Tree(t.clone()), budget, None)? {
            Element::Code(entries) => Ok(CodeVector::from_raw(entries)),
            other => panic!("final stage held {other:?}"),
        }
    }

    /// Encodes a tree and returns the full trace alongside the code.
    pub fn encode_tree_traced(
        &self,
        t: &RootedTree,
        budget: u64,
    ) -> Result<(CodeVector, Vec<TraceStep>)> {
        assert_eq!(t.n(), self.n);
        let mut trace = Vec::new();
        let out = self.walk(Element::Tree(t.clone()), budget, Some(&mut trace))?;
        match out {
            Element::Code(entries) => Ok((CodeVector::from_raw(entries), trace)),
            other => panic!("final stage held {other:?}"),
        }
    }
}

/// Convenience wrapper naming the classical construction.
pub fn garsia_milne_walk(p: &Pipeline, start: Element, budget: u64) -> Result<Element> {
    p.walk(start, budget, None)
}

/// The Matrix-Tree-Theorem involution in its placeholder form: a tree pairs
/// with its all-diagonal array (placeholder in the root corner), and a
/// cyclic array pairs with the diagonality-toggle of the cycle containing
/// the greatest in-cycle vertex.
pub fn mtt_involution(x: &Element) -> Element {
    match x {
        Element::Tree(t) => {
            let mut entries = vec![Entry { col: 0, sym: Sym::Lambda, neg: false }];
            for v in 1..=t.n() {
                entries.push(Entry { col: v, sym: Sym::Upper(t.succ(v)), neg: false });
            }
            Element::Array(SignedArray::new(0, entries))
        }
        Element::Array(a) => {
            assert_eq!(a.lo(), 0, "placeholder arrays start at row 0");
            let n = a.size() - 1;
            let succ_of = |v: usize| -> Option<usize> {
                let j = a.entry(v).sym.subscript().expect("rows 1..n carry subscripts");
                if j == 0 {
                    None
                } else {
                    Some(j)
                }
            };
            let cycles = find_cycles(1, n, succ_of);
            if cycles.is_empty() {
                let succ: Vec<usize> =
                    (1..=n).map(|v| a.entry(v).sym.subscript().unwrap()).collect();
                Element::Tree(RootedTree::from_successors(succ).expect("acyclic map is a tree"))
            } else {
                let top = cycles
                    .iter()
                    .max_by_key(|c| c.iter().max().copied().unwrap())
                    .unwrap();
                Element::Array(toggle_cycle(a, top).expect("cycles of the digraph toggle"))
            }
        }
        other => panic!("the involution pairs trees and arrays, got {other:?}"),
    }
}

/// Successor-ordered cycles of a partial map on `lo..=hi`; `next(v) = None`
/// leaves the active range.
pub(crate) fn find_cycles(
    lo: usize,
    hi: usize,
    next: impl Fn(usize) -> Option<usize>,
) -> Vec<Vec<usize>> {
    let mut state = vec![0u8; hi + 1];
    let mut cycles = Vec::new();
    let mut stack = Vec::new();
    for start in lo..=hi {
        if state[start] != 0 {
            continue;
        }
        let mut v = Some(start);
        while let Some(u) = v {
            if state[u] != 0 {
                break;
            }
            state[u] = 1;
            stack.push(u);
            v = next(u);
        }
        if let Some(u) = v {
            if state[u] == 1 {
                let first = stack.iter().position(|&w| w == u).unwrap();
                cycles.push(stack[first..].to_vec());
            }
        }
        for &w in &stack {
            state[w] = 2;
        }
        stack.clear();
    }
    cycles
}

/// The cycle containing the largest vertex, under an optional relabelling
/// used when a generalized vertex stands for several labels.
pub(crate) fn largest_cycle(cycles: &[Vec<usize>], label: impl Fn(usize) -> usize) -> &Vec<usize> {
    cycles
        .iter()
        .max_by_key(|c| c.iter().map(|&v| label(v)).max().unwrap())
        .expect("at least one cycle")
}
