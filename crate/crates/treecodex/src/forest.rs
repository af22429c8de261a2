//! Codes for forests of k rooted trees.
//!
//! Roots are labelled -1, ..., -k and the non-root vertices 1, ..., m with
//! m = n - k + 1. Every tree code generalises by splitting the single root
//! weight into one weight per root, so a forest code is a root choice plus
//! m - 1 entries over roots and non-roots. Internally roots are remapped to
//! the dense labels m+1, ..., m+k and the tree codec cores run unchanged,
//! treating every label outside 1..=m as absorbing.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::{blob, dandelion, happy};

/// Which codec family a forest code belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestCodec {
    Blob,
    Happy,
    Dandelion,
}

impl ForestCodec {
    pub const ALL: [ForestCodec; 3] = [ForestCodec::Blob, ForestCodec::Happy, ForestCodec::Dandelion];
}

/// A forest of k rooted trees: roots -1..-k, non-roots 1..m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedForest {
    k: usize,
    /// `succ[v]` for v in 1..=m; negative values are roots.
    succ: Vec<i64>,
}

impl RootedForest {
    /// Builds a forest from its root count and successor list
    /// `(succ(1), ..., succ(m))`; every vertex must reach a root.
    pub fn from_successors(k: usize, successors: Vec<i64>) -> Result<Self> {
        let m = successors.len();
        if k == 0 {
            return Err(Error::InvalidForest("at least one root is needed".into()));
        }
        if m == 0 {
            return Err(Error::InvalidForest("at least one non-root vertex is needed".into()));
        }
        for &s in &successors {
            let ok = (1..=m as i64).contains(&s) || (-(k as i64)..=-1).contains(&s);
            if !ok {
                return Err(Error::InvalidForest(format!(
                    "successor {s} out of range -{k}..=-1 or 1..={m}"
                )));
            }
        }
        let f = Self { k, succ: successors };
        // acyclicity: every internal chain must drain into a root
        let internal = f.internal_succ();
        for start in 1..=m {
            let mut v = start;
            let mut steps = 0;
            while v >= 1 && v <= m {
                v = internal[v];
                steps += 1;
                if steps > m {
                    return Err(Error::InvalidForest(format!(
                        "vertex {start} never reaches a root"
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of non-root vertices.
    pub fn m(&self) -> usize {
        self.succ.len()
    }

    pub fn succ(&self, v: usize) -> i64 {
        self.succ[v - 1]
    }

    pub fn successors(&self) -> &[i64] {
        &self.succ
    }

    /// Successor buffer with roots remapped to m+1..m+k (1-indexed slot 0
    /// unused), the form the codec cores run on.
    fn internal_succ(&self) -> Vec<usize> {
        let m = self.m();
        let mut out = vec![0usize; m + 1];
        for v in 1..=m {
            out[v] = to_internal(self.succ(v), m);
        }
        out
    }
}

fn to_internal(label: i64, m: usize) -> usize {
    if label < 0 {
        m + (-label) as usize
    } else {
        label as usize
    }
}

fn to_external(label: usize, m: usize) -> i64 {
    if label > m {
        -((label - m) as i64)
    } else {
        label as i64
    }
}

/// A forest code: the chosen root for the distinguished final edge plus
/// m - 1 entries over `{-1..-k} ∪ {1..m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForestCode {
    k: usize,
    m: usize,
    /// 1..=k; rendered as the root label -root_choice.
    root_choice: usize,
    entries: Vec<i64>,
}

impl ForestCode {
    pub fn new(k: usize, m: usize, root_choice: i64, entries: Vec<i64>) -> Result<Self> {
        if !(-(k as i64)..=-1).contains(&root_choice) {
            return Err(Error::MalformedCode(format!(
                "root choice {root_choice} is not one of -1..=-{k}"
            )));
        }
        if entries.len() + 1 != m {
            return Err(Error::MalformedCode(format!(
                "expected {} entries for m = {m}, found {}",
                m - 1,
                entries.len()
            )));
        }
        for &e in &entries {
            let ok = (1..=m as i64).contains(&e) || (-(k as i64)..=-1).contains(&e);
            if !ok {
                return Err(Error::MalformedCode(format!(
                    "entry {e} out of range -{k}..=-1 or 1..={m}"
                )));
            }
        }
        Ok(Self { k, m, root_choice: (-root_choice) as usize, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The chosen root as a label in -1..=-k.
    pub fn root_choice(&self) -> i64 {
        -(self.root_choice as i64)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

/// Encodes a forest with the chosen codec.
pub fn forest_encode(f: &RootedForest, codec: ForestCodec) -> ForestCode {
    let m = f.m();
    let mut succ = f.internal_succ();
    let (code, root) = match codec {
        ForestCodec::Blob => blob::encode_core(m, &succ),
        ForestCodec::Happy => happy::encode_core(m, &mut succ),
        ForestCodec::Dandelion => dandelion::encode_core(m, &mut succ),
    };
    debug_assert!(root > m);
    ForestCode {
        k: f.k(),
        m,
        root_choice: root - m,
        entries: code.iter().map(|&e| to_external(e, m)).collect(),
    }
}

/// Decodes a forest code; the inverse of [`forest_encode`] for the same
/// codec.
pub fn forest_decode(c: &ForestCode, codec: ForestCodec) -> Result<RootedForest> {
    let m = c.m;
    let entries: Vec<usize> = c.entries.iter().map(|&e| to_internal(e, m)).collect();
    let root = m + c.root_choice;
    let succ = match codec {
        ForestCodec::Blob => blob::decode_core(m, &entries, root),
        ForestCodec::Happy => happy::decode_core(m, &entries, root),
        ForestCodec::Dandelion => dandelion::decode_core(m, &entries, root),
    };
    let successors: Vec<i64> = (1..=m).map(|v| to_external(succ[v], m)).collect();
    RootedForest::from_successors(c.k, successors)
}

impl fmt::Display for RootedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};", self.k)?;
        for s in &self.succ {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl FromStr for RootedForest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse("forest text is \"k=K; s1 s2 ...\"".into()))?;
        let head = head.trim();
        let k = head
            .strip_prefix("k=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad root count {head:?}")))?;
        let successors = tail
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("bad successor {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        RootedForest::from_successors(k, successors)
    }
}

impl fmt::Display for ForestCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.root_choice())?;
        for (i, e) in self.entries.iter().enumerate() {
            if i == 0 {
                write!(f, " {e}")?;
            } else {
                write!(f, ",{e}")?;
            }
        }
        Ok(())
    }
}
