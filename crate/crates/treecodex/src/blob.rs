//! The Blob code: tree surgery that grows a blob of identified vertices
//! downward from n, plus its inverse and the ascent/descent-weighted
//! variant.
//!
//! Encoding processes v = n-1, ..., 1. When the path from v to the root
//! meets the blob, the code entry for v is succ(v) and v simply joins the
//! blob; otherwise the entry is the blob's current target, the blob is
//! re-pointed at succ(v), and v joins. Decoding peels vertices 1, 2, ... out
//! of the blob with the mirrored branch test.
//!
//! The cores below run on plain successor buffers so the forest extension
//! can reuse them: vertices `1..=m` are active and any target that is 0 or
//! greater than `m` is absorbing (a root).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::{CodeVector, RootedTree};

#[inline]
fn is_root(m: usize, x: usize) -> bool {
    x == 0 || x > m
}

/// For every active vertex, the largest active label strictly beyond it on
/// its chain (0 when the chain runs straight to a root).
fn max_beyond(m: usize, succ: &[usize]) -> Vec<usize> {
    let mut ma = vec![usize::MAX; m + 1];
    let mut stack = Vec::new();
    for start in 1..=m {
        if ma[start] != usize::MAX {
            continue;
        }
        let mut v = start;
        while !is_root(m, v) && ma[v] == usize::MAX {
            ma[v] = usize::MAX - 1; // on stack
            stack.push(v);
            v = succ[v];
        }
        let mut acc = if is_root(m, v) { 0 } else { ma[v] };
        debug_assert!(acc != usize::MAX - 1, "trees have no cycles");
        while let Some(u) = stack.pop() {
            let s = succ[u];
            acc = if is_root(m, s) { 0 } else { acc.max(s) };
            ma[u] = acc;
        }
    }
    ma
}

/// Blob surgery over an active range; returns the code entries and the root
/// the blob finally points at.
pub(crate) fn encode_core(m: usize, succ: &[usize]) -> (Vec<usize>, usize) {
    if m == 1 {
        return (Vec::new(), succ[1]);
    }
    let ma = max_beyond(m, succ);
    let mut code = vec![0usize; m - 1];
    let mut blob_succ = succ[m];
    for v in (1..m).rev() {
        if ma[v] > v {
            // path(v) meets the blob
            code[v - 1] = succ[v];
        } else {
            code[v - 1] = blob_succ;
            blob_succ = succ[v];
        }
    }
    debug_assert!(is_root(m, blob_succ));
    (code, blob_succ)
}

/// Inverse surgery; `root` is the target of the initial all-vertex blob.
pub(crate) fn decode_core(m: usize, code: &[usize], root: usize) -> Vec<usize> {
    debug_assert_eq!(code.len(), m - 1);
    let mut succ = vec![0usize; m + 1];
    // jump[v] = compressed first stop at or beyond the current vertex bound
    let mut jump = vec![0usize; m + 1];
    let mut blob_succ = root;
    for i in 1..m {
        let c = code[i - 1];
        // first vertex on the chain from c that is a root or >= i
        let mut x = c;
        let mut seen = Vec::new();
        while !is_root(m, x) && x < i {
            seen.push(x);
            x = jump[x];
        }
        for &u in &seen {
            jump[u] = x;
        }
        let meets_blob = !is_root(m, x) && x > i;
        if meets_blob {
            succ[i] = c;
        } else {
            succ[i] = blob_succ;
            blob_succ = c;
        }
        jump[i] = succ[i];
    }
    succ[m] = blob_succ;
    succ
}

/// Tree-surgery Blob encoder; the code has length n-1.
pub fn blob_encode(t: &RootedTree) -> CodeVector {
    let (code, root) = encode_core(t.n(), &t.succ_buf());
    debug_assert_eq!(root, 0);
    CodeVector::from_raw(code)
}

/// Inverse tree surgery; total on the code space.
pub fn blob_decode(c: &CodeVector) -> RootedTree {
    let succ = decode_core(c.n(), c.entries(), 0);
    RootedTree::from_valid_buf(succ)
}

/// One entry of the ascent/descent-weighted code: `B(j)` records a non-ascent
/// edge into `j`, `A(i, j)` an ascent edge `i -> j` (so `j > i >= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightedToken {
    B(usize),
    A(usize, usize),
}

impl WeightedToken {
    /// The edge head the token stands for.
    pub fn target(&self) -> usize {
        match *self {
            WeightedToken::B(j) => j,
            WeightedToken::A(_, j) => j,
        }
    }
}

impl fmt::Display for WeightedToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WeightedToken::B(j) => write!(f, "b{j}"),
            WeightedToken::A(i, j) => write!(f, "a{i}_{j}"),
        }
    }
}

impl FromStr for WeightedToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('b') {
            let j = rest
                .parse::<usize>()
                .map_err(|_| Error::MalformedToken(format!("bad descent token {s:?}")))?;
            return Ok(WeightedToken::B(j));
        }
        if let Some(rest) = s.strip_prefix('a') {
            let (i, j) = rest
                .split_once('_')
                .ok_or_else(|| Error::MalformedToken(format!("bad ascent token {s:?}")))?;
            let i = i
                .parse::<usize>()
                .map_err(|_| Error::MalformedToken(format!("bad ascent token {s:?}")))?;
            let j = j
                .parse::<usize>()
                .map_err(|_| Error::MalformedToken(format!("bad ascent token {s:?}")))?;
            if i < 1 || j <= i {
                return Err(Error::MalformedToken(format!(
                    "ascent token {s:?} needs 1 <= i < j"
                )));
            }
            return Ok(WeightedToken::A(i, j));
        }
        Err(Error::MalformedToken(format!("unrecognised token {s:?}")))
    }
}

/// Renders a weighted code in its text form, e.g. `b0,a1_3,b2,b0,a4_5`.
pub fn weighted_code_to_string(tokens: &[WeightedToken]) -> String {
    tokens
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses the text form produced by [`weighted_code_to_string`].
pub fn weighted_code_from_str(s: &str) -> Result<Vec<WeightedToken>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::MalformedToken("weighted codes are never empty".into()));
    }
    s.split(',').map(|t| t.parse()).collect()
}

/// Checks the code-space shape: position 1 holds `b0`; position i holds
/// either `a(i-1, j)` with `j >= i` or `b j` with `j <= i-1`, all labels
/// within `0..=n`.
pub fn validate_weighted(tokens: &[WeightedToken]) -> Result<()> {
    let n = tokens.len();
    if n == 0 {
        return Err(Error::MalformedToken("weighted codes are never empty".into()));
    }
    if tokens[0] != WeightedToken::B(0) {
        return Err(Error::MalformedToken(format!(
            "position 1 must be b0, found {}",
            tokens[0]
        )));
    }
    for (idx, tok) in tokens.iter().enumerate().skip(1) {
        let i = idx + 1; // 1-based position
        match *tok {
            WeightedToken::B(j) => {
                if j > i - 1 {
                    return Err(Error::MalformedToken(format!(
                        "position {i} holds {tok} but descent subscripts there stop at {}",
                        i - 1
                    )));
                }
            }
            WeightedToken::A(a, j) => {
                if a != i - 1 || j < i || j > n {
                    return Err(Error::MalformedToken(format!(
                        "position {i} holds {tok}; ascents there are a{}_{{{i}..={n}}}",
                        i - 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Weighted Blob encoding: the same surgery, with each emitted edge recorded
/// as an ascent or non-ascent weight. The leading token is the blob's final
/// root edge, always `b0`.
pub fn blob_encode_weighted(t: &RootedTree) -> Vec<WeightedToken> {
    let n = t.n();
    let succ = t.succ_buf();
    let mut tokens = vec![WeightedToken::B(0); n];
    if n == 1 {
        return tokens;
    }
    let ma = max_beyond(n, &succ);
    let mut blob_succ = succ[n];
    for v in (1..n).rev() {
        let tok = if ma[v] > v {
            // v's own edge: an ascent exactly when it climbs
            let j = succ[v];
            if j > v {
                WeightedToken::A(v, j)
            } else {
                WeightedToken::B(j)
            }
        } else {
            // the blob's edge: heads strictly below every blob label
            let t = WeightedToken::B(blob_succ);
            blob_succ = succ[v];
            t
        };
        tokens[v] = tok;
    }
    debug_assert_eq!(blob_succ, 0);
    tokens
}

/// Inverse of [`blob_encode_weighted`]: validates the shape, then runs the
/// unweighted inverse surgery on the token targets.
pub fn blob_decode_weighted(tokens: &[WeightedToken]) -> Result<RootedTree> {
    validate_weighted(tokens)?;
    let n = tokens.len();
    let entries: Vec<usize> = tokens[1..].iter().map(|t| t.target()).collect();
    let succ = decode_core(n, &entries, 0);
    Ok(RootedTree::from_valid_buf(succ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;
    use std::collections::HashSet;

    fn tree(succ: &[usize]) -> RootedTree {
        RootedTree::from_successors(succ.to_vec()).unwrap()
    }

    #[test]
    fn known_codes() {
        assert_eq!(blob_encode(&tree(&[3, 1, 0])).to_string(), "3,1");
        assert_eq!(blob_encode(&tree(&[3, 3, 0, 0])).to_string(), "3,3,0");
        assert_eq!(
            blob_encode(&tree(&[6, 4, 2, 0, 4, 2, 4])).to_string(),
            "6,4,2,4,2,4"
        );
    }

    #[test]
    fn decode_inverts_known_codes() {
        assert_eq!(blob_decode(&"3,1".parse().unwrap()), tree(&[3, 1, 0]));
        assert_eq!(
            blob_decode(&CodeVector::from_entries(vec![]).unwrap()),
            tree(&[0])
        );
    }

    #[test]
    fn bijective_at_n_3() {
        let mut seen = HashSet::new();
        for a in 0..=3 {
            for b in 0..=3 {
                let c = CodeVector::from_entries(vec![a, b]).unwrap();
                let t = blob_decode(&c);
                assert_eq!(blob_encode(&t), c);
                seen.insert(t);
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn round_trips_exhaustively_to_n_5() {
        for n in 1..=5 {
            for t in enumerate_trees(n).unwrap() {
                assert_eq!(blob_decode(&blob_encode(&t)), t);
            }
        }
    }

    #[test]
    fn weighted_code_of_the_worked_example() {
        // edges 1->3, 2->0, 3->2, 4->5, 5->0
        let t = tree(&[3, 0, 2, 5, 0]);
        let toks = blob_encode_weighted(&t);
        assert_eq!(weighted_code_to_string(&toks), "b0,a1_3,b2,b0,a4_5");
        assert_eq!(blob_decode_weighted(&toks).unwrap(), t);
        assert_eq!(blob_encode_weighted(&tree(&[0])), vec![WeightedToken::B(0)]);
    }

    #[test]
    fn weighted_decode_of_the_worked_example_rebuilds_each_edge() {
        let toks = weighted_code_from_str("b0,a1_3,b2,b0,a4_5").unwrap();
        let t = blob_decode_weighted(&toks).unwrap();
        assert_eq!(t.succ(1), 3);
        assert_eq!(t.succ(4), 5);
        assert_eq!(t.succ(2), 0);
        assert_eq!(t.succ(3), 2);
        assert_eq!(t.succ(5), 0);
    }

    #[test]
    fn weighted_projection_matches_the_unweighted_code() {
        for n in 1..=5 {
            for t in enumerate_trees(n).unwrap() {
                let toks = blob_encode_weighted(&t);
                let projected: Vec<usize> = toks[1..].iter().map(|t| t.target()).collect();
                assert_eq!(projected, blob_encode(&t).entries());
            }
        }
    }

    /// Every shape-valid weighted code decodes, and re-encodes to itself.
    #[test]
    fn weighted_code_space_is_bijective_at_n_4() {
        let n = 4usize;
        // position i (2..=n) draws from i descents and n-i+1 ascents
        let options: Vec<Vec<WeightedToken>> = (2..=n)
            .map(|i| {
                let mut v: Vec<WeightedToken> = (0..i).map(WeightedToken::B).collect();
                v.extend((i..=n).map(|j| WeightedToken::A(i - 1, j)));
                v
            })
            .collect();
        let mut seen = HashSet::new();
        let mut idx = vec![0usize; options.len()];
        loop {
            let mut tokens = vec![WeightedToken::B(0)];
            for (slot, &k) in idx.iter().enumerate() {
                tokens.push(options[slot][k]);
            }
            let t = blob_decode_weighted(&tokens).unwrap();
            assert_eq!(blob_encode_weighted(&t), tokens);
            seen.insert(t);
            // odometer over the option table
            let mut advanced = false;
            for slot in (0..idx.len()).rev() {
                if idx[slot] + 1 < options[slot].len() {
                    idx[slot] += 1;
                    for later in &mut idx[slot + 1..] {
                        *later = 0;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn malformed_tokens_are_rejected() {
        // ascent in a descent-only slot
        let bad = vec![WeightedToken::B(0), WeightedToken::A(1, 1)];
        assert!(weighted_code_from_str("b0,a1_1").is_err());
        assert!(matches!(
            blob_decode_weighted(&bad),
            Err(Error::MalformedToken(_))
        ));
        // leading token must be b0
        let bad = vec![WeightedToken::B(1), WeightedToken::B(0)];
        assert!(matches!(
            blob_decode_weighted(&bad),
            Err(Error::MalformedToken(_))
        ));
        // descent subscript too large for its slot
        let bad = vec![WeightedToken::B(0), WeightedToken::B(2)];
        assert!(matches!(
            blob_decode_weighted(&bad),
            Err(Error::MalformedToken(_))
        ));
    }
}
