//! Batch verification sweeps driven by the CLI and the conformance tests.
//! Every check is a pure function returning a pass/fail report with a
//! counterexample rendering on failure.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine;
use crate::error::Result;
use crate::forest::{forest_decode, forest_encode, ForestCodec, RootedForest};
use crate::symbolic::{self, Weighting};
use crate::tree::{enumerate_trees_bounded, random_tree, CodeVector};
use crate::Codec;

/// Selectable checks, reported in this fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Roundtrip,
    Bijectivity,
    Equivalence,
    Mtt,
    Ucsd,
    Reversal,
    Forest,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Roundtrip,
        Check::Bijectivity,
        Check::Equivalence,
        Check::Mtt,
        Check::Ucsd,
        Check::Reversal,
        Check::Forest,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Roundtrip => "roundtrip",
            Check::Bijectivity => "bijectivity",
            Check::Equivalence => "equivalence",
            Check::Mtt => "mtt",
            Check::Ucsd => "ucsd",
            Check::Reversal => "reversal",
            Check::Forest => "forest",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.iter().copied().find(|c| c.name() == s)
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: Check,
    pub scope: String,
    pub passed: bool,
    pub detail: Option<String>,
    pub elapsed_ms: u128,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.check.name(),
            self.scope,
            self.elapsed_ms
        )?;
        if let Some(d) = &self.detail {
            write!(f, "\n  counterexample: {d}")?;
        }
        Ok(())
    }
}

fn report(check: Check, scope: String, started: Instant, fail: Option<String>) -> CheckReport {
    CheckReport {
        check,
        scope,
        passed: fail.is_none(),
        detail: fail,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

/// encode(decode(c)) = c and decode(encode(t)) = t, exhaustive to `max_n`.
pub fn check_roundtrip(max_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    'outer: for n in 1..=max_n {
        for t in enumerate_trees_bounded(n, 8)? {
            for codec in Codec::ALL {
                let c = codec.encode(&t);
                let back = codec.decode(&c);
                if back != t {
                    fail = Some(format!("{} decode(encode(tree[{t}])) = tree[{back}]", codec.name()));
                    break 'outer;
                }
            }
        }
    }
    let scope = format!("n<={max_n} (4 codecs, both directions)");
    Ok(report(Check::Roundtrip, scope, started, fail))
}

/// Decoding every code yields every tree exactly once.
pub fn check_bijectivity(max_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    'outer: for n in 1..=max_n {
        let total = (n + 1).pow(n as u32 - 1);
        for codec in Codec::ALL {
            let mut seen = std::collections::HashSet::with_capacity(total);
            for mut idx in 0..total {
                let mut entries = Vec::with_capacity(n - 1);
                for _ in 0..n - 1 {
                    entries.push(idx % (n + 1));
                    idx /= n + 1;
                }
                let c = CodeVector::from_entries(entries)?;
                let t = codec.decode(&c);
                if codec.encode(&t) != c {
                    fail = Some(format!("{} encode(decode({c})) != {c}", codec.name()));
                    break 'outer;
                }
                seen.insert(t);
            }
            if seen.len() != total {
                fail = Some(format!(
                    "{} decoded {} distinct trees out of {total} codes at n={n}",
                    codec.name(),
                    seen.len()
                ));
                break 'outer;
            }
        }
    }
    Ok(report(Check::Bijectivity, format!("n<={max_n}"), started, fail))
}

/// The pipeline walks equal the surgery codecs.
pub fn check_equivalence(max_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    'outer: for n in 1..=max_n {
        let pipelines = [
            (engine::blob_pipeline(n), Codec::Blob),
            (engine::happy_pipeline(n), Codec::Happy),
            (engine::dandelion_pipeline(n), Codec::Dandelion),
        ];
        for t in enumerate_trees_bounded(n, 8)? {
            for (p, codec) in &pipelines {
                let walked = p.encode_tree(&t, p.default_budget())?;
                let surgical = codec.encode(&t);
                if walked != surgical {
                    fail = Some(format!(
                        "{} walk gave {walked}, surgery gave {surgical} on tree[{t}]",
                        codec.name()
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(report(Check::Equivalence, format!("n<={max_n} (3 pipelines)"), started, fail))
}

/// det(reduced Laplacian) equals the enumerated weighted tree sum, and the
/// uniform determinant factors with the right monomial count.
pub fn check_mtt(max_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    'outer: for n in 1..=max_n {
        for w in [Weighting::UniformB, Weighting::Ucsd] {
            if !symbolic::mtt_check(n, w)? {
                fail = Some(format!("determinant != tree sum at n={n} under {w:?}"));
                break 'outer;
            }
        }
        let det = symbolic::laplacian(n, Weighting::UniformB).minor_at_origin().det()?;
        if det != symbolic::uniform_b_closed_form(n) {
            fail = Some(format!("uniform determinant does not factor at n={n}"));
            break;
        }
        if det.coefficient_sum() as usize != (n + 1).pow(n as u32 - 1) {
            fail = Some(format!("monomial count off at n={n}"));
            break;
        }
    }
    Ok(report(Check::Mtt, format!("n<={max_n} (2 weightings)"), started, fail))
}

/// The ascent/descent product equals the weighted tree sum, symbolically to
/// `max_exact` and at random integer points one size up.
pub fn check_ucsd(max_exact: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    for n in 1..=max_exact {
        if symbolic::ucsd_product(n) != symbolic::tree_weight_sum(n, Weighting::Ucsd)? {
            fail = Some(format!("product != tree sum at n={n}"));
            break;
        }
    }
    if fail.is_none() {
        let n = max_exact + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for trial in 0..20 {
            let point = random_point(&mut rng);
            let by_product = symbolic::ucsd_product(n).eval(&point);
            let by_det = symbolic::det_int(
                symbolic::laplacian(n, Weighting::Ucsd).minor_at_origin().eval(&point),
            );
            let mut by_trees = BigInt::from(0);
            for t in enumerate_trees_bounded(n, 8)? {
                by_trees += symbolic::tree_weight(&t, Weighting::Ucsd).eval(&point);
            }
            if by_product != by_det || by_product != by_trees {
                fail = Some(format!("point check {trial} disagrees at n={n}"));
                break;
            }
        }
    }
    let scope = format!("n<={max_exact} exact, n={} at 20 points", max_exact + 1);
    Ok(report(Check::Ucsd, scope, started, fail))
}

fn random_point(rng: &mut ChaCha8Rng) -> impl Fn(symbolic::Var) -> BigInt + Copy {
    let seed: u64 = rng.gen();
    move |v: symbolic::Var| {
        // hash the variable into a fixed value in [1, 2^31)
        let mut h = seed ^ match v {
            symbolic::Var::B(j) => 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(j as u64 ^ 0xb5),
            symbolic::Var::UpperB(j) => 0x2545_f491_4f6c_dd1du64.wrapping_mul(j as u64 ^ 0x17),
            symbolic::Var::Lambda => 0xda94_2042_e4dd_58b5,
            symbolic::Var::A(i, j) => {
                0x9e37_79b9_7f4a_7c15u64.wrapping_mul(((i as u64) << 17) ^ j as u64 ^ 0x3c0)
            }
        };
        h ^= h >> 33;
        h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
        h ^= h >> 33;
        BigInt::from((h % ((1 << 31) - 1)) + 1)
    }
}

/// Reversing the path from 1 swaps the happy and dandelion codes.
pub fn check_reversal(max_n: usize, random_trials: usize, random_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    'outer: for n in 1..=max_n {
        for t in enumerate_trees_bounded(n, 8)? {
            let r = t.reverse_path();
            if crate::happy_encode(&r) != crate::dandelion_encode(&t)
                || crate::dandelion_encode(&r) != crate::happy_encode(&t)
            {
                fail = Some(format!("tree[{t}]"));
                break 'outer;
            }
        }
    }
    if fail.is_none() {
        for seed in 0..random_trials as u64 {
            let t = random_tree(random_n, seed);
            let r = t.reverse_path();
            if crate::happy_encode(&r) != crate::dandelion_encode(&t) {
                fail = Some(format!("seed {seed}"));
                break;
            }
        }
    }
    let scope = format!("n<={max_n} exhaustive + {random_trials} random at n={random_n}");
    Ok(report(Check::Reversal, scope, started, fail))
}

/// Forest codecs are bijective for every (k, m) with k+m-1 <= max_n, and
/// the root-split substitution matches brute-force forest sums.
pub fn check_forest(max_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut fail = None;
    'outer: for k in 1..=max_n {
        for m in 1..=(max_n + 1 - k) {
            let forests = all_forests(k, m);
            let expected = k * (m + k).pow(m as u32 - 1);
            if forests.len() != expected {
                fail = Some(format!("k={k} m={m}: {} forests, expected {expected}", forests.len()));
                break 'outer;
            }
            for codec in ForestCodec::ALL {
                let mut seen = std::collections::HashSet::new();
                for f in &forests {
                    let c = forest_encode(f, codec);
                    match forest_decode(&c, codec) {
                        Ok(back) if back == *f => {}
                        other => {
                            fail = Some(format!("k={k} m={m} {codec:?}: {f} -> {c} -> {other:?}"));
                            break 'outer;
                        }
                    }
                    seen.insert(c);
                }
                if seen.len() != expected {
                    fail = Some(format!("k={k} m={m} {codec:?}: codes collide"));
                    break 'outer;
                }
            }
        }
    }
    if fail.is_none() {
        // determinant substitution: split b0 into per-root weights
        for k in 1..=3usize {
            for m in 1..=3usize {
                if k + m - 1 > 5 {
                    continue;
                }
                let det = symbolic::laplacian(m, Weighting::UniformB).minor_at_origin().det()?;
                let split = symbolic::MultiPoly::sum_of(
                    (1..=k).map(|r| symbolic::Var::B(-(r as i32))),
                );
                let substituted = det.substitute(symbolic::Var::B(0), &split);
                let mut forest_sum = symbolic::MultiPoly::zero();
                for f in all_forests(k, m) {
                    let mut w = symbolic::MultiPoly::one();
                    for v in 1..=m {
                        w = w.mul(&symbolic::MultiPoly::var(symbolic::Var::B(f.succ(v) as i32)));
                    }
                    forest_sum = forest_sum.add(&w);
                }
                if substituted != forest_sum {
                    fail = Some(format!("substitution mismatch at k={k} m={m}"));
                }
            }
        }
    }
    Ok(report(Check::Forest, format!("k+m-1<={max_n}"), started, fail))
}

/// Every forest with k roots and m non-root vertices.
pub fn all_forests(k: usize, m: usize) -> Vec<RootedForest> {
    let alphabet: Vec<i64> = (-(k as i64)..=-1).chain(1..=m as i64).collect();
    let mut out = Vec::new();
    let total = alphabet.len().pow(m as u32);
    for mut idx in 0..total {
        let mut succ = Vec::with_capacity(m);
        for _ in 0..m {
            succ.push(alphabet[idx % alphabet.len()]);
            idx /= alphabet.len();
        }
        if let Ok(f) = RootedForest::from_successors(k, succ) {
            out.push(f);
        }
    }
    out
}

/// Runs the selected checks, fanning out across threads; reports come back
/// in the fixed check order regardless of completion time.
pub fn run_checks(checks: &[Check], max_n: usize) -> Result<Vec<CheckReport>> {
    let mut selected: Vec<Check> = checks.to_vec();
    selected.sort_unstable();
    selected.dedup();
    let run = |c: Check| -> Result<CheckReport> {
        match c {
            Check::Roundtrip => check_roundtrip(max_n.min(5)),
            Check::Bijectivity => check_bijectivity(max_n.min(6)),
            Check::Equivalence => check_equivalence(max_n.min(4)),
            Check::Mtt => check_mtt(max_n.min(6)),
            Check::Ucsd => check_ucsd(max_n.min(5)),
            Check::Reversal => check_reversal(max_n.min(5), 100, 200),
            Check::Forest => check_forest(max_n.min(5)),
        }
    };
    std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&c| scope.spawn(move || run(c)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    })
}
