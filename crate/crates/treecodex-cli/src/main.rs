//! treecodex: bijective codes for labelled rooted trees.
//!
//! Trees enter as the successor line "s1 s2 ... sn" (succ(i) = si, root 0),
//! codes as the comma-separated line "c1,...,c(n-1)". Exit status 0 on
//! success, 1 on a domain error or failed verification, 2 on usage errors.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use treecodex::engine;
use treecodex::forest::{forest_decode, forest_encode, ForestCode, ForestCodec, RootedForest};
use treecodex::symbolic;
use treecodex::tree::{enumerate_trees_bounded, random_tree, CodeVector, RootedTree};
use treecodex::verify::{self, Check};
use treecodex::{blob, Codec};

#[derive(Parser)]
#[command(name = "treecodex", version, about = "Bijective codes for labelled rooted trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodecArg {
    Prufer,
    Blob,
    Happy,
    Dandelion,
}

impl CodecArg {
    fn codec(self) -> Codec {
        match self {
            CodecArg::Prufer => Codec::Prufer,
            CodecArg::Blob => Codec::Blob,
            CodecArg::Happy => Codec::Happy,
            CodecArg::Dandelion => Codec::Dandelion,
        }
    }

    fn forest_codec(self) -> Option<ForestCodec> {
        match self {
            CodecArg::Prufer => None,
            CodecArg::Blob => Some(ForestCodec::Blob),
            CodecArg::Happy => Some(ForestCodec::Happy),
            CodecArg::Dandelion => Some(ForestCodec::Dandelion),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Surgery,
    Fast,
    Matrix,
}

/// Tree input, inline or from a file.
#[derive(Args)]
#[group(required = false, multiple = false)]
struct TreeInput {
    /// Successor line "s1 s2 ... sn"
    #[arg(long)]
    tree: Option<String>,
    /// Read the successor line from a file
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

impl TreeInput {
    fn read(&self) -> Result<Option<String>, String> {
        if let Some(t) = &self.tree {
            return Ok(Some(t.clone()));
        }
        if let Some(p) = &self.file {
            return std::fs::read_to_string(p)
                .map(|s| Some(s.trim().to_string()))
                .map_err(|e| format!("cannot read {}: {e}", p.display()));
        }
        Ok(None)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a tree (or forest) into a code
    Encode {
        #[arg(long, value_enum)]
        codec: CodecArg,
        #[command(flatten)]
        input: TreeInput,
        /// Forest input "k=K; s1 ... sm" with negative root labels
        #[arg(long, conflicts_with_all = ["tree", "file"])]
        forest: Option<String>,
        /// Implementation: fast where available, else surgery; matrix walks
        /// the involution pipeline (n <= 8)
        #[arg(long, value_enum, default_value = "fast")]
        method: Method,
        /// Emit the ascent/descent-weighted code (blob only)
        #[arg(long)]
        weighted: bool,
    },
    /// Decode a code back into a tree (or forest)
    Decode {
        #[arg(long, value_enum)]
        codec: CodecArg,
        /// Code line "c1,...,c(n-1)"; empty means n = 1
        #[arg(long, allow_hyphen_values = true)]
        code: Option<String>,
        /// Forest code "r | c1,..." with k supplied via --k
        #[arg(long, conflicts_with = "code", allow_hyphen_values = true)]
        forest_code: Option<String>,
        /// Number of roots for --forest-code
        #[arg(long)]
        k: Option<usize>,
        /// Expected n, required only to disambiguate the empty code
        #[arg(long)]
        n: Option<usize>,
        /// Weighted blob code such as "b0,a1_3,b2"
        #[arg(long, conflicts_with_all = ["code", "forest_code"])]
        weighted_code: Option<String>,
        #[arg(long, value_enum, default_value = "fast")]
        method: Method,
    },
    /// Generate a uniform random tree
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
    },
    /// List every tree on {0..n}
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Run verification sweeps
    Verify {
        /// Comma-separated subset of
        /// roundtrip,bijectivity,equivalence,mtt,ucsd,reversal,forest
        #[arg(long, default_value = "roundtrip,bijectivity,equivalence,mtt,ucsd,reversal,forest")]
        checks: String,
        #[arg(long, default_value = "5")]
        max_n: usize,
    },
    /// Ascent/descent degree table of a weighted code
    Stats {
        /// Weighted code such as "b0,a1_3,b2,b0,a4_5"
        #[arg(long)]
        code: String,
    },
    /// Print all four codes of one tree
    Compare {
        #[command(flatten)]
        input: TreeInput,
    },
    /// Dump the involution-pipeline walk of a tree, step by step
    Trace {
        #[arg(long, value_enum)]
        codec: CodecArg,
        #[command(flatten)]
        input: TreeInput,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(AppError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::VerifyFailed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
    }
}

enum AppError {
    Domain(String),
    Usage(String),
    VerifyFailed(String),
}

impl From<treecodex::Error> for AppError {
    fn from(e: treecodex::Error) -> Self {
        AppError::Domain(e.to_string())
    }
}

fn parse_tree(s: &str) -> Result<RootedTree, AppError> {
    RootedTree::from_str(s).map_err(|e| AppError::Domain(e.to_string()))
}

/// Walker budget: 8^n unless TREECODEX_STEP_BUDGET overrides it.
fn step_budget(default: u64) -> u64 {
    std::env::var("TREECODEX_STEP_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn pipeline_for(codec: CodecArg, n: usize) -> Result<engine::Pipeline, AppError> {
    if n > 8 {
        return Err(AppError::Domain(format!(
            "the matrix method walks an exponential pipeline; n = {n} exceeds the cap of 8"
        )));
    }
    match codec {
        CodecArg::Blob => Ok(engine::blob_pipeline(n)),
        CodecArg::Happy => Ok(engine::happy_pipeline(n)),
        CodecArg::Dandelion => Ok(engine::dandelion_pipeline(n)),
        CodecArg::Prufer => Err(AppError::Usage(
            "the prufer codec has no matrix pipeline; pick blob, happy or dandelion".into(),
        )),
    }
}

fn run(cmd: Command) -> Result<String, AppError> {
    match cmd {
        Command::Encode { codec, input, forest, method, weighted } => {
            if weighted && codec != CodecArg::Blob {
                return Err(AppError::Usage("--weighted applies to the blob codec".into()));
            }
            if let Some(fs) = forest {
                let fc = codec.forest_codec().ok_or_else(|| {
                    AppError::Usage("forests encode with blob, happy or dandelion".into())
                })?;
                if weighted {
                    return Err(AppError::Usage("--weighted applies to trees".into()));
                }
                let f: RootedForest = fs.parse().map_err(|e: treecodex::Error| AppError::Domain(e.to_string()))?;
                return Ok(format!("{}\n", forest_encode(&f, fc)));
            }
            let text = input
                .read()
                .map_err(AppError::Usage)?
                .ok_or_else(|| AppError::Usage("encode needs --tree, --file or --forest".into()))?;
            let t = parse_tree(&text)?;
            if weighted {
                let toks = blob::blob_encode_weighted(&t);
                return Ok(format!("{}\n", blob::weighted_code_to_string(&toks)));
            }
            let code = match method {
                Method::Matrix => {
                    let p = pipeline_for(codec, t.n())?;
                    p.encode_tree(&t, step_budget(p.default_budget()))?
                }
                Method::Surgery => match codec {
                    CodecArg::Dandelion => treecodex::dandelion_encode_surgery(&t),
                    CodecArg::Happy => treecodex::happy_encode(&t),
                    CodecArg::Blob => treecodex::blob_encode(&t),
                    CodecArg::Prufer => treecodex::prufer_encode(&t),
                },
                Method::Fast => match codec {
                    CodecArg::Happy => {
                        treecodex::happy_encode_fast(&treecodex::naive_code(&t.digraph()))?
                    }
                    other => other.codec().encode(&t),
                },
            };
            Ok(format!("{code}\n"))
        }
        Command::Decode { codec, code, forest_code, k, n, weighted_code, method } => {
            if let Some(wc) = weighted_code {
                let toks = blob::weighted_code_from_str(&wc)?;
                let t = blob::blob_decode_weighted(&toks)?;
                return Ok(format!("{t}\n"));
            }
            if let Some(fc) = forest_code {
                let k = k.ok_or_else(|| AppError::Usage("--forest-code needs --k".into()))?;
                let codec = codec.forest_codec().ok_or_else(|| {
                    AppError::Usage("forests decode with blob, happy or dandelion".into())
                })?;
                let parsed = parse_forest_code(&fc, k)?;
                let f = forest_decode(&parsed, codec)?;
                return Ok(format!("{f}\n"));
            }
            let text = code.ok_or_else(|| AppError::Usage("decode needs --code".into()))?;
            let c: CodeVector =
                text.parse().map_err(|e: treecodex::Error| AppError::Domain(e.to_string()))?;
            if let Some(expect) = n {
                if expect != c.n() {
                    return Err(AppError::Usage(format!(
                        "--n {expect} disagrees with the code length: n = {}",
                        c.n()
                    )));
                }
            }
            let t = match method {
                Method::Fast | Method::Surgery => codec.codec().decode(&c),
                Method::Matrix => {
                    return Err(AppError::Usage(
                        "matrix decoding is the same walk run backwards; use fast or surgery".into(),
                    ))
                }
            };
            Ok(format!("{t}\n"))
        }
        Command::Random { n, seed } => {
            if n == 0 {
                return Err(AppError::Usage("trees need n >= 1".into()));
            }
            Ok(format!("{}\n", random_tree(n, seed)))
        }
        Command::Enumerate { n } => {
            let mut out = String::new();
            for t in enumerate_trees_bounded(n, 8)? {
                writeln!(out, "{t}").unwrap();
            }
            Ok(out)
        }
        Command::Verify { checks, max_n } => {
            let mut selected = Vec::new();
            for name in checks.split(',') {
                let name = name.trim();
                if name.is_empty() {
                    continue;
                }
                let c = Check::parse(name)
                    .ok_or_else(|| AppError::Usage(format!("unknown check {name:?}")))?;
                selected.push(c);
            }
            if selected.is_empty() {
                return Err(AppError::Usage("no checks selected".into()));
            }
            if max_n > 6 {
                return Err(AppError::Usage("exhaustive sweeps cap at --max-n 6".into()));
            }
            let reports = verify::run_checks(&selected, max_n)?;
            let mut out = String::new();
            let mut ok = true;
            for r in &reports {
                ok &= r.passed;
                writeln!(out, "{r}").unwrap();
            }
            if ok {
                Ok(out)
            } else {
                Err(AppError::VerifyFailed(out))
            }
        }
        Command::Stats { code } => {
            let toks = blob::weighted_code_from_str(&code)?;
            let stats = symbolic::code_stats(&toks)?;
            let mut out = String::new();
            writeln!(out, "vertex I_A I_D O_A O_D").unwrap();
            for (j, row) in stats.rows.iter().enumerate() {
                writeln!(
                    out,
                    "{j:>6} {:>3} {:>3} {:>3} {:>3}",
                    row.in_ascending, row.in_descending, row.out_ascending, row.out_descending
                )
                .unwrap();
            }
            Ok(out)
        }
        Command::Compare { input } => {
            let text = input
                .read()
                .map_err(AppError::Usage)?
                .ok_or_else(|| AppError::Usage("compare needs --tree or --file".into()))?;
            let t = parse_tree(&text)?;
            let mut out = String::new();
            writeln!(out, "Method    Code").unwrap();
            for codec in [Codec::Blob, Codec::Happy, Codec::Dandelion, Codec::Prufer] {
                writeln!(out, "{:<9} {}", codec_label(codec), codec.encode(&t)).unwrap();
            }
            Ok(out)
        }
        Command::Trace { codec, input } => {
            let text = input
                .read()
                .map_err(AppError::Usage)?
                .ok_or_else(|| AppError::Usage("trace needs --tree or --file".into()))?;
            let t = parse_tree(&text)?;
            let p = pipeline_for(codec, t.n())?;
            let (code, steps) = p.encode_tree_traced(&t, step_budget(p.default_budget()))?;
            let mut out = String::new();
            for s in &steps {
                writeln!(out, "{}", s.render()).unwrap();
            }
            writeln!(out, "code: {code}").unwrap();
            Ok(out)
        }
    }
}

fn codec_label(c: Codec) -> &'static str {
    match c {
        Codec::Blob => "Blob",
        Codec::Happy => "Happy",
        Codec::Dandelion => "Dandelion",
        Codec::Prufer => "Prufer",
    }
}

/// Parses "r | c1,c2,..." given the root count.
fn parse_forest_code(s: &str, k: usize) -> Result<ForestCode, AppError> {
    let (root, entries) = s
        .split_once('|')
        .ok_or_else(|| AppError::Usage("forest codes look like \"-1 | 2,-2,1\"".into()))?;
    let root: i64 = root
        .trim()
        .parse()
        .map_err(|e| AppError::Usage(format!("bad root choice {root:?}: {e}")))?;
    let entries = entries.trim();
    let entries: Vec<i64> = if entries.is_empty() {
        Vec::new()
    } else {
        entries
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| AppError::Usage(format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<_, _>>()?
    };
    let m = entries.len() + 1;
    ForestCode::new(k, m, root, entries).map_err(|e| AppError::Domain(e.to_string()))
}
