//! Bijective codes for labelled rooted trees.
//!
//! A tree on the vertices `0..=n`, rooted at 0, is stored as the successor
//! list `(succ(1), ..., succ(n))`. Four codecs map such trees bijectively
//! onto the (n+1)^(n-1) sequences of length n-1 over `0..=n`:
//!
//! * [`prufer`] - the classical leaf-stripping code;
//! * [`blob`] - surgery on a growing blob of identified vertices, with an
//!   ascent/descent-weighted variant;
//! * [`happy`] - surgery on the path from 1, plus a fast in-place
//!   permutation of the naïve code;
//! * [`dandelion`] - the cycle-decomposition code, with the weighted
//!   surgery kept as a second implementation.
//!
//! The [`engine`] module re-derives the blob, happy and dandelion codes
//! from their defining matrix pipelines via the Garsia-Milne involution
//! principle; [`symbolic`] proves the counting identities behind them with
//! exact polynomial arithmetic; [`forest`] extends all three codecs to
//! forests of k rooted trees.

pub mod blob;
pub mod dandelion;
pub mod engine;
pub mod error;
pub mod forest;
pub mod happy;
pub mod prufer;
pub mod symbolic;
pub mod tree;
pub mod verify;

pub use blob::{blob_decode, blob_decode_weighted, blob_encode, blob_encode_weighted, WeightedToken};
pub use dandelion::{
    dandelion_decode, dandelion_decode_surgery, dandelion_encode, dandelion_encode_fast,
    dandelion_encode_surgery,
};
pub use error::{Error, Result};
pub use happy::{escher_insert_trace, happy_decode, happy_encode, happy_encode_fast};
pub use prufer::{prufer_decode, prufer_encode};
pub use tree::{
    cycles_of, enumerate_trees, naive_code, random_tree, validate_tree, CodeVector, Cycle,
    FunctionalDigraph, HappyFunctionalDigraph, RootedTree,
};

/// The four tree codecs, as a CLI-facing enum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codec {
    Prufer,
    Blob,
    Happy,
    Dandelion,
}

impl Codec {
    pub const ALL: [Codec; 4] = [Codec::Prufer, Codec::Blob, Codec::Happy, Codec::Dandelion];

    pub fn name(&self) -> &'static str {
        match self {
            Codec::Prufer => "prufer",
            Codec::Blob => "blob",
            Codec::Happy => "happy",
            Codec::Dandelion => "dandelion",
        }
    }

    pub fn encode(&self, t: &RootedTree) -> CodeVector {
        match self {
            Codec::Prufer => prufer_encode(t),
            Codec::Blob => blob_encode(t),
            Codec::Happy => happy_encode(t),
            Codec::Dandelion => dandelion_encode(t),
        }
    }

    pub fn decode(&self, c: &CodeVector) -> RootedTree {
        match self {
            Codec::Prufer => prufer_decode(c),
            Codec::Blob => blob_decode(c),
            Codec::Happy => happy_decode(c),
            Codec::Dandelion => dandelion_decode(c),
        }
    }
}
