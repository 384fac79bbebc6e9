//! Toolkit for quantifying how much near-equally-performing models disagree
//! in their explanations of driving actions over qualitative scene graphs.
//!
//! The pipeline: generate (or load) multi-frame scenes, turn them into
//! qualitative explainable graphs, train populations of pair-based boosted
//! trees and graph-attention classifiers, keep the validation Rashomon set,
//! attribute each model's relevant-object picks, and score cross-model
//! explanation agreement with free-marginal kappa and Kendall's W.

pub mod agreement;
pub mod attribution;
pub mod calculi;
pub mod error;
pub mod gbdt;
pub mod graph_net;
pub mod pipeline;
pub mod qxg;
pub mod rashomon;
pub mod report;
pub mod scene;
pub mod scene_gen;

pub use error::{Error, Result};

/// Derives a stream-independent child seed: used for per-scene and per-model
/// seeding so work units can run in any order.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    // splitmix64 step over master + odd-constant-spaced index
    let mut z = master
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
