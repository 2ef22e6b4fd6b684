//! Distances, nearest-neighbor search and classification benchmarks.

mod bench;
mod collection;
mod distance;
mod eval;

pub use bench::{
    bench_communities, bench_real_vs_rewired, embed_labeled, rewired_pairs, CommunityBench, LabeledGraph,
    LabeledSpectra, Method, Mixing, SizeLaw, DEFAULT_MIXING_RATIO,
};
pub use collection::SignatureCollection;
pub use distance::{linf_distance, signature_distance};
pub use eval::{evaluate_1nn, roc_auc, EvalReport, Metric};
