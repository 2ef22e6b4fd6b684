//! Spectral graph signatures.
//!
//! A graph is summarized by the trace of the heat kernel `exp(-tL)` or the
//! wave kernel `exp(-itL)` of its normalized Laplacian `L`, sampled over a
//! grid of scales `t`. Two signatures are compared by Euclidean distance.
//!
//! ```
//! use netlsd::{compute_signature, gen_named, GraphFamily, Kernel, Normalization};
//! use netlsd::{signature_distance, SpectrumOptions, Strategy, TimeGrid};
//!
//! let grid = TimeGrid::heat_default();
//! let opts = SpectrumOptions::default();
//! let embed = |g| {
//!     compute_signature(&g, Kernel::Heat, &grid, Normalization::Empty, Strategy::Full, &opts)
//! };
//! let ring = embed(gen_named(GraphFamily::Ring, 10).unwrap()).unwrap();
//! let wheel = embed(gen_named(GraphFamily::Wheel, 10).unwrap()).unwrap();
//! assert!(signature_distance(&ring, &wheel).unwrap() > 0.0);
//! ```

pub mod compare;
pub mod error;
pub mod graph;
pub mod signature;
pub mod spectral;

pub use compare::*;
pub use error::{Error, Result};
pub use graph::*;
pub use signature::*;
pub use spectral::*;
