//! Normalized Laplacian and its eigenvalues.
//!
//! Small graphs get a dense eigendecomposition ([`full_spectrum`]). Large
//! graphs get their two spectrum ends from [`extreme_eigenvalues`], with the
//! interior filled in by [`approximate_spectrum`].

mod dense;
mod lanczos;
mod laplacian;
mod spectrum;

use std::collections::VecDeque;

pub use dense::{full_spectrum, DEFAULT_DENSE_THRESHOLD};
pub use lanczos::{extreme_eigenvalues, EigenOptions, ExtremeEigenvalues};
pub use laplacian::{build_laplacian, NormalizedLaplacian};
pub use spectrum::{approximate_spectrum, Provenance, Spectrum, SNAP_EPS};

use crate::graph::ComponentLabeling;

/// Connected components read off the sparsity pattern of `lap`.
pub(crate) fn laplacian_components(lap: &NormalizedLaplacian) -> ComponentLabeling {
    const UNSEEN: usize = usize::MAX;
    let n = lap.dim();
    let mut labels = vec![UNSEEN; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if labels[start] != UNSEEN {
            continue;
        }
        labels[start] = count;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for (v, _) in lap.row(u) {
                if labels[v] == UNSEEN {
                    labels[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    ComponentLabeling { labels, count }
}
