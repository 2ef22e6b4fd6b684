use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Deterministic graph families.
///
/// `Wheel` is the circulant graph where node `i` is adjacent to `i ± 1` and
/// `i ± 2` (mod n), not the hub-and-spokes wheel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    Ring,
    Wheel,
    Complete,
    Empty,
    Path,
}

impl GraphFamily {
    fn min_nodes(self) -> usize {
        match self {
            GraphFamily::Ring | GraphFamily::Wheel => 3,
            _ => 1,
        }
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(GraphFamily::Ring),
            "wheel" => Ok(GraphFamily::Wheel),
            "complete" => Ok(GraphFamily::Complete),
            "empty" => Ok(GraphFamily::Empty),
            "path" => Ok(GraphFamily::Path),
            other => Err(Error::invalid(format!("unknown graph family `{other}`"))),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphFamily::Ring => "ring",
            GraphFamily::Wheel => "wheel",
            GraphFamily::Complete => "complete",
            GraphFamily::Empty => "empty",
            GraphFamily::Path => "path",
        };
        f.write_str(s)
    }
}

pub fn gen_named(kind: GraphFamily, n: usize) -> Result<Graph> {
    if n < kind.min_nodes() {
        return Err(Error::invalid(format!(
            "{kind} graph needs at least {} nodes, got {n}",
            kind.min_nodes()
        )));
    }
    let edges: Vec<(usize, usize)> = match kind {
        GraphFamily::Ring => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        GraphFamily::Wheel => (0..n)
            .flat_map(|i| [(i, (i + 1) % n), (i, (i + 2) % n)])
            .collect(),
        GraphFamily::Complete => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        GraphFamily::Empty => Vec::new(),
        GraphFamily::Path => (1..n).map(|i| (i - 1, i)).collect(),
    };
    Graph::from_edges(n, edges)
}

/// Number of failures before the next success of a Bernoulli(p) sequence.
fn geometric_skip<R: Rng + ?Sized>(rng: &mut R, log_q: f64) -> usize {
    if log_q == f64::NEG_INFINITY {
        return 0;
    }
    // 1 - u is in (0, 1], so the logarithm is finite
    let u: f64 = rng.random();
    let skip = ((1.0 - u).ln() / log_q).floor();
    if skip >= usize::MAX as f64 {
        usize::MAX
    } else {
        skip as usize
    }
}

/// Independent Bernoulli(p) selection over consecutive candidate runs.
///
/// `rows` yields `(u, start, end)`, meaning the candidate pairs
/// `(u, start) .. (u, end)`. Sampling jumps directly between successes, so
/// the cost is proportional to the number of rows plus selected pairs.
fn bernoulli_pairs<R, I>(rng: &mut R, p: f64, rows: I, out: &mut Vec<(usize, usize)>)
where
    R: Rng + ?Sized,
    I: IntoIterator<Item = (usize, usize, usize)>,
{
    if p <= 0.0 {
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut skip = geometric_skip(rng, log_q);
    for (u, start, end) in rows {
        let len = end.saturating_sub(start);
        while skip < len {
            out.push((u, start + skip));
            skip = skip
                .saturating_add(1)
                .saturating_add(geometric_skip(rng, log_q));
        }
        skip -= len;
    }
}

/// G(n, p) with `p = mean_degree / (n - 1)`.
pub fn gen_erdos_renyi(n: usize, mean_degree: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid(format!("Erdős–Rényi graph needs n ≥ 2, got {n}")));
    }
    let p = mean_degree / (n - 1) as f64;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!(
            "mean degree {mean_degree} gives edge probability {p} outside (0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_erdos_renyi(n, p, &mut rng))
}

pub(crate) fn sample_erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    bernoulli_pairs(rng, p, (0..n).map(|u| (u, u + 1, n)), &mut edges);
    Graph::from_sorted_unique(n, &edges)
}

/// Contiguous block boundaries, sizes differing by at most one.
fn block_bounds(n: usize, blocks: usize) -> Vec<usize> {
    let base = n / blocks;
    let extra = n % blocks;
    let mut bounds = Vec::with_capacity(blocks + 1);
    bounds.push(0);
    for b in 0..blocks {
        let size = base + usize::from(b < extra);
        bounds.push(bounds[b] + size);
    }
    bounds
}

pub fn gen_sbm(n: usize, blocks: usize, p_in: f64, p_out: f64, seed: u64) -> Result<Graph> {
    if blocks < 2 {
        return Err(Error::invalid(format!("block model needs at least 2 blocks, got {blocks}")));
    }
    if blocks > n {
        return Err(Error::invalid(format!("{blocks} blocks cannot be filled by {n} nodes")));
    }
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) {
        return Err(Error::invalid("block probabilities must lie in [0, 1]"));
    }
    if p_in <= p_out {
        return Err(Error::invalid(format!(
            "p_in = {p_in} must exceed p_out = {p_out} for community structure"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_block_model(n, blocks, p_in, p_out, &mut rng))
}

/// Block model sampler without the `p_in > p_out` requirement; equal
/// probabilities reproduce G(n, p).
pub(crate) fn sample_block_model<R: Rng + ?Sized>(
    n: usize,
    blocks: usize,
    p_in: f64,
    p_out: f64,
    rng: &mut R,
) -> Graph {
    let bounds = block_bounds(n, blocks);
    let block_end = |u: usize| bounds[bounds.partition_point(|&b| b <= u)];
    let mut edges = Vec::new();
    bernoulli_pairs(rng, p_in, (0..n).map(|u| (u, u + 1, block_end(u))), &mut edges);
    bernoulli_pairs(rng, p_out, (0..n).map(|u| (u, block_end(u), n)), &mut edges);
    edges.sort_unstable();
    Graph::from_sorted_unique(n, &edges)
}

/// Block probabilities for a target expected degree where a fraction
/// `mixing_ratio` of each node's expected edges leave its block.
///
/// Small blocks cannot hold the intra-block share; `p_in` is then capped
/// at 1 and the remainder moves to `p_out`, keeping the expected degree.
pub fn sbm_probabilities(
    n: usize,
    blocks: usize,
    mean_degree: f64,
    mixing_ratio: f64,
) -> Result<(f64, f64)> {
    if blocks < 2 || blocks > n {
        return Err(Error::invalid(format!("cannot split {n} nodes into {blocks} blocks")));
    }
    if !(0.0..=1.0).contains(&mixing_ratio) {
        return Err(Error::invalid(format!("mixing ratio {mixing_ratio} outside [0, 1]")));
    }
    if !(mean_degree > 0.0 && mean_degree < (n - 1) as f64) {
        return Err(Error::invalid(format!(
            "mean degree {mean_degree} must lie in (0, {})",
            n - 1
        )));
    }
    let s = n as f64 / blocks as f64;
    let inside = (s - 1.0).max(f64::MIN_POSITIVE);
    let outside = n as f64 - s;
    let mut p_in = mean_degree * (1.0 - mixing_ratio) / inside;
    let mut p_out = mean_degree * mixing_ratio / outside;
    if p_in > 1.0 {
        p_in = 1.0;
        p_out = (mean_degree - inside) / outside;
    }
    if p_out > 1.0 {
        return Err(Error::invalid("mean degree too large for the block layout"));
    }
    Ok((p_in, p_out))
}
