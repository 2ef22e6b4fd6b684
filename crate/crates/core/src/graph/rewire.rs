use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Degree-preserving randomization by double-edge swaps.
///
/// One sweep is `m` attempted swaps. An attempt picks two edges `(a, b)`
/// and `(c, d)` uniformly, with the second in random orientation, and
/// replaces them with `(a, d)`, `(c, b)`. Attempts that would create a
/// self-loop or a parallel edge are rejected. Graphs with fewer
/// than two edges are returned as-is.
pub fn rewire_degree_preserving(g: &Graph, sweeps: usize, seed: u64) -> Result<Graph> {
    if sweeps == 0 {
        return Err(Error::invalid("rewiring needs at least one sweep"));
    }
    let m = g.edge_count();
    if m < 2 {
        return Ok(g.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    for _ in 0..sweeps.saturating_mul(m) {
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = if rng.random::<bool>() { edges[j] } else { (edges[j].1, edges[j].0) };
        if a == d || c == b {
            continue;
        }
        let (e1, e2) = (key(a, d), key(c, b));
        if e1 == e2 || present.contains(&e1) || present.contains(&e2) {
            continue;
        }
        present.remove(&key(a, b));
        present.remove(&key(c, d));
        present.insert(e1);
        present.insert(e2);
        edges[i] = (a, d);
        edges[j] = (c, b);
    }
    Graph::from_edges(g.node_count(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::assert_well_formed;
    use crate::graph::{gen_erdos_renyi, gen_named, GraphFamily};

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn preserves_degree_sequence() {
        for seed in 0..10 {
            let g = gen_erdos_renyi(200, 6.0, seed).unwrap();
            let r = rewire_degree_preserving(&g, 3, seed + 100).unwrap();
            assert_eq!(g.degrees(), r.degrees());
            assert_eq!(g.edge_count(), r.edge_count());
            assert_well_formed(&r);
        }
    }

    #[test]
    fn triangle_has_no_valid_swap() {
        let tri = gen_named(GraphFamily::Ring, 3).unwrap();
        for seed in 0..20 {
            assert_eq!(rewire_degree_preserving(&tri, 10, seed).unwrap(), tri);
        }
    }

    #[test]
    fn ring_is_almost_always_changed() {
        let ring = gen_named(GraphFamily::Ring, 100).unwrap();
        let unchanged = (0..100)
            .filter(|&seed| rewire_degree_preserving(&ring, 10, seed).unwrap() == ring)
            .count();
        assert!(unchanged <= 1, "{unchanged} of 100 runs left the ring intact");
        let r = rewire_degree_preserving(&ring, 10, 0).unwrap();
        assert_eq!(sorted_degrees(&r), sorted_degrees(&ring));
    }

    #[test]
    fn seeded() {
        let g = gen_erdos_renyi(100, 4.0, 1).unwrap();
        assert_eq!(
            rewire_degree_preserving(&g, 2, 9).unwrap(),
            rewire_degree_preserving(&g, 2, 9).unwrap()
        );
    }

    #[test]
    fn argument_checks() {
        let g = gen_named(GraphFamily::Path, 2).unwrap();
        assert_eq!(rewire_degree_preserving(&g, 1, 0).unwrap(), g);
        let tri = gen_named(GraphFamily::Ring, 3).unwrap();
        assert!(rewire_degree_preserving(&tri, 0, 0).is_err());
    }
}
