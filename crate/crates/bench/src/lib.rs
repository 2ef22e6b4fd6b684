//! Fixtures shared by the criterion benchmarks in `benches/`.

use netlsd::{compute_signature, gen_erdos_renyi, Graph, Kernel, Normalization, Signature, SpectrumOptions, Strategy, TimeGrid};

/// Erdős–Rényi graph with mean degree 10, seeded by its size.
pub fn er(n: usize) -> Graph {
    gen_erdos_renyi(n, 10.0, n as u64).expect("valid size")
}

/// Full-spectrum heat signatures of `count` small random graphs.
pub fn signatures(count: usize, n: usize) -> Vec<(String, Signature)> {
    let grid = TimeGrid::heat_default();
    let opts = SpectrumOptions::default();
    (0..count)
        .map(|i| {
            let g = gen_erdos_renyi(n, 4.0, i as u64).expect("valid size");
            let sig = compute_signature(&g, Kernel::Heat, &grid, Normalization::Empty, Strategy::Full, &opts)
                .expect("small graphs embed");
            (format!("g{i:05}"), sig)
        })
        .collect()
}
