use crate::graph::Graph;

/// Sparse symmetric normalized Laplacian `I - D^{-1/2} A D^{-1/2}`.
///
/// Isolated nodes get a zero row, so their diagonal entry is 0 instead of 1.
/// Off-diagonal entries are kept in CSR form with sorted column indices.
#[derive(Debug, Clone)]
pub struct NormalizedLaplacian {
    diag: Vec<f64>,
    offsets: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
    trace: f64,
    trace_of_square: f64,
}

impl NormalizedLaplacian {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let inv_sqrt: Vec<f64> = g
            .degrees()
            .into_iter()
            .map(|d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
            .collect();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut cols = Vec::with_capacity(2 * g.edge_count());
        let mut values = Vec::with_capacity(2 * g.edge_count());
        let mut diag = vec![0.0; n];
        for u in 0..n {
            if g.degree(u) > 0 {
                diag[u] = 1.0;
            }
            for &v in g.neighbors(u) {
                cols.push(v);
                values.push(-inv_sqrt[u] * inv_sqrt[v]);
            }
            offsets.push(cols.len());
        }
        let trace = diag.iter().sum();
        let trace_of_square = diag.iter().map(|d| d * d).sum::<f64>()
            + values.iter().map(|v| v * v).sum::<f64>();
        NormalizedLaplacian {
            diag,
            offsets,
            cols,
            values,
            trace,
            trace_of_square,
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Equals the number of non-isolated nodes.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// Sum of squared entries, which is `tr(L²)` for a symmetric matrix.
    pub fn trace_of_square(&self) -> f64 {
        self.trace_of_square
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    /// Off-diagonal entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    /// Number of off-diagonal entries in row `i`, i.e. the node degree.
    pub fn row_len(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        let r = self.offsets[i]..self.offsets[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => 0.0,
        }
    }

    /// `y = L x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        for (i, yi) in y.iter_mut().enumerate() {
            let r = self.offsets[i]..self.offsets[i + 1];
            let mut acc = self.diag[i] * x[i];
            for (&c, &v) in self.cols[r.clone()].iter().zip(&self.values[r]) {
                acc += v * x[c];
            }
            *yi = acc;
        }
    }

    /// Column-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            out[i * n + i] = self.diag[i];
            for (j, v) in self.row(i) {
                out[j * n + i] = v;
            }
        }
        out
    }
}

pub fn build_laplacian(g: &Graph) -> NormalizedLaplacian {
    NormalizedLaplacian::new(g)
}
