//! Extreme eigenvalues of the normalized Laplacian by block Krylov–Schur.
//!
//! Each connected component is handled on its own. The zero eigenvalue of a
//! component is known analytically (eigenvector `D^{1/2} 1`), so the solver
//! runs in the orthogonal complement of that vector and the zeros are added
//! back exactly. Small components are solved densely.
//!
//! For one component the solver maintains a block Krylov decomposition
//!
//! ```text
//! L V = V T + F Bᵀ
//! ```
//!
//! with `V` orthonormal (`n × k`), `T` symmetric (`k × k`), `F` an
//! orthonormal block of `p` continuation vectors and `B` the `k × p`
//! coupling. The basis is grown to `ncv` columns, then compressed onto the
//! Ritz vectors nearest both ends of the spectrum, which keeps the
//! decomposition intact (`T` becomes diagonal, `B ← Yᵀ B`). The residual
//! norm of Ritz pair `(θ, y)` is `‖Bᵀ y‖`.

use faer::linalg::matmul::matmul;
use faer::{Accum, Mat, MatMut, MatRef, Par, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::symmetric_eigenvalues;
use super::laplacian::NormalizedLaplacian;
use super::laplacian_components;
use super::spectrum::snap;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct EigenOptions {
    /// Residual tolerance relative to the operator norm.
    pub tol: f64,
    /// Number of Krylov vectors added per expansion step.
    pub block_size: usize,
    /// Scales the default iteration cap of `10 · (k_lo + k_hi) · budget`.
    pub restart_budget: usize,
    /// Overrides the iteration cap. One iteration is one restart cycle,
    /// counted across all components.
    pub max_iterations: Option<usize>,
    /// Components with at most this many nodes are solved densely.
    pub dense_component_limit: usize,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-8,
            block_size: 4,
            restart_budget: 50,
            max_iterations: None,
            dense_component_limit: 256,
            seed: 0x6c61_6e63,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeEigenvalues {
    /// `k_lo` smallest eigenvalues, ascending, known zeros included.
    pub lo: Vec<f64>,
    /// `k_hi` largest eigenvalues, ascending.
    pub hi: Vec<f64>,
    /// Restart cycles across all iterative solves.
    pub iterations: usize,
    /// Operator applications across all iterative solves.
    pub matvecs: usize,
    /// Largest relative residual among the iteratively computed values.
    pub worst_residual: f64,
}

/// Computes the `k_lo` smallest and `k_hi` largest eigenvalues of `lap`.
///
/// `component_count` must equal the number of connected components of the
/// graph; that many exact zeros are returned without iterating.
pub fn extreme_eigenvalues(
    lap: &NormalizedLaplacian,
    k_lo: usize,
    k_hi: usize,
    component_count: usize,
    opts: &EigenOptions,
) -> Result<ExtremeEigenvalues> {
    let n = lap.dim();
    if k_lo + k_hi > n {
        return Err(Error::invalid(format!(
            "requested {k_lo} + {k_hi} eigenvalues of a {n}-node graph"
        )));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("solver tolerance must be positive"));
    }
    if opts.block_size == 0 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    let labels = laplacian_components(lap);
    if labels.count != component_count {
        return Err(Error::invalid(format!(
            "graph has {} connected components, caller passed {component_count}",
            labels.count
        )));
    }
    let c = component_count;
    let max_iterations = opts
        .max_iterations
        .unwrap_or(10 * (k_lo + k_hi).max(1) * opts.restart_budget.max(1));

    let mut lo_pool = vec![0.0; k_lo.min(c)];
    let mut hi_pool = vec![0.0; k_hi.min(c)];
    let need_lo = k_lo.saturating_sub(c);
    let mut iterations = 0;
    let mut matvecs = 0;
    let mut worst_residual: f64 = 0.0;

    for (index, nodes) in labels.members().into_iter().enumerate() {
        if nodes.len() < 2 {
            continue;
        }
        let dim = nodes.len() - 1;
        let nev_lo = need_lo.min(dim);
        let nev_hi = k_hi.min(dim);
        if nev_lo + nev_hi == 0 {
            continue;
        }
        let op = ComponentOperator::new(lap, &nodes);
        let p = opts.block_size;
        let ncv = basis_capacity(nev_lo + nev_hi, p);
        let dense = nev_lo + nev_hi >= dim
            || nodes.len() <= opts.dense_component_limit
            || dim < ncv + p;
        if dense {
            let mut ev = symmetric_eigenvalues(&op.to_dense(), op.dim())?;
            ev.remove(0);
            lo_pool.extend(ev[..nev_lo].iter().map(|&x| snap(x)));
            hi_pool.extend(ev[dim - nev_hi..].iter().map(|&x| snap(x)));
            continue;
        }
        let budget = max_iterations.saturating_sub(iterations);
        let seed = opts.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut solver = KrylovSchur::new(&op, p, ncv, seed);
        let out = solver.run(nev_lo, nev_hi, opts.tol, budget);
        iterations += solver.restarts;
        matvecs += solver.matvecs;
        let out = out.map_err(|e| match e {
            Error::Convergence { worst_residual, .. } => Error::Convergence {
                iterations,
                worst_residual,
            },
            other => other,
        })?;
        worst_residual = worst_residual.max(out.worst_residual);
        lo_pool.extend(out.lo);
        hi_pool.extend(out.hi);
    }

    lo_pool.sort_by(f64::total_cmp);
    hi_pool.sort_by(f64::total_cmp);
    lo_pool.truncate(k_lo);
    let hi = hi_pool.split_off(hi_pool.len() - k_hi);
    Ok(ExtremeEigenvalues {
        lo: lo_pool,
        hi,
        iterations,
        matvecs,
        worst_residual,
    })
}

const ORTHO_CHUNK: usize = 256;
/// Relative size below which the second Gram–Schmidt correction is dropped.
const REORTH_SKIP: f64 = 1e-12;

fn basis_capacity(want: usize, p: usize) -> usize {
    let ncv = (want * 8).div_ceil(5).max(want + 8 * p);
    ncv.div_ceil(p) * p
}

/// Normalized Laplacian restricted to one connected component with at
/// least two nodes, so every diagonal entry is 1.
struct ComponentOperator {
    offsets: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
    /// Unit vector spanning the kernel, proportional to `sqrt(degree)`.
    kernel: Vec<f64>,
}

impl ComponentOperator {
    fn new(lap: &NormalizedLaplacian, nodes: &[usize]) -> Self {
        let mut local = std::collections::HashMap::with_capacity(nodes.len());
        for (i, &u) in nodes.iter().enumerate() {
            local.insert(u, i);
        }
        let mut offsets = Vec::with_capacity(nodes.len() + 1);
        offsets.push(0);
        let mut cols = Vec::new();
        let mut values = Vec::new();
        let mut kernel = Vec::with_capacity(nodes.len());
        for &u in nodes {
            for (v, x) in lap.row(u) {
                cols.push(local[&v]);
                values.push(x);
            }
            offsets.push(cols.len());
            kernel.push((lap.row_len(u) as f64).sqrt());
        }
        let norm = kernel.iter().map(|x| x * x).sum::<f64>().sqrt();
        kernel.iter_mut().for_each(|x| *x /= norm);
        ComponentOperator {
            offsets,
            cols,
            values,
            kernel,
        }
    }

    fn dim(&self) -> usize {
        self.kernel.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let r = self.offsets[i]..self.offsets[i + 1];
            let mut acc = x[i];
            for (&c, &v) in self.cols[r.clone()].iter().zip(&self.values[r]) {
                acc += v * x[c];
            }
            *yi = acc;
        }
    }

    fn deflate(&self, x: &mut [f64]) {
        let d = dot(&self.kernel, x);
        axpy(-d, &self.kernel, x);
    }

    fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            out[i * n + i] = 1.0;
            for k in self.offsets[i]..self.offsets[i + 1] {
                out[self.cols[k] * n + i] = self.values[k];
            }
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

struct RitzSolution {
    lo: Vec<f64>,
    hi: Vec<f64>,
    worst_residual: f64,
}

struct KrylovSchur<'a> {
    op: &'a ComponentOperator,
    n: usize,
    p: usize,
    ncv: usize,
    /// Columns `0..k` hold `V`, columns `k..k+p` hold `F`.
    basis: Vec<f64>,
    /// `ncv × ncv`, column-major.
    t: Vec<f64>,
    /// `ncv × p`, column-major.
    b: Vec<f64>,
    k: usize,
    rng: ChaCha8Rng,
    restarts: usize,
    matvecs: usize,
}

impl<'a> KrylovSchur<'a> {
    fn new(op: &'a ComponentOperator, p: usize, ncv: usize, seed: u64) -> Self {
        let n = op.dim();
        KrylovSchur {
            op,
            n,
            p,
            ncv,
            basis: vec![0.0; n * (ncv + p)],
            t: vec![0.0; ncv * ncv],
            b: vec![0.0; ncv * p],
            k: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            restarts: 0,
            matvecs: 0,
        }
    }

    fn col(&self, j: usize) -> &[f64] {
        &self.basis[j * self.n..(j + 1) * self.n]
    }

    fn basis_ref(&self, cols: usize) -> MatRef<'_, f64> {
        MatRef::from_column_major_slice(&self.basis[..self.n * cols], self.n, cols)
    }

    /// Two passes of block classical Gram–Schmidt of `w` against the first
    /// `cols` basis columns; returns the accumulated coefficients.
    ///
    /// The first subtraction and the second projection are fused over row
    /// chunks. The second correction is applied only when it is not
    /// negligible, so the basis is usually streamed twice instead of four
    /// times. Skipping the second projection altogether lets orthogonality
    /// decay geometrically.
    fn orthogonalize(&self, cols: usize, w: &mut [f64], width: usize) -> Mat<f64> {
        let n = self.n;
        let mut h = Mat::<f64>::zeros(cols, width);
        if cols == 0 {
            return h;
        }
        let v = self.basis_ref(cols);
        matmul(
            h.as_mut(),
            Accum::Replace,
            v.transpose(),
            MatRef::from_column_major_slice(w, n, width),
            1.0,
            Par::Seq,
        );
        let mut second = Mat::<f64>::zeros(cols, width);
        let mut wm = MatMut::from_column_major_slice_mut(w, n, width);
        let mut start = 0;
        while start < n {
            let len = ORTHO_CHUNK.min(n - start);
            let vc = v.subrows(start, len);
            let mut wc = wm.as_mut().subrows_mut(start, len);
            matmul(wc.as_mut(), Accum::Add, vc, h.as_ref(), -1.0, Par::Seq);
            matmul(second.as_mut(), Accum::Add, vc.transpose(), wc.as_ref(), 1.0, Par::Seq);
            start += len;
        }
        let smallest = (0..width)
            .map(|c| norm(&w[c * n..(c + 1) * n]))
            .fold(f64::INFINITY, f64::min);
        if second.norm_max() > REORTH_SKIP * smallest {
            let wm = MatMut::from_column_major_slice_mut(w, n, width);
            matmul(wm, Accum::Add, v, second.as_ref(), -1.0, Par::Seq);
            h += &second;
        }
        h
    }

    /// Orthonormalizes the `p` columns of `w` against the first `cols`
    /// basis columns and each other, writing them to columns
    /// `cols..cols+p`. Returns the upper-triangular factor. Columns that
    /// vanish are replaced by random directions with a zero row in `R`.
    fn orthonormalize_block(
        &mut self,
        cols: usize,
        w: &mut [f64],
        reference: &[f64],
    ) -> Result<Mat<f64>> {
        let (n, p) = (self.n, self.p);
        let mut r = Mat::<f64>::zeros(p, p);
        for j in 0..p {
            let (done, rest) = w.split_at_mut(j * n);
            let col = &mut rest[..n];
            // rounding reintroduces the kernel, which the low end would lock onto
            self.op.deflate(col);
            for _ in 0..2 {
                for i in 0..j {
                    let q = &done[i * n..(i + 1) * n];
                    let c = dot(q, col);
                    axpy(-c, q, col);
                    r[(i, j)] += c;
                }
            }
            let nrm = norm(col);
            if nrm > 1e-10 * reference[j].max(f64::MIN_POSITIVE) {
                r[(j, j)] = nrm;
                col.iter_mut().for_each(|x| *x /= nrm);
            } else {
                for i in 0..j {
                    r[(i, j)] = 0.0;
                }
                self.random_direction(cols, done, col)?;
            }
        }
        self.basis[cols * n..(cols + p) * n].copy_from_slice(&w[..p * n]);
        Ok(r)
    }

    /// Unit vector orthogonal to the kernel, the first `cols` basis columns
    /// and the already accepted block columns in `done`.
    fn random_direction(&mut self, cols: usize, done: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.n;
        for _attempt in 0..3 {
            out.iter_mut().for_each(|x| *x = self.rng.random::<f64>() - 0.5);
            for _ in 0..2 {
                self.op.deflate(out);
                for j in 0..cols {
                    let c = dot(self.col(j), out);
                    axpy(-c, &self.basis[j * n..(j + 1) * n], out);
                }
                for q in done.chunks_exact(n) {
                    let c = dot(q, out);
                    axpy(-c, q, out);
                }
            }
            let nrm = norm(out);
            if nrm > 1e-8 {
                out.iter_mut().for_each(|x| *x /= nrm);
                return Ok(());
            }
        }
        Err(Error::Eigensolver("Krylov space exhausted".into()))
    }

    fn start(&mut self) -> Result<()> {
        let (n, p) = (self.n, self.p);
        let mut w: Vec<f64> = (0..n * p).map(|_| self.rng.random::<f64>() - 0.5).collect();
        for col in w.chunks_exact_mut(n) {
            self.op.deflate(col);
        }
        let reference: Vec<f64> = w.chunks_exact(n).map(norm).collect();
        self.orthonormalize_block(0, &mut w, &reference)?;
        self.k = 0;
        Ok(())
    }

    /// Appends the continuation block to `V` and computes the next one.
    fn expand(&mut self) -> Result<()> {
        let (n, p, k, ncv) = (self.n, self.p, self.k, self.ncv);
        let mut w = vec![0.0; n * p];
        for j in 0..p {
            let (src, dst) = (&self.basis[(k + j) * n..(k + j + 1) * n], &mut w[j * n..(j + 1) * n]);
            self.op.apply(src, dst);
            self.op.deflate(dst);
        }
        self.matvecs += p;
        let reference: Vec<f64> = w.chunks_exact(n).map(norm).collect();
        let h = self.orthogonalize(k + p, &mut w, p);

        for a in 0..p {
            for r in 0..k {
                let coupling = self.b[a * ncv + r];
                self.t[(k + a) * ncv + r] = coupling;
                self.t[r * ncv + k + a] = coupling;
            }
            for c in 0..p {
                self.t[(k + c) * ncv + k + a] = 0.5 * (h[(k + a, c)] + h[(k + c, a)]);
            }
        }
        let r = self.orthonormalize_block(k + p, &mut w, &reference)?;
        self.b.iter_mut().for_each(|x| *x = 0.0);
        for a in 0..p {
            for c in 0..p {
                self.b[c * ncv + k + a] = r[(c, a)];
            }
        }
        self.k = k + p;
        Ok(())
    }

    fn run(&mut self, nev_lo: usize, nev_hi: usize, tol: f64, max_iterations: usize) -> Result<RitzSolution> {
        let want = nev_lo + nev_hi;
        let keep = (want + (self.ncv - want) / 4).min(self.ncv - self.p);
        let extra = keep - want;
        let extra_lo = match (nev_lo, nev_hi) {
            (_, 0) => extra,
            (0, _) => 0,
            _ => extra / 2,
        };
        let keep_lo = nev_lo + extra_lo;
        let keep_hi = keep - keep_lo;

        self.start()?;
        loop {
            while self.k + self.p <= self.ncv {
                self.expand()?;
            }
            let k = self.k;
            let ncv = self.ncv;
            let mut t = Mat::<f64>::zeros(k, k);
            for j in 0..k {
                for i in 0..k {
                    t[(i, j)] = self.t[j * ncv + i];
                }
            }
            let eig = t
                .self_adjoint_eigen(Side::Lower)
                .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
            let theta_raw = eig.S().column_vector();
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&a, &b| theta_raw[a].total_cmp(&theta_raw[b]));
            let theta: Vec<f64> = order.iter().map(|&i| theta_raw[i]).collect();
            let u = eig.U();

            let b = MatRef::from_column_major_slice_with_stride(&self.b, k, self.p, ncv);
            let mut bty = Mat::<f64>::zeros(self.p, k);
            matmul(bty.as_mut(), Accum::Replace, b.transpose(), u, 1.0, Par::Seq);
            let residual = |sorted: usize| {
                let col = order[sorted];
                (0..self.p).map(|c| bty[(c, col)].powi(2)).sum::<f64>().sqrt()
            };
            let anorm = theta[0].abs().max(theta[k - 1].abs()).max(f64::MIN_POSITIVE);
            let wanted = (0..nev_lo).chain(k - nev_hi..k);
            let worst = wanted.map(|i| residual(i) / anorm).fold(0.0, f64::max);
            if worst <= tol {
                return Ok(RitzSolution {
                    lo: theta[..nev_lo].iter().map(|&x| snap(x)).collect(),
                    hi: theta[k - nev_hi..].iter().map(|&x| snap(x)).collect(),
                    worst_residual: worst,
                });
            }
            if self.restarts >= max_iterations {
                return Err(Error::Convergence {
                    iterations: self.restarts,
                    worst_residual: worst,
                });
            }

            // compress onto the Ritz vectors nearest both ends
            let selected: Vec<usize> = (0..keep_lo)
                .chain(k - keep_hi..k)
                .map(|i| order[i])
                .collect();
            let mut y = Mat::<f64>::zeros(k, keep);
            for (dst, &src) in selected.iter().enumerate() {
                for r in 0..k {
                    y[(r, dst)] = u[(r, src)];
                }
            }
            let mut rotated = Mat::<f64>::zeros(self.n, keep);
            matmul(rotated.as_mut(), Accum::Replace, self.basis_ref(k), y.as_ref(), 1.0, Par::Seq);
            let n = self.n;
            self.basis.copy_within(k * n..(k + self.p) * n, keep * n);
            for j in 0..keep {
                self.basis[j * n..(j + 1) * n].copy_from_slice(rotated.col_as_slice(j));
            }
            let mut new_b = Mat::<f64>::zeros(keep, self.p);
            matmul(new_b.as_mut(), Accum::Replace, y.transpose(), b, 1.0, Par::Seq);
            self.t.iter_mut().for_each(|x| *x = 0.0);
            self.b.iter_mut().for_each(|x| *x = 0.0);
            for (dst, &src) in selected.iter().enumerate() {
                self.t[dst * ncv + dst] = theta_raw[src];
                for c in 0..self.p {
                    self.b[c * ncv + dst] = new_b[(dst, c)];
                }
            }
            self.k = keep;
            self.restarts += 1;
        }
    }
}
