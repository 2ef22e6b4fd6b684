use std::f64::consts::PI;

use super::grid::{GridSpec, TimeGrid};
use super::trace::{heat_trace, normalization_trace, taylor_heat_trace, wave_trace, Kernel, Normalization};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::spectral::{
    approximate_spectrum, build_laplacian, extreme_eigenvalues, full_spectrum, EigenOptions,
    NormalizedLaplacian, Spectrum, DEFAULT_DENSE_THRESHOLD,
};

/// Default number of eigenvalues computed for the approximate spectrum.
pub const DEFAULT_APPROX_K: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Dense eigendecomposition.
    Full,
    /// `k_lo` smallest and `k_hi` largest eigenvalues, interior interpolated.
    Approx { k_lo: usize, k_hi: usize },
    /// Second-order expansion of the heat trace; heat kernel only.
    Taylor,
    /// `Full` up to the dense threshold, `Approx` with an even split above.
    Auto,
}

impl Strategy {
    /// `k` eigenvalues split evenly between both ends.
    pub fn approx(k: usize) -> Self {
        Strategy::Approx {
            k_lo: k / 2,
            k_hi: k - k / 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub dense_threshold: usize,
    /// Total eigenvalue count used by `Auto` above the dense threshold.
    pub auto_k: usize,
    pub eigen: EigenOptions,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            dense_threshold: DEFAULT_DENSE_THRESHOLD,
            auto_k: DEFAULT_APPROX_K,
            eigen: EigenOptions::default(),
        }
    }
}

/// Everything two signatures must share to be comparable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureMeta {
    pub kernel: Kernel,
    pub normalization: Normalization,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    pub meta: SignatureMeta,
    pub values: Vec<f64>,
    /// Node count of the source graph, when known.
    pub nodes: Option<usize>,
}

impl Signature {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Spectrum of `g` by the given strategy. `Taylor` has no spectrum and is
/// rejected.
pub fn compute_spectrum(g: &Graph, strategy: Strategy, opts: &SpectrumOptions) -> Result<Spectrum> {
    let lap = build_laplacian(g);
    spectrum_of_laplacian(g, &lap, strategy, opts)
}

fn spectrum_of_laplacian(
    g: &Graph,
    lap: &NormalizedLaplacian,
    strategy: Strategy,
    opts: &SpectrumOptions,
) -> Result<Spectrum> {
    let n = g.node_count();
    let (k_lo, k_hi) = match strategy {
        Strategy::Full => return full_spectrum(lap, opts.dense_threshold),
        Strategy::Taylor => {
            return Err(Error::Unsupported("the Taylor strategy does not produce a spectrum".into()))
        }
        Strategy::Auto if n <= opts.dense_threshold => return full_spectrum(lap, opts.dense_threshold),
        Strategy::Auto => match Strategy::approx(opts.auto_k) {
            Strategy::Approx { k_lo, k_hi } => (k_lo, k_hi),
            _ => unreachable!(),
        },
        Strategy::Approx { k_lo, k_hi } => (k_lo, k_hi),
    };
    if k_lo + k_hi >= n {
        return full_spectrum(lap, n.max(opts.dense_threshold));
    }
    let c = connected_components(g).count;
    let ends = extreme_eigenvalues(lap, k_lo, k_hi, c, &opts.eigen)?;
    Ok(approximate_spectrum(&ends.lo, &ends.hi, n)?.with_component_count(c))
}

pub(crate) fn check_grid(kernel: Kernel, grid: &TimeGrid) -> Result<()> {
    if kernel == Kernel::Wave && grid.values().iter().any(|&t| !(0.0..2.0 * PI).contains(&t)) {
        return Err(Error::invalid("wave kernel scales must lie in [0, 2π)"));
    }
    Ok(())
}

/// Samples the trace of `spectrum` on `grid`, divided pointwise by the
/// reference trace when a normalization is requested.
pub fn signature_from_spectrum(
    spectrum: &Spectrum,
    kernel: Kernel,
    grid: &TimeGrid,
    normalization: Normalization,
) -> Result<Signature> {
    check_grid(kernel, grid)?;
    let n = spectrum.len();
    let values = grid
        .values()
        .iter()
        .map(|&t| {
            let raw = match kernel {
                Kernel::Heat => heat_trace(spectrum, t),
                Kernel::Wave => wave_trace(spectrum, t),
            };
            normalize(raw, normalization, kernel, n, t)
        })
        .collect();
    Ok(Signature {
        meta: SignatureMeta {
            kernel,
            normalization,
            grid: grid.spec(),
        },
        values,
        nodes: Some(n),
    })
}

fn normalize(raw: f64, normalization: Normalization, kernel: Kernel, n: usize, t: f64) -> f64 {
    match normalization {
        Normalization::None => raw,
        kind => raw / normalization_trace(kind, kernel, n, t),
    }
}

pub fn compute_signature(
    g: &Graph,
    kernel: Kernel,
    grid: &TimeGrid,
    normalization: Normalization,
    strategy: Strategy,
    opts: &SpectrumOptions,
) -> Result<Signature> {
    check_grid(kernel, grid)?;
    let lap = build_laplacian(g);
    if strategy == Strategy::Taylor {
        if kernel != Kernel::Heat {
            return Err(Error::Unsupported("the Taylor strategy supports the heat kernel only".into()));
        }
        let n = g.node_count();
        let values = grid
            .values()
            .iter()
            .map(|&t| normalize(taylor_heat_trace(&lap, t), normalization, kernel, n, t))
            .collect();
        return Ok(Signature {
            meta: SignatureMeta {
                kernel,
                normalization,
                grid: grid.spec(),
            },
            values,
            nodes: Some(n),
        });
    }
    let spectrum = spectrum_of_laplacian(g, &lap, strategy, opts)?;
    signature_from_spectrum(&spectrum, kernel, grid, normalization)
}
