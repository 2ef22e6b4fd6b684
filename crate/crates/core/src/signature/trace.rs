use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spectral::{NormalizedLaplacian, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Heat,
    Wave,
}

/// Reference graph whose trace divides a signature pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    None,
    Empty,
    Complete,
}

/// `Σ exp(-t λ)` over the spectrum.
pub fn heat_trace(spectrum: &Spectrum, t: f64) -> f64 {
    spectrum.eigenvalues().iter().map(|&l| (-t * l).exp()).sum()
}

/// Real part of `Σ exp(-i t λ)`, i.e. `Σ cos(t λ)`.
pub fn wave_trace(spectrum: &Spectrum, t: f64) -> f64 {
    spectrum.eigenvalues().iter().map(|&l| (t * l).cos()).sum()
}

/// Second-order expansion `n - t tr(L) + t²/2 tr(L²)` of the heat trace.
///
/// Accurate for `t` up to about 1; beyond that the quadratic term dominates.
pub fn taylor_heat_trace(lap: &NormalizedLaplacian, t: f64) -> f64 {
    lap.dim() as f64 - t * lap.trace() + 0.5 * t * t * lap.trace_of_square()
}

/// Trace of the `n`-node empty or complete graph.
///
/// The empty graph has `n` zero eigenvalues. The complete graph has one zero
/// and `n - 1` copies of `n / (n - 1)`; a single node degenerates to 1.
pub fn normalization_trace(kind: Normalization, kernel: Kernel, n: usize, t: f64) -> f64 {
    let nf = n as f64;
    match kind {
        Normalization::None => 1.0,
        Normalization::Empty => nf,
        Normalization::Complete if n <= 1 => 1.0,
        Normalization::Complete => {
            let lambda = nf / (nf - 1.0);
            let term = match kernel {
                Kernel::Heat => (-t * lambda).exp(),
                Kernel::Wave => (t * lambda).cos(),
            };
            1.0 + (nf - 1.0) * term
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Heat => "heat",
            Kernel::Wave => "wave",
        })
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heat" => Ok(Kernel::Heat),
            "wave" => Ok(Kernel::Wave),
            other => Err(Error::invalid(format!("unknown kernel `{other}`"))),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::None => "none",
            Normalization::Empty => "empty",
            Normalization::Complete => "complete",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Normalization::None),
            "empty" => Ok(Normalization::Empty),
            "complete" => Ok(Normalization::Complete),
            other => Err(Error::invalid(format!("unknown normalization `{other}`"))),
        }
    }
}
