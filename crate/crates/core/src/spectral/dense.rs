use faer::{MatRef, Side};

use super::laplacian::NormalizedLaplacian;
use super::spectrum::{Provenance, Spectrum};
use super::laplacian_components;
use crate::error::{Error, Result};

/// Default size limit for dense eigendecomposition.
pub const DEFAULT_DENSE_THRESHOLD: usize = 4096;

/// Values further than this outside `[0, 2]` indicate a broken solve.
const CLAMP_EPS: f64 = 1e-8;

/// Ascending eigenvalues of a symmetric matrix given in column-major order.
pub(crate) fn symmetric_eigenvalues(data: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = MatRef::from_column_major_slice(data, n, n);
    let mut ev = m
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// All eigenvalues of `lap` by dense symmetric eigendecomposition.
///
/// Fails with [`Error::TooLargeForDense`] when the dimension exceeds
/// `threshold`.
pub fn full_spectrum(lap: &NormalizedLaplacian, threshold: usize) -> Result<Spectrum> {
    let n = lap.dim();
    if n > threshold {
        return Err(Error::TooLargeForDense { n, threshold });
    }
    let mut ev = symmetric_eigenvalues(&lap.to_dense(), n)?;
    if let Some(&bad) = ev.iter().find(|&&x| !(-CLAMP_EPS..=2.0 + CLAMP_EPS).contains(&x)) {
        return Err(Error::Eigensolver(format!("eigenvalue {bad} outside [0, 2]")));
    }
    let c = laplacian_components(lap).count;
    for x in ev.iter_mut().take(c) {
        *x = 0.0;
    }
    Spectrum::from_eigenvalues(ev, Provenance::Full, c)
}
