use crate::error::{Error, Result};

/// Eigenvalues within this distance of 0 or 2 are snapped onto the bound.
pub const SNAP_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Full,
    /// `k_lo` smallest and `k_hi` largest eigenvalues were computed; the
    /// `interpolated` values in between were filled in linearly.
    Approximated {
        k_lo: usize,
        k_hi: usize,
        interpolated: usize,
    },
}

/// Ascending normalized-Laplacian eigenvalues, all in `[0, 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    provenance: Provenance,
    component_count: usize,
}

pub(crate) fn snap(x: f64) -> f64 {
    let x = x.clamp(0.0, 2.0);
    if x < SNAP_EPS {
        0.0
    } else if x > 2.0 - SNAP_EPS {
        2.0
    } else {
        x
    }
}

impl Spectrum {
    /// Wraps precomputed eigenvalues, e.g. from a closed form. Values are
    /// sorted and snapped into `[0, 2]`.
    pub fn from_eigenvalues(
        mut eigenvalues: Vec<f64>,
        provenance: Provenance,
        component_count: usize,
    ) -> Result<Self> {
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("eigenvalues must be finite"));
        }
        for x in &mut eigenvalues {
            *x = snap(*x);
        }
        eigenvalues.sort_by(f64::total_cmp);
        Ok(Spectrum {
            eigenvalues,
            provenance,
            component_count,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn with_component_count(mut self, count: usize) -> Self {
        self.component_count = count;
        self
    }
}

/// Fills the interior of a spectrum from its two computed ends.
///
/// The `n - |lo| - |hi|` missing values are the interior points of an evenly
/// spaced grid running from `max(lo)` to `min(hi)`. An empty `lo` starts the
/// grid at 0 and an empty `hi` ends it at 2.
pub fn approximate_spectrum(lo: &[f64], hi: &[f64], n: usize) -> Result<Spectrum> {
    let known = lo.len() + hi.len();
    if known > n {
        return Err(Error::invalid(format!(
            "{known} computed eigenvalues exceed the spectrum size {n}"
        )));
    }
    let ascending = |v: &[f64]| v.windows(2).all(|w| w[0] <= w[1]);
    if !ascending(lo) || !ascending(hi) {
        return Err(Error::invalid("spectrum ends must be sorted ascending"));
    }
    let start = lo.last().copied().unwrap_or(0.0);
    let end = hi.first().copied().unwrap_or(2.0);
    if start > end {
        return Err(Error::InconsistentEnds {
            lo_max: start,
            hi_min: end,
        });
    }
    let interior = n - known;
    let step = (end - start) / (interior + 1) as f64;
    let mut values = Vec::with_capacity(n);
    values.extend_from_slice(lo);
    values.extend((1..=interior).map(|i| start + step * i as f64));
    values.extend_from_slice(hi);
    let zeros = lo.iter().filter(|&&x| snap(x) == 0.0).count();
    Spectrum::from_eigenvalues(
        values,
        Provenance::Approximated {
            k_lo: lo.len(),
            k_hi: hi.len(),
            interpolated: interior,
        },
        zeros,
    )
}
