use crate::error::{Error, Result};
use crate::signature::{Signature, SignatureMeta};

pub(crate) fn check_compatible(a: &SignatureMeta, b: &SignatureMeta) -> Result<()> {
    if a.kernel != b.kernel {
        return Err(Error::Incompatible(format!("kernel {} vs {}", a.kernel, b.kernel)));
    }
    if a.normalization != b.normalization {
        return Err(Error::Incompatible(format!(
            "normalization {} vs {}",
            a.normalization, b.normalization
        )));
    }
    if a.grid != b.grid {
        return Err(Error::Incompatible(format!("grid {} vs {}", a.grid, b.grid)));
    }
    Ok(())
}

fn check_pair(a: &Signature, b: &Signature) -> Result<()> {
    check_compatible(&a.meta, &b.meta)?;
    if a.values.len() != b.values.len() {
        return Err(Error::Incompatible(format!(
            "lengths {} vs {}",
            a.values.len(),
            b.values.len()
        )));
    }
    Ok(())
}

pub(crate) fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Euclidean distance between two compatible signatures.
pub fn signature_distance(a: &Signature, b: &Signature) -> Result<f64> {
    check_pair(a, b)?;
    Ok(l2(&a.values, &b.values))
}

/// Largest pointwise gap. Never exceeds [`signature_distance`], so it can
/// serve as a cheap lower bound when pruning by L2 radius.
pub fn linf_distance(a: &Signature, b: &Signature) -> Result<f64> {
    check_pair(a, b)?;
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
