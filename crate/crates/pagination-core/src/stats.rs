//! Statistical helpers for the benchmark pipeline: per-instance difficulty,
//! average multiplicity, and Pearson correlation.

use crate::float;
use crate::instance::Instance;
use crate::metrics::cardinality;

use alloc::vec::Vec;

/// Statistical difficulty of an instance: mean page count across solvers
/// minus the minimum. Zero iff every solver agreed. Needs at least two
/// outcomes.
pub fn difficulty(page_counts: &[usize]) -> f64 {
    assert!(
        page_counts.len() >= 2,
        "difficulty needs at least two solver outcomes"
    );
    let min = *page_counts.iter().min().unwrap() as f64;
    let mean = page_counts.iter().sum::<usize>() as f64 / page_counts.len() as f64;
    mean - min
}

/// Cardinality of the tile set over the alphabet size: the mean number of
/// tiles sharing a symbol. The difficulty predictor.
pub fn average_multiplicity(instance: &Instance) -> f64 {
    let all: Vec<usize> = instance.tile_indices().collect();
    f64::from(cardinality(instance, &all)) / instance.symbol_count() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelationError {
    /// Fewer than two points.
    TooFewPoints,
    /// One of the series is constant; r is undefined rather than NaN.
    ZeroVariance {
        ys: bool,
    },
    LengthMismatch,
}

impl core::fmt::Display for CorrelationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CorrelationError::TooFewPoints => write!(f, "need at least two points"),
            CorrelationError::ZeroVariance { ys } => {
                write!(
                    f,
                    "{} series has zero variance",
                    if *ys { "y" } else { "x" }
                )
            }
            CorrelationError::LengthMismatch => write!(f, "series lengths differ"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CorrelationError {}

/// Sample Pearson correlation coefficient.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64, CorrelationError> {
    if xs.len() != ys.len() {
        return Err(CorrelationError::LengthMismatch);
    }
    if xs.len() < 2 {
        return Err(CorrelationError::TooFewPoints);
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(CorrelationError::ZeroVariance { ys: false });
    }
    if syy == 0.0 {
        return Err(CorrelationError::ZeroVariance { ys: true });
    }
    Ok(sxy / (float::sqrt(sxx) * float::sqrt(syy)))
}
