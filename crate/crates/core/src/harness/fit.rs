use serde::Serialize;
use thiserror::Error;

/// Errors at or above this are treated as pre-asymptotic.
pub const FIT_UPPER: f64 = 0.5;
/// Errors at or below this are treated as numerical floor.
pub const FIT_FLOOR: f64 = 1e-11;
pub const MIN_FIT_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of `ln error` from the fitted line.
    pub residual: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("only {survivors} of {total} points lie inside ({FIT_FLOOR:e}, {FIT_UPPER}); need {MIN_FIT_POINTS}")]
    TooFewPoints { survivors: usize, total: usize },
}

/// Ordinary least squares of `ln error` against `ln param` over the points
/// with `FIT_FLOOR < error < FIT_UPPER`.
pub fn fit_rate(points: &[(f64, f64)]) -> Result<RateFit, FitError> {
    let kept: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, e)| *x > 0.0 && *e > FIT_FLOOR && *e < FIT_UPPER)
        .map(|(x, e)| (x.ln(), e.ln()))
        .collect();
    if kept.len() < MIN_FIT_POINTS {
        return Err(FitError::TooFewPoints { survivors: kept.len(), total: points.len() });
    }
    let n = kept.len() as f64;
    let mx = kept.iter().map(|p| p.0).sum::<f64>() / n;
    let my = kept.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = kept.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = kept.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (kept.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(RateFit { slope, intercept, residual, points: kept.len() })
}
