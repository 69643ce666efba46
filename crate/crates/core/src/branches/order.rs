use super::BranchError;

/// Default tolerance on the fitted log-log slope.
pub const ORDER_TOL: f64 = 0.3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrderEstimate {
    /// The residual vanished at every sample.
    Exact,
    Slope(f64),
}

impl OrderEstimate {
    pub fn passes(&self, expected: f64, tol: f64) -> bool {
        match self {
            OrderEstimate::Exact => true,
            OrderEstimate::Slope(s) => (s - expected).abs() <= tol,
        }
    }
}

impl std::fmt::Display for OrderEstimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderEstimate::Exact => write!(f, "exact"),
            OrderEstimate::Slope(s) => write!(f, "{s:.3}"),
        }
    }
}

/// Least-squares slope of `log|residual(x)|` against `log x`.
///
/// Samples must be positive and span at least two decades; zero residuals
/// are left out of the fit.
pub fn residual_order(
    residual: impl Fn(f64) -> f64,
    samples: &[f64],
) -> Result<OrderEstimate, BranchError> {
    if samples.iter().any(|&x| !(x > 0.0)) {
        return Err(BranchError::BadSamples("samples must be positive"));
    }
    let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().copied().fold(0.0, f64::max);
    if samples.len() < 2 || hi / lo < 100.0 * (1.0 - 1e-12) {
        return Err(BranchError::BadSamples("samples must span two decades"));
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|&x| (x, residual(x).abs()))
        .filter(|(_, r)| *r > 0.0)
        .map(|(x, r)| (x.ln(), r.ln()))
        .collect();
    if pts.is_empty() {
        return Ok(OrderEstimate::Exact);
    }
    if pts.len() < 2 {
        return Err(BranchError::BadSamples("too few nonzero residuals"));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(OrderEstimate::Slope(sxy / sxx))
}

/// `n` logarithmically spaced points from `lo` to `hi`.
pub fn log_samples(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n.max(2) - 1) as f64).exp())
        .collect()
}
