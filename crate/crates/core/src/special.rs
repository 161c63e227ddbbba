//! Thin wrappers over special functions plus the handful of combinatorial
//! helpers the spectral formulas need. Everything funnels through `ln_gamma`
//! so that ratios of large Gamma values are formed in log space.

use statrs::function::gamma;

/// Natural log of the Gamma function.
pub fn ln_gamma(x: f64) -> f64 {
    gamma::ln_gamma(x)
}

/// Gamma function.
pub fn gamma_fn(x: f64) -> f64 {
    gamma::gamma(x)
}

/// log Beta(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Beta(a, b).
pub fn beta_fn(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

/// log of p! = prod_j p_j! for a multi-index.
pub fn ln_multi_factorial(p: &[usize]) -> f64 {
    p.iter().map(|&pj| ln_gamma(pj as f64 + 1.0)).sum()
}

/// |p| = sum of the entries of a multi-index.
pub fn multi_degree(p: &[usize]) -> usize {
    p.iter().sum()
}
