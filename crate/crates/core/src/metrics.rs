//! Purity and von Neumann entropy, as matrix functionals and as closed forms
//! in β for the averaged pure-start state.

use crate::dynamics::DensityMatrix3;
use crate::error::{Error, Result};

/// Long-time purity of the averaged state, 17/18.
pub const PURITY_SATURATION: f64 = 17.0 / 18.0;

/// Eigenvalues below this are treated as zero before taking logs.
pub const EIGEN_CLAMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricRecord {
    pub tau: f64,
    pub purity: f64,
    /// Natural-log units.
    pub entropy: f64,
}

/// `Tr rho^2`, as the sum of squared entry magnitudes.
pub fn purity(rho: &DensityMatrix3) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta < 0.0 {
        Err(Error::InvalidParameter(format!(
            "beta must be nonnegative, got {beta}"
        )))
    } else {
        Ok(())
    }
}

/// `(17 + e^{-4 beta}) / 18`.
pub fn purity_closed(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok((17.0 + (-4.0 * beta).exp()) / 18.0)
}

fn shannon(eigenvalues: impl IntoIterator<Item = f64>) -> f64 {
    eigenvalues
        .into_iter()
        .map(|l| l.clamp(0.0, 1.0))
        .filter(|&l| l > EIGEN_CLAMP_TOL)
        .map(|l| -l * l.ln())
        .fold(0.0, |acc, x| acc + x)
}

/// `-Tr rho ln rho` from the Hermitian eigenvalues.
pub fn vn_entropy(rho: &DensityMatrix3) -> f64 {
    shannon(rho.eigenvalues())
}

/// The two nonzero eigenvalues `(3 ± sqrt(e^{-4 beta} + 8)) / 6` of the
/// averaged pure-start state.
pub fn closed_eigenvalues(beta: f64) -> Result<(f64, f64)> {
    check_beta(beta)?;
    let root = ((-4.0 * beta).exp() + 8.0).sqrt();
    // (3 - root)/6 cancels badly near beta = 0; use the product 1/36 (1 - x)
    // with x = e^{-4 beta} instead.
    let plus = (3.0 + root) / 6.0;
    let minus = -(-4.0 * beta).exp_m1() / 36.0 / plus;
    Ok((plus, minus))
}

pub fn vn_entropy_closed(beta: f64) -> Result<f64> {
    let (plus, minus) = closed_eigenvalues(beta)?;
    Ok(shannon([plus, minus]))
}

/// Long-time entropy, from eigenvalues `(3 ± 2 sqrt 2) / 6`.
pub fn entropy_saturation() -> f64 {
    let root = 8f64.sqrt();
    shannon([(3.0 + root) / 6.0, (3.0 - root) / 6.0])
}
