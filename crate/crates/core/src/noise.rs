//! Gaussian noise families driving the classical field.
//!
//! Each family is described by its autocorrelation kernel in dimensionless
//! time. The double integral of the kernel over `[0, tau]^2` (the β-function)
//! is the variance budget of the accumulated phase; it is available both in
//! closed form and through an independent two-dimensional quadrature.
//!
//! | family | kernel | parameters |
//! |--------|--------|------------|
//! | fractional Gaussian | `(s'^{2H} - |s-s'|^{2H} + s^{2H}) / 2` | `H` in (0,1) |
//! | Gaussian | `g e^{-g^2 u^2} / sqrt(pi)` | `g > 0` |
//! | Ornstein–Uhlenbeck | `g e^{-g|u|} / 2` | `g > 0` |
//! | power law | `(alpha-1) g / (2 (g|u|+1)^alpha)` | `g > 0`, `alpha > 2` |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::GradedRule;

/// Floor used in relative-error comparisons so that `tau = 0` is well defined.
pub const REL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    FractionalGaussian,
    Gaussian,
    OrnsteinUhlenbeck,
    PowerLaw,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 4] = [
        NoiseKind::FractionalGaussian,
        NoiseKind::Gaussian,
        NoiseKind::OrnsteinUhlenbeck,
        NoiseKind::PowerLaw,
    ];

    /// Short name used on the command line and in file names.
    pub fn short_name(self) -> &'static str {
        match self {
            NoiseKind::FractionalGaussian => "fgn",
            NoiseKind::Gaussian => "gn",
            NoiseKind::OrnsteinUhlenbeck => "ou",
            NoiseKind::PowerLaw => "pl",
        }
    }

    pub(crate) fn long_name(self) -> &'static str {
        match self {
            NoiseKind::FractionalGaussian => "fractional Gaussian",
            NoiseKind::Gaussian => "Gaussian",
            NoiseKind::OrnsteinUhlenbeck => "Ornstein-Uhlenbeck",
            NoiseKind::PowerLaw => "power-law",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fgn" => Ok(NoiseKind::FractionalGaussian),
            "gn" => Ok(NoiseKind::Gaussian),
            "ou" => Ok(NoiseKind::OrnsteinUhlenbeck),
            "pl" => Ok(NoiseKind::PowerLaw),
            other => Err(Error::InvalidParameter(format!(
                "unknown noise family `{other}` (expected fgn, gn, ou or pl)"
            ))),
        }
    }
}

/// One noise family together with its dimensionless parameters.
///
/// Build values through the checked constructors; the operations in this
/// module re-validate so a hand-built variant with bad parameters is still
/// rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec {
    FractionalGaussian { hurst: f64 },
    Gaussian { g: f64 },
    OrnsteinUhlenbeck { g: f64 },
    PowerLaw { g: f64, alpha: f64 },
}

impl NoiseSpec {
    pub fn fractional_gaussian(hurst: f64) -> Result<Self> {
        NoiseSpec::FractionalGaussian { hurst }.validated()
    }

    pub fn gaussian(g: f64) -> Result<Self> {
        NoiseSpec::Gaussian { g }.validated()
    }

    pub fn ornstein_uhlenbeck(g: f64) -> Result<Self> {
        NoiseSpec::OrnsteinUhlenbeck { g }.validated()
    }

    pub fn power_law(g: f64, alpha: f64) -> Result<Self> {
        NoiseSpec::PowerLaw { g, alpha }.validated()
    }

    /// Assemble a spec from loosely typed parts (command line, config file).
    ///
    /// Parameters that do not belong to `kind` are rejected; missing ones
    /// take the defaults `H = 0.5`, `g = 1`, `alpha = 3`.
    pub fn from_parts(
        kind: NoiseKind,
        hurst: Option<f64>,
        g: Option<f64>,
        alpha: Option<f64>,
    ) -> Result<Self> {
        let family = kind.long_name();
        let mismatch = |param| Err(Error::ParameterMismatch { family, param });
        match kind {
            NoiseKind::FractionalGaussian => {
                if g.is_some() {
                    return mismatch("g");
                }
                if alpha.is_some() {
                    return mismatch("alpha");
                }
                Self::fractional_gaussian(hurst.unwrap_or(0.5))
            }
            NoiseKind::Gaussian | NoiseKind::OrnsteinUhlenbeck => {
                if hurst.is_some() {
                    return mismatch("hurst");
                }
                if alpha.is_some() {
                    return mismatch("alpha");
                }
                let g = g.unwrap_or(1.0);
                if kind == NoiseKind::Gaussian {
                    Self::gaussian(g)
                } else {
                    Self::ornstein_uhlenbeck(g)
                }
            }
            NoiseKind::PowerLaw => {
                if hurst.is_some() {
                    return mismatch("hurst");
                }
                Self::power_law(g.unwrap_or(1.0), alpha.unwrap_or(3.0))
            }
        }
    }

    /// Default parameter set of a family: `H = 0.5`, `g = 1`, `alpha = 3`.
    pub fn default_for(kind: NoiseKind) -> Self {
        match kind {
            NoiseKind::FractionalGaussian => NoiseSpec::FractionalGaussian { hurst: 0.5 },
            NoiseKind::Gaussian => NoiseSpec::Gaussian { g: 1.0 },
            NoiseKind::OrnsteinUhlenbeck => NoiseSpec::OrnsteinUhlenbeck { g: 1.0 },
            NoiseKind::PowerLaw => NoiseSpec::PowerLaw { g: 1.0, alpha: 3.0 },
        }
    }

    pub fn kind(&self) -> NoiseKind {
        match self {
            NoiseSpec::FractionalGaussian { .. } => NoiseKind::FractionalGaussian,
            NoiseSpec::Gaussian { .. } => NoiseKind::Gaussian,
            NoiseSpec::OrnsteinUhlenbeck { .. } => NoiseKind::OrnsteinUhlenbeck,
            NoiseSpec::PowerLaw { .. } => NoiseKind::PowerLaw,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive_g = |g: f64| {
            if g.is_finite() && g > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "g must be positive, got {g}"
                )))
            }
        };
        match *self {
            NoiseSpec::FractionalGaussian { hurst } => {
                if hurst > 0.0 && hurst < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "hurst must lie in (0, 1), got {hurst}"
                    )))
                }
            }
            NoiseSpec::Gaussian { g } | NoiseSpec::OrnsteinUhlenbeck { g } => positive_g(g),
            NoiseSpec::PowerLaw { g, alpha } => {
                positive_g(g)?;
                if alpha.is_finite() && alpha > 2.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "power-law alpha must exceed 2, got {alpha}"
                    )))
                }
            }
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Kernel value without argument checks. Callers guarantee `s, s' >= 0`.
    pub(crate) fn kernel(&self, s: f64, s_prime: f64) -> f64 {
        match *self {
            NoiseSpec::FractionalGaussian { hurst } => {
                let e = 2.0 * hurst;
                0.5 * (s_prime.powf(e) - (s - s_prime).abs().powf(e) + s.powf(e))
            }
            NoiseSpec::Gaussian { g } => {
                let u = s - s_prime;
                g * (-g * g * u * u).exp() / PI.sqrt()
            }
            NoiseSpec::OrnsteinUhlenbeck { g } => 0.5 * g * (-g * (s - s_prime).abs()).exp(),
            NoiseSpec::PowerLaw { g, alpha } => {
                (alpha - 1.0) * g / (2.0 * (g * (s - s_prime).abs() + 1.0).powf(alpha))
            }
        }
    }

    fn closed_beta(&self, tau: f64) -> f64 {
        match *self {
            NoiseSpec::FractionalGaussian { hurst } => {
                let p = 2.0 * (hurst + 1.0);
                tau.powf(p) / p
            }
            NoiseSpec::Gaussian { g } => {
                let x = g * tau;
                (((-x * x).exp() - 1.0) / PI.sqrt() + x * libm::erf(x)) / g
            }
            NoiseSpec::OrnsteinUhlenbeck { g } => {
                let x = g * tau;
                // x + e^{-x} - 1 loses everything to cancellation for tiny x.
                (x + (-x).exp_m1()) / g
            }
            NoiseSpec::PowerLaw { g, alpha } => {
                let x = g * tau;
                let a2 = alpha - 2.0;
                // (1+x)^{2-alpha} - 1 computed through exp_m1 for the same reason.
                (x * a2 + ((-a2) * x.ln_1p()).exp_m1()) / (g * a2)
            }
        }
    }
}

impl fmt::Display for NoiseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NoiseSpec::FractionalGaussian { hurst } => write!(f, "fgn(H={hurst})"),
            NoiseSpec::Gaussian { g } => write!(f, "gn(g={g})"),
            NoiseSpec::OrnsteinUhlenbeck { g } => write!(f, "ou(g={g})"),
            NoiseSpec::PowerLaw { g, alpha } => write!(f, "pl(g={g},alpha={alpha})"),
        }
    }
}

/// Value of the β-function at a dimensionless time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaValue {
    pub tau: f64,
    pub beta: f64,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(Error::NegativeTime(t))
    } else {
        Ok(())
    }
}

/// Autocorrelation `K(s, s')` of the noise.
///
/// The fractional Gaussian kernel is the non-stationary two-time form; the
/// other three depend on `s - s'` only.
pub fn autocorrelation(spec: &NoiseSpec, s: f64, s_prime: f64) -> Result<f64> {
    spec.validate()?;
    check_time(s)?;
    check_time(s_prime)?;
    Ok(spec.kernel(s, s_prime))
}

/// Closed-form β-function.
pub fn beta_closed(spec: &NoiseSpec, tau: f64) -> Result<BetaValue> {
    spec.validate()?;
    check_time(tau)?;
    let beta = if tau == 0.0 {
        0.0
    } else {
        spec.closed_beta(tau).max(0.0)
    };
    Ok(BetaValue { tau, beta })
}

/// Minimum panel count accepted by [`beta_quadrature`].
pub const MIN_PANELS: usize = 8;

/// β-function by direct two-dimensional quadrature of the kernel.
///
/// The square `[0, tau]^2` is folded onto its lower triangle (the kernel is
/// symmetric) and mapped to the unit square via `u = s - s'`,
/// `s' = (tau - u) x`. Both directions use a composite Gauss–Legendre rule
/// with `panels` panels whose end panels are geometrically graded, which
/// takes care of the kink on the diagonal and the `s^{2H}` endpoint
/// behaviour of the fractional kernel. Nothing here uses the closed forms.
pub fn beta_quadrature(spec: &NoiseSpec, tau: f64, panels: usize) -> Result<f64> {
    spec.validate()?;
    check_time(tau)?;
    if panels < MIN_PANELS {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs at least {MIN_PANELS} panels, got {panels}"
        )));
    }
    if tau == 0.0 {
        return Ok(0.0);
    }
    let rule = GradedRule::new(panels);
    let nodes = rule.nodes();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&(xi, wu)| {
            let u = tau * xi;
            let span = tau - u;
            let inner: f64 = nodes
                .iter()
                .map(|&(x, wx)| {
                    let s_prime = span * x;
                    wx * spec.kernel(s_prime + u, s_prime)
                })
                .sum();
            wu * span * inner
        })
        .collect();
    Ok(2.0 * tau * rows.iter().sum::<f64>())
}

/// Gaussian dephasing factor `<e^{i n phi}> = exp(-n^2 omega^2 beta / 2)`.
pub fn dephasing_factor(n: i32, spec: &NoiseSpec, tau: f64, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "omega must be positive, got {omega}"
        )));
    }
    let beta = beta_closed(spec, tau)?.beta;
    let n = f64::from(n);
    Ok((-0.5 * n * n * omega * omega * beta).exp())
}
