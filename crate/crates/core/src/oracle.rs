//! Monte-Carlo check of the Gaussian phase average.
//!
//! Paths of the field `eta(t)` are drawn from the exact finite-dimensional
//! law of each noise family on a time grid (dense Cholesky of the kernel
//! matrix), integrated into phases, and the evolved states are averaged. The
//! result is compared entrywise with [`evolve_averaged`].
//!
//! Every path uses its own ChaCha20 stream selected by the path index, so an
//! ensemble is bit-identical for a given `(seed, spec, grid, n)` no matter how
//! many worker threads produce it.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::dynamics::{
    check_grid, evolve_at_phase, evolve_averaged, CMatrix3, DensityMatrix3, PhaseLaw, SystemParams,
};
use crate::error::{Error, Result};
use crate::noise::{beta_closed, NoiseSpec};

pub const RNG_ALGORITHM: &str =
    "ChaCha20Rng(rand_chacha 0.3) seed_from_u64(seed), stream=path index; StandardNormal(rand_distr 0.4)";

/// Diagonal jitter tried in turn when the plain Cholesky fails, relative to
/// the largest variance on the grid.
pub const JITTER_LEVELS: [f64; 5] = [1e-12, 1e-11, 1e-10, 1e-9, 1e-8];

/// Default number of grid steps between 0 and tau.
pub const DEFAULT_STEPS: usize = 200;

/// `steps + 1` equally spaced points on `[0, tau]`.
pub fn uniform_grid(tau: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| tau * k as f64 / steps as f64).collect()
}

#[derive(Debug, Clone)]
pub struct TrajectoryEnsemble {
    spec: NoiseSpec,
    t_grid: Vec<f64>,
    /// Row-major, one path per row.
    paths: Vec<f64>,
    n_paths: usize,
    seed: u64,
    jitter: f64,
}

impl TrajectoryEnsemble {
    /// Ensemble from explicitly given paths (no sampling involved).
    pub fn from_paths(
        spec: NoiseSpec,
        t_grid: Vec<f64>,
        paths: &[Vec<f64>],
        seed: u64,
    ) -> Result<Self> {
        check_grid(&t_grid, true)?;
        let m = t_grid.len();
        let mut flat = Vec::with_capacity(paths.len() * m);
        for p in paths {
            if p.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    actual: p.len(),
                });
            }
            flat.extend_from_slice(p);
        }
        Ok(TrajectoryEnsemble {
            spec,
            t_grid,
            paths: flat,
            n_paths: paths.len(),
            seed,
            jitter: 0.0,
        })
    }

    pub fn spec(&self) -> &NoiseSpec {
        &self.spec
    }

    pub fn grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn len(&self) -> usize {
        self.n_paths
    }

    pub fn is_empty(&self) -> bool {
        self.n_paths == 0
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Absolute diagonal jitter that was needed to factor the covariance.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn path(&self, i: usize) -> &[f64] {
        let m = self.t_grid.len();
        &self.paths[i * m..(i + 1) * m]
    }

    pub fn paths(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.paths.chunks_exact(self.t_grid.len())
    }
}

/// Kernel matrix `K(s_i, s_j)` on the grid.
pub fn covariance_matrix(spec: &NoiseSpec, t_grid: &[f64]) -> Result<DMatrix<f64>> {
    spec.validate()?;
    check_grid(t_grid, false)?;
    let m = t_grid.len();
    Ok(DMatrix::from_fn(m, m, |i, j| {
        spec.kernel(t_grid[i], t_grid[j])
    }))
}

/// Lower Cholesky factor, escalating diagonal jitter through
/// [`JITTER_LEVELS`] when needed. Returns the factor and the absolute
/// jitter used.
pub fn cholesky_with_jitter(cov: &DMatrix<f64>, spec: &NoiseSpec) -> Result<(DMatrix<f64>, f64)> {
    if let Some(ch) = cov.clone().cholesky() {
        return Ok((ch.l(), 0.0));
    }
    let scale = cov.diagonal().max().max(f64::MIN_POSITIVE);
    for level in JITTER_LEVELS {
        let jitter = level * scale;
        let mut shifted = cov.clone();
        for i in 0..shifted.nrows() {
            shifted[(i, i)] += jitter;
        }
        if let Some(ch) = shifted.cholesky() {
            log::warn!("covariance for {spec} factored with diagonal jitter {jitter:e}");
            return Ok((ch.l(), jitter));
        }
    }
    Err(Error::NotPositiveDefinite {
        spec: spec.to_string(),
        max_jitter: JITTER_LEVELS[JITTER_LEVELS.len() - 1] * scale,
    })
}

/// Draws `n` paths of the zero-mean Gaussian process with the family's kernel.
pub fn sample_trajectories(
    spec: &NoiseSpec,
    t_grid: &[f64],
    n: usize,
    seed: u64,
) -> Result<TrajectoryEnsemble> {
    if n == 0 {
        return Err(Error::Empty("ensemble size"));
    }
    check_grid(t_grid, true)?;
    if t_grid.len() < 2 {
        return Err(Error::InvalidGrid("need at least two grid points".into()));
    }
    let cov = covariance_matrix(spec, t_grid)?;
    let (l, jitter) = cholesky_with_jitter(&cov, spec)?;
    let m = t_grid.len();
    // Packed rows of the lower factor.
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|j| (0..=j).map(|k| l[(j, k)]).collect())
        .collect();

    let mut paths = vec![0.0; n * m];
    paths.par_chunks_mut(m).enumerate().for_each(|(i, out)| {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let z: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
        for (eta, row) in out.iter_mut().zip(&rows) {
            *eta = row.iter().zip(&z).map(|(a, b)| a * b).sum();
        }
    });

    Ok(TrajectoryEnsemble {
        spec: *spec,
        t_grid: t_grid.to_vec(),
        paths,
        n_paths: n,
        seed,
        jitter,
    })
}

/// Cumulative trapezoid integral of `omega * eta` along the grid, starting
/// from zero at the first grid point.
pub fn phase_of(path: &[f64], t_grid: &[f64], omega: f64) -> Result<Vec<f64>> {
    if path.len() != t_grid.len() {
        return Err(Error::LengthMismatch {
            expected: t_grid.len(),
            actual: path.len(),
        });
    }
    let mut phases = Vec::with_capacity(path.len());
    let mut acc = 0.0;
    if !path.is_empty() {
        phases.push(0.0);
    }
    for k in 1..path.len() {
        acc += 0.5 * (t_grid[k] - t_grid[k - 1]) * (path[k] + path[k - 1]);
        phases.push(omega * acc);
    }
    Ok(phases)
}

/// Empirical `<cos n phi>` and `<sin n phi>` with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMoment {
    pub n: i32,
    pub cos_mean: f64,
    pub cos_stderr: f64,
    pub sin_mean: f64,
    pub sin_stderr: f64,
}

/// Mean and standard error of the mean.
fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum_f64(xs) / n;
    (mean, (sample_variance(xs) / n).sqrt())
}

pub fn phase_moments(phases: &[f64], orders: &[i32]) -> Vec<PhaseMoment> {
    orders
        .iter()
        .map(|&n| {
            let nf = f64::from(n);
            let cos: Vec<f64> = phases.iter().map(|p| (nf * p).cos()).collect();
            let sin: Vec<f64> = phases.iter().map(|p| (nf * p).sin()).collect();
            let (cos_mean, cos_stderr) = mean_stderr(&cos);
            let (sin_mean, sin_stderr) = mean_stderr(&sin);
            PhaseMoment {
                n,
                cos_mean,
                cos_stderr,
                sin_mean,
                sin_stderr,
            }
        })
        .collect()
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mean = pairwise_sum_f64(xs) / n;
    let ss: Vec<f64> = xs.iter().map(|x| (x - mean).powi(2)).collect();
    pairwise_sum_f64(&ss) / (n - 1.0)
}

/// Outcome of one Monte-Carlo comparison.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub spec: NoiseSpec,
    pub tau: f64,
    pub omega: f64,
    pub beta: f64,
    pub analytic: DensityMatrix3,
    pub empirical: DensityMatrix3,
    pub max_abs_deviation: f64,
    /// `3 / sqrt(N)`.
    pub stderr_bound: f64,
    pub n_samples: usize,
    pub variance_analytic: f64,
    pub variance_empirical: f64,
    pub moments: Vec<PhaseMoment>,
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub grid_step: f64,
    pub jitter: f64,
}

impl OracleReport {
    pub fn within_bound(&self) -> bool {
        self.max_abs_deviation <= self.stderr_bound
    }
}

/// Ensemble average of `U(phi_k) rho0 U(phi_k)^dagger` at grid index
/// `at_index`, compared with the analytic Gaussian average.
pub fn mc_average_state(
    rho0: &DensityMatrix3,
    ensemble: &TrajectoryEnsemble,
    params: &SystemParams,
    at_index: usize,
) -> Result<OracleReport> {
    params.validate()?;
    if ensemble.is_empty() {
        return Err(Error::Empty("ensemble"));
    }
    let grid = ensemble.grid();
    if at_index >= grid.len() {
        return Err(Error::InvalidGrid(format!(
            "index {at_index} outside grid of {} points",
            grid.len()
        )));
    }
    if grid[0] != 0.0 {
        return Err(Error::InvalidGrid(
            "oracle grids must start at t = 0".into(),
        ));
    }
    let tau = grid[at_index];
    let omega = params.omega;

    let phases: Vec<f64> = ensemble
        .paths
        .par_chunks_exact(grid.len())
        .map(|p| phase_of(&p[..=at_index], &grid[..=at_index], omega).map(|v| v[at_index]))
        .collect::<Result<_>>()?;

    let states: Vec<CMatrix3> = phases
        .par_iter()
        .map(|&phi| *evolve_at_phase(rho0, phi).matrix())
        .collect();
    let n = states.len();
    let mean = pairwise_sum_matrix(&states) / num_complex::Complex64::new(n as f64, 0.0);
    let empirical = DensityMatrix3::from_map_output(mean);

    let beta = beta_closed(ensemble.spec(), tau)?.beta;
    let law = PhaseLaw::from_beta(beta, omega)?;
    let analytic = evolve_averaged(rho0, &law);
    let max_abs_deviation = (analytic.matrix() - empirical.matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);

    let grid_step = if grid.len() > 1 {
        grid[1] - grid[0]
    } else {
        0.0
    };
    Ok(OracleReport {
        spec: *ensemble.spec(),
        tau,
        omega,
        beta,
        analytic,
        empirical,
        max_abs_deviation,
        stderr_bound: 3.0 / (n as f64).sqrt(),
        n_samples: n,
        variance_analytic: law.variance(),
        variance_empirical: sample_variance(&phases),
        moments: phase_moments(&phases, &[1, 2]),
        seed: ensemble.seed(),
        rng_algorithm: RNG_ALGORITHM,
        grid_step,
        jitter: ensemble.jitter(),
    })
}

const PAIRWISE_BASE: usize = 16;

pub(crate) fn pairwise_sum_f64(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BASE {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum_f64(a) + pairwise_sum_f64(b)
    }
}

fn pairwise_sum_matrix(xs: &[CMatrix3]) -> CMatrix3 {
    if xs.len() <= PAIRWISE_BASE {
        xs.iter().fold(CMatrix3::zeros(), |acc, m| acc + m)
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum_matrix(a) + pairwise_sum_matrix(b)
    }
}
