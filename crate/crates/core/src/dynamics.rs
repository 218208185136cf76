//! Qutrit evolution under the field term `omega eta(t) S_x`.
//!
//! The propagator is `e^{-i t eps} exp(-i phi S_x)`. Since `S_x` has spectrum
//! `{1, 0, -1}`, `exp(-i phi S_x) = sum_m P_m e^{-i m phi}` with spectral
//! projectors `P_m`, and every entry of `U rho U^dagger` is a trigonometric
//! polynomial of degree at most two in `phi`. Averaging over a zero-mean
//! Gaussian phase therefore only needs the five Fourier blocks of the state.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::metrics;
use crate::noise::{beta_closed, NoiseSpec};

pub type CMatrix3 = Matrix3<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A qutrit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix3(CMatrix3);

impl DensityMatrix3 {
    /// Checks all three invariants before wrapping `m`.
    pub fn new(m: CMatrix3) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                let d = (m[(i, j)] - m[(j, i)].conj()).norm();
                if d > HERMITIAN_TOL {
                    return Err(Error::InvalidState(format!(
                        "entry ({i},{j}) breaks Hermiticity by {d:e}"
                    )));
                }
            }
        }
        let tr = m.trace();
        if (tr - ONE).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let state = DensityMatrix3(m);
        let min = state.eigenvalues()[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "eigenvalue {min:e} is negative"
            )));
        }
        Ok(state)
    }

    /// Wraps a matrix produced by a trace- and positivity-preserving map.
    pub(crate) fn from_map_output(m: CMatrix3) -> Self {
        DensityMatrix3(m)
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        // Symmetrize so the Hermitian solver sees an exactly Hermitian input.
        let h = (self.0 + self.0.adjoint()) * real(0.5);
        let eig = h.symmetric_eigen();
        let mut ev = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn purity(&self) -> f64 {
        metrics::purity(self)
    }

    pub fn entropy(&self) -> f64 {
        metrics::vn_entropy(self)
    }
}

/// Parameters of the driven qutrit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Level splitting; only enters through a global phase.
    pub epsilon0: f64,
    /// System–field coupling.
    pub omega: f64,
    /// Constant field amplitude for the noiseless branch.
    pub eta_const: f64,
    /// Weight of the pure component in the initial state.
    pub r: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            epsilon0: 1.0,
            omega: 1.0,
            eta_const: 1.0,
            r: 1.0,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        check_r(self.r)?;
        if !self.epsilon0.is_finite() || !self.eta_const.is_finite() {
            return Err(Error::InvalidParameter(
                "epsilon0 and eta must be finite".into(),
            ));
        }
        Ok(())
    }
}

fn check_r(r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "initial purity weight r must lie in [0, 1], got {r}"
        )))
    }
}

/// Law of the accumulated phase: zero mean, variance `omega^2 beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseLaw {
    variance: f64,
}

impl PhaseLaw {
    pub fn new(variance: f64) -> Result<Self> {
        if variance.is_nan() || variance < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "phase variance must be nonnegative, got {variance}"
            )));
        }
        Ok(PhaseLaw { variance })
    }

    pub fn from_beta(beta: f64, omega: f64) -> Result<Self> {
        Self::new(omega * omega * beta)
    }

    pub fn for_noise(spec: &NoiseSpec, tau: f64, omega: f64) -> Result<Self> {
        Self::from_beta(beta_closed(spec, tau)?.beta, omega)
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// `<e^{i n phi}>`; real because the law is symmetric.
    pub fn characteristic(&self, n: i32) -> f64 {
        let n = f64::from(n);
        (-0.5 * n * n * self.variance).exp()
    }
}

/// Spin-1 operators `(S_x, S_z)` in the `S_z` eigenbasis.
pub fn spin1_operators() -> (CMatrix3, CMatrix3) {
    let a = real(std::f64::consts::FRAC_1_SQRT_2);
    let sx = CMatrix3::new(ZERO, a, ZERO, a, ZERO, a, ZERO, a, ZERO);
    let sz = CMatrix3::from_diagonal(&Vector3::new(ONE, ZERO, -ONE));
    (sx, sz)
}

/// Explicit propagator for accumulated phase `phi` at time `t`.
pub fn propagator(phi: f64, epsilon0: f64, t: f64) -> CMatrix3 {
    let global = Complex64::from_polar(1.0, -t * epsilon0);
    phase_rotation(phi) * global
}

/// `exp(-i phi S_x)` written out entrywise.
fn phase_rotation(phi: f64) -> CMatrix3 {
    let (s, c) = phi.sin_cos();
    let corner = real(0.5 * (1.0 + c));
    let anti = real(0.5 * (c - 1.0));
    let side = Complex64::new(0.0, -s * std::f64::consts::FRAC_1_SQRT_2);
    CMatrix3::new(
        corner,
        side,
        anti, //
        side,
        real(c),
        side, //
        anti,
        side,
        corner,
    )
}

/// `(1 - r) I / 3 + r |psi><psi|` with `psi = (|0> + |1> + |2>) / sqrt 3`.
pub fn initial_state(r: f64) -> Result<DensityMatrix3> {
    check_r(r)?;
    let off = real(r / 3.0);
    let diag = real((1.0 - r) / 3.0 + r / 3.0);
    Ok(DensityMatrix3(CMatrix3::new(
        diag, off, off, //
        off, diag, off, //
        off, off, diag,
    )))
}

/// `U rho U^dagger` at a given phase. The global phase cancels.
pub fn evolve_at_phase(rho0: &DensityMatrix3, phi: f64) -> DensityMatrix3 {
    let u = phase_rotation(phi);
    DensityMatrix3(u * rho0.0 * u.adjoint())
}

/// Noiseless evolution with constant field: `phi = omega eta t`.
pub fn evolve_noiseless(rho0: &DensityMatrix3, params: &SystemParams, t: f64) -> DensityMatrix3 {
    let u = propagator(params.omega * params.eta_const * t, params.epsilon0, t);
    DensityMatrix3(u * rho0.0 * u.adjoint())
}

/// Spectral projectors of `S_x` paired with the frequency they carry in
/// `exp(-i phi S_x) = sum_k P_k e^{i f_k phi}`.
fn sx_projectors() -> [(i32, CMatrix3); 3] {
    let (sx, _) = spin1_operators();
    let sx2 = sx * sx;
    let half = real(0.5);
    [
        (1, (sx2 - sx) * half),
        (0, CMatrix3::identity() - sx2),
        (-1, (sx2 + sx) * half),
    ]
}

/// Fourier blocks `C_n`, `n = -2..=2`, with `U(phi) rho U(phi)^dagger =
/// sum_n C_n e^{i n phi}`. Index `k` of the returned array holds `n = k - 2`.
pub fn fourier_components(rho0: &DensityMatrix3) -> [CMatrix3; 5] {
    let p = sx_projectors();
    let mut c = [CMatrix3::zeros(); 5];
    for (fa, pa) in &p {
        for (fb, pb) in &p {
            c[(fa - fb + 2) as usize] += pa * rho0.0 * pb.adjoint();
        }
    }
    c
}

/// Rebuilds `U(phi) rho U(phi)^dagger` from its Fourier blocks.
pub fn reconstruct(components: &[CMatrix3; 5], phi: f64) -> CMatrix3 {
    components
        .iter()
        .enumerate()
        .fold(CMatrix3::zeros(), |acc, (k, c)| {
            let n = k as f64 - 2.0;
            acc + c * Complex64::from_polar(1.0, n * phi)
        })
}

/// State averaged over a zero-mean Gaussian phase: each `e^{i n phi}` is
/// replaced by `e^{-n^2 sigma^2 / 2}`.
pub fn evolve_averaged(rho0: &DensityMatrix3, law: &PhaseLaw) -> DensityMatrix3 {
    let c = fourier_components(rho0);
    let m = c
        .iter()
        .enumerate()
        .fold(CMatrix3::zeros(), |acc, (k, block)| {
            acc + block * real(law.characteristic(k as i32 - 2))
        });
    DensityMatrix3(m)
}

/// One row of a time series.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub tau: f64,
    pub beta: f64,
    pub purity: f64,
    pub entropy: f64,
    pub matrix: Option<CMatrix3>,
    /// Extra named columns (e.g. a dephasing factor), in output order.
    pub extra: Vec<f64>,
}

/// Time-indexed records for one curve.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepSeries {
    pub label: String,
    pub extra_columns: Vec<String>,
    pub records: Vec<SweepRecord>,
}

impl SweepSeries {
    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.tau)
    }

    pub fn purities(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.purity).collect()
    }

    pub fn entropies(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.entropy).collect()
    }
}

pub(crate) fn check_grid(grid: &[f64], strict: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Empty("time grid"));
    }
    for &t in grid {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "time {t} is negative or not finite"
            )));
        }
    }
    for w in grid.windows(2) {
        let ok = if strict { w[1] > w[0] } else { w[1] >= w[0] };
        if !ok {
            return Err(Error::InvalidGrid(format!(
                "grid is not {}increasing at {} -> {}",
                if strict { "strictly " } else { "" },
                w[0],
                w[1]
            )));
        }
    }
    Ok(())
}

/// Noiseless state on every grid time, starting from `initial_state(r)`.
pub fn fluctuation_series(params: &SystemParams, t_grid: &[f64]) -> Result<SweepSeries> {
    params.validate()?;
    check_grid(t_grid, false)?;
    let rho0 = initial_state(params.r)?;
    let records = t_grid
        .iter()
        .map(|&t| {
            let rho = evolve_noiseless(&rho0, params, t);
            SweepRecord {
                tau: t,
                beta: 0.0,
                purity: rho.purity(),
                entropy: rho.entropy(),
                matrix: Some(rho.0),
                extra: Vec::new(),
            }
        })
        .collect();
    Ok(SweepSeries {
        label: format!("noiseless_omega{}", params.omega),
        extra_columns: Vec::new(),
        records,
    })
}
