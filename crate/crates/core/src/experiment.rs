//! Parameter sweeps, preservation times, oracle runs and the canned figure
//! sets, plus the flat-file formats they write.
//!
//! CSV files have the header `tau,beta,purity,entropy`, optionally followed
//! by extra named columns and the real/imaginary parts of the nine matrix
//! entries (`re_00,im_00,re_01,...`). Floats carry 17 significant digits.
//! Every file is written to a temporary sibling and renamed into place.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{
    evolve_averaged, fluctuation_series, initial_state, PhaseLaw, SweepRecord, SweepSeries,
    SystemParams,
};
use crate::error::{Error, Result};
use crate::metrics::{entropy_saturation, purity_closed, vn_entropy_closed, PURITY_SATURATION};
use crate::noise::{beta_closed, beta_quadrature, NoiseSpec};
use crate::oracle::{mc_average_state, sample_trajectories, uniform_grid, OracleReport};

/// Which family parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParam {
    Hurst,
    G,
    Alpha,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::Hurst => "H",
            SweptParam::G => "g",
            SweptParam::Alpha => "alpha",
        }
    }

    fn apply(self, base: &NoiseSpec, value: f64) -> Result<NoiseSpec> {
        let spec = match (self, *base) {
            (SweptParam::Hurst, NoiseSpec::FractionalGaussian { .. }) => {
                NoiseSpec::FractionalGaussian { hurst: value }
            }
            (SweptParam::G, NoiseSpec::Gaussian { .. }) => NoiseSpec::Gaussian { g: value },
            (SweptParam::G, NoiseSpec::OrnsteinUhlenbeck { .. }) => {
                NoiseSpec::OrnsteinUhlenbeck { g: value }
            }
            (SweptParam::G, NoiseSpec::PowerLaw { alpha, .. }) => {
                NoiseSpec::PowerLaw { g: value, alpha }
            }
            (SweptParam::Alpha, NoiseSpec::PowerLaw { g, .. }) => {
                NoiseSpec::PowerLaw { g, alpha: value }
            }
            (param, spec) => {
                return Err(Error::ParameterMismatch {
                    family: spec.kind().long_name(),
                    param: param.name(),
                })
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Family and the parameters that are held fixed.
    pub noise: NoiseSpec,
    pub swept: SweptParam,
    pub param_values: Vec<f64>,
    pub tau_max: f64,
    /// Number of intervals; the grid has `tau_steps + 1` points.
    pub tau_steps: usize,
    pub omega: f64,
    pub r: f64,
    /// Append the averaged matrix entries to every row.
    pub include_matrix: bool,
    pub outputs: PathBuf,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.noise.validate()?;
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tau-max must be positive, got {}",
                self.tau_max
            )));
        }
        if self.tau_steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "tau-steps must be at least 2, got {}",
                self.tau_steps
            )));
        }
        if self.param_values.is_empty() {
            return Err(Error::InvalidParameter(
                "no parameter values to sweep".into(),
            ));
        }
        SystemParams {
            omega: self.omega,
            r: self.r,
            ..SystemParams::default()
        }
        .validate()?;
        for &v in &self.param_values {
            self.swept.apply(&self.noise, v)?;
        }
        Ok(())
    }

    pub fn specs(&self) -> Result<Vec<NoiseSpec>> {
        self.param_values
            .iter()
            .map(|&v| self.swept.apply(&self.noise, v))
            .collect()
    }
}

/// Purity, entropy and (optionally) the matrix of the averaged state.
fn averaged_record(
    tau: f64,
    beta: f64,
    omega: f64,
    r: f64,
    include_matrix: bool,
) -> Result<SweepRecord> {
    let law = PhaseLaw::from_beta(beta, omega)?;
    let needs_matrix = include_matrix || r != 1.0;
    let rho = if needs_matrix {
        Some(evolve_averaged(&initial_state(r)?, &law))
    } else {
        None
    };
    let (purity, entropy) = if r == 1.0 {
        (
            purity_closed(law.variance())?,
            vn_entropy_closed(law.variance())?,
        )
    } else {
        let rho = rho.as_ref().expect("matrix computed for r != 1");
        (rho.purity(), rho.entropy())
    };
    Ok(SweepRecord {
        tau,
        beta,
        purity,
        entropy,
        matrix: if include_matrix {
            rho.map(|m| *m.matrix())
        } else {
            None
        },
        extra: Vec::new(),
    })
}

fn format_value(v: f64) -> String {
    // File labels avoid `-`.
    let s = format!("{v}");
    s.replace('-', "m")
}

fn series_for(
    spec: &NoiseSpec,
    label: String,
    grid: &[f64],
    omega: f64,
    r: f64,
    include_matrix: bool,
) -> Result<SweepSeries> {
    let records = grid
        .iter()
        .map(|&tau| {
            let beta = beta_closed(spec, tau)?.beta;
            averaged_record(tau, beta, omega, r, include_matrix)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSeries {
        label,
        extra_columns: Vec::new(),
        records,
    })
}

/// Computes one series per swept value without touching the filesystem.
pub fn sweep_series(config: &SweepConfig) -> Result<Vec<SweepSeries>> {
    config.validate()?;
    let grid = uniform_grid(config.tau_max, config.tau_steps);
    let specs = config.specs()?;
    specs
        .par_iter()
        .zip(config.param_values.par_iter())
        .map(|(spec, &v)| {
            let label = format!(
                "{}_{}{}",
                spec.kind().short_name(),
                config.swept.name(),
                format_value(v)
            );
            series_for(
                spec,
                label,
                &grid,
                config.omega,
                config.r,
                config.include_matrix,
            )
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub series: Vec<SweepSeries>,
    pub csv_files: Vec<PathBuf>,
    pub plot_script: PathBuf,
}

/// Computes the sweep and writes one CSV per value plus a gnuplot script.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    let series = sweep_series(config)?;
    let stem = format!(
        "{}_{}_sweep",
        config.noise.kind().short_name(),
        config.swept.name()
    );
    write_series_set(&config.outputs, &stem, series, PlotKind::Metrics)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PlotKind {
    Metrics,
    Entries,
    Extra,
}

fn write_series_set(
    dir: &Path,
    stem: &str,
    series: Vec<SweepSeries>,
    plot: PlotKind,
) -> Result<SweepOutput> {
    ensure_dir(dir)?;
    let mut csv_files = Vec::with_capacity(series.len());
    for s in &series {
        let path = dir.join(format!("{}.csv", s.label));
        write_atomic(&path, series_to_csv(s).as_bytes())?;
        csv_files.push(path);
    }
    let plot_script = dir.join(format!("{stem}.gp"));
    write_atomic(
        &plot_script,
        plot_script_text(stem, &series, plot).as_bytes(),
    )?;
    Ok(SweepOutput {
        series,
        csv_files,
        plot_script,
    })
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_header(series: &SweepSeries) -> String {
    let mut cols = vec!["tau", "beta", "purity", "entropy"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    cols.extend(series.extra_columns.iter().cloned());
    if series.records.first().is_some_and(|r| r.matrix.is_some()) {
        for i in 0..3 {
            for j in 0..3 {
                cols.push(format!("re_{i}{j}"));
                cols.push(format!("im_{i}{j}"));
            }
        }
    }
    cols.join(",")
}

pub fn series_to_csv(series: &SweepSeries) -> String {
    let mut out = csv_header(series);
    out.push('\n');
    for rec in &series.records {
        let mut fields = vec![
            fmt_f64(rec.tau),
            fmt_f64(rec.beta),
            fmt_f64(rec.purity),
            fmt_f64(rec.entropy),
        ];
        fields.extend(rec.extra.iter().map(|&v| fmt_f64(v)));
        if let Some(m) = &rec.matrix {
            for i in 0..3 {
                for j in 0..3 {
                    fields.push(fmt_f64(m[(i, j)].re));
                    fields.push(fmt_f64(m[(i, j)].im));
                }
            }
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn plot_script_text(stem: &str, series: &[SweepSeries], plot: PlotKind) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script for {stem}");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 1200,500");
    let _ = writeln!(s, "set output '{stem}.png'");
    let _ = writeln!(s, "set xlabel 'tau'");
    let panel = |s: &mut String, ylabel: &str, col: usize| {
        let _ = writeln!(s, "set ylabel '{ylabel}'");
        let curves: Vec<String> = series
            .iter()
            .map(|x| {
                format!(
                    "'{}.csv' using 1:{col} every ::1 with lines title '{}'",
                    x.label, x.label
                )
            })
            .collect();
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    };
    match plot {
        PlotKind::Metrics => {
            let _ = writeln!(s, "set multiplot layout 1,2");
            panel(&mut s, "purity", 3);
            panel(&mut s, "entropy", 4);
        }
        PlotKind::Entries => {
            // re_00 and re_02 follow the four metric columns.
            let _ = writeln!(s, "set multiplot layout 1,2");
            panel(&mut s, "Re rho_11", 5);
            panel(&mut s, "Re rho_13", 9);
        }
        PlotKind::Extra => {
            let _ = writeln!(s, "set multiplot layout 1,1");
            let name = series
                .first()
                .and_then(|x| x.extra_columns.first())
                .cloned()
                .unwrap_or_default();
            panel(&mut s, &name, 5);
        }
    }
    let _ = writeln!(s, "unset multiplot");
    s
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Write through a temporary file in the same directory and rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Tabulates β (and optionally the quadrature oracle) on a uniform grid.
pub fn beta_table(
    spec: &NoiseSpec,
    tau_max: f64,
    tau_steps: usize,
    quadrature_panels: Option<usize>,
) -> Result<SweepSeries> {
    spec.validate()?;
    if !(tau_max.is_finite() && tau_max > 0.0) || tau_steps < 2 {
        return Err(Error::InvalidParameter(
            "tau-max must be positive and tau-steps at least 2".into(),
        ));
    }
    let grid = uniform_grid(tau_max, tau_steps);
    let mut series = series_for(
        spec,
        spec.kind().short_name().to_string(),
        &grid,
        1.0,
        1.0,
        false,
    )?;
    if let Some(panels) = quadrature_panels {
        series.extra_columns.push("beta_quadrature".into());
        for rec in &mut series.records {
            rec.extra.push(beta_quadrature(spec, rec.tau, panels)?);
        }
    }
    Ok(series)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Purity,
    Entropy,
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "purity" => Ok(Measure::Purity),
            "entropy" => Ok(Measure::Entropy),
            other => Err(Error::InvalidParameter(format!(
                "unknown measure `{other}` (expected purity or entropy)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreservationTime {
    pub tau_star: f64,
    pub delta: f64,
    pub measure: Measure,
}

/// Distance of the measure from its saturation value at `tau`.
fn saturation_gap(spec: &NoiseSpec, omega: f64, measure: Measure, tau: f64) -> Result<f64> {
    let var = PhaseLaw::from_beta(beta_closed(spec, tau)?.beta, omega)?.variance();
    Ok(match measure {
        Measure::Purity => purity_closed(var)? - PURITY_SATURATION,
        Measure::Entropy => entropy_saturation() - vn_entropy_closed(var)?,
    })
}

const PRESERVATION_TAU_CAP: f64 = 1e12;

/// Smallest `tau` at which the measure is within `delta` of saturation.
///
/// The gap is monotone in β and β is increasing in `tau`, so the crossing
/// is unique; it is bracketed by doubling and then bisected.
pub fn preservation_time(
    spec: &NoiseSpec,
    omega: f64,
    delta: f64,
    measure: Measure,
) -> Result<PreservationTime> {
    spec.validate()?;
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "omega must be positive, got {omega}"
        )));
    }
    let gap = |tau| saturation_gap(spec, omega, measure, tau);
    if gap(0.0)? <= delta {
        return Err(Error::ThresholdMetAtStart { delta });
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while gap(hi)? > delta {
        lo = hi;
        hi *= 2.0;
        if hi > PRESERVATION_TAU_CAP {
            return Err(Error::ThresholdNotReached(PRESERVATION_TAU_CAP));
        }
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? <= delta {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(PreservationTime {
        tau_star: hi,
        delta,
        measure,
    })
}

/// Settings for one oracle run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub spec: NoiseSpec,
    pub tau: f64,
    pub steps: usize,
    pub samples: usize,
    pub seed: u64,
    pub omega: f64,
    pub r: f64,
}

pub fn run_oracle(config: &OracleConfig) -> Result<OracleReport> {
    if !(config.tau.is_finite() && config.tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "oracle tau must be positive, got {}",
            config.tau
        )));
    }
    let params = SystemParams {
        omega: config.omega,
        r: config.r,
        ..SystemParams::default()
    };
    params.validate()?;
    let grid = uniform_grid(config.tau, config.steps.max(1));
    let ens = sample_trajectories(&config.spec, &grid, config.samples, config.seed)?;
    mc_average_state(&initial_state(config.r)?, &ens, &params, grid.len() - 1)
}

/// `key = value` text for an oracle report; stable for a fixed seed.
pub fn oracle_report_text(rep: &OracleReport) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("noise", rep.spec.to_string());
    kv("tau", fmt_f64(rep.tau));
    kv("omega", fmt_f64(rep.omega));
    kv("beta", fmt_f64(rep.beta));
    kv("samples", rep.n_samples.to_string());
    kv("seed", rep.seed.to_string());
    kv("rng", rep.rng_algorithm.to_string());
    kv("grid_step", fmt_f64(rep.grid_step));
    kv("jitter", fmt_f64(rep.jitter));
    kv("max_abs_deviation", fmt_f64(rep.max_abs_deviation));
    kv("stderr_bound", fmt_f64(rep.stderr_bound));
    kv("within_bound", rep.within_bound().to_string());
    kv("phase_variance_analytic", fmt_f64(rep.variance_analytic));
    kv("phase_variance_empirical", fmt_f64(rep.variance_empirical));
    for m in &rep.moments {
        kv(&format!("cos{}_mean", m.n), fmt_f64(m.cos_mean));
        kv(&format!("cos{}_stderr", m.n), fmt_f64(m.cos_stderr));
        kv(&format!("sin{}_mean", m.n), fmt_f64(m.sin_mean));
        kv(&format!("sin{}_stderr", m.n), fmt_f64(m.sin_stderr));
    }
    for (name, rho) in [("analytic", &rep.analytic), ("empirical", &rep.empirical)] {
        for i in 0..3 {
            for j in 0..3 {
                let z = rho.entry(i, j);
                kv(
                    &format!("{name}_{i}{j}"),
                    format!("{},{}", fmt_f64(z.re), fmt_f64(z.im)),
                );
            }
        }
    }
    s
}

pub fn write_oracle_report(rep: &OracleReport, dir: &Path) -> Result<PathBuf> {
    ensure_dir(dir)?;
    let path = dir.join(format!("oracle_{}.txt", rep.spec.kind().short_name()));
    write_atomic(&path, oracle_report_text(rep).as_bytes())?;
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Noiseless,
    NoisePhase,
    Fgn,
    Gn,
    Ou,
    Pl,
    Joint,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::Noiseless,
        Figure::NoisePhase,
        Figure::Fgn,
        Figure::Gn,
        Figure::Ou,
        Figure::Pl,
        Figure::Joint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Noiseless => "noiseless",
            Figure::NoisePhase => "noisephase",
            Figure::Fgn => "fgn",
            Figure::Gn => "gn",
            Figure::Ou => "ou",
            Figure::Pl => "pl",
            Figure::Joint => "joint",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown figure `{s}` (expected one of noiseless, noisephase, fgn, gn, ou, pl, joint)"
                ))
            })
    }
}

/// Grid resolution used by the canned figures.
pub const FIGURE_STEPS: usize = 400;

fn sweep(noise: NoiseSpec, swept: SweptParam, values: &[f64], tau_max: f64) -> SweepConfig {
    SweepConfig {
        noise,
        swept,
        param_values: values.to_vec(),
        tau_max,
        tau_steps: FIGURE_STEPS,
        omega: 1.0,
        r: 1.0,
        include_matrix: false,
        outputs: PathBuf::new(),
    }
}

/// Sweep definitions behind each metric figure.
pub fn figure_sweeps(figure: Figure) -> Vec<SweepConfig> {
    let g_values = [1.0, 3.0, 10.0];
    match figure {
        Figure::Noiseless | Figure::NoisePhase => Vec::new(),
        Figure::Fgn => vec![sweep(
            NoiseSpec::FractionalGaussian { hurst: 0.5 },
            SweptParam::Hurst,
            &[0.1, 0.5, 0.9],
            2.0,
        )],
        Figure::Gn => vec![sweep(
            NoiseSpec::Gaussian { g: 1.0 },
            SweptParam::G,
            &g_values,
            2.0,
        )],
        Figure::Ou => vec![sweep(
            NoiseSpec::OrnsteinUhlenbeck { g: 1.0 },
            SweptParam::G,
            &g_values,
            2.0,
        )],
        Figure::Pl => vec![
            sweep(
                NoiseSpec::PowerLaw { g: 1.0, alpha: 3.0 },
                SweptParam::G,
                &g_values,
                2.0,
            ),
            sweep(
                NoiseSpec::PowerLaw { g: 0.5, alpha: 3.0 },
                SweptParam::Alpha,
                &[3.0, 5.0, 10.0],
                2.0,
            ),
        ],
        Figure::Joint => [
            NoiseSpec::Gaussian { g: 1e-3 },
            NoiseSpec::OrnsteinUhlenbeck { g: 1e-3 },
            NoiseSpec::PowerLaw {
                g: 1e-3,
                alpha: 3.0,
            },
        ]
        .into_iter()
        .map(|spec| sweep(spec, SweptParam::G, &[1e-3, 1e-2], 50.0))
        .collect(),
    }
}

/// Series behind a figure, in memory.
pub fn figure_series(figure: Figure) -> Result<Vec<SweepSeries>> {
    match figure {
        Figure::Noiseless => {
            let grid = uniform_grid(15.0, 1500);
            [0.5, 1.0]
                .into_iter()
                .map(|omega| {
                    let params = SystemParams {
                        omega,
                        ..SystemParams::default()
                    };
                    fluctuation_series(&params, &grid)
                })
                .collect()
        }
        Figure::NoisePhase => {
            let grid = uniform_grid(3.0, FIGURE_STEPS);
            [
                NoiseSpec::FractionalGaussian { hurst: 0.5 },
                NoiseSpec::Gaussian { g: 1.0 },
                NoiseSpec::OrnsteinUhlenbeck { g: 1.0 },
                NoiseSpec::PowerLaw { g: 1.0, alpha: 5.0 },
            ]
            .iter()
            .map(|spec| {
                let label = format!("noisephase_{}", spec.kind().short_name());
                let mut s = series_for(spec, label, &grid, 1.0, 1.0, false)?;
                s.extra_columns.push("dephasing_n2".into());
                for rec in &mut s.records {
                    rec.extra
                        .push(PhaseLaw::from_beta(rec.beta, 1.0)?.characteristic(2));
                }
                Ok(s)
            })
            .collect()
        }
        _ => {
            let mut out = Vec::new();
            for cfg in figure_sweeps(figure) {
                out.extend(sweep_series(&cfg)?);
            }
            Ok(out)
        }
    }
}

/// Computes a figure's series and writes CSVs plus a plot script to `dir`.
pub fn figure(figure: Figure, dir: &Path) -> Result<SweepOutput> {
    let series = figure_series(figure)?;
    let plot = match figure {
        Figure::Noiseless => PlotKind::Entries,
        Figure::NoisePhase => PlotKind::Extra,
        _ => PlotKind::Metrics,
    };
    let stem = format!("fig_{}", figure.name());
    let series = series
        .into_iter()
        .map(|mut s| {
            s.label = format!("{stem}_{}", s.label);
            s
        })
        .collect();
    write_series_set(dir, &stem, series, plot)
}

/// Parses `key = value` lines; `#` starts a comment. Keys are normalised to
/// the long flag spelling (`tau_max` and `tau-max` are the same key).
pub fn parse_config(text: &str, origin: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
            path: origin.to_string(),
            line: idx + 1,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(Error::Config {
                path: origin.to_string(),
                line: idx + 1,
                msg: "empty key".into(),
            });
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, &path.display().to_string())
}
