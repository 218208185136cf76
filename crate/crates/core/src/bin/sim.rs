//! `sim` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 oracle
//! result outside its statistical bound.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use qutrit_sim::experiment::{
    beta_table, figure, oracle_report_text, preservation_time, read_config, run_oracle, run_sweep,
    series_to_csv, write_atomic, write_oracle_report, Figure, Measure, OracleConfig, SweepConfig,
    SweptParam,
};
use qutrit_sim::noise::{NoiseKind, NoiseSpec};
use qutrit_sim::oracle::DEFAULT_STEPS;
use qutrit_sim::Error;

#[derive(Parser, Debug)]
#[command(
    name = "sim",
    version,
    about = "Spin-1 dephasing under classical noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate the accumulated phase variance beta(tau).
    Beta {
        #[command(flatten)]
        opts: Opts,
        /// Add a `beta_quadrature` column computed with this many panels.
        #[arg(long)]
        panels: Option<usize>,
    },
    /// Purity and entropy over tau for a list of parameter values.
    Sweep {
        #[command(flatten)]
        opts: Opts,
    },
    /// Smallest tau at which purity or entropy is within delta of saturation.
    Preservation {
        #[command(flatten)]
        opts: Opts,
    },
    /// Monte-Carlo check of the averaged state against the closed form.
    Oracle {
        #[command(flatten)]
        opts: Opts,
    },
    /// Regenerate one of the canned figure data sets.
    Figure {
        /// noiseless, noisephase, fgn, gn, ou, pl or joint
        name: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Debug, Default)]
struct Opts {
    /// fgn, gn, ou or pl
    #[arg(long)]
    noise: Option<String>,
    /// Hurst index; comma-separated to sweep.
    #[arg(long)]
    hurst: Option<String>,
    /// Noise rate g; comma-separated to sweep.
    #[arg(long)]
    g: Option<String>,
    /// Power-law exponent; comma-separated to sweep.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    omega: Option<f64>,
    /// Initial-state purity parameter in [0, 1].
    #[arg(long)]
    r: Option<f64>,
    #[arg(long = "tau-max")]
    tau_max: Option<f64>,
    #[arg(long = "tau-steps")]
    tau_steps: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    /// purity or entropy
    #[arg(long)]
    measure: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Include the averaged matrix entries in sweep output.
    #[arg(long)]
    matrix: bool,
}

enum Failure {
    Usage(String),
    Lib(Error),
    OutOfBound,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

/// Flags merged with the optional config file.
struct Settings {
    opts: Opts,
    config: BTreeMap<String, String>,
}

impl Settings {
    fn load(opts: Opts) -> CliResult<Self> {
        let config = match &opts.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        Ok(Settings { opts, config })
    }

    fn raw(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.config.get(key).cloned())
    }

    fn parsed<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.config.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .or_else(|_| usage(format!("config value for `{key}` is not valid: `{v}`"))),
        }
    }

    fn list(&self, flag: Option<String>, key: &str) -> CliResult<Option<Vec<f64>>> {
        let Some(text) = self.raw(flag, key) else {
            return Ok(None);
        };
        text.split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .or_else(|_| usage(format!("`--{key}` expects numbers, got `{x}`")))
            })
            .collect::<CliResult<Vec<_>>>()
            .map(Some)
    }

    fn single(&self, flag: Option<String>, key: &str) -> CliResult<Option<f64>> {
        match self.list(flag, key)? {
            None => Ok(None),
            Some(v) if v.len() == 1 => Ok(Some(v[0])),
            Some(_) => usage(format!("`--{key}` takes a single value here")),
        }
    }

    fn kind(&self) -> CliResult<NoiseKind> {
        match self.raw(self.opts.noise.clone(), "noise") {
            Some(name) => name
                .parse()
                .or_else(|_| usage(format!("unknown noise family `{name}`"))),
            None => usage("`--noise` is required"),
        }
    }

    fn spec(&self) -> CliResult<NoiseSpec> {
        let kind = self.kind()?;
        let hurst = self.single(self.opts.hurst.clone(), "hurst")?;
        let g = self.single(self.opts.g.clone(), "g")?;
        let alpha = self.single(self.opts.alpha.clone(), "alpha")?;
        Ok(NoiseSpec::from_parts(kind, hurst, g, alpha)?)
    }

    fn omega(&self) -> CliResult<f64> {
        Ok(self.parsed(self.opts.omega, "omega")?.unwrap_or(1.0))
    }

    fn r(&self) -> CliResult<f64> {
        Ok(self.parsed(self.opts.r, "r")?.unwrap_or(1.0))
    }

    fn out(&self) -> CliResult<Option<PathBuf>> {
        self.parsed(self.opts.out.clone(), "out")
    }

    fn matrix(&self) -> CliResult<bool> {
        if self.opts.matrix {
            return Ok(true);
        }
        Ok(self.parsed(None, "matrix")?.unwrap_or(false))
    }
}

fn cmd_beta(s: &Settings, panels: Option<usize>) -> CliResult<()> {
    let spec = s.spec()?;
    let tau_max = s.parsed(s.opts.tau_max, "tau-max")?.unwrap_or(2.0);
    let steps = s.parsed(s.opts.tau_steps, "tau-steps")?.unwrap_or(200);
    let series = beta_table(&spec, tau_max, steps, panels)?;
    let csv = series_to_csv(&series);
    match s.out()? {
        Some(dir) => {
            std::fs::create_dir_all(&dir)
                .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("beta_{}.csv", spec.kind().short_name()));
            write_atomic(&path, csv.as_bytes())?;
            println!("{}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_sweep(s: &Settings) -> CliResult<()> {
    let kind = s.kind()?;
    let hurst = s.list(s.opts.hurst.clone(), "hurst")?;
    let g = s.list(s.opts.g.clone(), "g")?;
    let alpha = s.list(s.opts.alpha.clone(), "alpha")?;

    // The swept parameter is the one given as a list; otherwise the
    // family's primary parameter.
    let multi = |v: &Option<Vec<f64>>| v.as_ref().is_some_and(|v| v.len() > 1);
    let candidates: Vec<SweptParam> = [
        (SweptParam::Hurst, &hurst),
        (SweptParam::G, &g),
        (SweptParam::Alpha, &alpha),
    ]
    .into_iter()
    .filter(|(_, v)| multi(v))
    .map(|(p, _)| p)
    .collect();
    let swept = match candidates.as_slice() {
        [] if kind == NoiseKind::FractionalGaussian => SweptParam::Hurst,
        [] => SweptParam::G,
        [one] => *one,
        _ => return usage("only one parameter can be swept at a time"),
    };
    let first = |v: &Option<Vec<f64>>| v.as_ref().map(|v| v[0]);
    let (values, fixed) = match swept {
        SweptParam::Hurst => (hurst.clone(), (None, first(&g), first(&alpha))),
        SweptParam::G => (g.clone(), (first(&hurst), None, first(&alpha))),
        SweptParam::Alpha => (alpha.clone(), (first(&hurst), first(&g), None)),
    };
    let base = NoiseSpec::from_parts(kind, fixed.0, fixed.1, fixed.2)?;
    let param_values = match values {
        Some(v) => v,
        None => vec![match (swept, base) {
            (SweptParam::Hurst, NoiseSpec::FractionalGaussian { hurst }) => hurst,
            (SweptParam::Alpha, NoiseSpec::PowerLaw { alpha, .. }) => alpha,
            (_, NoiseSpec::Gaussian { g } | NoiseSpec::OrnsteinUhlenbeck { g })
            | (_, NoiseSpec::PowerLaw { g, .. }) => g,
            (_, NoiseSpec::FractionalGaussian { hurst }) => hurst,
        }],
    };
    let config = SweepConfig {
        noise: base,
        swept,
        param_values,
        tau_max: s.parsed(s.opts.tau_max, "tau-max")?.unwrap_or(2.0),
        tau_steps: s.parsed(s.opts.tau_steps, "tau-steps")?.unwrap_or(200),
        omega: s.omega()?,
        r: s.r()?,
        include_matrix: s.matrix()?,
        outputs: s.out()?.unwrap_or_else(|| PathBuf::from(".")),
    };
    let out = run_sweep(&config)?;
    for path in out
        .csv_files
        .iter()
        .chain(std::iter::once(&out.plot_script))
    {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_preservation(s: &Settings) -> CliResult<()> {
    let spec = s.spec()?;
    let Some(delta) = s.parsed(s.opts.delta, "delta")? else {
        return usage("`--delta` is required for preservation");
    };
    let measure = match s.raw(s.opts.measure.clone(), "measure") {
        Some(m) => m.parse::<Measure>().or_else(|e| usage(e.to_string()))?,
        None => Measure::Purity,
    };
    let t = preservation_time(&spec, s.omega()?, delta, measure)?;
    let text = format!(
        "noise = {spec}\nmeasure = {}\ndelta = {:.16e}\ntau_star = {:.16e}\n",
        match measure {
            Measure::Purity => "purity",
            Measure::Entropy => "entropy",
        },
        t.delta,
        t.tau_star
    );
    print!("{text}");
    if let Some(dir) = s.out()? {
        std::fs::create_dir_all(&dir)
            .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        write_atomic(
            &dir.join(format!("preservation_{}.txt", spec.kind().short_name())),
            text.as_bytes(),
        )?;
    }
    Ok(())
}

fn cmd_oracle(s: &Settings) -> CliResult<()> {
    let spec = s.spec()?;
    let samples = s.parsed(s.opts.samples, "samples")?.unwrap_or(50_000);
    if samples == 0 {
        return usage("`--samples` must be at least 1");
    }
    let config = OracleConfig {
        spec,
        tau: s.parsed(s.opts.tau_max, "tau-max")?.unwrap_or(1.0),
        steps: s
            .parsed(s.opts.tau_steps, "tau-steps")?
            .unwrap_or(DEFAULT_STEPS),
        samples,
        seed: s.parsed(s.opts.seed, "seed")?.unwrap_or(0),
        omega: s.omega()?,
        r: s.r()?,
    };
    let report = run_oracle(&config)?;
    print!("{}", oracle_report_text(&report));
    let dir = s.out()?.unwrap_or_else(|| PathBuf::from("."));
    write_oracle_report(&report, &dir)?;
    if report.within_bound() {
        Ok(())
    } else {
        Err(Failure::OutOfBound)
    }
}

fn cmd_figure(s: &Settings, name: &str) -> CliResult<()> {
    let fig = name.parse::<Figure>().or_else(|e| usage(e.to_string()))?;
    let dir = s.out()?.unwrap_or_else(|| PathBuf::from("."));
    let out = figure(fig, &dir)?;
    for path in out
        .csv_files
        .iter()
        .chain(std::iter::once(&out.plot_script))
    {
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Beta { opts, panels } => cmd_beta(&Settings::load(opts)?, panels),
        Command::Sweep { opts } => cmd_sweep(&Settings::load(opts)?),
        Command::Preservation { opts } => cmd_preservation(&Settings::load(opts)?),
        Command::Oracle { opts } => cmd_oracle(&Settings::load(opts)?),
        Command::Figure { name, opts } => cmd_figure(&Settings::load(opts)?, &name),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = run(cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
        Err(Failure::OutOfBound) => {
            eprintln!("error: Monte-Carlo deviation exceeds the 3/sqrt(N) bound");
            ExitCode::from(3)
        }
    }
}
