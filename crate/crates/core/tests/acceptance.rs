//! Acceptance gate. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line each; exits nonzero if any fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use qutrit_sim::dynamics::{evolve_averaged, initial_state, PhaseLaw, SystemParams};
use qutrit_sim::experiment::{
    figure_series, figure_sweeps, preservation_time, sweep_series, Figure, Measure,
};
use qutrit_sim::metrics::{purity, purity_closed, vn_entropy_closed, PURITY_SATURATION};
use qutrit_sim::noise::{beta_closed, beta_quadrature, NoiseKind, NoiseSpec};
use qutrit_sim::oracle::{mc_average_state, sample_trajectories, uniform_grid};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// A time at which the family's beta reaches at least `target`.
fn tau_for_beta(spec: &NoiseSpec, target: f64) -> (f64, f64) {
    let mut tau = 1.0;
    loop {
        let beta = beta_closed(spec, tau).unwrap().beta;
        if beta >= target {
            return (tau, beta);
        }
        tau *= 2.0;
    }
}

fn saturating_specs() -> Vec<NoiseSpec> {
    vec![
        NoiseSpec::FractionalGaussian { hurst: 0.1 },
        NoiseSpec::FractionalGaussian { hurst: 0.5 },
        NoiseSpec::FractionalGaussian { hurst: 0.9 },
        NoiseSpec::Gaussian { g: 1.0 },
        NoiseSpec::OrnsteinUhlenbeck { g: 1.0 },
        NoiseSpec::PowerLaw { g: 1.0, alpha: 3.0 },
        NoiseSpec::PowerLaw {
            g: 1.0,
            alpha: 10.0,
        },
        NoiseSpec::Gaussian { g: 1e-3 },
        NoiseSpec::OrnsteinUhlenbeck { g: 1e-3 },
        NoiseSpec::PowerLaw {
            g: 1e-3,
            alpha: 3.0,
        },
    ]
}

fn purity_saturation() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut in_band = true;
    for spec in saturating_specs() {
        for target in [5.0, 20.0] {
            let (_, beta) = tau_for_beta(&spec, target);
            let p = purity_closed(beta).unwrap();
            worst = worst.max((p - PURITY_SATURATION).abs());
            in_band &= (PURITY_SATURATION..=PURITY_SATURATION + 1e-8).contains(&p);
        }
    }
    check(
        worst <= 1e-6 && in_band,
        format!("max |P - 17/18| = {worst:.2e} over 10 specs at beta >= 5"),
    )
}

fn entropy_saturation() -> Outcome {
    let mut worst: f64 = 0.0;
    for spec in saturating_specs() {
        for target in [5.0, 20.0] {
            let (_, beta) = tau_for_beta(&spec, target);
            worst = worst.max((vn_entropy_closed(beta).unwrap() - 0.1302).abs());
        }
    }
    check(worst <= 1e-3, format!("max |S - 0.1302| = {worst:.2e}"))
}

fn beta_quadrature_agreement() -> Outcome {
    let mut specs: Vec<NoiseSpec> = [0.1, 0.5, 0.9]
        .map(|hurst| NoiseSpec::FractionalGaussian { hurst })
        .to_vec();
    for g in [1.0, 5.0] {
        specs.push(NoiseSpec::Gaussian { g });
        specs.push(NoiseSpec::OrnsteinUhlenbeck { g });
        for alpha in [3.0, 5.0, 10.0] {
            specs.push(NoiseSpec::PowerLaw { g, alpha });
        }
    }
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for spec in &specs {
        for tau in [0.5, 2.0] {
            let exact = beta_closed(spec, tau).unwrap().beta;
            let quad = beta_quadrature(spec, tau, 1024).unwrap();
            worst = worst.max((quad - exact).abs() / exact);
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        count >= 20 && worst <= 1e-6 && secs < 10.0,
        format!("{count} combos, max rel err {worst:.2e}, {secs:.2} s"),
    )
}

fn oracle_equivalence() -> Outcome {
    let n = 50_000;
    let grid = uniform_grid(1.0, 200);
    let rho0 = initial_state(1.0).unwrap();
    let params = SystemParams::default();
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for kind in NoiseKind::ALL {
        let spec = NoiseSpec::default_for(kind);
        let ens = sample_trajectories(&spec, &grid, n, 20_240_601).unwrap();
        let rep = mc_average_state(&rho0, &ens, &params, 200).unwrap();
        ok &= rep.within_bound();
        parts.push(format!(
            "{}={:.1e}",
            kind.short_name(),
            rep.max_abs_deviation
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        ok && secs < 120.0,
        format!(
            "N={n}, bound {:.4}, {}, {secs:.1} s",
            3.0 / (n as f64).sqrt(),
            parts.join(" ")
        ),
    )
}

fn averaged_matrix_identity() -> Outcome {
    let rho0 = initial_state(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for beta in [0.0, 0.5, 2.0, 10.0] {
        let rho = evolve_averaged(&rho0, &PhaseLaw::from_beta(beta, 1.0).unwrap());
        let e = (-2.0 * beta).exp();
        let corner = (3.0 + e) / 12.0;
        let centre = 0.5 - e / 6.0;
        for i in 0..3 {
            for j in 0..3 {
                let want = match (i, j) {
                    (1, 1) => centre,
                    (0 | 2, 0 | 2) => corner,
                    _ => 1.0 / 3.0,
                };
                worst = worst.max((rho.entry(i, j) - want).norm());
            }
        }
        let p = (17.0 + (-4.0 * beta).exp()) / 18.0;
        worst = worst.max((purity(&rho) - p).abs());
    }
    check(
        worst <= 1e-12,
        format!("max entry/purity error {worst:.2e}"),
    )
}

fn rank_two() -> Outcome {
    let rho0 = initial_state(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..=200 {
        let beta = 0.05 * k as f64;
        let rho = evolve_averaged(&rho0, &PhaseLaw::from_beta(beta, 1.0).unwrap());
        worst = worst.max(rho.eigenvalues()[0].abs());
    }
    check(
        worst <= 1e-10,
        format!("max |lambda_3| = {worst:.2e} over 201 beta values"),
    )
}

fn monotone_decay() -> Outcome {
    let mut curves = 0;
    let mut bad = Vec::new();
    for fig in [
        Figure::Fgn,
        Figure::Gn,
        Figure::Ou,
        Figure::Pl,
        Figure::Joint,
    ] {
        for s in figure_series(fig).unwrap() {
            curves += 1;
            let p = s.purities();
            let e = s.entropies();
            let ok = p.windows(2).all(|w| w[1] <= w[0]) && e.windows(2).all(|w| w[1] >= w[0]);
            if !ok {
                bad.push(s.label.clone());
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{curves} curves checked, non-monotone: {bad:?}"),
    )
}

fn g_ordering() -> Outcome {
    let mut sweeps = figure_sweeps(Figure::Gn);
    sweeps.extend(figure_sweeps(Figure::Ou));
    sweeps.push(figure_sweeps(Figure::Pl).remove(0));
    let mut bad = Vec::new();
    let mut points = 0;
    for cfg in &sweeps {
        assert_eq!(cfg.param_values, [1.0, 3.0, 10.0]);
        let series = sweep_series(cfg).unwrap();
        for k in 1..series[0].records.len() {
            let p: Vec<f64> = series.iter().map(|s| s.records[k].purity).collect();
            points += 1;
            if !(p[0] > p[1] && p[1] > p[2]) {
                bad.push(format!(
                    "{} tau={}",
                    cfg.noise.kind().short_name(),
                    series[0].records[k].tau
                ));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{points} (family, tau) points, violations: {}", bad.len()),
    )
}

fn hurst_crossover() -> Outcome {
    let b = |hurst, tau| {
        beta_closed(&NoiseSpec::FractionalGaussian { hurst }, tau)
            .unwrap()
            .beta
    };
    let early = b(0.9, 0.5) < b(0.5, 0.5) && b(0.5, 0.5) < b(0.1, 0.5);
    let late = b(0.9, 2.0) > b(0.5, 2.0) && b(0.5, 2.0) > b(0.1, 2.0);
    check(
        early && late,
        format!(
            "tau=0.5: {:.4} < {:.4} < {:.4}; tau=2: {:.4} > {:.4} > {:.4}",
            b(0.9, 0.5),
            b(0.5, 0.5),
            b(0.1, 0.5),
            b(0.9, 2.0),
            b(0.5, 2.0),
            b(0.1, 2.0)
        ),
    )
}

fn preservation_ratio() -> Outcome {
    let delta = 1e-3;
    let t = |spec: NoiseSpec| {
        preservation_time(&spec, 1.0, delta, Measure::Purity)
            .unwrap()
            .tau_star
    };
    let ou = t(NoiseSpec::OrnsteinUhlenbeck { g: 1e-3 });
    let gn = t(NoiseSpec::Gaussian { g: 1e-3 });
    let pl = t(NoiseSpec::PowerLaw {
        g: 1e-3,
        alpha: 3.0,
    });
    let ratio = ou / pl;
    let rel = ratio / 2f64.sqrt() - 1.0;
    check(
        rel.abs() <= 0.05 && ou > gn && ou > pl,
        format!(
            "delta={delta}: tau*_OU={ou:.2} tau*_Gn={gn:.2} tau*_PL={pl:.2}, ratio {ratio:.4} ({:+.2}% from sqrt 2)",
            100.0 * rel
        ),
    )
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn cli_determinism() -> Outcome {
    let runs: Vec<Vec<(String, Vec<u8>)>> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().to_str().unwrap();
            for args in [
                vec![
                    "sweep", "--noise", "pl", "--g", "1,3,10", "--alpha", "3", "--matrix", "--out",
                    out,
                ],
                vec!["figure", "noisephase", "--out", out],
                vec![
                    "oracle",
                    "--noise",
                    "ou",
                    "--samples",
                    "5000",
                    "--seed",
                    "3",
                    "--out",
                    out,
                ],
            ] {
                let status = Command::new(env!("CARGO_BIN_EXE_sim"))
                    .args(&args)
                    .env("RUST_LOG", "off")
                    .output()
                    .unwrap()
                    .status;
                assert!(status.success(), "{args:?}");
            }
            snapshot(dir.path())
        })
        .collect();
    let csvs = runs[0].iter().filter(|f| f.0.ends_with(".csv")).count();
    check(
        runs[0] == runs[1] && csvs > 0,
        format!("{} files ({csvs} CSV) compared", runs[0].len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("purity saturation 17/18", purity_saturation),
        ("entropy saturation 0.1302", entropy_saturation),
        ("beta closed form vs quadrature", beta_quadrature_agreement),
        ("Monte-Carlo oracle equivalence", oracle_equivalence),
        ("averaged matrix identity", averaged_matrix_identity),
        ("rank-2 averaged state", rank_two),
        ("monotone revival-free decay", monotone_decay),
        ("g-ordering of purity curves", g_ordering),
        ("fGn Hurst crossover", hurst_crossover),
        ("preservation-time ratio OU/PL", preservation_ratio),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
