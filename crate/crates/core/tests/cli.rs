use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sim"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("run sim")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
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

#[test]
fn sweep_output_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = sim(&[
            "sweep",
            "--noise",
            "gn",
            "--g",
            "1,3,10",
            "--tau-max",
            "2",
            "--tau-steps",
            "50",
            "--matrix",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let fa = read_dir_sorted(a.path());
    assert_eq!(fa.len(), 4);
    assert_eq!(fa, read_dir_sorted(b.path()));
    let csv = String::from_utf8(fa[0].1.clone()).unwrap();
    assert!(csv.starts_with("tau,beta,purity,entropy,re_00,im_00"));
    assert_eq!(csv.lines().count(), 52);
}

#[test]
fn oracle_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "oracle",
        "--noise",
        "ou",
        "--g",
        "2",
        "--samples",
        "3000",
        "--seed",
        "7",
        "--tau-steps",
        "50",
        "--out",
        dir.path().to_str().unwrap(),
    ];
    let first = sim(&args);
    assert_eq!(
        code(&first),
        0,
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let report = fs::read(dir.path().join("oracle_ou.txt")).unwrap();
    let second = sim(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(report, fs::read(dir.path().join("oracle_ou.txt")).unwrap());
    let text = String::from_utf8(report).unwrap();
    assert!(text.contains("within_bound = true"));
    assert!(text.contains("seed = 7"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&sim(&["--help"])), 0);
    assert_eq!(code(&sim(&["--version"])), 0);
    assert_eq!(code(&sim(&[])), 1);
    assert_eq!(code(&sim(&["frobnicate"])), 1);
    assert_eq!(code(&sim(&["sweep", "--tau-steps", "many"])), 1);
    assert_eq!(code(&sim(&["beta"])), 1, "missing --noise");
    assert_eq!(code(&sim(&["beta", "--noise", "pink"])), 1);
    assert_eq!(
        code(&sim(&["preservation", "--noise", "ou"])),
        1,
        "missing --delta"
    );
    assert_eq!(
        code(&sim(&["oracle", "--noise", "ou", "--samples", "0"])),
        1
    );
    assert_eq!(code(&sim(&["figure", "nope"])), 1);

    assert_eq!(code(&sim(&["beta", "--noise", "ou", "--g=-1"])), 2);
    assert_eq!(code(&sim(&["beta", "--noise", "fgn", "--hurst", "1.5"])), 2);
    assert_eq!(code(&sim(&["beta", "--noise", "gn", "--alpha", "3"])), 2);
    assert_eq!(code(&sim(&["beta", "--noise", "pl", "--alpha", "1.5"])), 2);
    assert_eq!(
        code(&sim(&["sweep", "--noise", "ou", "--tau-steps", "1"])),
        2
    );
    assert_eq!(
        code(&sim(&["preservation", "--noise", "ou", "--delta", "0.5"])),
        2,
        "threshold met at tau = 0"
    );
}

#[test]
fn oracle_bound_violation_exits_3() {
    // One trapezoid step across five correlation times overestimates the
    // phase variance by about 60%, far outside 3/sqrt(N).
    let dir = tempfile::tempdir().unwrap();
    let out = sim(&[
        "oracle",
        "--noise",
        "gn",
        "--g",
        "10",
        "--tau-max",
        "0.5",
        "--tau-steps",
        "1",
        "--samples",
        "50000",
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("within_bound = false"));
    assert!(dir.path().join("oracle_gn.txt").exists());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# defaults\nnoise = ou\ng = 5\ndelta = 1e-3\nmeasure = purity\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = sim(&["preservation", "--config", cfg]);
    assert_eq!(
        code(&from_file),
        0,
        "{}",
        String::from_utf8_lossy(&from_file.stderr)
    );
    let text = String::from_utf8(from_file.stdout).unwrap();
    assert!(text.contains("noise = ou(g=5)"), "{text}");

    let overridden = sim(&["preservation", "--config", cfg, "--g", "0.5"]);
    let text = String::from_utf8(overridden.stdout).unwrap();
    assert!(text.contains("noise = ou(g=0.5)"), "{text}");

    fs::write(dir.path().join("bad.cfg"), "noise ou\n").unwrap();
    let bad = sim(&[
        "beta",
        "--config",
        dir.path().join("bad.cfg").to_str().unwrap(),
    ]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad.cfg:1"));
}

#[test]
fn beta_prints_csv_to_stdout() {
    let out = sim(&[
        "beta",
        "--noise",
        "pl",
        "--g",
        "1",
        "--alpha",
        "5",
        "--tau-max",
        "1",
        "--tau-steps",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "tau,beta,purity,entropy");
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with(
        "0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0"
    ));
}

#[test]
fn figure_writes_csvs_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = sim(&["figure", "noiseless", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let names: Vec<String> = read_dir_sorted(dir.path())
        .into_iter()
        .map(|f| f.0)
        .collect();
    assert_eq!(
        names,
        [
            "fig_noiseless.gp",
            "fig_noiseless_noiseless_omega0.5.csv",
            "fig_noiseless_noiseless_omega1.csv"
        ]
    );
}
