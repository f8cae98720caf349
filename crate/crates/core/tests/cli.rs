use std::path::PathBuf;
use std::process::{Command, Output};

use hardy_dirichlet::io::{parse_dirichlet, parse_monomial, parse_series, SeriesFile};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .output()
        .expect("run hardy")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV output, without the version comment and header.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# hardy-csv v1 "));
    let body = lines.collect::<Vec<_>>().join("\n");
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn lift_single_prime() {
    let text = stdout(&hardy(&["lift", &fixture("dirichlet_2.txt")]));
    let f = parse_monomial::<f64>(&text).unwrap();
    assert_eq!(f.len(), 1);
    assert!(text.lines().nth(1).unwrap().starts_with("1 1 1.0"));
}

#[test]
fn lift_then_drop_round_trips_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let lifted = dir.join("lifted.txt");
    let input = fixture("dirichlet_123.txt");
    stdout(&hardy(&["lift", &input, "-o", lifted.to_str().unwrap()]));
    let dropped = stdout(&hardy(&["drop", lifted.to_str().unwrap()]));
    assert_eq!(dropped, std::fs::read_to_string(input).unwrap());
}

#[test]
fn norm_of_three_terms() {
    let rows = csv_rows(&stdout(&hardy(&["norm", &fixture("dirichlet_123.txt"), "--p", "2"])));
    let value: f64 = rows[0][1].parse().unwrap();
    assert!((value - 3f64.sqrt()).abs() <= 1e-12);
    assert_eq!(rows[0][2], "exact_parseval");

    let rows = csv_rows(&stdout(&hardy(&[
        "norm",
        &fixture("dirichlet_123.txt"),
        "--p",
        "2",
        "--method",
        "tensor-grid",
    ])));
    let value: f64 = rows[0][1].parse().unwrap();
    assert!((value - 3f64.sqrt()).abs() <= 1e-12);
}

#[test]
fn coeffs_recover_the_input() {
    let rows = csv_rows(&stdout(&hardy(&["coeffs", &fixture("dirichlet_123.txt")])));
    assert_eq!(rows.len(), 4);
    for row in rows {
        let err: f64 = row[4].parse().unwrap();
        assert!(err < 1e-15, "{row:?}");
    }
}

#[test]
fn translate_and_truncate() {
    let text = stdout(&hardy(&["translate", &fixture("dirichlet_123.txt"), "--eps", "1"]));
    let d = parse_dirichlet::<f64>(&text).unwrap();
    assert!((d.coefficient(2).re - 0.5).abs() < 1e-15);
    assert!((d.coefficient(3).re - 1.0 / 3.0).abs() < 1e-15);

    let text = stdout(&hardy(&["truncate", &fixture("dirichlet_123.txt"), "--x", "2.5"]));
    assert_eq!(parse_dirichlet::<f64>(&text).unwrap().len(), 2);
    assert_eq!(hardy(&["truncate", &fixture("dirichlet_123.txt"), "--x", "0.5"]).status.code(), Some(1));
}

#[test]
fn verify_bounds_all_hold() {
    let rows = csv_rows(&stdout(&hardy(&["verify-bounds", &fixture("dirichlet_123.txt")])));
    assert_eq!(rows.len(), 16 + 6 + 6);
    assert!(rows.iter().all(|r| r[5] == "true"), "{rows:?}");
}

#[test]
fn bayart_mean_is_close_to_parseval() {
    let rows = csv_rows(&stdout(&hardy(&["bayart-mean", &fixture("dirichlet_123.txt")])));
    let value: f64 = rows[0][3].parse().unwrap();
    assert!((value - 3f64.sqrt()).abs() < 0.02 * 3f64.sqrt());
}

#[test]
fn dirichlet_montel_certifies_the_monomial_family() {
    let text = stdout(&hardy(&[
        "dirichlet-montel",
        &fixture("monomial_family.txt"),
        "--eps",
        "0.5",
        "--eta",
        "0.2",
    ]));
    assert!(text.starts_with("# hardy-report v1 dirichlet-montel\n"));
    assert!(text.contains("\ncertified: true\n"));
    let selected = text
        .lines()
        .find_map(|l| l.strip_prefix("selected_indices: "))
        .unwrap();
    // Family index i holds n = i + 2.
    assert!(selected.split(',').all(|i| i.parse::<u64>().unwrap() + 2 >= 45));
    let untranslated: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("untranslated_max: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((untranslated - 2f64.sqrt()).abs() < 1e-12);
    assert!(text.contains("# hardy-csv v1 dirichlet-montel\n"));
}

#[test]
fn montel_extract_with_config() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let stages = dir.join("stages.csv");
    let text = stdout(&hardy(&[
        "--config",
        &fixture("run.toml"),
        "montel-extract",
        &fixture("power_family.txt"),
        "--stages",
        stages.to_str().unwrap(),
    ]));
    assert!(text.contains("\ncertified: true\n"));
    assert!(text.contains("\nlimit_check: pass\n"));
    assert!(text.contains("limit: monomial v1\n"));
    let rows = csv_rows(&std::fs::read_to_string(stages).unwrap());
    assert!(!rows.is_empty());
    for row in rows {
        let tol: f64 = row[2].parse().unwrap();
        let diam: f64 = row[3].parse().unwrap();
        assert!(diam <= 2.0 * tol);
    }
}

#[test]
fn gen_random_bytes_and_terms() {
    let args = ["gen-random", "--terms", "7", "--max-n", "100", "--seed", "42", "--law", "unit-square"];
    let a = stdout(&hardy(&args));
    let b = stdout(&hardy(&args));
    assert_eq!(a, b);
    match parse_series::<f64>(&a).unwrap() {
        SeriesFile::Dirichlet(d) => {
            assert_eq!(d.len(), 7);
            assert!(d.iter().all(|(_, c)| c.re.abs() <= 1.0 && c.im.abs() <= 1.0));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn exit_codes() {
    assert_eq!(hardy(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(hardy(&["norm"]).status.code(), Some(64));
    assert_eq!(hardy(&["--version"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "dirichlet v1\n3 1 0\n2 1 0\n").unwrap();
    let out = hardy(&["norm", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let cfg = dir.join("cap.toml");
    std::fs::write(&cfg, "seed = 1\n[quadrature]\nmethod = \"tensor_grid\"\nmax_total_points = 4\n").unwrap();
    let out = hardy(&["--config", cfg.to_str().unwrap(), "norm", &fixture("dirichlet_123.txt"), "--p", "3"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    let cfg = dir.join("noseed.toml");
    std::fs::write(&cfg, "p = 2.0\n").unwrap();
    assert_eq!(hardy(&["--config", cfg.to_str().unwrap(), "norm", &fixture("dirichlet_2.txt")]).status.code(), Some(1));
}
