//! End-to-end tests of the zetalab binary: exit codes, report schemas,
//! config handling, and determinism.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 report")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 diagnostics")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// Data rows of a CSV report: everything that is neither preamble nor
/// trailer comment nor header.
fn csv_rows(report: &str) -> Vec<Vec<String>> {
    report
        .lines()
        .filter(|line| !line.starts_with('#') && !line.is_empty())
        .skip(1)
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect()
}

fn column(report: &str, name: &str) -> usize {
    report
        .lines()
        .find(|line| !line.starts_with('#'))
        .expect("header line")
        .split(',')
        .position(|c| c == name)
        .unwrap_or_else(|| panic!("column {name} exists"))
}

#[test]
fn euler_gamma_report_passes_at_default_n() {
    let out = run(&["gamma", "--euler"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("# tool zetalab "));
    assert!(text.contains("# command "));
    assert!(text.contains("# check euler-pairwise-spread pass"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    let vcol = column(&text, "value_re");
    for row in &rows {
        let v: f64 = row[vcol].parse().unwrap();
        assert!((v - 0.5772156649).abs() < 1e-5);
    }
}

#[test]
fn euler_gamma_loose_n_fails_the_invariant_suite() {
    let out = run(&["gamma", "--euler", "--n", "1000"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("# check euler-pairwise-spread fail"));
}

#[test]
fn gamma_pole_is_a_domain_error() {
    let out = run(&["gamma", "--at", "-1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("pole"));
}

#[test]
fn gamma_without_action_is_a_usage_error() {
    let out = run(&["gamma"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn zeta_eval_two_engines_agree() {
    let out = run(&["zeta", "--eval", "2", "--method", "dirichlet,eta"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2);
    let vcol = column(&text, "value_re");
    let a: f64 = rows[0][vcol].parse().unwrap();
    let b: f64 = rows[1][vcol].parse().unwrap();
    assert!((a - b).abs() <= 1e-9);
    assert!((a - std::f64::consts::PI * std::f64::consts::PI / 6.0).abs() < 1e-8);
    assert!(text.contains("# check engines-agree pass"));
}

#[test]
fn zeta_eval_at_the_pole_writes_error_rows_and_exits_two() {
    let out = run(&["zeta", "--eval", "1"]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("error"));
    assert!(stderr(&out).contains("pole"));
}

#[test]
fn zeta_grid_offsets_the_lattice_and_classifies_the_left_half_plane() {
    let out = run(&["zeta", "--grid", "-0.5:2.5:0.25", "0:2:0.25"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# summary offset_applied=true"));
    assert!(text.contains("# check grid-agreement pass"));
    assert!(text.contains("# check dirichlet-divergent-left pass"));
    let rows = csv_rows(&text);
    // 13 x 9 nodes, one row per engine
    assert_eq!(rows.len(), 13 * 9 * 3);
    let (re_col, method_col, class_col) = (
        column(&text, "re"),
        column(&text, "method"),
        column(&text, "class"),
    );
    for row in &rows {
        if row[method_col] == "dirichlet" && row[re_col].parse::<f64>().unwrap() <= 1.0 {
            assert_eq!(row[class_col], "divergent");
        }
    }
}

#[test]
fn zeta_zero_scan_reports_three_brackets() {
    let out = run(&["zeta", "--zeros", "--tmax", "26"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    assert!(text.contains("# check brackets-refined pass"));
    let (lo_col, hi_col) = (column(&text, "t_low"), column(&text, "t_high"));
    let expected = [14.134725, 21.022040, 25.010858];
    for (row, want) in rows.iter().zip(expected) {
        let lo: f64 = row[lo_col].parse().unwrap();
        let hi: f64 = row[hi_col].parse().unwrap();
        assert!(lo < want && want < hi);
    }
}

#[test]
fn zeta_sample_is_byte_deterministic_per_seed() {
    let args = ["zeta", "--sample", "25", "--seed", "31415"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let other = run(&["zeta", "--sample", "25", "--seed", "31416"]);
    assert_eq!(code(&other), 0);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn zeta_requires_exactly_one_action() {
    assert_eq!(code(&run(&["zeta"])), 2);
    assert_eq!(code(&run(&["zeta", "--eval", "2", "--zeros"])), 2);
}

#[test]
fn rearrange_target_report_keeps_the_crossing_invariant() {
    let out = run(&[
        "rearrange",
        "--series",
        "altharmonic",
        "--target",
        "2.0",
        "--steps",
        "20000",
        "--every",
        "1000",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# check crossing-invariant pass"));
    assert!(text.contains("# check final-within-last-crossing pass"));
}

#[test]
fn rearrange_divergence_reaches_every_threshold() {
    let out = run(&[
        "rearrange",
        "--series",
        "altharmonic",
        "--diverge",
        "2,3,4",
        "--every",
        "500",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# check all-thresholds-reached pass"));
    let reached_col = column(&text, "reached");
    let trows = csv_rows(&text);
    let reached = trows
        .iter()
        .filter(|row| row[reached_col] == "reached")
        .count();
    assert_eq!(reached, 3);
}

#[test]
fn rearrange_rejects_a_one_signed_series() {
    let out = run(&["rearrange", "--series", "harmonic", "--target", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not conditionally convergent"));
}

#[test]
fn contour_reconstruction_matches_the_series_engine() {
    let out = run(&["contour", "--s", "1.5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# check matches-series-engine pass"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5); // three segments, total, reconstruction
}

#[test]
fn contour_integer_point_writes_an_error_row_and_exits_two() {
    let out = run(&["contour", "--s", "2"]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("error-indeterminate-form"));
    assert!(stderr(&out).contains("indeterminate"));
}

#[test]
fn renorm_at_zero_epsilon_gives_the_closed_form() {
    let out = run(&["renorm", "--eps", "0", "--mu", "1", "--e0", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    let vcol = column(&text, "alpha_over_4pi");
    let expected = 1.0 / (4.0 * std::f64::consts::PI).powi(2);
    for row in &rows {
        let v: f64 = row[vcol].parse().unwrap();
        assert!((v - expected).abs() < 1e-12);
    }
}

#[test]
fn renorm_scheme_table_slopes_sit_near_two() {
    let out = run(&["renorm", "--scheme-table", "--eps", "0.1,0.01,0.001"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("# check slopes-quadratic pass"));
}

#[test]
fn renorm_matched_roundtrip_is_exact() {
    let out = run(&["renorm", "--roundtrip", "--eps", "0.05"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("# check roundtrip-exact pass"));
}

#[test]
fn json_format_mirrors_the_csv_content() {
    let out = run(&["renorm", "--eps", "0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("{\n"));
    for key in ["\"tool\":", "\"command\":", "\"seed\":", "\"rows\":", "\"summary\":", "\"checks\":"] {
        assert!(text.contains(key), "missing {key}");
    }
    assert!(text.contains("\"factor\": \"exp-gamma-eps\""));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("zetalab-cli-out-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = run(&["renorm", "--eps", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# tool zetalab "));
    fs::remove_file(&path).unwrap();
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join("zetalab-cli-config-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lab.conf");
    fs::write(&path, "format=json\nseed=9\n# comment line\n").unwrap();

    let out = run(&["zeta", "--sample", "3", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("{\n"), "config format applies");
    assert!(text.contains("\"seed\": 9"), "config seed applies");

    let out = run(&[
        "zeta",
        "--sample",
        "3",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "csv",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("# tool"), "flag format overrides config");
    assert!(text.contains("# seed 11"), "flag seed overrides config");
    fs::remove_file(&path).unwrap();
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let dir = std::env::temp_dir().join("zetalab-cli-badconfig-test");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.conf");
    fs::write(&path, "no_such_key=1\n").unwrap();
    let out = run(&["zeta", "--eval", "2", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown config key"));
    fs::remove_file(&path).unwrap();
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["zeta", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn numerics_carry_seventeen_significant_digits() {
    let out = run(&["zeta", "--eval", "2", "--method", "eta"]);
    let text = stdout(&out);
    let vcol = column(&text, "value_re");
    let cell = &csv_rows(&text)[0][vcol];
    // mantissa of the form d.16 digits
    let mantissa = cell.split('e').next().unwrap();
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    assert_eq!(digits.len(), 17, "cell {cell}");
}
