//! End-to-end checks of the `flatwell` binary: exit codes, report schemas,
//! determinism, and round-tripping.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatwell"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn parse_csv(report: &str) -> Vec<Vec<String>> {
    report
        .lines()
        .skip(1)
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn exit_codes_cover_usage_domain_and_success() {
    assert_eq!(run(&["estimate", "--n", "2"]).status.code(), Some(0));
    assert_eq!(run(&["estimate", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["table", "--n-list", "abc"]).status.code(), Some(1));
    assert_eq!(run(&["estimate", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--n-list", "1.5"]).status.code(), Some(2));
    assert_eq!(
        run(&["wavefunction", "--n", "2", "--points", "8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["wavefunction", "--n", "squarewell", "--source", "trial"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "sweep-beta",
            "--beta-from",
            "5",
            "--beta-to",
            "3",
            "--step",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn diagnostics_go_to_stderr_not_stdout() {
    let output = run(&["estimate", "--n", "1"]);
    assert!(output.stdout.is_empty());
    assert!(!output.stderr.is_empty());
}

#[test]
#[allow(clippy::approx_constant)]
fn estimate_reports_the_tabulated_coefficients() {
    let output = run(&[
        "estimate", "--n", "2", "--mu", "1", "--a", "1", "--hbar", "1", "--mass", "1", "--method",
        "gamma",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report = stdout(&output);
    let coefficient = field(&report, "coefficient: ");
    assert!((coefficient - 0.70710678).abs() < 1e-8);

    let output = run(&["estimate", "--n", "4", "--method", "quadrature"]);
    let report = stdout(&output);
    assert!(report.contains("method: quadrature"));
    let coefficient = field(&report, "coefficient: ");
    assert!((coefficient - 0.7290111).abs() < 1e-6);

    let output = run(&["estimate", "--n", "4", "--method", "optimized"]);
    let report = stdout(&output);
    assert!(report.contains("method: optimized-alpha"));
}

fn field(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|line| line.strip_prefix(key))
        .unwrap_or_else(|| panic!("missing field {key}"))
        .parse()
        .expect("field parses as a number")
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["table", "--n-list", "2,3,4,squarewell"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let args = [
        "sweep-beta",
        "--beta-from",
        "2",
        "--beta-to",
        "6",
        "--step",
        "0.5",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);

    let args = ["wavefunction", "--n", "4", "--points", "33"];
    assert_eq!(run(&args).stdout, run(&args).stdout);

    let args = [
        "wavefunction",
        "--n",
        "4",
        "--points",
        "33",
        "--source",
        "reference",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn table_header_and_round_trip() {
    let output = run(&["table", "--n-list", "2,4,squarewell"]);
    let report = stdout(&output);
    assert_eq!(
        report.lines().next().unwrap(),
        "N,beta,C_trial_gamma,C_trial_quadrature,C_optimized,C_reference,C_known,rel_error_vs_reference"
    );
    let rows = parse_csv(&report);
    assert_eq!(rows.len(), 3);

    // Power rows: every cell parses back to within 1e-8 relative of the
    // library values.
    let n: f64 = rows[0][0].parse().unwrap();
    assert_eq!(n, 2.0);
    let c_gamma: f64 = rows[0][2].parse().unwrap();
    assert!((c_gamma - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
    let c_quadrature: f64 = rows[0][3].parse().unwrap();
    assert!((c_gamma - c_quadrature).abs() <= 1e-7 * c_gamma);

    let quartic_known: f64 = rows[1][6].parse().unwrap();
    assert!((quartic_known - 0.667986259155777).abs() < 1e-8);

    // Square-well row: no beta, no trial columns, known value present.
    assert_eq!(rows[2][0], "squarewell");
    assert_eq!(rows[2][1], "");
    assert_eq!(rows[2][2], "");
    let pi_sq_over_8 = core::f64::consts::PI * core::f64::consts::PI / 8.0;
    let square_known: f64 = rows[2][6].parse().unwrap();
    assert!((square_known - pi_sq_over_8).abs() < 1e-8);
}

#[test]
fn table_without_known_value_leaves_the_field_empty() {
    let output = run(&["table", "--n-list", "3"]);
    let rows = parse_csv(&stdout(&output));
    assert_eq!(rows[0][6], "");
    // Both backends agree on the cubic well's coefficient C(2.5).
    let c_gamma: f64 = rows[0][2].parse().unwrap();
    let c_quadrature: f64 = rows[0][3].parse().unwrap();
    assert!((c_gamma - 0.6947255179707759).abs() < 1e-8);
    assert!((c_gamma - c_quadrature).abs() <= 1e-7 * c_gamma);
}

#[test]
fn json_table_uses_null_for_absent_values() {
    let output = run(&["table", "--n-list", "3,squarewell", "--format", "json"]);
    let report = stdout(&output);
    assert!(report.trim_start().starts_with('['));
    assert!(report.contains("\"C_known\": null"));
    assert!(report.contains("\"N\": \"squarewell\""));
    assert!(report.contains("\"beta\": null"));
    // The quartic-free row still carries every key.
    for key in [
        "\"N\"",
        "\"beta\"",
        "\"C_trial_gamma\"",
        "\"C_trial_quadrature\"",
        "\"C_optimized\"",
        "\"C_reference\"",
        "\"C_known\"",
        "\"rel_error_vs_reference\"",
    ] {
        assert!(report.contains(key), "missing key {key}");
    }
}

#[test]
fn sweep_includes_the_octic_coefficient() {
    let output = run(&[
        "sweep-beta",
        "--beta-from",
        "2",
        "--beta-to",
        "6",
        "--step",
        "0.5",
    ]);
    let report = stdout(&output);
    assert_eq!(report.lines().next().unwrap(), "beta,C,C_over_beta");
    let rows = parse_csv(&report);
    let row5 = rows
        .iter()
        .find(|row| row[0].parse::<f64>().unwrap() == 5.0)
        .expect("beta = 5 in range");
    let c5: f64 = row5[1].parse().unwrap();
    assert!((c5 - 1.009593).abs() < 1e-6);
}

#[test]
fn trial_wavefunction_is_the_exact_harmonic_gaussian() {
    // mu = 0.5 with the default constants gives mu_tilde = 1, where the
    // matched trial state is e^{−z²/2} exactly.
    let output = run(&["wavefunction", "--n", "2", "--mu", "0.5", "--points", "65"]);
    let report = stdout(&output);
    assert_eq!(report.lines().next().unwrap(), "z,psi");
    let rows = parse_csv(&report);
    assert_eq!(rows.len(), 65);
    let norm = core::f64::consts::PI.powf(-0.25);
    for row in &rows {
        let z: f64 = row[0].parse().unwrap();
        let psi: f64 = row[1].parse().unwrap();
        let exact = norm * (-0.5 * z * z).exp();
        assert!((psi - exact).abs() < 1e-7, "z = {z}: {psi} vs {exact}");
    }
}

#[test]
fn wavefunction_peaks_at_the_center_for_both_sources() {
    for source in ["trial", "reference"] {
        let output = run(&[
            "wavefunction",
            "--n",
            "6",
            "--points",
            "65",
            "--source",
            source,
        ]);
        let rows = parse_csv(&stdout(&output));
        assert_eq!(rows.len(), 65);
        let psi: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
        let max = psi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(psi[32], max, "source {source}: peak away from center");
    }
}

#[test]
fn reference_square_well_wavefunction_is_a_cosine() {
    let output = run(&[
        "wavefunction",
        "--n",
        "squarewell",
        "--source",
        "reference",
        "--points",
        "129",
    ]);
    let rows = parse_csv(&stdout(&output));
    assert_eq!(rows.len(), 129);
    for row in &rows {
        let z: f64 = row[0].parse().unwrap();
        let psi: f64 = row[1].parse().unwrap();
        let exact = (core::f64::consts::PI * z / 2.0).cos();
        assert!((psi - exact).abs() < 1e-3, "z = {z}: {psi} vs {exact}");
    }
}
