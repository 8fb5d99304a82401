//! End-to-end tests of the command-line binary: CSV shapes, summary
//! output and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_varsym"))
}

fn csv_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn simulate_writes_expected_csv() {
    let dir = std::env::temp_dir().join("varsym_cli_simulate");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("run.csv");
    let output = bin()
        .args([
            "simulate",
            "--scheme",
            "simpson",
            "--periods",
            "5",
            "--steps-per-period",
            "10",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());

    let lines = csv_lines(&out);
    assert_eq!(lines.len(), 52); // header + 51 nodes
    assert_eq!(lines[0], "step,t,q,p,H,q_exact,p_exact,err_q,err_p");

    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("scheme=simpson"), "summary: {stdout}");
    assert!(stdout.contains("max_newton_iters="));

    // Coarse Simpson stays accurate; Newmark on the same grid is much worse.
    let err_q = |line: &str| line.split(',').nth(7).unwrap().parse::<f64>().unwrap();
    let simpson_worst = lines[1..].iter().map(|l| err_q(l)).fold(0.0_f64, f64::max);
    assert!(simpson_worst < 1e-2);

    let out_nm = dir.join("run_newmark.csv");
    let status = bin()
        .args([
            "simulate",
            "--scheme",
            "newmark",
            "--periods",
            "5",
            "--steps-per-period",
            "10",
            "--out",
            out_nm.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let nm_lines = csv_lines(&out_nm);
    let newmark_worst = nm_lines[1..].iter().map(|l| err_q(l)).fold(0.0_f64, f64::max);
    assert!(newmark_worst > 10.0 * simpson_worst);
}

#[test]
fn simulate_rejects_invalid_input() {
    let output = bin()
        .args([
            "simulate", "--scheme", "simpson", "--periods", "0", "--out", "/dev/null",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    let output = bin()
        .args([
            "simulate", "--scheme", "leapfrog", "--out", "/dev/null",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn simulate_reports_io_failure() {
    let output = bin()
        .args([
            "simulate",
            "--scheme",
            "simpson",
            "--out",
            "/nonexistent-dir/run.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn convergence_emits_table_and_csv() {
    let dir = std::env::temp_dir().join("varsym_cli_convergence");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.csv");
    let output = bin()
        .args(["convergence", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success());

    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("newmark"));
    assert!(stdout.contains("simpson"));

    let lines = csv_lines(&out);
    assert_eq!(lines[0], "scheme,N,h,err_p,err_q,err_H,order_p,order_q,order_H");
    assert_eq!(lines.len(), 7); // header + 3 meshes x 2 schemes

    // First mesh of each scheme leaves the order columns empty.
    let first_newmark: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&first_newmark[6..], &["", "", ""]);
    // Second mesh carries order estimates near 2 for Newmark.
    let second: Vec<&str> = lines[2].split(',').collect();
    let order_p: f64 = second[6].parse().unwrap();
    assert!((order_p - 2.0).abs() < 0.2);
}

#[test]
fn convergence_two_meshes() {
    let output = bin()
        .args(["convergence", "--meshes", "10,20"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    // Two rows per scheme, one order estimate each.
    assert_eq!(stdout.matches("newmark").count(), 1 + 1); // header row excluded, two data rows
}

#[test]
fn convergence_rejects_nonincreasing_meshes() {
    let output = bin()
        .args(["convergence", "--meshes", "100,50"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn exact_prints_period_and_samples() {
    let dir = std::env::temp_dir().join("varsym_cli_exact");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("exact.csv");
    let output = bin()
        .args(["exact", "--samples", "100", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("T=1.180340599"), "stdout: {stdout}");
    assert_eq!(csv_lines(&out).len(), 101);

    // Small theta0 approaches the linear period 2 pi / omega = 1.
    let output = bin()
        .args([
            "exact", "--theta0", "1e-3", "--samples", "2",
            "--out", out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let t_val: f64 = stdout
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix("T="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((t_val - 1.0).abs() < 1e-6);
    assert_eq!(csv_lines(&out).len(), 3);
}

#[test]
fn plot_script_flag_writes_script() {
    let dir = std::env::temp_dir().join("varsym_cli_plot");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("exact.csv");
    let status = bin()
        .args([
            "exact", "--samples", "10", "--plot-script",
            "--out", out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let script = std::fs::read_to_string(dir.join("exact.csv.gnuplot")).unwrap();
    assert!(script.contains("plot"));
}
