//! End-to-end checks of the `csgamma` binary: output contracts per format,
//! config echo placement, file input/output, config-file handling, and the
//! exit-code convention (0 ok, 2 invalid input, 3 resource limits).

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_csgamma"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

fn run_ok(args: &[&str]) -> (String, String) {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    (stdout, stderr)
}

#[test]
fn lcs_text_prints_bare_length() {
    let (stdout, stderr) = run_ok(&["lcs", "--strings", "0011,0101"]);
    assert_eq!(stdout, "3\n");
    assert!(
        stderr.starts_with("config: "),
        "config echo goes to stderr: {stderr}"
    );
    assert!(stderr.contains("source=strings"));
}

#[test]
fn lcs_witness_text() {
    let (stdout, _) = run_ok(&["lcs", "--strings", "0011,0101", "--witness"]);
    assert_eq!(stdout, "3\nwitness 001\n");
}

#[test]
fn lcs_json_envelope() {
    let (stdout, stderr) = run_ok(&["lcs", "--strings", "0011,0101", "--format", "json"]);
    assert!(stderr.is_empty(), "json mode keeps stderr clean: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "lcs");
    assert_eq!(v["config"]["source"], "strings");
    assert_eq!(v["config"]["k"], 2);
    assert_eq!(v["report"]["length"], 3);
    assert!(
        v["config"].get("workers").is_none(),
        "worker count must not leak into the echoed config"
    );
}

#[test]
fn lcs_csv_layout_and_sorted_config_comment() {
    let (stdout, _) = run_ok(&[
        "lcs",
        "--strings",
        "0011,0101",
        "--witness",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("# "));
    assert_eq!(lines[1], "length,witness");
    assert_eq!(lines[2], "3,001");
    // The comment lists config as `key=value` pairs in sorted key order.
    let keys: Vec<&str> = lines[0][2..]
        .split_whitespace()
        .map(|pair| pair.split_once('=').expect("key=value").0)
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted, "config keys must be sorted: {:?}", lines[0]);
}

#[test]
fn bounds_csv_row() {
    let (stdout, _) = run_ok(&["bounds", "--k", "2", "--d", "2", "--format", "csv"]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[1],
        "k,d,lower_binary_exact,lower_binary,lower_kary,upper_bisect,upper_closed,epsilon,closed_form_valid"
    );
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..3], &["2", "2", "2/3"]);
    assert_eq!(cells[5], "0.8665952305171022");
    assert_eq!(cells[8], "false", "closed form needs d > 16 log2 k");
}

#[test]
fn coins_text_analytics() {
    let (stdout, _) = run_ok(&["coins", "--d", "3"]);
    assert!(stdout.contains("expected_minority 3/4 = 0.75"), "{stdout}");
    assert!(stdout.contains("expected_flips 9/2 = 4.5"), "{stdout}");
    assert!(stdout.contains("c_hat "), "{stdout}");
    assert!(
        !stdout.contains("sim_"),
        "no simulation lines without --trials"
    );
}

#[test]
fn coins_csv_simulation_cells() {
    let (stdout, _) = run_ok(&[
        "coins", "--d", "3", "--trials", "1000", "--seed", "7", "--format", "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[1],
        "d,expected_minority,expected_flips,c_hat,trials,mean_minority,se_minority,mean_flips,se_flips"
    );
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..3], &["3", "3/4", "9/2"]);
    assert_eq!(cells[4], "1000");
    let mean_y: f64 = cells[5].parse().unwrap();
    assert!((mean_y - 0.75).abs() < 0.1);
}

#[test]
fn diag_single_text_and_estimate_csv() {
    let (stdout, _) = run_ok(&["diag", "--strings", "01,10", "--budget", "3"]);
    assert_eq!(stdout, "1\nsplit 1 2\n");

    let (stdout, _) = run_ok(&[
        "diag", "--k", "2", "--d", "2", "--n", "100", "--budget", "200", "--trials", "8", "--seed",
        "3", "--format", "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[1],
        "k,d,n,budget,trials,seed,mean,stddev,ci_low,ci_high"
    );
    assert!(lines[2].starts_with("2,2,100,200,8,3,"));

    // Estimate mode needs sampled input, not explicit strings.
    let (code, _, stderr) = run(&["diag", "--strings", "01,10", "--trials", "4"]);
    assert_eq!(code, 2, "{stderr}");
}

#[test]
fn greedy_trace_text() {
    let (stdout, _) = run_ok(&["greedy", "--strings", "0011,0101", "--trace"]);
    assert!(stdout.contains("matched 3\n"), "{stdout}");
    assert!(stdout.contains("sequence 001\n"), "{stdout}");
    assert!(stdout.contains("consumed 3 4\n"), "{stdout}");
    assert!(stdout.contains("total_bits 7/8\n"), "{stdout}");
    assert!(stdout.contains("exhausted true\n"), "{stdout}");
    assert!(stdout.contains("round 1 "), "{stdout}");
}

#[test]
fn estimate_concentration_probe() {
    let (stdout, _) = run_ok(&[
        "estimate", "--k", "2", "--d", "2", "--n", "50", "--trials", "200", "--eps", "0.1",
        "--seed", "5", "--format", "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[1],
        "k,d,n,eps,trials,seed,mean,far_fraction,tail_bound"
    );
    let cells: Vec<&str> = lines[2].split(',').collect();
    let far: f64 = cells[7].parse().unwrap();
    let bound: f64 = cells[8].parse().unwrap();
    assert!(
        far <= bound,
        "empirical tail {far} above the proven bound {bound}"
    );

    // The probe is defined for the exact estimator only.
    let (code, _, _) = run(&[
        "estimate", "--k", "2", "--d", "2", "--n", "50", "--trials", "10", "--eps", "0.1",
        "--seed", "5", "--method", "greedy",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn input_file_roundtrip_and_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ens.txt");
    std::fs::write(&path, "2 2 4 explicit\n0011\n0101\n").unwrap();
    let (stdout, stderr) = run_ok(&["lcs", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout, "3\n");
    assert!(stderr.contains("source=file"));

    let (code, _, _) = run(&[
        "lcs",
        "--input",
        path.to_str().unwrap(),
        "--strings",
        "01,10",
    ]);
    assert_eq!(code, 2, "--input and --strings conflict");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.csv");
    let (stdout, stderr) = run_ok(&[
        "bounds",
        "--k",
        "2",
        "--d",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    assert!(stderr.contains("wrote "));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.starts_with("# "));
    assert!(contents.contains("0.8665952305171022"));
}

#[test]
fn codes_check_and_config_file() {
    let (stdout, _) = run_ok(&[
        "codes",
        "--strings",
        "0011,0101",
        "--p",
        "0.25",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[1],
        "p,d,threshold,decodable,violation,violation_lcs,subsets_checked"
    );
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(cells[0], "0.25");
    assert_eq!(cells[2], "3", "threshold ceil(0.75 * 4) = 3");
    assert_eq!(cells[3], "false", "the pair has LCS 3 >= 3");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.toml");
    std::fs::write(
        &path,
        "k = 2\nn = 120\nd = 2\nsizes = [2]\np_grid = [0.2]\ntrials = 4\nseed = 11\n",
    )
    .unwrap();
    let (stdout, _) = run_ok(&[
        "codes",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[1], "size,p,threshold,trials,decodable_fraction");
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..4], &["2", "0.2", "96", "4"]);

    // Flags override file values.
    let (stdout, _) = run_ok(&[
        "codes",
        "--config",
        path.to_str().unwrap(),
        "--trials",
        "2",
        "--format",
        "csv",
    ]);
    let cells: Vec<&str> = stdout.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(cells[3], "2");
}

#[test]
fn table_defaults_and_empty_grid() {
    let (stdout, _) = run_ok(&["table", "--format", "csv"]);
    let lines: Vec<&str> = stdout.lines().collect();
    // Default grid: k = 2, d = 2..=14 -> 13 rows after comment + header.
    assert_eq!(lines.len(), 15);
    assert!(lines[2].starts_with("2,2,"));
    assert!(lines[14].starts_with("2,14,"));

    let (stdout, _) = run_ok(&["table", "--d-grid", "", "--format", "csv"]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2, "empty grid leaves only comment + header");
    assert_eq!(
        lines[1],
        "k,d,lower_binary_exact,lower_binary,lower_kary,upper_bisect,upper_closed,epsilon,closed_form_valid"
    );
}

#[test]
fn table_text_is_tabular_and_mc_columns_attach() {
    let (stdout, _) = run_ok(&["table", "--d-grid", "2:4"]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4, "header + one row per d");
    assert!(lines[0].starts_with("k,d,"));
    assert!(lines[1].starts_with("2,2,") && lines[3].starts_with("2,4,"));

    let (stdout, _) = run_ok(&[
        "table",
        "--d-grid",
        "2:2",
        "--with-mc",
        "--n",
        "200",
        "--trials",
        "3",
        "--seed",
        "9",
        "--format",
        "csv",
    ]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines[1].ends_with(",mc_mean,mc_ci_low,mc_ci_high"));
    let cells: Vec<&str> = lines[2].split(',').collect();
    let mc_mean: f64 = cells[cells.len() - 3].parse().unwrap();
    assert!((0.5..1.0).contains(&mc_mean), "mc_mean {mc_mean}");
}

#[test]
fn random_seed_is_echoed_for_reproduction() {
    let (_, stderr) = run_ok(&[
        "estimate", "--k", "2", "--d", "2", "--n", "20", "--trials", "2",
    ]);
    assert!(
        stderr.contains("chosen at random") && stderr.contains("--seed"),
        "missing seed echo: {stderr}"
    );
}

#[test]
fn exit_codes() {
    // Bad symbol in an explicit string: invalid input.
    let (code, _, stderr) = run(&["lcs", "--strings", "01,0!1"]);
    assert_eq!(code, 2, "{stderr}");

    // Sampled source needs k, d, and n together.
    let (code, _, _) = run(&["lcs", "--k", "2", "--d", "2"]);
    assert_eq!(code, 2);

    // Degenerate alphabet.
    let (code, _, _) = run(&["lcs", "--k", "1", "--d", "2", "--n", "4", "--seed", "1"]);
    assert_eq!(code, 2);

    // DP state space over the cell budget: resource exhaustion.
    let (code, _, stderr) = run(&["lcs", "--k", "2", "--d", "4", "--n", "400", "--seed", "1"]);
    assert_eq!(code, 3, "{stderr}");

    // Zero worker threads is meaningless.
    let (code, _, _) = run(&[
        "estimate",
        "--k",
        "2",
        "--d",
        "2",
        "--n",
        "20",
        "--trials",
        "2",
        "--seed",
        "1",
        "--workers",
        "0",
    ]);
    assert_eq!(code, 2);

    // Unknown flags are a usage error (clap's native exit code).
    let (code, _, _) = run(&["lcs", "--no-such-flag"]);
    assert_eq!(code, 2);
}
