//! End-to-end tests of the `fronthaul` binary: published table cells on
//! stdout, exit-code contract, file emission, and rerun reproducibility.

use std::process::{Command, Output};

fn fronthaul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fronthaul"))
        .args(args)
        .env_remove("FRONTHAUL_OUT")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = fronthaul(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    fronthaul(args).status.code().expect("exit code")
}

#[test]
fn dimension_reproduces_downlink_table_cell() {
    let text = stdout_of(&["dimension", "--bw", "100", "--layers", "8", "--om", "8"]);
    let s73_dl = text
        .lines()
        .find(|l| l.contains("S7.3") && l.contains("DL"))
        .expect("S7.3 DL row");
    assert!(s73_dl.contains("4165.0"), "row: {s73_dl}");
}

#[test]
fn dimension_reproduces_cpri_cell() {
    let text = stdout_of(&["dimension", "--bw", "20", "--ant", "2"]);
    let s8 = text.lines().find(|l| l.starts_with("S8") || l.contains(" S8 ")).unwrap();
    assert!(s8.contains("2457.6"), "row: {s8}");
}

#[test]
fn dimension_marks_undefined_splits() {
    let text = stdout_of(&["dimension", "--bw", "100"]);
    assert!(text.contains("n/a"));
}

#[test]
fn gain_table_cells() {
    let text = stdout_of(&["gain-table"]);
    let row = |dir: &str, om: &str, sbw: &str| -> Vec<String> {
        text.lines()
            .map(|l| l.split_whitespace().map(str::to_string).collect::<Vec<_>>())
            .find(|f| f.len() == 4 && f[0] == dir && f[1] == om && f[2] == sbw)
            .unwrap_or_else(|| panic!("no row {dir}/{om}/{sbw}"))
    };
    assert_eq!(row("UL", "6", "5")[3], "1.1");
    assert_eq!(row("DL", "2", "-")[3], "16.0");
    assert_eq!(row("UL", "4", "8")[3], "1.0");
}

#[test]
fn capacity_table_typo_footnote_and_cells() {
    let text = stdout_of(&["capacity-table"]);
    assert!(text.contains("1440.0*"));
    assert!(text.contains("1140.0"), "footnote mentions the published value");
    let fs7 = text
        .lines()
        .find(|l| l.contains("FS-VII") && l.contains("1.4"))
        .unwrap();
    assert!(fs7.contains("5.5"), "row: {fs7}");
}

#[test]
fn peak_table_cells() {
    let text = stdout_of(&["peak-table"]);
    let two_layer_20 = text
        .lines()
        .find(|l| l.contains("DL") && l.contains(" 2 ") && l.contains(" 20 "))
        .unwrap();
    assert!(two_layer_20.contains("151.2"), "row: {two_layer_20}");
    assert!(text.contains("4032.0"));
}

#[test]
fn placement_happy_path_and_infeasible() {
    let text = stdout_of(&["placement"]);
    assert!(text.contains("500.0"));
    assert!(text.contains("100.0"));
    let code = exit_code(&["placement", "--extra-us", "600"]);
    assert_eq!(code, 3);
}

#[test]
fn emulate_zero_load_and_happy_path() {
    let text = stdout_of(&[
        "emulate",
        "--bw",
        "10",
        "--duration-ms",
        "20",
        "--load-mbps",
        "5",
    ]);
    assert!(text.contains("DL"));
    let zero = stdout_of(&["emulate", "--bw", "10", "--duration-ms", "10", "--load-mbps", "0"]);
    assert!(zero.contains("0.0"));
}

#[test]
fn emulate_overload_exits_capacity_code() {
    let code = exit_code(&[
        "emulate",
        "--bw",
        "10",
        "--duration-ms",
        "10",
        "--load-mbps",
        "1000000",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn bad_flags_exit_config_code() {
    assert_eq!(exit_code(&["dimension", "--bw", "42"]), 2);
    assert_eq!(exit_code(&["dimension", "--om", "5"]), 2);
    assert_eq!(exit_code(&["mux", "--model", "bogus"]), 2);
}

#[test]
fn config_file_is_loaded_and_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cell.conf");
    std::fs::write(&path, "bandwidth_mhz = 10\no_m = 4\nmimo_layers = 2\n").unwrap();
    let text = stdout_of(&["dimension", "--config", path.to_str().unwrap()]);
    // 600 * 14 * 4 * 0.75 * 2 / 1000 = 50.4 Mbps peak + 133 E1
    let s73 = text
        .lines()
        .find(|l| l.contains("S7.3") && l.contains("DL"))
        .unwrap();
    assert!(s73.contains("183.4"), "row: {s73}");
    // flag wins over file
    let text = stdout_of(&["dimension", "--config", path.to_str().unwrap(), "--layers", "1"]);
    let s73 = text
        .lines()
        .find(|l| l.contains("S7.3") && l.contains("DL"))
        .unwrap();
    assert!(s73.contains("158.2"), "row: {s73}");
    // malformed file is a configuration error
    std::fs::write(&path, "bandwidth_mhz = 10\nbogus = 1\n").unwrap();
    assert_eq!(exit_code(&["dimension", "--config", path.to_str().unwrap()]), 2);
}

#[test]
fn out_dir_receives_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    stdout_of(&["gain-table", "--out", out.to_str().unwrap()]);
    let csv = std::fs::read_to_string(out.join("gain_table.csv")).unwrap();
    assert!(csv.starts_with("direction,o_m,s_bw,gain"));
    assert!(csv.contains("16/15"), "full-precision rational in CSV");
    let summary = std::fs::read_to_string(out.join("gain_table_summary.json")).unwrap();
    assert!(summary.contains("\"subcommand\": \"gain-table\""));
}

fn strip_timestamp(s: &str) -> String {
    s.lines().filter(|l| !l.contains("timestamp_unix")).collect::<Vec<_>>().join("\n")
}

#[test]
fn reruns_are_byte_identical_modulo_timestamp() {
    let args = [
        "mux",
        "--cells",
        "5",
        "--trials",
        "2000",
        "--seed",
        "9",
        "--format",
        "summary",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(strip_timestamp(&a), strip_timestamp(&b));

    let args = ["emulate", "--bw", "10", "--duration-ms", "10", "--load-mbps", "2",
        "--direction", "ul", "--seed", "4", "--format", "csv"];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    // CSV carries no timestamp; byte-identical including decode meters'
    // deterministic fields (latency columns are wall-clock and excluded)
    let scrub = |s: &str| {
        s.lines()
            .map(|l| l.rsplitn(4, ',').nth(3).unwrap_or(l).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(scrub(&a), scrub(&b));
}

#[test]
fn mux_csv_contains_histogram() {
    let text = stdout_of(&["mux", "--cells", "4", "--trials", "1000", "--format", "csv"]);
    assert!(text.contains("mux_gain"));
    assert!(text.lines().filter(|l| l.starts_with("hist_le_mbps")).count() == 20);
}

#[test]
fn env_var_sets_default_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("env_reports");
    let output = Command::new(env!("CARGO_BIN_EXE_fronthaul"))
        .args(["peak-table"])
        .env("FRONTHAUL_OUT", out.to_str().unwrap())
        .output()
        .unwrap();
    assert!(output.status.success());
    assert!(out.join("peak_table.csv").exists());
}
