//! End-to-end tests for the command-line interface: golden outputs, exit
//! codes, and format round-trips, run in process through `species_cli::run`.

use species_cli::run;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("species")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn series_derangements_egf() {
    let (code, out, err) = run_cli(&["series", "Der", "--cap", "5"]);
    assert_eq!(code, 0, "stderr: {err}");
    assert_eq!(out, "1, 0, 1, 2, 9, 44\n");
}

#[test]
fn series_partitions_tgf() {
    let (code, out, _) = run_cli(&["series", "Par", "--cap", "5", "--kind", "tgf"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1, 1, 2, 3, 5, 7\n");
}

#[test]
fn series_pair_cycle_index() {
    let (code, out, _) = run_cli(&["series", "E_2", "--cap", "2", "--kind", "zyklus"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1/2 x1^2 + 1/2 x2\n");
}

#[test]
fn series_weighted_marks_survive() {
    let (code, out, _) = run_cli(&["series", "E(y*C)", "--cap", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1, y, y + y^2\n");
}

#[test]
fn series_composite_expression() {
    // Set partitions as E(E+): Bell numbers.
    let (code, out, _) = run_cli(&["series", "E(E+)", "--cap", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1, 1, 2, 5, 15, 52, 203\n");
}

#[test]
fn series_parse_error_has_offset() {
    let (code, out, err) = run_cli(&["series", "E("]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("at byte 2"), "stderr: {err}");
}

#[test]
fn series_unknown_atom_is_a_usage_error() {
    let (code, _, err) = run_cli(&["series", "Foo"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown species"), "stderr: {err}");
}

#[test]
fn series_graph_has_no_closed_series() {
    let (code, _, err) = run_cli(&["series", "G"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn series_cap_guard() {
    let (code, _, err) = run_cli(&["series", "Der", "--cap", "21"]);
    assert_eq!(code, 2);
    assert!(err.contains("--cap"), "stderr: {err}");
}

#[test]
fn table_text_defaults() {
    let (code, out, _) = run_cli(&["table"]);
    assert_eq!(code, 0);
    assert!(out.contains("R = 1+X\n"));
    assert!(out.contains("R = E+\n"));
    assert!(out.contains("R = E\n"));
    assert!(out.contains("  labeled:\n"));
    assert!(out.contains("  types_both:\n"));
    // Three rows in the twelve family, none of the larger catalogs.
    assert!(!out.contains("R = L"));
    assert!(!out.contains("R = C"));
}

#[test]
fn table_families_add_rows() {
    let (_, twenty, _) = run_cli(&["table", "--family", "twenty", "--n", "2", "--k", "2"]);
    assert!(twenty.contains("R = X\n"));
    assert!(twenty.contains("R = L+\n"));
    assert!(!twenty.contains("R = C\n"));
    let (_, twentytwo, _) =
        run_cli(&["table", "--family", "twentytwo", "--n", "2", "--k", "2"]);
    assert!(twentytwo.contains("R = C\n"));
}

#[test]
fn table_csv_is_flat() {
    let (code, out, _) = run_cli(&["table", "--format", "csv", "--n", "3", "--k", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "r,table,n,k,count");
    assert_eq!(lines.len(), 1 + 3 * 4 * 16);
    assert!(lines.contains(&"E,labeled,3,3,27"));
    assert!(lines.contains(&"1+X,types_both,2,3,1"));
}

#[test]
fn table_json_round_trips() {
    let (code, out, _) = run_cli(&[
        "table", "--format", "json", "--family", "twentytwo", "--n", "4", "--k", "4",
    ]);
    assert_eq!(code, 0);
    let doc: species_cli::render::TableDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.rows.len(), 7);
    assert_eq!(doc.rows[0].r, "X");
    let reprinted = species_cli::render::render_json(&doc) + "\n";
    assert_eq!(reprinted, out, "JSON output is canonical");
}

#[test]
fn table_json_spot_value() {
    let (_, out, _) = run_cli(&["table", "--format", "json", "--n", "3", "--k", "3"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let e_row = rows.iter().find(|r| r["r"] == "E").unwrap();
    assert_eq!(e_row["labeled"][3][3], 27);
}

#[test]
fn table_size_guard() {
    let (code, _, err) = run_cli(&["table", "--n", "13"]);
    assert_eq!(code, 2);
    assert!(err.contains("limit"), "stderr: {err}");
    let (code, _, _) = run_cli(&["table", "--k", "13"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_all_passes() {
    let (code, out, _) = run_cli(&["verify", "--max-n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS kernel/index-agreement/E:"), "out: {out}");
    assert!(out.contains("PASS twosort/closed-forms"), "out: {out}");
    assert!(out.contains("PASS naturality/functor-laws/C"), "out: {out}");
    assert!(!out.contains("FAIL"));
    let last = out.lines().last().unwrap();
    assert!(
        last.starts_with("all ") && last.ends_with(" checks passed"),
        "summary line: {last}"
    );
}

#[test]
fn verify_single_suite_filters_checks() {
    let (code, out, _) = run_cli(&["verify", "--suite", "twosort", "--max-n", "3"]);
    assert_eq!(code, 0);
    let checks: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|l| l.starts_with("PASS twosort/")), "out: {out}");
}

#[test]
fn verify_corruption_self_test_fails_with_witness() {
    let (code, out, _) = run_cli(&[
        "verify", "--suite", "kernel", "--max-n", "2", "--self-test-corrupt",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL kernel/self-test-corruption"), "out: {out}");
    assert!(out.contains("enumeration gives"), "out: {out}");
    let last = out.lines().last().unwrap();
    assert!(last.contains("1 of "), "summary line: {last}");
}

#[test]
fn verify_guard_rejects_big_sizes() {
    let (code, _, err) = run_cli(&["verify", "--max-n", "99"]);
    assert_eq!(code, 2);
    assert!(err.contains("--max-n"), "stderr: {err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("series"));
    assert!(out.contains("verify"));
    let (code, out, _) = run_cli(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains("species"));
}

#[test]
fn bad_usage_exits_two() {
    let (code, _, err) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, _) = run_cli(&["series", "Der", "--kind", "ogf"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_cli(&[]);
    assert_eq!(code, 2);
}

/// The same paths through the real binary, to pin process-level exit codes.
mod binary {
    use std::process::Command;

    fn species_bin(args: &[&str]) -> std::process::Output {
        Command::new(env!("CARGO_BIN_EXE_species"))
            .args(args)
            .output()
            .expect("binary runs")
    }

    #[test]
    fn series_exit_zero_with_golden_stdout() {
        let output = species_bin(&["series", "Der", "--cap", "5"]);
        assert_eq!(output.status.code(), Some(0));
        assert_eq!(String::from_utf8(output.stdout).unwrap(), "1, 0, 1, 2, 9, 44\n");
    }

    #[test]
    fn guard_violation_exits_two() {
        let output = species_bin(&["verify", "--max-n", "99"]);
        assert_eq!(output.status.code(), Some(2));
        assert!(!output.stderr.is_empty());
    }

    #[test]
    fn corruption_self_test_exits_one() {
        let output = species_bin(&[
            "verify", "--suite", "kernel", "--max-n", "2", "--self-test-corrupt",
        ]);
        assert_eq!(output.status.code(), Some(1));
    }
}
