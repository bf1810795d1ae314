//! End-to-end tests against the compiled binary: report shapes, exit codes,
//! file output, and agreement between subcommands.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pseudotrap"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).expect("stdout is a JSON document")
}

fn gen_rotation8(name: &str) -> String {
    let path = tmp(name);
    run_ok(&["generate", "rotation", "--q", "8", "-o", path.to_str().unwrap()]);
    path.to_str().unwrap().to_string()
}

fn gen_attractors(name: &str, cycles: &str, sep: &str) -> String {
    let path = tmp(name);
    run_ok(&["generate", "attractors", "--cycles", cycles, "--separation", sep, "-o", path.to_str().unwrap()]);
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_writes_a_loadable_system() {
    let path = gen_rotation8("gen_load.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let s = pseudotrap_core::load_system(&text).unwrap();
    assert_eq!(s.num_points(), 8);
    assert_eq!(s.map(7), 0);
    assert_eq!(s.dist(0, 4), 4);
}

#[test]
fn generate_to_stdout_matches_file_output() {
    let path = gen_rotation8("gen_stdout.json");
    let from_file = std::fs::read_to_string(&path).unwrap();
    let from_stdout = run_ok(&["generate", "rotation", "--q", "8"]);
    assert_eq!(from_file, from_stdout);
}

#[test]
fn trap_fixed_verdict_report() {
    let sys = gen_rotation8("trap_fixed.json");
    let doc = json(&["trap", "-s", &sys, "--eps", "2", "--delta", "1", "--n", "5"]);
    assert_eq!(doc["theorem"], "cycle_trapping");
    assert_eq!(doc["eps"], 2);
    assert_eq!(doc["results"][0]["feasible"], true);
    assert_eq!(doc["recommended"]["delta"], 1);
    assert_eq!(doc["recommended"]["n"], 5);
    assert_eq!(doc["oracle_checked"], true, "8 points and 5 steps are inside the oracle envelope");
}

#[test]
fn trap_search_sweeps_the_whole_grid() {
    let sys = gen_rotation8("trap_search.json");
    let doc = json(&["trap", "-s", &sys, "--eps", "2", "--search"]);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 5, "arc metric on 8 points has thresholds 1..=5");
    assert_eq!(results[0]["delta"], 5, "sweep reports largest threshold first");
    assert_eq!(results[0]["lasso"], true);
    assert_eq!(results[0]["counterexample"], serde_json::json!([0, 0]));
    let floor = results.last().unwrap();
    assert_eq!(floor["delta"], 1);
    assert_eq!(floor["feasible"], true);
    assert_eq!(floor["n"], 5);
    assert_eq!(doc["recommended"]["delta"], 1);
    assert_eq!(doc["recommended"]["n"], 5);
}

#[test]
fn sws_certificate_carries_its_justification() {
    let sys = gen_rotation8("sws.json");
    let doc = json(&["sws", "-s", &sys, "--eps", "2"]);
    assert_eq!(doc["theorem"], "second_weak_shadowing");
    let lines = doc["justification"].as_array().unwrap();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.is_string()));
}

#[test]
fn cover_failure_reports_the_witness_walk() {
    let sys = gen_rotation8("cover.json");
    let doc = json(&["cover", "-s", &sys, "--eps", "2", "--delta", "1", "--n", "4"]);
    assert_eq!(doc["theorem"], "space_covering");
    assert_eq!(doc["results"][0]["feasible"], false);
    assert_eq!(doc["results"][0]["counterexample"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn minimal_and_criterion_agree_both_ways() {
    let rot = gen_rotation8("min_rot.json");
    let doc = json(&["minimal", "-s", &rot]);
    assert_eq!(doc["minimal"], true);
    let doc = json(&["minimality-criterion", "-s", &rot]);
    assert_eq!(doc["minimal"], true);
    assert!(doc["counterexample"].is_null());

    let att = gen_attractors("min_att.json", "1,1", "10");
    let doc = json(&["minimal", "-s", &att]);
    assert_eq!(doc["minimal"], false);
    let doc = json(&["minimality-criterion", "-s", &att]);
    assert_eq!(doc["minimal"], false);
    let cex = &doc["counterexample"];
    assert_eq!(cex["eps"], 10);
    assert_eq!(cex["violating_point"], 1);
}

#[test]
fn omega_single_point_and_full_listing() {
    let att = gen_attractors("omega.json", "2,1", "7");
    let doc = json(&["omega", "-s", &att, "--point", "0"]);
    let points = doc["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["point"], 0);
    assert_eq!(points[0]["entry_time"], 0);
    assert_eq!(points[0]["cycle"], serde_json::json!([0, 1]));
    let doc = json(&["omega", "-s", &att]);
    assert_eq!(doc["points"].as_array().unwrap().len(), 3);
}

#[test]
fn hausdorff_on_rotation_arcs() {
    let sys = gen_rotation8("hd.json");
    let doc = json(&["hausdorff", "-s", &sys, "--a", "0", "--b", "4"]);
    assert_eq!(doc["classical"], 4);
    assert_eq!(doc["least_strict_eps"], 5);
    let doc = json(&["hausdorff", "-s", &sys, "--a", "0,1,2,3,4,5,6,7", "--b", "0,1,2,3,4,5,6,7"]);
    assert_eq!(doc["classical"], 0);
}

#[test]
fn uniformity_check_passes_on_metric_family() {
    let sys = gen_rotation8("unif.json");
    let doc = json(&["uniformity-check", "-s", &sys]);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["separating"], true);
    assert_eq!(doc["family_size"], 5);
}

#[test]
fn strong_orbital_reports_all_instances() {
    let sys = gen_rotation8("so.json");
    let doc = json(&["strong-orbital", "-s", &sys, "--eps", "2", "--horizon", "16"]);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["orbit_instances"], 16 * 64);
    assert_eq!(doc["failure_count"], 0);
}

#[test]
fn orbital_failures_keep_exit_code_zero() {
    let att = gen_attractors("orb.json", "1,1", "10");
    let out = run(&["orbital", "-s", &att, "--eps", "5", "--delta", "11", "--horizon", "1"]);
    assert!(out.status.success(), "a computed failing verdict is not a CLI error");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], false);
    assert_eq!(doc["checked"], 4);
    assert_eq!(doc["passed"], 2);
    assert_eq!(doc["failed"], 2);
    assert_eq!(doc["mode"], "exhaustive");
}

#[test]
fn export_dot_lists_every_edge() {
    let sys = gen_rotation8("dot.json");
    let text = run_ok(&["export-dot", "-s", &sys, "--delta", "1"]);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 8, "one out-edge per point at the tightest threshold");
}

#[test]
fn usage_errors_exit_two() {
    let sys = gen_rotation8("usage.json");
    // trap needs a mode
    let out = run(&["trap", "-s", &sys, "--eps", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--search"));
    // unknown flag, rejected by the parser itself
    let out = run(&["trap", "-s", &sys, "--eps", "2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // logistic family without its parameter
    let out = run(&["generate", "interval", "--kind", "logistic", "--grid", "8"]);
    assert_eq!(out.status.code(), Some(2));
    // strong orbital demands a minimal system
    let att = gen_attractors("usage_att.json", "1,1", "11");
    let out = run(&["strong-orbital", "-s", &att, "--eps", "2", "--horizon", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // missing system file
    let out = run(&["minimal", "-s", tmp("no_such_file.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn state_cap_exhaustion_exits_three() {
    let sys = gen_rotation8("cap.json");
    let out = bin()
        .args(["trap", "-s", &sys, "--eps", "2", "--delta", "1", "--n", "5"])
        .env("PSEUDOTRAP_STATE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undecided"));
    // a malformed cap is a usage problem instead
    let out = bin()
        .args(["trap", "-s", &sys, "--eps", "2", "--delta", "1", "--n", "5"])
        .env("PSEUDOTRAP_STATE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_end_with_a_single_newline() {
    let sys = gen_rotation8("nl.json");
    for args in [
        vec!["minimal", "-s", sys.as_str()],
        vec!["trap", "-s", sys.as_str(), "--eps", "2", "--search"],
        vec!["export-dot", "-s", sys.as_str(), "--delta", "2"],
    ] {
        let text = run_ok(&args);
        assert!(text.ends_with('\n') && !text.ends_with("\n\n"), "{args:?}");
    }
}
