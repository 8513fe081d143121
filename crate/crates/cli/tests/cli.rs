use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn kancalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kancalc")).args(args).env_remove("KANCALC_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = kancalc(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).unwrap())
}

#[test]
fn filtered_projector_has_cone_x_p() {
    let (code, v) = json(&["check", "filtered", &fixture("P.fc")]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "check filtered");
    assert_eq!(v["ok"], true);
    assert_eq!(v["witness"]["vertex"], "x");
    assert_eq!(v["witness"]["legs"], serde_json::json!(["p"]));
}

#[test]
fn discrete_pair_is_not_filtered() {
    let (code, v) = json(&["check", "filtered", &fixture("disc2.fc")]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["disjoint"], serde_json::json!(["a", "b"]));
}

#[test]
fn discrete_commute_mismatch_two_versus_four() {
    let (code, v) = json(&["check", "commute", "-I", &fixture("disc2.fc"), "-J", &fixture("disc2.fc"), "-X", &fixture("const.psh")]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    assert_eq!(v["witness"]["left"], 2);
    assert_eq!(v["witness"]["right"], 4);
    assert_eq!(v["data"]["i_filtered"], false);
}

#[test]
fn colimit_of_terminal_index_diagram_prints_vertex() {
    let o = kancalc(&["colim", "-d", &fixture("diag.fun")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vertex b"), "{}", stdout(&o));
}

#[test]
fn set_colimit_and_limit_of_constant_point() {
    let (_, colim) = json(&["colim", "-X", &fixture("const.psh")]);
    let (_, lim) = json(&["lim", "-X", &fixture("const.psh")]);
    assert_eq!(colim["data"]["size"], 4);
    assert_eq!(lim["data"]["size"], 1);
}

#[test]
fn malformed_compose_reports_location() {
    let o = kancalc(&["show", &fixture("bad_compose.fc")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad_compose.fc:4:"), "{err}");
}

#[test]
fn missing_file_is_invalid_input() {
    let o = kancalc(&["show", "/nonexistent/x.fc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exit_code_and_env_override() {
    let p = fixture("P.fc");
    assert_eq!(kancalc(&["--budget", "3", "nerve", &p, "--max-dim", "5"]).status.code(), Some(3));
    let env = |b: &str, extra: &[&str]| {
        let mut args = vec!["nerve", p.as_str(), "--max-dim", "5"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_kancalc")).args(&args).env("KANCALC_BUDGET", b).output().unwrap().status.code()
    };
    assert_eq!(env("3", &[]), Some(3));
    assert_eq!(env("3", &["--budget", "100000"]), Some(0));
}

#[test]
fn poset_dot_is_hasse_diagram() {
    let o = kancalc(&["--dot", "show", &fixture("V.pos")]);
    let s = stdout(&o);
    assert!(s.starts_with("digraph \"V\""));
    assert!(s.contains("\"o\" -> \"a\";"));
    assert!(s.contains("\"o\" -> \"b\";"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "karoubi", &fixture("P.fc")];
    assert_eq!(kancalc(&args).stdout, kancalc(&args).stdout);
    let args = ["check", "commute", "-I", &fixture("disc2.fc"), "-J", &fixture("disc2.fc"), "-X", &fixture("const.psh")];
    assert_eq!(kancalc(&args).stdout, kancalc(&args).stdout);
}

#[test]
fn karoubi_of_projector_has_terminal_split() {
    let (code, v) = json(&["karoubi", &fixture("P.fc")]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["objects"].as_array().unwrap().len(), 2);
    assert!(v["data"]["terminal"].is_string());
}

#[test]
fn nerve_counts_of_projector() {
    let (_, v) = json(&["nerve", &fixture("P.fc"), "--max-dim", "2"]);
    assert_eq!(v["data"]["chains"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["data"]["nondegenerate"], serde_json::json!([1, 1, 1]));
}

#[test]
fn left_kan_along_point_inclusion() {
    let (code, v) = json(&["kan", "-g", &fixture("kan.fun"), "-X", &fixture("ptset.psh")]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["values"]["x"].as_array().unwrap().len(), 4);
}

#[test]
fn two_point_presheaf_is_not_ind() {
    let (code, v) = json(&["ind", "recognize", "-X", &fixture("ptset.psh")]);
    assert_eq!(code, 1);
    assert!(v["witness"]["disjoint"].is_array());
}

#[test]
fn prod_demo_parities() {
    for n in ["3", "4", "5"] {
        let (code, v) = json(&["ind", "prod-demo", n]);
        assert_eq!(code, 0, "N = {n}");
        assert_eq!(v["data"]["fiber_product_objects"], 0);
    }
}

#[test]
fn karoubi_identification_for_projector() {
    let (code, v) = json(&["ind", "karoubi-id", &fixture("P.fc")]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["iso_classes"], 2);
}

#[test]
fn lax_limit_of_identity_diagram() {
    let (code, v) = json(&["lax-limit", &fixture("chain.diag")]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["sections"].as_array().unwrap().len(), 2);
}

#[test]
fn named_entity_reference() {
    let o = kancalc(&["check", "filtered", &format!("{}@pt", fixture("kan.fun"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pt is filtered"));
}

#[test]
fn harness_small_suites() {
    let (code, v) = json(&["harness", "p-le", "--max-obj", "2", "--max-mor", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["complete"], true);
    assert!(v["data"]["instances"].as_u64().unwrap() > 0);
    let (code, v) = json(&["harness", "filt-prop", "--shapes", "dim1", "--max-size", "2", "--max-values", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(kancalc(&["harness", "nope"]).status.code(), Some(2));
}

#[test]
fn harness_time_limit_is_incomplete() {
    let o = kancalc(&["harness", "p-le", "--max-obj", "3", "--max-mor", "8", "--time-limit", "0.2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn show_round_trip_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let once = stdout(&kancalc(&["show", &fixture("chain.diag")]));
    let path = dir.path().join("once.diag");
    std::fs::write(&path, &once).unwrap();
    let twice = stdout(&kancalc(&["show", path.to_str().unwrap()]));
    assert_eq!(once, twice);
}
