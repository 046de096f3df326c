use std::process::{Command, Output};

use serde_json::Value;

const TWO_CHAIN: &str = r#"{"holes":["s","p1","n1","n2"],"twists":[
    {"holes":["s","p1","n1","n2"],"power":1},{"holes":["s","p1"],"power":1},
    {"holes":["s","n1","n2"],"power":1},{"holes":["p1"],"power":1},
    {"holes":["n1"],"power":1},{"holes":["n2"],"power":1}]}"#;
const PABC: &str = r#"{"n":2,"relations":[[1,1,2],[2,1,2]]}"#;

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], max_search: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lenscape"));
    cmd.args(args).env_remove("LENSCAPE_MAX_SEARCH");
    if let Some(v) = max_search {
        cmd.env("LENSCAPE_MAX_SEARCH", v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout_ok(&full)).expect("stdout is JSON")
}

fn schema() -> jsonschema::JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/lenscape.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&raw)
        .expect("schema compiles")
}

/// One invocation of every subcommand, several with optional parts switched on.
fn every_subcommand() -> Vec<Vec<&'static str>> {
    vec![
        vec!["info", "17", "7"],
        vec!["info", "4", "1"],
        vec!["info", "123456789012345678901", "34567890123456787"],
        vec!["tight", "17", "7"],
        vec!["d3", "11", "4", "--rot", "1,-2"],
        vec!["euler", "11", "4", "--rot", "1,-2"],
        vec!["cover", "17", "7", "--deg", "17", "--rot", "1,0,0"],
        vec!["cover", "12", "5", "--deg", "2"],
        vec!["cover", "45", "19", "--deg", "3", "--rot", "1,0,1,0,-1"],
        vec!["cover", "25", "9", "--deg", "5"],
        vec!["pi1", "12", "7", "--rot", "0,0,0"],
        vec!["pi1", "9", "2", "--rot", "1,0"],
        vec!["embed", "17", "7", "--rank", "4"],
        vec!["embed", "12", "5"],
        vec!["embed", "7", "2"],
        vec!["milnor", "12", "7", "--rot", "0,0,0"],
        vec!["milnor", "15", "4", "--rot", "0,0"],
        vec!["milnor", "9", "2", "--rot", "1,0"],
        vec!["artin-validate", PABC],
        vec!["artin-validate", r#"{"n":2,"relations":[[1],[1]]}"#],
        vec!["artin-product", PABC, PABC],
        vec!["artin-matrix", PABC],
        vec!["mcg-mult", TWO_CHAIN],
        vec!["mcg-mult", r#"[{"holes":["a"],"power":-1}]"#],
        vec!["mcg-configs", TWO_CHAIN, "--symmetry", r#"[["n1","n2"]]"#],
        vec!["mcg-configs", "[[2,1],[1,2]]"],
        vec!["mcg-lantern", TWO_CHAIN, "--pick", r#"[["n1"],["n2"],["s","p1"]]"#],
    ]
}

#[test]
fn info_reports_counts_and_chi_bound() {
    let text = stdout_ok(&["info", "17", "7"]);
    assert!(text.contains("[3,2,4]"), "{text}");
    assert!(text.contains("6 (3 up to contactomorphism)"), "{text}");
    assert!(text.contains("chi <= 4"), "{text}");
    let v = json_ok(&["info", "17", "7"]);
    assert_eq!(v["result"]["expansion"], serde_json::json!([3, 2, 4]));
    assert_eq!(v["result"]["tight_structures"], 6);
    assert_eq!(v["result"]["contactomorphism_classes"], 3);
    assert_eq!(v["result"]["chi_upper_bound"], 4);
}

#[test]
fn d3_prints_the_bare_fraction() {
    assert_eq!(stdout_ok(&["d3", "11", "4", "--rot", "1,-2"]), "-3/11\n");
}

#[test]
fn milnor_open_case_is_inconclusive() {
    let text = stdout_ok(&["milnor", "12", "7", "--rot", "0,0,0"]);
    assert!(text.starts_with("Inconclusive"), "{text}");
    let v = json_ok(&["milnor", "12", "7", "--rot", "0,0,0"]);
    assert_eq!(v["result"]["verdict"]["verdict"], "inconclusive");
}

#[test]
fn milnor_names_the_case() {
    let text = stdout_ok(&["milnor", "9", "2", "--rot", "1,0"]);
    assert!(text.starts_with("Obstructed (a)"), "{text}");
}

#[test]
fn tight_lists_every_structure() {
    let v = json_ok(&["tight", "17", "7"]);
    let s = v["result"]["structures"].as_array().unwrap();
    assert_eq!(s.len(), 6);
    let ut = s.iter().filter(|x| x["class"] == "universally_tight").count();
    assert_eq!(ut, 2);
}

#[test]
fn cover_reports_lifts() {
    let v = json_ok(&["cover", "17", "7", "--deg", "17", "--rot", "1,0,0"]);
    assert_eq!(v["result"]["total"]["kind"], "sphere");
    assert_eq!(v["result"]["lift"]["lift_overtwisted"], true);
    assert_eq!(v["result"]["sign_constraints"]["status"], "not_applicable");
}

#[test]
fn lantern_keeps_multiplicities_and_drops_chi() {
    let v = json_ok(&["mcg-lantern", TWO_CHAIN, "--pick", r#"[["n1"],["n2"],["s","p1"]]"#]);
    let r = &v["result"];
    assert_eq!(r["matrix_before"], r["matrix_after"]);
    assert_eq!(r["chi_before"].as_i64().unwrap() - 1, r["chi_after"].as_i64().unwrap());
}

#[test]
fn two_chain_with_one_p_has_two_configuration_classes() {
    let v = json_ok(&["mcg-configs", TWO_CHAIN, "--symmetry", r#"[["n1","n2"]]"#]);
    assert_eq!(v["result"]["count"], 2);
}

#[test]
fn json_output_of_every_subcommand_matches_the_schema() {
    let schema = schema();
    for args in every_subcommand() {
        let v = json_ok(&args);
        if let Err(errors) = schema.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{args:?} violates the schema:\n{}", msgs.join("\n"));
        };
    }
}

#[test]
fn schema_rejects_drifted_output() {
    let schema = schema();
    let mut v = json_ok(&["info", "17", "7"]);
    assert!(schema.is_valid(&v));
    v["result"]["surprise"] = Value::Bool(true);
    assert!(!schema.is_valid(&v));
    let wrong_command = serde_json::json!({"command": "d3", "result": {"lens": {"p": 5, "q": 2}}});
    assert!(!schema.is_valid(&wrong_command));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in every_subcommand() {
        for json in [false, true] {
            let mut full: Vec<&str> = if json { vec!["--json"] } else { vec![] };
            full.extend_from_slice(&args);
            let a = run(&full);
            let b = run(&full);
            assert_eq!(a.stdout, b.stdout, "{full:?}");
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}

#[test]
fn unknown_subcommand_exits_two_with_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn invalid_input_exits_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["info", "6", "4"],
        vec!["info", "1", "0"],
        vec!["info", "seven", "2"],
        vec!["d3", "11", "4", "--rot", "1,2,3"],
        vec!["d3", "11", "4", "--rot", "0,-2"],
        vec!["cover", "12", "5", "--deg", "5"],
        vec!["artin-matrix", r#"{"n":2,"relations":[[1],[1]]}"#],
        vec!["artin-validate", "not json"],
        vec!["artin-product", PABC, r#"{"n":3,"relations":[[],[],[]]}"#],
        vec!["mcg-lantern", TWO_CHAIN, "--pick", r#"[["n1"],["n2"],["p1"]]"#],
        vec!["mcg-configs", "[[1,2],[3,1]]"],
        vec!["tight", "17"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?} printed to stdout");
    }
}

#[test]
fn search_ceiling_from_environment_exits_three() {
    let out = run_env(&["tight", "1000", "13"], Some("3"));
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_env(&["tight", "1000", "13"], None);
    assert_eq!(out.status.code(), Some(0));
    // the dual of L(p,2) and the expansion of L(p,p-1) have about p entries
    for q in ["2", "123456789012345678900"] {
        let out = run(&["info", "123456789012345678901", q]);
        assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run_env(&["mcg-configs", TWO_CHAIN], Some("10"));
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_search_ceiling_is_invalid_input() {
    let out = run_env(&["info", "5", "2"], Some("lots"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("expansion order"));
}

#[test]
fn inputs_can_be_read_from_files() {
    let dir = std::env::temp_dir().join(format!("lenscape-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pres.json");
    std::fs::write(&path, PABC).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(stdout_ok(&["artin-validate", &arg]), stdout_ok(&["artin-validate", PABC]));
    std::fs::remove_dir_all(&dir).unwrap();
}
