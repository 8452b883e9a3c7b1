use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::{Draft, JSONSchema};
use serde_json::Value;

use axiomlab_core::axioms::{Axiom, Witness};
use axiomlab_core::prefcore::{Universe, DEFAULT_ENUMERATION_CAP};
use axiomlab_core::rules::rule_by_name;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn axiomlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axiomlab")).args(args).env_remove("AXIOMLAB_CAP").output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(root().join("docs/schemas").join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn assert_valid(schema: &str, instance: &Value) {
    let common = load("common.schema.json");
    let compiled = JSONSchema::options()
        .with_draft(Draft::Draft202012)
        .with_document("https://axiomlab.invalid/schemas/common.schema.json".into(), common)
        .compile(&load(schema))
        .expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(instance) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{schema}: {}", msgs.join("; "));
}

#[test]
fn enumerate_counts() {
    let out = axiomlab(&["enumerate", "--domain", "separable", "--objects", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["count"], 8);
    assert_valid("enumerate.schema.json", &v);

    let out = axiomlab(&["enumerate", "--domain", "all", "--objects", "2", "--list", "--json"]);
    let v = json_of(&out);
    assert_eq!(v["count"], 24);
    assert_eq!(v["preferences"].as_array().unwrap().len(), 24);
    assert_valid("enumerate.schema.json", &v);
}

#[test]
fn enumeration_cap_is_enforced() {
    let out = axiomlab(&["enumerate", "--domain", "all", "--objects", "4", "--cap", "default"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the configured cap"));

    let out = Command::new(env!("CARGO_BIN_EXE_axiomlab"))
        .args(["enumerate", "--domain", "all", "--objects", "2"])
        .env("AXIOMLAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_fixtures() {
    for (rule, file, expected) in [
        ("f_gt", "f_gt_nested_tops.json", serde_json::json!(["y"])),
        ("f_geq", "f_gt_nested_tops.json", serde_json::json!(["x", "y"])),
        ("quota1", "quota1_two_singletons.json", serde_json::json!(["x", "y"])),
        ("f_min", "f_min_ids_3_7.json", serde_json::json!(["x"])),
    ] {
        let out = axiomlab(&["eval", "--rule", rule, "--profile", &fixture(file), "--json"]);
        assert_eq!(out.status.code(), Some(0), "{rule}");
        let v = json_of(&out);
        assert_eq!(v["outcome"], expected, "{rule}");
        assert_valid("eval.schema.json", &v);
    }
}

#[test]
fn eval_rejects_bad_profiles() {
    let out = axiomlab(&["eval", "--rule", "f_gt", "--profile", &fixture("non_separable.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside the rule's domain"));
    let out = axiomlab(&["eval", "--rule", "f_gt", "--profile", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    // the extension accepts the same ballot
    let out = axiomlab(&["eval", "--rule", "ext:f_gt", "--profile", &fixture("non_separable.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failing_check_exits_one_with_a_replayable_witness() {
    let out = axiomlab(&["check", "--rule", "f_star", "--axiom", "participation", "--objects", "3", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_valid("check_result.schema.json", &v);
    assert_eq!(v["verdict"], "fail");
    let u = Universe::subsets(3).unwrap();
    let rule = rule_by_name("f_star", &u).unwrap();
    let w = Witness::from_json(&u, &v["witness"]).unwrap();
    assert!(w.replay(&rule, Axiom::Participation, DEFAULT_ENUMERATION_CAP).unwrap());
}

#[test]
fn passing_check_exits_zero() {
    let out = axiomlab(&["check", "--rule", "quota1", "--axiom", "fnp", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid("check_result.schema.json", &v);
    assert!(v.get("witness").is_none());
}

#[test]
fn human_and_json_verdicts_agree() {
    for axiom in ["ontoness", "participation", "object-neutrality"] {
        let args = ["check", "--rule", "f_succ", "--axiom", axiom, "--nmax", "2"];
        let human = String::from_utf8(axiomlab(&args).stdout).unwrap();
        let mut json_args = args.to_vec();
        json_args.push("--json");
        let v = json_of(&axiomlab(&json_args));
        let verdict = v["verdict"].as_str().unwrap();
        assert!(human.lines().next().unwrap().ends_with(&format!("{verdict} (n_max=2, n'_max=2)")), "{human}");
    }
}

#[test]
fn verify_thm1_reports_depth() {
    let out = axiomlab(&["verify", "--theorem", "thm1", "--objects", "2", "--budget", "60", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid("verdict_report.schema.json", &v);
    assert_eq!(v["outcome"], "confirmed");
    assert_eq!(v["artifacts"]["unsat_depth"], 2);
}

#[test]
fn verify_reports_validate_and_set_exit_codes() {
    let cases: [(&[&str], i32); 6] = [
        (&["--theorem", "lemma1", "--rule", "quota1"], 0),
        (&["--theorem", "lemma1", "--rule", "f_min"], 2),
        (&["--theorem", "prop1", "--rule", "quota_unanimous"], 0),
        (&["--theorem", "remark2", "--alternatives", "2", "--voters", "2"], 0),
        (&["--theorem", "thm2"], 0),
        (&["--theorem", "independence", "--nmax", "2", "--nprime", "1"], -1),
    ];
    for (args, code) in cases {
        let mut all = vec!["verify"];
        all.extend_from_slice(args);
        all.push("--json");
        let out = axiomlab(&all);
        let v = json_of(&out);
        assert_valid("verdict_report.schema.json", &v);
        let expected = match v["outcome"].as_str().unwrap() {
            "confirmed" => 0,
            "refuted" => 1,
            _ => 2,
        };
        assert_eq!(out.status.code(), Some(expected), "{args:?}");
        if code >= 0 {
            assert_eq!(expected, code, "{args:?}");
        }
    }
}

#[test]
fn matrix_renders_every_format() {
    let args = ["matrix", "--objects", "2", "--nmax", "2", "--nprime", "1"];
    let human = String::from_utf8(axiomlab(&args).stdout).unwrap();
    for rule in ["f_const", "f_tilde", "f_min", "f_star", "f_succ", "f_star_distinct *"] {
        assert!(human.contains(rule), "{human}");
    }
    let mut md_args = args.to_vec();
    md_args.extend(["--format", "markdown"]);
    let md = String::from_utf8(axiomlab(&md_args).stdout).unwrap();
    assert!(md.contains("| rule | ontoness | tops-onliness | fnp | participation | object-neutrality |"));
    assert_eq!(md.lines().filter(|l| l.starts_with("| f_")).count(), 6);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = axiomlab(&["verify", "--theorem", "remark2", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("verdict_report.schema.json", &v);
}

#[test]
fn identical_runs_are_identical() {
    let args = ["verify", "--theorem", "thm2", "--json"];
    let mut a = json_of(&axiomlab(&args));
    let mut b = json_of(&axiomlab(&args));
    a.as_object_mut().unwrap().remove("wall_time_seconds");
    b.as_object_mut().unwrap().remove("wall_time_seconds");
    assert_eq!(a, b);
}

#[test]
fn missing_rule_is_an_error() {
    let out = axiomlab(&["verify", "--theorem", "lemma1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = axiomlab(&["check", "--rule", "nope", "--axiom", "fnp"]);
    assert_eq!(out.status.code(), Some(2));
}
