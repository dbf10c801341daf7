use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiberlink"))
        .args(args)
        .output()
        .unwrap()
}

fn run_fixture(command: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &[u8]) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn parse_reports_components_and_crossings() {
    let o = run_fixture("parse", "hopf.pd", &["--json"]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)["result"];
    assert_eq!(r["component_count"], 2);
    assert_eq!(r["crossing_count"], 2);
    assert_eq!(r["components"][0]["arcs"], serde_json::json!([1, 2]));
    assert_eq!(r["components"][1]["arcs"], serde_json::json!([3, 4]));
}

#[test]
fn exit_zero_cases() {
    for (cmd, file) in [
        ("parse", "trefoil.pd"),
        ("invariants", "chain3.pd"),
        ("obstruction", "unknot1.pd"),
        ("realize", "fig1_scene.pd"),
        ("realize", "examh1_scene.pd"),
        ("hp", "hopf.pd"),
        ("witness", "hopf_fibers.pd"),
    ] {
        assert_eq!(code(&run_fixture(cmd, file, &[])), 0, "{cmd} {file}");
    }
}

#[test]
fn exit_one_cases() {
    for (cmd, file) in [
        ("realize", "unknot_split_scene.pd"),
        ("hp", "unknot.pd"),
        ("hp", "chain3.pd"),
    ] {
        assert_eq!(code(&run_fixture(cmd, file, &[])), 1, "{cmd} {file}");
    }
    let o = run_fixture("realize", "unknot_split_scene.pd", &["--json"]);
    assert_eq!(json(&o)["result"]["mismatches"], serde_json::json!([1]));
}

#[test]
fn exit_two_cases() {
    let dir = tempfile::tempdir().unwrap();
    let arity = write_temp(&dir, "arity.pd", b"U 5\nX 1 2 3\n");
    let o = run(&["parse", arity.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 2);
    let err = &json(&o)["result"]["error"];
    assert_eq!((err["kind"].as_str(), err["line"].as_u64()), (Some("syntax"), Some(2)));
    let o = run(&["parse", arity.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let triple = write_temp(&dir, "triple.pd", b"X 1 2 2 3\nX 2 4 3 1\n");
    let o = run(&["parse", triple.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["result"]["error"]["kind"], "invalid_diagram");

    let dup = write_temp(&dir, "dup.pd", b"U 1\nF 1 0\nF 1 2\n");
    assert_eq!(code(&run(&["parse", dup.to_str().unwrap()])), 2);
    let bytes = write_temp(&dir, "latin1.pd", b"U 1 # \xff\n");
    assert_eq!(code(&run(&["parse", bytes.to_str().unwrap()])), 2);
    let empty = write_temp(&dir, "empty.pd", b"");
    assert_eq!(code(&run(&["hp", empty.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["realize", empty.to_str().unwrap()])), 2);

    // Missing framings or roles.
    assert_eq!(code(&run_fixture("obstruction", "hopf.pd", &[])), 2);
    assert_eq!(code(&run_fixture("realize", "hopf_fibers.pd", &[])), 2);
    assert_eq!(code(&run_fixture("witness", "trefoil.pd", &[])), 2);
    // Not framed null-cobordant.
    assert_eq!(code(&run_fixture("witness", "unknot1.pd", &[])), 2);
    let hopf_map = write_temp(&dir, "hopf_map.pd", b"U 1\nU 2\nF 1 1\nR 1 fiber\nR 2 singular\n");
    let o = run(&["realize", hopf_map.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["result"]["verdict"], "not_applicable");
    assert_eq!(
        code(&run(&["realize", hopf_map.to_str().unwrap(), "--target", "sphere"])),
        0
    );
    // Usage errors.
    assert_eq!(code(&run(&["frobnicate", "x.pd"])), 2);
    assert_eq!(code(&run(&["parse"])), 2);
    assert_eq!(
        code(&run_fixture("realize", "fig1_scene.pd", &["--target", "torus"])),
        2
    );
}

#[test]
fn exit_three_cases() {
    let o = run(&["parse", "/nonexistent/fiberlink/input.pd", "--json"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["result"]["error"]["kind"], "io");
    assert_eq!(json(&o)["input_digest"], Value::Null);
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["parse", dir.path().to_str().unwrap()])), 3);
    assert_eq!(code(&run(&["hp", "--batch", "/nonexistent/fiberlink"])), 3);
}

#[test]
fn sphere_target_allows_empty_singular_set() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(
        &dir,
        "pair.pd",
        b"X 1 3 2 4\nX 4 2 3 1\nF 1 1\nF 2 1\nR 1 fiber\nR 2 fiber\n",
    );
    let o = run(&["realize", p.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    let notes = json(&o)["result"]["notes"].clone();
    assert_eq!(notes, serde_json::json!([{ "code": "empty_singular_set_on_plane" }]));
    assert_eq!(code(&run(&["realize", p.to_str().unwrap(), "--target", "sphere"])), 0);
}

#[test]
fn witness_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["unknot0.pd", "hopf_fibers.pd", "examh1_scene.pd", "fig1_scene.pd"] {
        let o = run_fixture("witness", name, &[]);
        assert_eq!(code(&o), 0, "{name}");
        let scene = write_temp(&dir, name, &o.stdout);
        assert_eq!(code(&run(&["realize", scene.to_str().unwrap()])), 0, "{name}");
    }
    let o = run_fixture("witness", "unknot0.pd", &["--json"]);
    let r = &json(&o)["result"];
    assert_eq!(r["meridians"], serde_json::json!([1]));
    assert_eq!(r["extra_split_unknot"], false);
}

#[test]
fn fixture_values() {
    let r = json(&run_fixture("invariants", "trefoil.pd", &["--json"]))["result"].clone();
    assert_eq!(r["seifert"]["euler_characteristic"], -1);
    let r = json(&run_fixture("invariants", "hopf_fibers.pd", &["--json"]))["result"].clone();
    assert_eq!(r["framed"]["hopf_invariant"], 0);
    assert_eq!(r["framed"]["null_cobordant"], true);
    let r = json(&run_fixture("obstruction", "unknot0.pd", &["--json"]))["result"].clone();
    assert_eq!(
        (r["hopf_invariant"].as_i64(), r["obstruction"].clone()),
        (Some(0), serde_json::json!([1]))
    );
    assert_eq!(r["parity_identity"], "holds");
    let r = json(&run_fixture("obstruction", "hopf_fibers.pd", &["--json"]))["result"].clone();
    assert_eq!(r["obstruction"], serde_json::json!([0, 0]));
    let r = json(&run_fixture("hp", "chain3.pd", &["--json"]))["result"].clone();
    assert_eq!(r["submersion"]["failing"], serde_json::json!([2]));
    assert_eq!(r["certificate"], false);
}

#[test]
fn digest_depends_only_on_canonical_text() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_temp(&dir, "a.pd", b"X 1 3 2 4 / X 3 1 4 2\n");
    let b = write_temp(&dir, "b.pd", b"# same diagram\nX 3 1 4 2\n\nX 1 3 2 4   # reordered\n");
    let ja = run(&["invariants", a.to_str().unwrap(), "--json"]);
    let jb = run(&["invariants", b.to_str().unwrap(), "--json"]);
    assert_eq!(ja.stdout, jb.stdout);
    let digest = json(&ja)["input_digest"].as_str().unwrap().to_string();
    assert!(digest.starts_with("sha256:") && digest.len() == 7 + 64);
}

fn sorted_keys(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted_keys)
        }
        Value::Array(a) => a.iter().all(sorted_keys),
        _ => true,
    }
}

fn golden_cases() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("parse", "hopf.pd", "parse_hopf.json"),
        ("invariants", "hopf_fibers.pd", "invariants_hopf_fibers.json"),
        ("obstruction", "unknot0.pd", "obstruction_unknot0.json"),
        ("realize", "examh1_scene.pd", "realize_examh1_scene.json"),
        ("realize", "unknot_split_scene.pd", "realize_unknot_split_scene.json"),
        ("hp", "chain3.pd", "hp_chain3.json"),
        ("witness", "unknot0.pd", "witness_unknot0.json"),
    ]
}

#[test]
fn json_matches_golden_files() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (cmd, file, gold) in golden_cases() {
        let first = run_fixture(cmd, file, &["--json"]);
        let second = run_fixture(cmd, file, &["--json"]);
        assert_eq!(first.stdout, second.stdout, "{cmd} {file}");
        assert!(sorted_keys(&json(&first)), "{cmd} {file}");
        let expected = fs::read(golden.join(gold)).unwrap();
        let text = String::from_utf8(first.stdout).unwrap();
        let version = format!("\"version\": \"{}\"", env!("CARGO_PKG_VERSION"));
        let expected = String::from_utf8(expected)
            .unwrap()
            .replace("\"version\": \"VERSION\"", &version);
        assert_eq!(text, expected, "{cmd} {file}");
    }
}

#[test]
fn batch_mode_is_ordered_and_takes_the_worst_code() {
    let o = run(&["hp", "--batch", fixture("").to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    let files: Vec<String> = json(&o)["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["file"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = files.clone();
    sorted.sort();
    assert_eq!(files, sorted);
    assert!(files.contains(&"hopf.pd".to_string()));
    let again = run(&["hp", "--batch", fixture("").to_str().unwrap(), "--json"]);
    assert_eq!(o.stdout, again.stdout);
    let text = run(&["parse", "--batch", fixture("").to_str().unwrap()]);
    assert_eq!(code(&text), 0);
    assert!(String::from_utf8_lossy(&text.stdout).contains("== chain3.pd (exit 0)"));
    assert_eq!(
        code(&run(&["obstruction", "--batch", fixture("").to_str().unwrap()])),
        2
    );
}
