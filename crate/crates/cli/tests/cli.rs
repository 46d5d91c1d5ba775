use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invrings(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_invrings")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn validate(command: &str, doc: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{command}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{command} output violates its schema: {msgs:?}");
    };
}

fn json_of(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}\n{}", run.stdout, run.stderr))
}

struct Fixtures {
    _dir: TempDir,
    sign: String,
    c3: String,
    gr24: String,
}

fn fixtures() -> Fixtures {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, body: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_str().unwrap().to_string()
    };
    let sign = write("sign.json", r#"{"kind":"finite","matrices":[[[1,0],[0,1]],[[-1,0],[0,-1]]]}"#);
    let c3 = write(
        "c3.json",
        r#"{"kind":"finite","matrices":[[[1,0],[0,1]],[[0,-1],[1,-1]],[[-1,1],[-1,0]]]}"#,
    );
    let gr = invrings(&["present", "--group", "Sl", "--m", "2", "--n", "4"]);
    assert_eq!(gr.code, 0, "{}", gr.stderr);
    let gr24 = write("gr24.json", &gr.stdout);
    Fixtures { _dir: dir, sign, c3, gr24 }
}

#[test]
fn documented_examples() {
    let f = fixtures();
    let min = invrings(&["pgg-min", "--presentation", &f.gr24, "--max-degree", "10"]);
    assert_eq!(min.code, 0);
    assert_eq!(json_of(&min)["t_min"], 4);

    let unstable = invrings(&["semistable", "--matrix", "[[1,2,3],[2,4,6]]"]);
    assert_eq!(unstable.code, 1);
    assert_eq!(json_of(&unstable)["verdict"], "unstable");

    let molien = invrings(&["molien", "--group", &f.sign, "--max-degree", "6"]);
    assert_eq!(molien.code, 0);
    assert_eq!(json_of(&molien)["series"], serde_json::json!([1, 0, 3, 0, 5, 0, 7]));
}

/// Each case: arguments, expected exit status.
fn cases(f: &Fixtures) -> Vec<(Vec<String>, i32)> {
    let raw: Vec<(Vec<&str>, i32)> = vec![
        (vec!["fft", "--group", "Sl", "--m", "2", "--n", "4"], 0),
        (vec!["fft", "--group", "SO", "--m", "2", "--n", "3"], 0),
        (vec!["fft", "--group", &f.sign, "--n", "1"], 0),
        (vec!["sft", "--group", "Sp", "--m", "2", "--n", "4"], 0),
        (vec!["sft", "--group", &f.c3, "--n", "1"], 0),
        (vec!["present", "--group", "O", "--m", "1", "--n", "3"], 0),
        (vec!["verify", "--group", "Sl", "--m", "2", "--n", "4", "--max-degree", "4"], 0),
        (vec!["verify", "--group", "O", "--m", "1", "--n", "3", "--max-degree", "6"], 0),
        (vec!["verify", "--group", "SO", "--m", "2", "--n", "2", "--max-degree", "4"], 1),
        (vec!["invariants", "--group", &f.c3, "--n", "1", "--max-degree", "4"], 0),
        (vec!["invariants", "--group", "Sp", "--m", "2", "--n", "2", "--max-degree", "2"], 0),
        (vec!["molien", "--group", &f.c3, "--max-degree", "8"], 0),
        (vec!["molien", "--group", &f.sign, "--n", "2", "--max-degree", "4"], 0),
        (vec!["pgg-check", "--presentation", &f.gr24, "--t", "4", "--max-degree", "8"], 0),
        (vec!["pgg-check", "--presentation", &f.gr24, "--t", "3", "--max-degree", "8"], 1),
        (vec!["pgg-check", "--group", &f.sign, "--n", "1", "--t", "3", "--max-degree", "6"], 1),
        (vec!["pgg-min", "--group", "Sp", "--m", "2", "--n", "4", "--max-degree", "8"], 0),
        (vec!["embed", "--group", &f.sign, "--n", "1", "--t", "4", "--exponent", "12", "--dmax", "2"], 0),
        (vec!["embed", "--presentation", &f.gr24, "--t", "4", "--exponent", "5", "--dmax", "2"], 1),
        (vec!["embed", "--presentation", &f.gr24, "--t", "4", "--dmax", "2"], 0),
        (vec!["embed-spec", "--group", &f.sign, "--n", "1", "--t", "2"], 0),
        (vec!["embed-spec", "--group", &f.sign, "--n", "1", "--t", "1"], 1),
        (vec!["fft", "--group", "Sl", "--m", "3", "--n", "2"], 0),
        (vec!["embed-spec", "--group", "Sl", "--m", "1", "--n", "1", "--t", "1", "--exponent", "2"], 0),
        (vec!["semistable", "--matrix", "[[1,0,2,3],[0,1,4,5]]"], 0),
        (vec!["semistable", "--matrix", "[[1,2],[2,4]]", "--field", "p7"], 1),
        (vec!["plucker", "--matrix", "[[1,0,2,3],[0,1,4,5]]"], 0),
        (vec!["plucker", "--matrix", "[[1,2,3],[2,4,6]]"], 1),
        (vec!["plucker", "--matrix", "[[\"1/2\",0,2],[0,1,3]]", "--field", "p5"], 0),
    ];
    raw.into_iter().map(|(a, c)| (a.into_iter().map(String::from).collect(), c)).collect()
}

#[test]
fn outputs_validate_against_schemas() {
    let f = fixtures();
    for (args, expected) in cases(&f) {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = invrings(&argv);
        assert_eq!(run.code, expected, "{argv:?}: {}", run.stderr);
        let doc = json_of(&run);
        assert_eq!(doc["schema_version"], "1.0");
        validate(&args[0], &doc);
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let f = fixtures();
    for (args, _) in cases(&f).into_iter().step_by(3) {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = invrings(&argv).stdout;
        let mut threaded = argv.clone();
        threaded.extend(["--threads", "3"]);
        assert_eq!(first, invrings(&argv).stdout, "{argv:?}");
        assert_eq!(first, invrings(&threaded).stdout, "{argv:?} with threads");
    }
}

#[test]
fn out_flag_writes_the_same_document() {
    let f = fixtures();
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("molien.json");
    let run = invrings(&["molien", "--group", &f.sign, "--max-degree", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let direct = invrings(&["molien", "--group", &f.sign, "--max-degree", "6"]).stdout;
    assert_eq!(std::fs::read_to_string(path).unwrap(), direct);
}

#[test]
fn invalid_input_exits_two() {
    let f = fixtures();
    let bad: Vec<Vec<&str>> = vec![
        vec!["pgg-check", "--presentation", &f.gr24, "--t", "5", "--max-degree", "4"],
        vec!["pgg-check", "--presentation", &f.gr24, "--t", "0", "--max-degree", "4"],
        vec!["fft", "--group", "Sl", "--m", "0", "--n", "4"],
        vec!["fft", "--group", "Sl", "--n", "4"],
        vec!["present", "--group", "Sl", "--m", "2"],
        vec!["molien", "--group", &f.sign, "--max-degree", "4", "--field", "p5"],
        vec!["molien", "--group", &f.sign, "--max-degree", "4", "--field", "p4"],
        vec!["molien", "--group", "Sl", "--m", "2", "--max-degree", "4"],
        vec!["verify", "--group", &f.sign, "--n", "1", "--max-degree", "4"],
        vec!["semistable", "--matrix", "[[1,2],[3]]"],
        vec!["fft", "--group", "/nonexistent/group.json", "--n", "1"],
        vec!["fft", "--group", "Sp", "--m", "3", "--n", "2"],
        vec!["molien", "--group", &f.sign, "--max-degree", "4", "--threads", "0"],
        vec!["no-such-command"],
    ];
    for argv in bad {
        let run = invrings(&argv);
        assert_eq!(run.code, 2, "{argv:?}: stdout {}", run.stdout);
        assert!(run.stdout.is_empty(), "{argv:?}");
        assert!(!run.stderr.is_empty(), "{argv:?}");
    }
}

#[test]
fn orthogonal_verify_carries_the_bound_experiment() {
    let run = invrings(&["verify", "--group", "O", "--m", "1", "--n", "3", "--max-degree", "8"]);
    let doc = json_of(&run);
    let exp = &doc["t_bound_experiment"];
    assert_eq!(exp["verdict_at_claimed"], "refuted-at-degree-4");
    assert_eq!(exp["verdict_at_ambient"], "certified-up-to-8");
    assert!(exp["note"].as_str().unwrap().contains("open question"));
}

#[test]
fn fields_agree_on_small_pipeline() {
    let q = json_of(&invrings(&["pgg-min", "--group", "Sl", "--m", "2", "--n", "4", "--max-degree", "8"]));
    let p = json_of(&invrings(&["pgg-min", "--group", "Sl", "--m", "2", "--n", "4", "--max-degree", "8", "--field", "p101"]));
    assert_eq!(q["t_min"], p["t_min"]);
    assert_eq!(q["certificate"]["degrees"], p["certificate"]["degrees"]);
}

#[test]
fn schemas_reject_tampered_documents() {
    let run = invrings(&["semistable", "--matrix", "[[1,0],[0,1]]"]);
    let doc = json_of(&run);
    let text = std::fs::read_to_string(schema_dir().join("semistable.schema.json")).unwrap();
    let schema = jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap();
    assert!(schema.is_valid(&doc));
    for key in ["schema_version", "verdict", "witnesses"] {
        let mut broken = doc.clone();
        broken.as_object_mut().unwrap().remove(key);
        assert!(!schema.is_valid(&broken), "missing {key}");
    }
    let mut broken = doc.clone();
    broken["verdict"] = "maybe".into();
    assert!(!schema.is_valid(&broken));
    let mut broken = doc;
    broken["command"] = "molien".into();
    assert!(!schema.is_valid(&broken));
}

#[test]
fn equal_degree_presentations_default_to_the_common_degree() {
    let f = fixtures();
    let doc = json_of(&invrings(&["embed", "--presentation", &f.gr24, "--t", "4", "--dmax", "2"]));
    assert_eq!(doc["chart"]["e"], 2);
    assert_eq!(doc["chart"]["coordinates"].as_array().unwrap().len(), 6);
    let quadrics: Vec<&Value> = doc["chart"]["equations"].as_array().unwrap().iter().filter(|q| q["degree"] == 2).collect();
    assert_eq!(quadrics.len(), 1);
}

#[test]
fn fewer_vectors_than_dimension_gives_constants() {
    let doc = json_of(&invrings(&["present", "--group", "Sl", "--m", "3", "--n", "2"]));
    assert_eq!(doc["generators"], serde_json::json!([]));
    assert_eq!(doc["relations"], serde_json::json!([]));
}
