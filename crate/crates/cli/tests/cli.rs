use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qudo_cli::files::ModelFile;
use qudo_core::models::Model;

fn qudo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudo")).args(args).output().unwrap()
}

fn bundled(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("instances")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn built(dir: &Path, instance: &str) -> (Output, ModelFile) {
    let out = path(dir, "model.json");
    let o = qudo(&["build", instance, "-o", &out]);
    let file = ModelFile::read(&PathBuf::from(&out)).unwrap();
    (o, file)
}

#[test]
fn queens_four_builds_four_ququarts() {
    let dir = tempfile::tempdir().unwrap();
    let (o, file) = built(dir.path(), &bundled("queens.json"));
    assert!(o.status.success());
    assert_eq!(file.dims, vec![4; 4]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("4 variables"), "{stdout}");
}

#[test]
fn single_item_knapsack_has_one_item_and_one_slack() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "k.json",
        r#"{"problem":"knapsack","params":{"values":[1],"weights":[1],"counts":[1],"capacity":1},
            "encoding":{"variant":"qudo"}}"#,
    );
    let (o, file) = built(dir.path(), &inst);
    assert!(o.status.success());
    assert_eq!(file.dims, vec![2, 2]);
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "bad.json", "{\"problem\": \"queens\", ");
    let o = qudo(&["build", &inst, "-o", &path(dir.path(), "m.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn unknown_problem_and_bad_params_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        r#"{"problem":"sudoku","params":{}}"#,
        r#"{"problem":"queens","params":{"n":0}}"#,
        r#"{"problem":"queens","params":{"n":4},"encoding":{"slackBase":3}}"#,
    ] {
        let inst = write(dir.path(), "i.json", text);
        let o = qudo(&["build", &inst, "-o", &path(dir.path(), "m.json")]);
        assert_eq!(o.status.code(), Some(2), "{text}");
    }
}

#[test]
fn missing_subcommand_argument_is_usage_error() {
    assert_eq!(qudo(&["build"]).status.code(), Some(2));
}

#[test]
fn rejected_solution_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let sol = write(dir.path(), "s.json", r#"{"problem":"queens","columns":[0,1,2,3]}"#);
    let o = qudo(&["validate", &bundled("queens.json"), &sol]);
    assert_eq!(o.status.code(), Some(1));
    let ok = write(dir.path(), "t.json", r#"{"problem":"queens","columns":[1,3,0,2]}"#);
    assert!(qudo(&["validate", &bundled("queens.json"), &ok]).status.success());
}

#[test]
fn solution_for_another_problem_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let sol = write(dir.path(), "s.json", r#"{"problem":"tsp","tour":[0,1,2,3]}"#);
    let o = qudo(&["validate", &bundled("queens.json"), &sol]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn oversized_spaces_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "q.json", r#"{"problem":"queens","params":{"n":12}}"#);
    let (o, _) = built(dir.path(), &inst);
    assert!(o.status.success());
    let model = path(dir.path(), "model.json");
    assert_eq!(qudo(&["solve", &model, "--method", "exhaustive"]).status.code(), Some(3));
    assert_eq!(qudo(&["qaoa", &model]).status.code(), Some(3));
}

#[test]
fn tqudo_cannot_convert_to_qubo() {
    let dir = tempfile::tempdir().unwrap();
    built(dir.path(), &bundled("queens.json"));
    let o = qudo(&["convert", &path(dir.path(), "model.json"), "--to", "qubo", "-o", &path(dir.path(), "b.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_file_round_trips_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let (_, file) = built(dir.path(), &bundled("knapsack.json"));
    let model = file.to_model().unwrap();
    let again = ModelFile::from_model(&model, file.layout.clone());
    let text = serde_json::to_string(&again).unwrap();
    let back: ModelFile = serde_json::from_str(&text).unwrap();
    let back = back.to_model().unwrap();
    assert!(matches!(model, Model::Qudo(_)));
    let dims = model.dims();
    let mut x = vec![0; dims.len()];
    loop {
        assert_eq!(model.cost(&x), back.cost(&x));
        let Some(k) = (0..x.len()).rev().find(|&k| x[k] + 1 < dims[k]) else {
            break;
        };
        x[k] += 1;
        x[k + 1..].iter_mut().for_each(|v| *v = 0);
    }
}

#[test]
fn solve_then_validate_roundtrip_via_output_file() {
    let dir = tempfile::tempdir().unwrap();
    built(dir.path(), &bundled("tsp.json"));
    let bin = path(dir.path(), "b.json");
    let out = path(dir.path(), "s.json");
    assert!(qudo(&["convert", &path(dir.path(), "model.json"), "--to", "hobo", "-o", &bin]).status.success());
    let o = qudo(&["solve", &bin, "--method", "anneal", "--seed", "3", "-o", &out]);
    assert!(o.status.success());
    let first = std::fs::read_to_string(&out).unwrap();
    qudo(&["solve", &bin, "--method", "anneal", "--seed", "3", "-o", &out]);
    let second = std::fs::read_to_string(&out).unwrap();
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["result"].as_object_mut().unwrap().remove("wallTime");
        v
    };
    assert_eq!(strip(&first), strip(&second));
    assert!(qudo(&["validate", &bundled("tsp.json"), &out]).status.success());
}

#[test]
fn qaoa_reports_expected_cost() {
    let dir = tempfile::tempdir().unwrap();
    built(dir.path(), &bundled("peg.json"));
    let o = qudo(&["qaoa", &path(dir.path(), "model.json"), "--layers", "1", "--grid", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("expected cost"));
}
