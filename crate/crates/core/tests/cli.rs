use std::path::Path;
use std::process::{Command, Output};

fn leighton(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leighton"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn setup(names: &[&str]) -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    for n in names {
        let o = leighton(tmp.path(), &["fixture", n, "-o", &format!("{n}.json")]);
        assert!(o.status.success());
    }
    tmp
}

#[test]
fn check_exit_codes() {
    let tmp = setup(&["c3", "c4", "k4"]);
    let o = leighton(tmp.path(), &["check", "c3.json", "c4.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("true"));
    let o = leighton(tmp.path(), &["check", "c3.json", "k4.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("false"));
}

#[test]
fn build_then_verify_from_disk() {
    let tmp = setup(&["c3", "c4"]);
    let o = leighton(tmp.path(), &["build", "c3.json", "c4.json", "--backend", "star", "--strategy", "dr", "-o", "out"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = leighton(tmp.path(), &["verify", "out/cover.json", "c3.json", "c4.json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mu1: covering") && text.contains("mu2: covering"));
    assert!(text.contains("12 vertices"));
}

#[test]
fn tampered_cover_fails_verification() {
    let tmp = setup(&["c3", "c4"]);
    leighton(tmp.path(), &["build", "c3.json", "c4.json", "-o", "out"]);
    let p = tmp.path().join("out/cover.json");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let dmap = v["mu2"]["dmap"].as_object_mut().unwrap();
    let keys: Vec<String> = dmap.keys().cloned().collect();
    let (a, b) = (dmap[&keys[0]].clone(), dmap[&keys[1]].clone());
    dmap.insert(keys[0].clone(), b);
    dmap.insert(keys[1].clone(), a);
    std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    let o = leighton(tmp.path(), &["verify", "out/cover.json", "c3.json", "c4.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn regular_bound_prints_48() {
    let tmp = tempfile::tempdir().unwrap();
    let o = leighton(tmp.path(), &["bounds", "--kind", "regular", "--v1", "4", "--v2", "6", "--odd"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "48");
}

#[test]
fn bounds_with_missing_parameters_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = leighton(tmp.path(), &["bounds", "--kind", "ball", "--v", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_graph_reports_location() {
    let tmp = setup(&["c3"]);
    std::fs::write(
        tmp.path().join("bad.json"),
        r#"{"vertices":[{"id":"a"}],"darts":[{"id":"x","reverse":"q","from":"a"}]}"#,
    )
    .unwrap();
    let o = leighton(tmp.path(), &["check", "bad.json", "c3.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("darts[0].reverse"), "{err}");
}

#[test]
fn ball_backend_writes_certificate() {
    let tmp = setup(&["c3", "c4"]);
    let o = leighton(tmp.path(), &["build", "c3.json", "c4.json", "--backend", "ball", "-R", "2", "--based", "-o", "out"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("out/phi.json")).unwrap()).unwrap();
    assert_eq!(cert["mismatched_darts"], 0);
    assert_eq!(cert["fixes_base_ball"], true);
}

#[test]
fn glue_backend_needs_orientation_on_k4_theta3() {
    let tmp = setup(&["k4", "theta3"]);
    let o = leighton(tmp.path(), &["build", "k4.json", "theta3.json", "--backend", "glue", "-o", "out"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("orientation required"));
    let o = leighton(tmp.path(), &["build", "k4.json", "theta3.json", "--backend", "glue", "--subdivide", "-o", "out"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn objects_pipeline_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(leighton(tmp.path(), &["fixture", "rotation-3", "-o", "rot"]).status.success());
    let o = leighton(
        tmp.path(),
        &["build-objects", "rot/x1.json", "rot/x2.json", "--seeds", "rot/seeds.json", "-o", "out"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = leighton(tmp.path(), &["verify", "out/cover.json", "rot/x1.json", "rot/x2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mu2: object covering"));
}

#[test]
fn regular_and_oracle_and_dot() {
    let tmp = setup(&["k4", "k33", "c3", "c4"]);
    let o = leighton(tmp.path(), &["regular", "k4.json", "k33.json", "-o", "reg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("48 vertices"));
    let o = leighton(tmp.path(), &["verify", "reg/cover.json", "k4.json", "k33.json"]);
    assert_eq!(o.status.code(), Some(0));

    let o = leighton(tmp.path(), &["oracle", "c3.json", "c4.json", "--max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 12);
    let o = leighton(tmp.path(), &["oracle", "c3.json", "k4.json", "--max", "2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = leighton(tmp.path(), &["export-dot", "reg/cover.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches(" -- ").count(), 72);
}
