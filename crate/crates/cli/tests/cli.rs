use std::path::Path;
use std::process::Command;

fn ccgeom() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ccgeom"))
}

const LENS: &str = r#"{
  "space": "H2",
  "seed": 1,
  "name": "congruent lens",
  "bodies": [
    { "halves": [ { "cycle": { "kind": "circle", "centre": [-0.2, 0.0], "radius": 1.0 }, "side": "convex" } ] },
    { "halves": [ { "cycle": { "kind": "circle", "centre": [0.2, 0.0], "radius": 1.0 }, "side": "convex" } ] }
  ]
}"#;

fn write_scene(dir: &Path, text: &str) -> std::path::PathBuf {
    let p = dir.join("scene.json");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn intersect_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), LENS);
    let out = dir.path().join("out.json");
    let status = ccgeom().args(["intersect", "--scene"]).arg(&scene).arg("--out").arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["status"], "compact_lens");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
}

#[test]
fn symmetry_reports_classification() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), LENS);
    let report = dir.path().join("sym.json");
    let status = ccgeom()
        .args(["symmetry", "--tol", "1e-6", "--scene"])
        .arg(&scene)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["classification"], "central_and_axial");
}

#[test]
fn verify_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, json) = (dir.path().join("r.csv"), dir.path().join("r.json"));
    let status = ccgeom()
        .args(["verify", "--experiment", "thm3", "--trials", "4", "--seed", "3", "--csv"])
        .arg(&csv)
        .arg("--json")
        .arg(&json)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("trial,status,classification,max_residual,diameter,notes"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), LENS);
    for model in ["klein", "poincare"] {
        let svg = dir.path().join(format!("{model}.svg"));
        let status = ccgeom().args(["render", "--model", model, "--scene"]).arg(&scene).arg("--svg").arg(&svg).status().unwrap();
        assert_eq!(status.code(), Some(0));
        assert!(std::fs::read_to_string(svg).unwrap().contains("<svg"));
    }
}

#[test]
fn malformed_scene_exits_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "{ \"space\": \"H2\",\n \"bodies\": [ }");
    let out = ccgeom().args(["intersect", "--scene"]).arg(&scene).args(["--out", "x.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn unknown_experiment_exits_with_usage_code() {
    let status = ccgeom().args(["verify", "--experiment", "thm9"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn sphere_scene_outside_the_chart_fails_to_render() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(
        dir.path(),
        r#"{"space":"S2","seed":0,"bodies":[{"halves":[{"cycle":{"kind":"circle","centre":[1.0,0.0],"radius":1.0},"side":"convex"}]}]}"#,
    );
    let status = ccgeom().args(["render", "--scene"]).arg(&scene).args(["--svg"]).arg(dir.path().join("s.svg")).status().unwrap();
    assert_eq!(status.code(), Some(1));
}
