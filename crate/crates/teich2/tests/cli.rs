use std::process::{Command, Output};

use serde_json::Value;

fn teich2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teich2"))
        .args(args)
        .env("TEICH2_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = teich2(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn octagon_sample_point() {
    let v = json(&["octagon", "--a", "0.8", "--alpha", "1.0471976"]);
    assert_eq!(v["schema"], "teich2/v1");
    assert_eq!(v["command"], "octagon");
    let per = v["perimeter"].as_f64().unwrap();
    assert!((per - 27.0233).abs() < 1e-3, "{per}");
    assert!((v["params"]["alpha_tilde"].as_f64().unwrap() - 0.2617994).abs() < 1e-6);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(v["midpoints"].as_array().unwrap().len(), 10);
}

#[test]
fn regular_octagon_is_the_default() {
    let v = json(&["octagon", "--format", "json"]);
    let a = v["params"]["a"].as_f64().unwrap();
    assert!((a - 2f64.powf(-0.25)).abs() < 1e-15);
    assert_eq!(v["params"]["alpha_tilde"].as_f64().unwrap(), 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(teich2(&["octagon", "--a", "0.8"]).status.code(), Some(2));
    assert_eq!(teich2(&["nonsense"]).status.code(), Some(2));
    assert_eq!(teich2(&["octagon", "--margin", "0.5"]).status.code(), Some(2));
    assert_eq!(teich2(&["octagon", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(
        teich2(&["octagon", "--a", "0.5", "--alpha-tilde", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(teich2(&["orbit", "--P", "20"]).status.code(), Some(3));
    assert_eq!(
        teich2(&["validate", "--tol", "orbit_constancy=1e-30"]).status.code(),
        Some(4)
    );
    assert_eq!(teich2(&["validate", "--tol", "nope=1"]).status.code(), Some(2));
}

#[test]
fn errors_are_json_when_asked() {
    let o = teich2(&["octagon", "--a", "0.5", "--alpha-tilde", "0", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "domain");
    assert_eq!(v["error"]["exit_code"], 3);
    assert!(!o.stderr.is_empty());
}

#[test]
fn orbit_rows() {
    let o = teich2(&["orbit", "--P", "25", "--samples", "256"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("P,phi,a,alpha_tilde,P_check"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 256);
    for row in rows {
        let check: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!((check - 25.0).abs() < 25.0 * 1e-8);
    }
    assert!(!text.contains('\r'));
}

#[test]
fn tiling_svg_has_one_path_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("tiling.svg");
    let cells = dir.path().join("cells.csv");
    let o = teich2(&[
        "tiling",
        "--n",
        "2",
        "--svg",
        svg.to_str().unwrap(),
        "--cells",
        cells.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 66);
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg"));
    assert_eq!(doc.matches("<path").count(), 65);
    let cells = std::fs::read_to_string(&cells).unwrap();
    assert_eq!(cells.lines().count(), 1 + 65 * 8);

    let piped = teich2(&["tiling", "--n", "2", "--format", "svg"]);
    assert_eq!(stdout(&piped), doc);
}

#[test]
fn output_is_deterministic() {
    let args = ["tiling", "--n", "3", "--a", "0.85", "--alpha-tilde", "0.1"];
    assert_eq!(teich2(&args).stdout, teich2(&args).stdout);
    let one = Command::new(env!("CARGO_BIN_EXE_teich2"))
        .args(["area", "--p-max", "30"])
        .env("TEICH2_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, teich2(&["area", "--p-max", "30"]).stdout);
}

#[test]
fn header_only_csv_for_empty_table() {
    let o = teich2(&["orbit", "--P", "25", "--samples", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "P,phi,a,alpha_tilde,P_check\n");
    let o = teich2(&["area", "--p-min", "30", "--p-max", "29"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_file_and_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fn.json");
    let o = teich2(&["fn", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let wp = v["wp_coefficient"].as_f64().unwrap();
    assert_eq!(wp, 55.449656048184174_f64);
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn group_csv_lists_generators() {
    let o = teich2(&["group", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("name,u_re,u_im,v_re,v_im\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn validate_default_grid_passes() {
    let o = teich2(&["validate", "--grid", "20", "20", "--margin", "0.02"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["grid_points"], 400);
}
