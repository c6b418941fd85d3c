use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2calib")).args(args).output().expect("binary runs")
}

fn run_input(command: &str, input: &Path) -> Output {
    run(&[command, "--input", input.to_str().unwrap()])
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn index_of_a_single_sphere_with_c1_three() {
    let f = temp_json(r#"[{"genus": 0, "c1": 3}]"#);
    let out = run_input("index", f.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["command"], "index");
    assert_eq!(r["outputs"]["index"], 4);
    assert_eq!(r["outputs"]["maslov"], 1);
    assert_eq!(r["inputs"][0]["c1"], 3);
}

#[test]
fn chern_of_the_shipped_tautological_bundle() {
    let out = run_input("chern", &fixture("tautological_bundle.json"));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["outputs"]["c1"], -1);
    assert_eq!(r["outputs"]["genus"], 0);
}

#[test]
fn shipped_bundles_match_the_fixture_command() {
    for (kind, file) in [("tautological", "tautological_bundle.json"), ("tangent", "tangent_bundle.json")] {
        let out = run(&["fixture", kind, "--level", "2"]);
        assert_eq!(out.status.code(), Some(0));
        let shipped: Value = serde_json::from_str(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
        assert_eq!(report(&out), shipped, "{file}");
    }
    let out = run(&["fixture", "torus", "--level", "1"]);
    let shipped: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("torus_trivial_bundle.json")).unwrap()).unwrap();
    assert_eq!(report(&out), shipped);
}

#[test]
fn maslov_agrees_on_sphere_fixtures_and_rejects_the_torus() {
    for (file, c1, mu) in [("tautological_bundle.json", -1, 1), ("tangent_bundle.json", 2, 0)] {
        let out = run_input("maslov", &fixture(file));
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let r = report(&out);
        assert_eq!(r["outputs"]["c1"], c1);
        assert_eq!(r["outputs"]["maslov"], mu);
        assert_eq!(r["outputs"]["maslov_from_index"], mu);
    }
    let out = run_input("maslov", &fixture("torus_trivial_bundle.json"));
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("sphere"));
}

#[test]
fn identity_suite_passes_and_detects_a_corrupted_table() {
    let out = run(&["verify-identities", "--seed", "2", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["seed"], 2);
    assert_eq!(r["outputs"]["all_pass"], true);

    let out = run(&["verify-identities", "--seed", "1", "--trials", "50", "--corrupt-phi"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false && c.get("informational").is_none())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"hodge_exact") && failed.contains(&"cross_phi"), "{failed:?}");
}

#[test]
fn runs_are_deterministic() {
    let a = run(&["verify-identities", "--seed", "5", "--trials", "200"]);
    let b = run(&["verify-identities", "--seed", "5", "--trials", "200"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify-identities", "--seed", "6", "--trials", "200"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn paper_examples_reports_every_row_and_fails_on_the_isolated_points() {
    let out = run(&["paper-examples"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    let checks = r["checks"].as_array().unwrap();
    let find = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("{name}"));
    for (name, value) in [
        ("local g=0", 1),
        ("local g=1", 0),
        ("local g=2", -1),
        ("BS n=3", 4),
        ("CY g=0", 3),
        ("CY g=2", -3),
        ("flat", 0),
        ("Joyce-1", 0),
        ("Joyce-2", 2),
        ("Maslov index=1", 0),
    ] {
        let c = find(name);
        assert_eq!(c["pass"], true, "{name}");
        assert_eq!(c["value"]["computed"], value, "{name}");
    }
    let isolated = find("Joyce-1 τ isolated points");
    assert_eq!(isolated["pass"], false);
    assert_eq!(isolated["value"]["expected"], 8);
    assert_eq!(isolated["value"]["computed"], 16);
    let failed = checks.iter().filter(|c| c["pass"] == false).count();
    assert_eq!(failed, 1);
    assert!(stderr(&out).contains("isolated points"));
}

#[test]
fn parse_errors_name_the_field() {
    let cases = [
        (
            "classify-plane",
            r#"{"dim": 3, "vectors": [[1,0,0,0,0,0,0],[0,1,0,0,0,0,0],[0,0,1,0,0,"x",0]]}"#,
            "vectors[2][5]",
        ),
        ("index", r#"[{"genus": 0, "c1": 1}, {"genus": -1, "c1": 0}]"#, "[1].genus"),
        ("index", r#"[{"genus": 0}]"#, "c1"),
        ("fixed-loci", r#"{"signs": [1,1,1,1,1,1,1], "shift": ["0","0","0","0","0","0","1/0"]}"#, "shift"),
        ("chern", r#"{"vertices": [0, 1], "triangles": [[0, 1, 2]], "lines": "none"}"#, "lines"),
        (
            "census",
            r#"{"generators": [{"name": "a", "map": {"signs": [1,1,1,1,1,1], "shift": []}}]}"#,
            "generators[0].map",
        ),
        ("boundary-split", r#"{"u": [1,0,0,0,0,0,0], "v": [0,1,0,0,0,0,0], "w": [0,0,1,0,0,0,0]}"#, "F"),
    ];
    for (command, text, field) in cases {
        let f = temp_json(text);
        let out = run_input(command, f.path());
        assert_eq!(out.status.code(), Some(2), "{command}: {}", stderr(&out));
        assert!(stderr(&out).contains(field), "{command}: expected `{field}` in {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    let out = run(&["index"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--input"));
    let out = run(&["index", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["ebc-check", "--grid", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--grid"));
    let out = run(&["verify-identities", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_violations_exit_with_three() {
    let not_coassociative = r#"{
        "u": [1,0,0,0,0,0,0], "v": [0,1,0,0,0,0,0], "w": [0,0,1,0,0,0,0],
        "F": {"dim": 4, "vectors": [[0,1,0,0,0,0,0],[0,0,1,0,0,0,0],[0,0,0,1,0,0,0],[0,0,0,0,0,1,0]]}
    }"#;
    let not_associative = r#"{
        "u": [1,0,0,0,0,0,0], "v": [0,1,0,0,0,0,0], "w": [0,0,0,1,0,0,0],
        "F": {"dim": 4, "vectors": [[0,1,0,0,0,0,0],[0,0,0,1,0,0,0],[0,0,1,0,0,0,0],[0,0,0,0,1,0,0]]}
    }"#;
    for text in [not_coassociative, not_associative] {
        let f = temp_json(text);
        let out = run_input("boundary-split", f.path());
        assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    }
    let open_surface = r#"{"vertices": [0, 1, 2], "triangles": [[0, 1, 2]], "lines": [[[1, 0]], [[1, 0]], [[1, 0]]]}"#;
    let f = temp_json(open_surface);
    assert_eq!(run_input("chern", f.path()).status.code(), Some(3));
}

#[test]
fn plane_classification() {
    let out = run_input("classify-plane", &fixture("plane_associative.json"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outputs"]["associative"], true);
    assert_eq!(r["outputs"]["calibration_value"], 1.0);

    let out = run_input("classify-plane", &fixture("plane_coassociative.json"));
    let r = report(&out);
    assert_eq!(r["outputs"]["coassociative"], true);
    assert_eq!(r["outputs"]["psi_positive"], true);

    let out = run_input("classify-plane", &fixture("plane_psi_positive.json"));
    let r = report(&out);
    assert_eq!(r["outputs"]["coassociative"], false);
    assert_eq!(r["outputs"]["psi_positive"], true);
    assert!(r["outputs"]["associative_content"]["value"].as_f64().unwrap() < 1.0 - 1e-6);
}

#[test]
fn boundary_splits() {
    let out = run_input("boundary-split", &fixture("boundary_coassociative.json"));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let a: Vec<f64> = serde_json::from_value(r["outputs"]["split"]["a"].clone()).unwrap();
    assert!((a[3].abs() - 1.0).abs() < 1e-12, "{a:?}");
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let out = run_input("boundary-split", &fixture("boundary_psi_positive.json"));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    let z: Vec<f64> = serde_json::from_value(r["outputs"]["projection"]["z"].clone()).unwrap();
    assert!(z.iter().any(|x| x.abs() > 1e-3), "{z:?}");
}

#[test]
fn ebc_check_reports_the_minimum_singular_value() {
    let out = run(&["ebc-check", "--grid", "360"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outputs"]["grid"], 360);
    assert_eq!(r["outputs"]["pass"], true);
    assert!(r["outputs"]["min_singular_value"].as_f64().unwrap() > 0.1);
}

#[test]
fn fixed_loci_and_census() {
    let out = run_input("fixed-loci", &fixture("involution_flat_tau.json"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let components = r["outputs"]["components"].as_array().unwrap();
    assert_eq!(components.len(), 8);
    assert!(components.iter().all(|c| c["class"] == "coassociative" && c["dim"] == 4));
    assert_eq!(r["inputs"]["shift"][0], "0");

    let out = run_input("census", &fixture("census_singular_locus.json"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outputs"]["group_order"], 8);
    assert_eq!(r["outputs"]["orbit_count"], 12);

    let out = run_input("census", &fixture("census_warmup_tau.json"));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["outputs"]["nonempty"], serde_json::json!(["Id", "βγ"]));
    assert_eq!(r["outputs"]["orbits_by_dim"]["4"], 1);
    assert_eq!(r["outputs"]["orbits_by_dim"]["0"], 16);
}

#[test]
fn pretty_and_compact_output_agree() {
    let f = fixture("involution_warmup_tau.json");
    let compact = run(&["fixed-loci", "--json", "--input", f.to_str().unwrap()]);
    let pretty = run(&["fixed-loci", "--pretty", "--input", f.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  "));
    assert_eq!(report(&compact), report(&pretty));
}
