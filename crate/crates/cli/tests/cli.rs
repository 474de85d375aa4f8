use std::process::{Command, Output};

fn torsorlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsorlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lagrangian_count_symplectic_f2() {
    let o = torsorlab(&["lagrangian", "--form", "symplectic", "--n", "1", "--field", "f2", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn lagrangian_count_symplectic_f3_n2() {
    // isotropic planes of F₃⁴: (3+1)(3²+1) = 40
    let o = torsorlab(&["lagrangian", "--n", "2", "--field", "f3", "--count"]);
    assert_eq!(stdout(&o).trim(), "40");
}

#[test]
fn full_exhaustive_check_passes() {
    let o = torsorlab(&["check", "--suite", "all", "--field", "f2", "--ambient", "2", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = report.as_array().unwrap();
    assert!(rows.len() > 40);
    for r in rows {
        for key in ["suite", "law", "cases", "failures", "first_counterexample"] {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
        assert_eq!(r["failures"], 0, "{r}");
    }
}

#[test]
fn gamma_with_mismatched_ambient_is_a_usage_error() {
    let o = torsorlab(&["gamma", "--field", "f3", "--x", "1,0", "--a", "0,1", "--y", "1,1", "--b", "0,1", "--z", "1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ambient"));
}

#[test]
fn gamma_methods_agree() {
    let base = ["gamma", "--field", "f5", "--x", "1,0,0", "--a", "0,1,0;0,0,1", "--y", "1,1,0", "--b", "0,1,1;0,0,1", "--z", "1,2,3", "--format", "tsv"];
    let outs: Vec<String> = ["global", "difference", "oracle", "restricted"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.extend(["--method", m]);
            let o = torsorlab(&args);
            assert_eq!(o.status.code(), Some(0), "{m}: {}", String::from_utf8_lossy(&o.stderr));
            stdout(&o)
        })
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]), "{outs:?}");
}

#[test]
fn zero_subspace_literal_needs_ambient() {
    let o = torsorlab(&["gamma", "--field", "f2", "--x", "", "--a", "1,0", "--y", "0,1", "--b", "1,0", "--z", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = torsorlab(&["gamma", "--field", "f2", "--ambient", "2", "--x", "", "--a", "1,0", "--y", "0,1", "--b", "1,0", "--z", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_inputs_exit_two() {
    assert_eq!(torsorlab(&["enumerate", "--field", "f6"]).status.code(), Some(2));
    assert_eq!(torsorlab(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(torsorlab(&["homotope", "--family", "o", "--A", "1,2", "--members"]).status.code(), Some(2));
    assert_eq!(torsorlab(&["homotope", "--family", "o", "--n", "2", "--A", "0,1;2,0", "--field", "f3", "--members"]).status.code(), Some(2));
    assert_eq!(torsorlab(&["check", "--suite", "gamma-laws", "--field", "f2", "--ambient", "3", "--exhaustive"]).status.code(), Some(2));
    assert_eq!(torsorlab(&["bridge", "--check", "prop41", "--field", "f2"]).status.code(), Some(2));
    assert_eq!(torsorlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_list_maps_suites_to_modules() {
    let o = torsorlab(&["check", "--list"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert!(names.contains(&"relations") && names.contains(&"bridges") && names.contains(&"all"));
    assert!(v.as_array().unwrap().iter().all(|r| r["module"].is_string()));
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--suite", "gamma-agreement", "--field", "f3", "--ambient", "3", "--trials", "60", "--seed", "11"];
    let a = torsorlab(&args);
    let b = torsorlab(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = torsorlab(&["check", "--suite", "gamma-agreement", "--field", "f3", "--ambient", "3", "--trials", "60", "--seed", "12"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("torsorlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("enum.tsv");
    let args = ["enumerate", "--field", "f3", "--ambient", "2", "--format", "tsv"];
    let printed = torsorlab(&args);
    let mut with_file = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    assert_eq!(torsorlab(&with_file).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn homotope_table_and_hull_check() {
    let o = torsorlab(&["homotope", "--family", "o", "--n", "1", "--field", "f5", "--A", "1", "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // x + xᵗ = xᵗx with 1 − x invertible: x ∈ {0, 2}
    assert_eq!(v["elements"], serde_json::json!(["0", "2"]));
    assert_eq!(v["table"], serde_json::json!([[0, 1], [1, 0]]));
    let o = torsorlab(&["homotope", "--family", "sp", "--n", "2", "--field", "f3", "--A", "0,1;2,0", "--hull-check"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bridges_pass_at_acceptance_sizes() {
    for args in [
        vec!["bridge", "--check", "prop41", "--family", "o", "--n", "1", "--field", "f5"],
        vec!["bridge", "--check", "thm33", "--family", "sp", "--n", "2", "--field", "f3"],
        vec!["bridge", "--check", "thm37", "--n", "1", "--field", "f3", "--exhaustive"],
        vec!["bridge", "--check", "thm37", "--n", "1", "--field", "f9", "--exhaustive"],
    ] {
        let o = torsorlab(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn gtable_is_a_group_table() {
    let o = torsorlab(&["gtable", "--field", "f3", "--n", "1", "--a", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let table = v["table"].as_array().unwrap();
    let k = table.len();
    assert_eq!(k, 3);
    for row in table {
        let mut seen: Vec<u64> = row.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        seen.sort();
        assert_eq!(seen, (0..k as u64).collect::<Vec<_>>());
    }
}
