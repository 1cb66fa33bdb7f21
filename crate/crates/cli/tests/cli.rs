use assert_cmd::Command;

fn formorbits(args: &[&str]) -> assert_cmd::assert::Assert {
    Command::cargo_bin("formorbits").expect("binary built").args(args).assert()
}

fn stdout(args: &[&str], code: i32) -> String {
    let out = formorbits(args).code(code).get_output().stdout.clone();
    String::from_utf8(out).expect("utf-8 output")
}

#[test]
fn analyze_json_is_byte_stable() {
    let expected = concat!(
        r#"{"command":"analyze","input":{"expr":"e123+e456","n":6},"status":0,"result":{"form":"e123 + e456","n":6,"k":3,"#,
        r#""nondegenerate":true,"annihilator_dim":0,"stable":true,"orbit_tangent_rank":20,"stabilizer_dim":16,"#,
        r#""fingerprint":{"n":6,"k":3,"kernel_dim":0,"support_dim":6,"stabilizer_dim":16,"stable":true,"#,
        r#""special":{"kind":"hitchin_sign","sign":1},"restriction":null}}}"#,
        "\n"
    );
    assert_eq!(stdout(&["analyze", "e123+e456", "--n", "6", "--json"], 0), expected);
}

#[test]
fn analyze_degenerate_form() {
    let out = stdout(&["analyze", "e12", "--n", "3", "--json"], 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["nondegenerate"], false);
    assert_eq!(v["result"]["annihilator_dim"], 1);
    assert_eq!(v["result"]["stable"], true);
}

#[test]
fn classify_symplectic_form() {
    let out = stdout(&["classify", "e12+e34+e56", "--n", "6"], 0);
    assert!(out.starts_with("6-2-04 (exact)"), "{out}");
}

#[test]
fn classify_infinite_case_is_unsupported() {
    let out = formorbits(&["classify", "e1234+e5678", "--n", "8"]).code(3).get_output().stderr.clone();
    assert!(String::from_utf8(out).unwrap().contains("infinite orbit family"));
}

#[test]
fn sampled_points_classify_back() {
    for id in ["7-4-07+", "7-4-07-", "7-4-09", "7-3-09", "8-3-10"] {
        let sample = stdout(&["sample", id, "--seed", "5"], 0);
        let (n, _) = id.split_once('-').unwrap();
        let out = stdout(&["classify", sample.trim(), "--n", n, "--json"], 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["id"], id, "{sample}");
    }
}

#[test]
fn table_verifies() {
    let out = stdout(&["table", "--verify"], 0);
    assert!(out.contains("20/15/4"));
    assert!(out.contains("∞/∞/0"));
    assert!(out.contains("verified: all 44 cells match"));
}

#[test]
fn dual_and_inverse() {
    assert_eq!(stdout(&["dual", "e{1,2,3}", "--n", "7"], 0).trim(), "e{4,5,6,7}");
    assert_eq!(stdout(&["dual", "e{4,5,6,7}", "--n", "7", "--inverse"], 0).trim(), "e{1,2,3}");
}

#[test]
fn act_by_matrix() {
    assert_eq!(stdout(&["act", "--matrix", "2,0;0,1", "e12", "--n", "2"], 0).trim(), "2*e12");
    assert_eq!(stdout(&["act", "[[0,1],[1,0]]", "e12", "--n", "2"], 0).trim(), "-e12");
}

#[test]
fn act_rejects_singular_matrix() {
    formorbits(&["act", "--matrix", "1,1;1,1", "e12", "--n", "2"]).code(2);
}

#[test]
fn parse_error_exits_with_input_code() {
    formorbits(&["analyze", "e12+", "--n", "3"]).code(2);
    formorbits(&["analyze", "e14", "--n", "3"]).code(2);
}

#[test]
fn selfcheck_passes() {
    let out = stdout(&["selfcheck", "--seed", "42", "--trials", "2"], 0);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}

#[test]
fn output_is_deterministic() {
    let args = ["sample", "8-5-12", "--seed", "9", "--json"];
    assert_eq!(stdout(&args, 0), stdout(&args, 0));
}

#[test]
fn catalog_override() {
    let dir = std::env::temp_dir().join(format!("formorbits-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    let path = path.to_str().unwrap();
    // same orbit, different representative
    let json = formorbits::catalog::builtin_catalog(3, 2).unwrap().to_json();
    assert!(json.contains("\"e12\""));
    std::fs::write(path, json.replace("\"e12\"", "\"e13\"")).unwrap();
    let out = stdout(&["classify", "e23", "--n", "3", "--catalog", path, "--json"], 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["representative"], "e13");
    // other cases keep the builtin catalog
    assert!(stdout(&["classify", "e12+e34", "--n", "4", "--catalog", path], 0).starts_with("4-2-03"));
    std::fs::write(path, "not json").unwrap();
    formorbits(&["classify", "e12", "--n", "3", "--catalog", path]).code(2);
    let missing = dir.join("missing.json");
    formorbits(&["classify", "e12", "--n", "3", "--catalog", missing.to_str().unwrap()]).code(2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn leading_minus_is_an_expression() {
    assert!(stdout(&["classify", "-e12-e34", "--n", "4"], 0).starts_with("4-2-03"));
}
