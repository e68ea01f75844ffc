use serde_json::Value;
use wittid::{run, FAIL, PASS, USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wittid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn is_identity_exit_codes() {
    assert_eq!(call(&["is-identity", "--model", "u1", "[x1^2, x2^4]"]).0, PASS);
    assert_eq!(call(&["is-identity", "--model", "u1", "[x1^1, x2^2]"]).0, FAIL);
    assert_eq!(call(&["is-identity", "--model", "u1", "[x1^1, x2^3]"]).0, PASS);
    assert_eq!(call(&["is-identity", "--model", "w1", "x1^-2"]).0, PASS);
    assert_eq!(call(&["is-identity", "--model", "u1", "x1^-2"]).0, FAIL);
    assert_eq!(call(&["is-identity", "--model", "onedim:-3", "x1^-3"]).0, FAIL);
    assert_eq!(
        call(&["is-identity", "--model", "u1", "--field", "gf3", "[x1^1, x2^3]"]).0,
        FAIL
    );
}

#[test]
fn non_multilinear_inputs() {
    // a single monomial of u1/w1 in characteristic two goes through the parity rule
    let (code, v) = json(&["is-identity", "--model", "u1", "[x1^1, x2^2, x2^2]"]);
    assert_eq!((code, v["method"].as_str()), (FAIL, Some("parity rule")));
    assert_eq!(call(&["is-identity", "--model", "u1", "[x1^1, x2^2, x1^1]"]).0, PASS);
    let (code, _, err) = call(&["is-identity", "--model", "ut3:0:2", "[x1^0, x2^2, x1^0]"]);
    assert_eq!(code, USAGE);
    assert!(err.contains("multilinear"));
    let (code, _, _) = call(&[
        "is-identity",
        "--model",
        "u1",
        "[x1^0, x2^2, x1^0] + [x1^0, x1^0, x2^2]",
    ]);
    assert_eq!(code, USAGE);
}

#[test]
fn text_and_json_verdicts_agree() {
    for poly in [
        "[x1^2, x2^4]",
        "[x1^1, x2^2]",
        "[x3^1, x1^2, x2^4]",
        "[x1^0, x2^2, x3^0] + [x3^0, x2^2, x1^0]",
    ] {
        let (code_text, text, _) = call(&["is-identity", "--model", "u1", poly]);
        let (code_json, v) = json(&["is-identity", "--model", "u1", poly]);
        assert_eq!(code_text, code_json);
        assert_eq!(v["identity"].as_bool().unwrap(), !text.contains("is not"));
        assert_eq!(v["identity"].as_bool().unwrap(), code_json == PASS);
    }
}

#[test]
fn normal_form_output() {
    let (code, out, _) = call(&["normal-form", "[x1^1, x3^4, x2^2]"]);
    assert_eq!((code, out.as_str()), (PASS, "[x1^1, x2^2, x3^4]\n"));
    assert_eq!(call(&["normal-form", "[x1^1, x2^3]"]).1, "0\n");
    assert_eq!(call(&["normal-form", "[x2^0, x1^1]"]).1, "[x1^1, x2^0]\n");
    let (_, v) = json(&["normal-form", "[x2^0, x1^1]", "--field", "gf3"]);
    assert_eq!(v["coefficient"], -1);
    assert_eq!(v["normalForm"], "2*[x1^1, x2^0]");
    assert_eq!(call(&["normal-form", "[x1^1, x2^2] + [x2^2, x1^1]"]).0, USAGE);
}

#[test]
fn evaluate_examples() {
    let (code, out, _) = call(&["evaluate", "--model", "u1", "[x3^1, x1^2, x2^4]"]);
    assert_eq!(code, PASS);
    assert!(out.trim_end().ends_with(": e7"), "{out}");
    let (_, v) = json(&["evaluate", "--model", "ut3:0:2", "[x1^0, x2^2]"]);
    // H_0 is spanned by E12 and E13, H_2 by E23
    assert_eq!(v["evaluations"].as_array().unwrap().len(), 2);
    let a = json(&["evaluate", "--model", "ut3:2:2", "[x1^2, x2^2]", "--seed", "11"]).1;
    let b = json(&["evaluate", "--model", "ut3:2:2", "[x1^2, x2^2]", "--seed", "11"]).1;
    assert_eq!(a, b);
    let (_, out, _) = call(&["evaluate", "--model", "w1", "[x1^-2, x2^1]"]);
    assert!(out.contains("component is zero"));
}

#[test]
fn verify_basis_small_sweep() {
    let (code, v) = json(&["verify-basis", "--model", "u1", "--nmax", "4", "--dmax", "3"]);
    assert_eq!(code, PASS);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["skipped"], 0);
    let space = &v["spaces"][0];
    for key in [
        "n",
        "degrees",
        "dimP",
        "dimIdentity",
        "dimConsequence",
        "sound",
        "complete",
    ] {
        assert!(space.get(key).is_some(), "missing {key}");
    }
    assert!(v["timings"].is_null());
}

#[test]
fn gf3_sweep_fails_with_witness() {
    let (code, v) = json(&[
        "verify-basis",
        "--model",
        "u1",
        "--nmax",
        "2",
        "--dmax",
        "3",
        "--field",
        "gf3",
    ]);
    assert_eq!(code, FAIL);
    let s = v["spaces"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["degrees"] == serde_json::json!([1, 3]))
        .unwrap();
    assert_eq!(s["sound"], false);
    assert_eq!(s["witness"]["kind"], "unsound");
}

#[test]
fn saved_reports_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = call(&[
        "verify-basis",
        "--model",
        "w1",
        "--nmax",
        "2",
        "--dmax",
        "1",
        "--range",
        "thm45",
        "--probe=-1,3",
        "--out",
        p,
    ]);
    assert_eq!(code, FAIL);
    let (code, v) = json(&["report", p]);
    assert_eq!(code, PASS);
    assert_eq!(v["valid"], true);
    assert_eq!(v["allPassed"], false);

    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let spaces = report["spaces"].as_array_mut().unwrap();
    let failing = spaces.iter_mut().find(|s| s.get("witness").is_some()).unwrap();
    failing["witness"]["kind"] = "unsound".into();
    std::fs::write(&path, report.to_string()).unwrap();
    assert_eq!(call(&["report", p]).0, FAIL);

    std::fs::write(&path, "{\"config\": 1}").unwrap();
    assert_eq!(call(&["report", p]).0, FAIL);
    assert_eq!(
        call(&["report", dir.path().join("missing.json").to_str().unwrap()]).0,
        USAGE
    );
}

#[test]
fn identical_runs_write_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for path in &paths {
        let p = path.to_str().unwrap();
        let args = [
            "verify-basis",
            "--model",
            "w1",
            "--nmax",
            "3",
            "--dmax",
            "2",
            "--threads",
            "4",
            "--out",
            p,
        ];
        assert_eq!(call(&args).0, PASS);
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn independence_modes() {
    assert_eq!(call(&["independence", "--r", "0", "--s", "2"]).0, PASS);
    assert_eq!(call(&["independence", "--r", "-3", "--s", "1"]).0, PASS);
    assert_eq!(call(&["independence", "--variable", "-5"]).0, PASS);
    let (code, v) = json(&["independence", "--demo", "15"]);
    assert_eq!(code, PASS);
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
    assert_eq!(call(&["independence", "--r", "1", "--s", "2"]).0, USAGE);
    assert_eq!(call(&["independence"]).0, USAGE);
    assert_eq!(call(&["independence", "--r", "0"]).0, USAGE);
}

#[test]
fn minimality_and_contrast() {
    assert_eq!(call(&["minimality", "--model", "u1", "--bound", "3"]).0, PASS);
    let (code, v) = json(&["minimality", "--model", "w1", "--bound", "2"]);
    assert_eq!(code, PASS);
    assert_eq!(v["variants"].as_array().unwrap().len(), 2);
    let (code, v) = json(&["contrast", "--p", "3", "--bound", "3"]);
    assert_eq!(code, PASS);
    let row = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["a"] == 1 && r["b"] == 3)
        .unwrap();
    assert_eq!(row["holds"], false);
    assert_eq!(call(&["contrast", "--p", "2"]).0, USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["is-identity", "--model", "u7", "x1^1"]).0, USAGE);
    assert_eq!(
        call(&["is-identity", "--model", "u1", "--field", "gf4", "x1^1"]).0,
        USAGE
    );
    assert_eq!(call(&["is-identity", "--model", "u1", "--bogus", "x1^1"]).0, USAGE);
    assert_eq!(call(&["frobnicate"]).0, USAGE);
    let (code, _, err) = call(&["is-identity", "--model", "u1", "[x1^1, x2"]);
    assert_eq!(code, USAGE);
    assert!(err.contains("offset 9"));
    assert_eq!(call(&["--version"]).0, PASS);
    assert_eq!(call(&["verify-basis", "--model", "u1", "--nmax", "0"]).0, USAGE);
}
