//! End-to-end tests of the `superpoint` binary: exit codes, file formats,
//! determinism, and parallel/sequential agreement.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn superpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_module(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let out = superpoint(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

#[test]
fn algebra_info_dimensions() {
    let out = superpoint(&["algebra-info", "--p", "3", "--family", "witt", "--n", "1", "--m", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 18);
    let out = superpoint(&["algebra-info", "--p", "3", "--family", "exterior", "--n", "1"]);
    assert_eq!(stdout_json(&out)["dim"], 6);
    let out = superpoint(&["algebra-info", "--p", "3", "--family", "elem_abelian", "--n", "2"]);
    assert_eq!(stdout_json(&out)["dim"], 9);
}

#[test]
fn usage_errors_exit_2() {
    // unknown flag
    let out = superpoint(&["algebra-info", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    // missing file
    let out = superpoint(&["module-validate", "--module", "/nonexistent/m.json"]);
    assert_eq!(out.status.code(), Some(2));
    // p = 2 is a domain error
    let out = superpoint(&["algebra-info", "--p", "2", "--family", "witt", "--n", "1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn module_random_is_deterministic_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "module-random", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
        "--seed", "42", "--dim", "8",
    ];
    let a = superpoint(&args);
    let b = superpoint(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give byte-identical output");
    let path = dir.path().join("m.json");
    std::fs::write(&path, &a.stdout).unwrap();
    let out = superpoint(&["module-validate", "--module", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["ok"], true);
}

#[test]
fn validate_rejects_broken_parity_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_module(
        dir.path(),
        "m.json",
        &["module-random", "--p", "3", "--family", "elem_abelian", "--n", "1",
          "--seed", "7", "--dim", "3"],
    );
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // force a mixed parity vector onto the regular representation
    let dim = v["dim"].as_u64().unwrap() as usize;
    if dim >= 2 {
        let mut parity = vec![0u8; dim];
        parity[1] = 1;
        v["parity"] = serde_json::json!(parity);
        // also make the action nonzero so the parity actually bites
        v["actions"]["s1"][1][0] = serde_json::json!(1);
    }
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = superpoint(&["module-validate", "--module", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["ok"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn rank_variety_parallel_matches_sequential() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_module(
        dir.path(),
        "m.json",
        &["module-random", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
          "--seed", "3", "--dim", "9"],
    );
    let seq = superpoint(&["rank-variety", "--module", path.to_str().unwrap(), "--ext-degree", "2"]);
    let par = superpoint(&[
        "rank-variety", "--module", path.to_str().unwrap(), "--ext-degree", "2", "--parallel",
    ]);
    assert!(seq.status.success() && par.status.success());
    assert_eq!(seq.stdout, par.stdout, "--parallel must not change the output");
}

#[test]
fn support_of_sigma_quotient() {
    // kE/(sigma) over Witt(3,1,2): dim 3, s = J_3, sigma = 0
    let dir = tempfile::tempdir().unwrap();
    let module = serde_json::json!({
        "algebra": {"family": "witt", "m": 2, "n": 1, "p": 3},
        "field": {"degree": 1},
        "dim": 3,
        "parity": [0, 0, 0],
        "actions": {
            "s1": [[0,0,0],[1,0,0],[0,1,0]],
            "sigma": [[0,0,0],[0,0,0],[0,0,0]],
        },
    });
    let path = dir.path().join("msigma.json");
    std::fs::write(&path, serde_json::to_string(&module).unwrap()).unwrap();
    let out = superpoint(&["support", "--module", path.to_str().unwrap(), "--ext-degree", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["projective_points"], serde_json::json!([[1, 0]]));
    // the rank variety is the a2 = 0 axis
    let out = superpoint(&["rank-variety", "--module", path.to_str().unwrap(), "--ext-degree", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["points"], serde_json::json!([[0, 0], [1, 0], [2, 0]]));
    // restriction at (0, 1) has maximal image, at (1, 0) it does not
    let out = superpoint(&["restrict", "--module", path.to_str().unwrap(), "--point", "[0,1]"]);
    assert_eq!(stdout_json(&out)["max_image"], true);
    let out = superpoint(&["restrict", "--module", path.to_str().unwrap(), "--point", "[1,0]"]);
    assert_eq!(stdout_json(&out)["max_image"], false);
    // not projective, first witness (1, 0) at degree 1
    let out = superpoint(&["is-projective", "--module", path.to_str().unwrap(), "--max-ext", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "not_projective");
    assert_eq!(v["witness"], serde_json::json!([1, 0]));
    assert_eq!(v["ext_degree"], 1);
}

#[test]
fn budget_guard_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_module(
        dir.path(),
        "m.json",
        &["module-random", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
          "--seed", "1", "--dim", "4"],
    );
    let out = superpoint(&[
        "rank-variety", "--module", path.to_str().unwrap(), "--ext-degree", "2", "--budget", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resolve_truncated_polynomial_algebra() {
    let dir = tempfile::tempdir().unwrap();
    // the trivial module over k[s]/s^3, written by hand
    let module = serde_json::json!({
        "algebra": {"family": "elem_abelian", "n": 1, "p": 3},
        "field": {"degree": 1},
        "dim": 1,
        "parity": [0],
        "actions": {"s1": [[0]]},
    });
    let path = dir.path().join("k.json");
    std::fs::write(&path, serde_json::to_string(&module).unwrap()).unwrap();
    let out = superpoint(&["resolve", "--module", path.to_str().unwrap(), "--length", "4"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["ranks"], serde_json::json!([1, 1, 1, 1, 1]));
    // differentials alternate s and s^2; entries keyed by exponent
    assert_eq!(v["differentials"][0][0][0], serde_json::json!({"1": 1}));
    assert_eq!(v["differentials"][1][0][0], serde_json::json!({"2": 1}));
    assert_eq!(v["differentials"][2][0][0], serde_json::json!({"1": 1}));
}

#[test]
fn carlson_dimension_over_witt() {
    // over Witt(3,1,2): dim Omega^2(k) = 19, so L_xi has dimension 18
    let out = superpoint(&[
        "carlson", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
        "--degree", "2", "--xi", "[1,0,0]",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 18);
    // a zero class is a domain error
    let out = superpoint(&[
        "carlson", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
        "--degree", "2", "--xi", "[0,0,0]",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pi_normalize_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    // f = s^3 + s^4, g = 0: coefficient tuple (1, 0)
    let spec = serde_json::json!({
        "algebra": {"family": "witt", "m": 2, "n": 1, "p": 3},
        "field": {"degree": 1},
        "f": {"3,0": 1, "4,0": 1},
        "g": {},
    });
    let path = dir.path().join("spec.json");
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    let out = superpoint(&["pi-normalize", "--spec", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["coefficient_tuple"], serde_json::json!([1, 0]));
    assert_eq!(v["point"], serde_json::json!([1, 0]));

    // f = s is not an algebra map: s^3 is nonzero in kE
    let bad = serde_json::json!({
        "algebra": {"family": "witt", "m": 2, "n": 1, "p": 3},
        "field": {"degree": 1},
        "f": {"1,0": 1},
        "g": {},
    });
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = superpoint(&["pi-normalize", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pi_equiv_examples() {
    let base = ["pi-equiv", "--p", "3", "--family", "witt", "--n", "1", "--m", "2"];
    let mut args = base.to_vec();
    args.extend(["--a", "[0,1]", "--b", "[0,2]"]);
    assert_eq!(stdout_json(&superpoint(&args))["equivalent"], true);
    let mut args = base.to_vec();
    args.extend(["--a", "[1,0]", "--b", "[0,1]"]);
    assert_eq!(stdout_json(&superpoint(&args))["equivalent"], false);
    // the zero point is rejected
    let mut args = base.to_vec();
    args.extend(["--a", "[0,0]", "--b", "[0,1]"]);
    assert_eq!(superpoint(&args).status.code(), Some(1));
}

#[test]
fn prime_ideal_strings() {
    let out = superpoint(&[
        "prime-ideal", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
        "--point", "[2,1]",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["generators"], serde_json::json!(["x_1 - 2*zeta^2", "u_1"]));
    let out = superpoint(&[
        "prime-ideal", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
        "--point", "[1,0]",
    ]);
    assert_eq!(stdout_json(&out)["generators"], serde_json::json!(["zeta", "u_1"]));
}

#[test]
fn tensor_hom_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_module(
        dir.path(),
        "a.json",
        &["module-random", "--p", "3", "--family", "exterior", "--n", "1",
          "--seed", "11", "--dim", "4"],
    );
    let b = write_module(
        dir.path(),
        "b.json",
        &["module-random", "--p", "3", "--family", "exterior", "--n", "1",
          "--seed", "12", "--dim", "4"],
    );
    for verb in ["tensor", "hom"] {
        let out = superpoint(&[verb, "--left", a.to_str().unwrap(), "--right", b.to_str().unwrap()]);
        assert!(out.status.success());
        let path = dir.path().join("t.json");
        std::fs::write(&path, &out.stdout).unwrap();
        let check = superpoint(&["module-validate", "--module", path.to_str().unwrap()]);
        assert!(check.status.success());
    }
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = superpoint(&["module-validate", "--module", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // structurally valid JSON with a wrong-sized matrix
    let v = serde_json::json!({
        "algebra": {"family": "elem_abelian", "n": 1, "p": 3},
        "field": {"degree": 1},
        "dim": 2,
        "parity": [0, 0],
        "actions": {"s1": [[0]]},
    });
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = superpoint(&["module-validate", "--module", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extension_field_points_on_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_module(
        dir.path(),
        "m9.json",
        &["module-random", "--p", "3", "--family", "witt", "--n", "1", "--m", "2",
          "--field-degree", "2", "--seed", "6", "--dim", "6"],
    );
    let out = superpoint(&[
        "restrict", "--module", path.to_str().unwrap(), "--point", "[[0,1],[1,0]]",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["max_image"].is_boolean());
    // wrong coordinate width is a usage error
    let out = superpoint(&[
        "restrict", "--module", path.to_str().unwrap(), "--point", "[[0,1]]",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_suite_passes() {
    let out = superpoint(&["check-suite"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], true);
    // determinism of the whole battery
    let again = superpoint(&["check-suite"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn exterior_matrix_flag_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_module(
        dir.path(),
        "m.json",
        &["module-random", "--p", "3", "--family", "exterior", "--n", "1",
          "--seed", "9", "--dim", "5"],
    );
    let out = superpoint(&[
        "rank-variety", "--module", path.to_str().unwrap(), "--ext-degree", "1",
        "--exterior-matrix", "paper",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["matrix_form"], "paper");
}
