//! End-to-end tests of the binary: exit codes, report content, determinism
//! and the serialization round trip.

use std::io::Write;
use std::process::{Command, Output};

use paracontact_cli::report::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paracontact"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_model(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn stdout_report(out: &Output) -> Report {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid report JSON")
}

#[test]
fn example_mode_f4_plus_f9() {
    let file = write_model(r#"{"mode": "example", "n": 1, "a": [1.0, 1.0]}"#);
    let out = run(&[
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let report = stdout_report(&out);
    assert_eq!(report.classes.members, vec!["F4", "F9"]);
    assert_eq!(report.classes.label, "F4+F9");
    assert!(!report.predicates.normal.holds);
    assert!(report.structure.valid);
}

#[test]
fn example_mode_para_sasakian() {
    let file = write_model(r#"{"mode": "example", "n": 1, "a": [0.0, 1.0]}"#);
    let out = run(&[
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let report = stdout_report(&out);
    assert!(report.classes.is_f4_prime);
    assert_eq!(report.classes.label, "F4'");
    assert!(report.predicates.para_sasakian.as_ref().unwrap().holds);
    assert!(report.predicates.phi_integrable.as_ref().unwrap().holds);
    assert!(!report.predicates.killing_xi.holds);
}

#[test]
fn raw_f_zero_tensor_is_f0() {
    let json = r#"{
        "mode": "raw_f",
        "dim": 3,
        "g":   [[1,0,0],[0,1,0],[0,0,1]],
        "phi": [[0,0,0],[0,0,1],[0,1,0]],
        "xi":  [1,0,0],
        "eta": [1,0,0],
        "F_components": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]
    }"#;
    let file = write_model(json);
    let out = run(&[
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let report = stdout_report(&out);
    assert!(report.classes.is_f0);
    assert_eq!(report.classes.label, "F0");
    assert_eq!(report.nijenhuis.n1_norm, 0.0);
    assert_eq!(report.nijenhuis.n2_norm, 0.0);
    assert_eq!(report.assoc_nijenhuis.n1_norm, 0.0);
    // no connection in raw-F mode: these predicates are indeterminate
    assert!(report.predicates.para_sasakian.is_none());
    assert!(report.predicates.phi_integrable.is_none());
    assert!(report.predicates.normal.holds);
    assert!(!report.predicates.paracontact.holds);
}

#[test]
fn lie_mode_reproduces_example() {
    // the (a1,a2) = (1,1) member entered through raw structure constants
    let json = r#"{
        "mode": "lie",
        "dim": 3,
        "g":   [[1,0,0],[0,1,0],[0,0,1]],
        "phi": [[0,0,0],[0,0,1],[0,1,0]],
        "xi":  [1,0,0],
        "eta": [1,0,0],
        "structure_constants": [
            {"i": 0, "j": 1, "k": 1, "value": -1.0},
            {"i": 0, "j": 1, "k": 2, "value": -1.0},
            {"i": 0, "j": 2, "k": 1, "value": -1.0},
            {"i": 0, "j": 2, "k": 2, "value": 1.0}
        ]
    }"#;
    let file = write_model(json);
    let out = run(&[
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let report = stdout_report(&out);
    assert_eq!(report.classes.members, vec!["F4", "F9"]);
    assert_eq!(report.connection.as_ref().unwrap().nonzero_gamma.len(), 8);
    assert!((report.lee_forms.theta_xi + 2.0).abs() < 1e-12);
}

#[test]
fn parse_error_exits_3() {
    let file = write_model("{ not json");
    let out = run(&["classify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // well-formed JSON, inconsistent array shape
    let file2 = write_model(r#"{"mode": "example", "n": 2, "a": [1.0]}"#);
    let out2 = run(&["classify", file2.path().to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(3));

    let out3 = run(&["classify", "/nonexistent/model.json"]);
    assert_eq!(out3.status.code(), Some(3));
}

#[test]
fn validation_failure_exits_2_with_residuals() {
    // metric perturbed at g[1][1]: compatibility residual 1
    let json = r#"{
        "mode": "raw_f",
        "dim": 3,
        "g":   [[1,0,0],[0,2,0],[0,0,1]],
        "phi": [[0,0,0],[0,0,1],[0,1,0]],
        "xi":  [1,0,0],
        "eta": [1,0,0],
        "F_components": [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]
    }"#;
    let file = write_model(json);
    let out = run(&["classify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("axiom residuals"), "stderr: {stderr}");
    assert!(stderr.contains("compat(phi)=1.000e0"), "stderr: {stderr}");
}

#[test]
fn dims_command_passes() {
    for n in ["1", "2"] {
        let out = run(&["dims", n]);
        assert!(out.status.success());
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("PASS"));
        assert!(!text.contains("FAIL"));
    }
    let out = run(&["dims", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["total_formula"], 9);
}

#[test]
fn verify_command_and_tolerance_sensitivity() {
    let out = run(&["verify", "--seeds", "1", "--dims", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: PASS"));

    // impossible tolerance: failures are results, exit code 1
    let out2 = run(&["verify", "--seeds", "1", "--dims", "3", "--tol", "1e-15"]);
    assert_eq!(out2.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out2.stdout).contains("overall: FAIL"));
}

#[test]
fn report_round_trips_and_is_deterministic() {
    let file = write_model(r#"{"mode": "example", "n": 2, "a": [1.0, 0.5, -2.0, 3.0]}"#);
    let args = [
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
        "--full-tensors",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert!(out1.status.success());
    // byte-identical across runs
    assert_eq!(out1.stdout, out2.stdout);
    // typed round trip is lossless
    let report: Report = serde_json::from_slice(&out1.stdout).unwrap();
    let reserialized = serde_json::to_string_pretty(&report).unwrap();
    let reparsed: Report = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(report, reparsed);
    assert_eq!(
        serde_json::to_string_pretty(&reparsed).unwrap(),
        reserialized
    );
    // full tensors present on request
    assert!(report.nijenhuis.n1.is_some());
    assert_eq!(report.nijenhuis.n1.as_ref().unwrap().len(), 125);
}

#[test]
fn example_subcommand_and_emit_model() {
    let out = run(&["example", "--n", "1", "--a", "0,2", "--format", "json"]);
    let report = stdout_report(&out);
    assert_eq!(report.classes.members, vec!["F4"]);
    assert!(!report.classes.is_f4_prime);
    assert!((report.lee_forms.theta_xi + 4.0).abs() < 1e-12);

    // --emit-model output feeds back into classify
    let out2 = run(&["example", "--n", "1", "--a", "-2,3", "--emit-model"]);
    assert!(out2.status.success());
    let file = write_model(&String::from_utf8_lossy(&out2.stdout));
    let out3 = run(&[
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let report3 = stdout_report(&out3);
    assert_eq!(report3.classes.members, vec!["F4", "F9"]);
}

#[test]
fn membership_tolerance_flag() {
    // an enormous threshold empties the reported membership set
    let file = write_model(r#"{"mode": "example", "n": 1, "a": [1.0, 1.0]}"#);
    let out = run(&[
        "classify",
        file.path().to_str().unwrap(),
        "--format",
        "json",
        "--tol",
        "1e3",
    ]);
    let report = stdout_report(&out);
    assert!(report.classes.members.is_empty());
    // raw norms stay visible for the audit
    assert!(report.classes.norms[3] > 1.0);
}
