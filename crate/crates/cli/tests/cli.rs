//! End-to-end tests that run the `hpi` binary and check its stdout and
//! exit codes, including the documented output shapes and the exit-code
//! contract (0 ok, 1 property failure, 2 usage, 3 budget).

use std::path::PathBuf;
use std::process::Output;

fn hpi(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_hpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is one JSON value")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hpi-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

#[test]
fn codim_of_the_ground_field_is_one() {
    let out = hpi(&[
        "codim", "--catalog", "f1", "--n", "4", "--assoc", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let v = json_of(&out);
    assert_eq!(v["n"], 4);
    assert_eq!(v["codim"], 1);
    assert_eq!(v["provenance"]["version"], hpi_core::VERSION);
    assert_eq!(v["provenance"]["seed"], 0);
}

#[test]
fn graded_codim_crosschecks_two_pipelines() {
    let out = hpi(&[
        "graded-codim", "--catalog", "fz2_z2", "--n", "3", "--assoc", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_str(&out));
    let v = json_of(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["codim"], 8);
    assert_eq!(v["crosscheck"], "ok");
}

#[test]
fn check_distinguishes_identities_from_non_identities() {
    let yes = hpi(&["check", "--catalog", "ut2_z2", "[x1^(0), x2^(0)]"]);
    assert_eq!(exit_code(&yes), 0);
    assert_eq!(stdout_str(&yes), "identity: true\n");

    let also = hpi(&["check", "--catalog", "ut2_z2", "x1^(1)*x2^(1)"]);
    assert_eq!(exit_code(&also), 0);
    assert_eq!(stdout_str(&also), "identity: true\n");

    let no = hpi(&["check", "--catalog", "ut2_z2", "x1^(0)*x2^(1)"]);
    assert_eq!(exit_code(&no), 1);
    assert_eq!(stdout_str(&no), "identity: false\n");
}

#[test]
fn check_picks_the_multilinear_or_generic_path() {
    let ml = hpi(&["check", "--catalog", "fz2", "--format", "json", "[x1, x2]"]);
    assert_eq!(exit_code(&ml), 0);
    assert_eq!(json_of(&ml)["path"], "multilinear");

    // x1 appears twice per monomial, so the generic evaluator must take
    // over; the group algebra is commutative, so this is an identity.
    let gen = hpi(&[
        "check", "--catalog", "fz2", "--format", "json", "(x1*x1)*x2 - x2*(x1*x1)",
    ]);
    assert_eq!(exit_code(&gen), 0);
    assert_eq!(json_of(&gen)["path"], "generic");
}

#[test]
fn validate_rejects_a_grading_that_splits_products_across_components() {
    let doc = r#"{
        "format": 1,
        "name": "bad_grading",
        "dim": 2,
        "basis": ["u", "w"],
        "table": [[0, 0, 0, "1"], [0, 0, 1, "1"]],
        "grading": {"labels": ["0", "1"], "degree": [0, 1]}
    }"#;
    let path = temp_file("bad-grading.json", doc);
    let out = hpi(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(
        stderr_str(&out).contains("grading"),
        "stderr: {}",
        stderr_str(&out)
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn validate_accepts_every_catalog_entry() {
    for name in [
        "f1",
        "ut2",
        "ut2_z2",
        "fz2",
        "fz2_z2",
        "m2",
        "m2_transpose",
        "m2_conj",
        "zero3",
    ] {
        let out = hpi(&["validate", "--catalog", name]);
        assert_eq!(exit_code(&out), 0, "{name}: {}", stderr_str(&out));
        assert!(stdout_str(&out).contains("sha256:"));
    }
}

#[test]
fn catalog_list_and_show_round_trip() {
    let list = hpi(&["catalog", "list"]);
    assert_eq!(exit_code(&list), 0);
    let text = stdout_str(&list);
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("ut2_z2"));

    let show = hpi(&["catalog", "show", "ut2"]);
    assert_eq!(exit_code(&show), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&show)).expect("valid JSON");
    assert_eq!(doc["name"], "ut2");

    let missing = hpi(&["catalog", "show", "nope"]);
    assert_eq!(exit_code(&missing), 2);
    assert!(stderr_str(&missing).contains("available"));
}

#[test]
fn degree_budget_exceeded_exits_three_and_override_lifts_it() {
    let capped = hpi(&["codim", "--catalog", "f1", "--n", "6"]);
    assert_eq!(exit_code(&capped), 3, "stderr: {}", stderr_str(&capped));

    let lifted = hpi(&[
        "codim", "--catalog", "f1", "--n", "6", "--budget-override", "--format", "json",
    ]);
    assert_eq!(exit_code(&lifted), 0, "stderr: {}", stderr_str(&lifted));
    assert_eq!(json_of(&lifted)["codim"], 1);
}

#[test]
fn exponent_ceiling_needs_an_explicit_acknowledgment() {
    let refused = hpi(&["exponent", "--catalog", "f1", "--max-n", "7"]);
    assert_eq!(exit_code(&refused), 2);
    assert!(stderr_str(&refused).contains("--budget-override"));

    let allowed = hpi(&[
        "exponent",
        "--catalog",
        "f1",
        "--max-n",
        "6",
        "--assoc",
        "--budget-override",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&allowed), 0, "stderr: {}", stderr_str(&allowed));
    let v = json_of(&allowed);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn json_output_is_byte_stable_across_reruns() {
    let args = [
        "exponent", "--catalog", "fz2_z2", "--assoc", "--format", "json",
    ];
    let first = hpi(&args);
    let second = hpi(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(stdout_str(&first), stdout_str(&second));
}

#[test]
fn certify_changes_the_path_but_not_the_values() {
    let fast = hpi(&[
        "codim", "--catalog", "ut2", "--n", "4", "--assoc", "--format", "json",
    ]);
    let certified = hpi(&[
        "codim", "--catalog", "ut2", "--n", "4", "--assoc", "--certify", "--format", "json",
    ]);
    assert_eq!(exit_code(&fast), 0);
    assert_eq!(exit_code(&certified), 0);
    let a = json_of(&fast);
    let b = json_of(&certified);
    assert_eq!(a["codim"], b["codim"]);
    assert_eq!(a["codim"], 18);
    assert_eq!(a["provenance"]["certify"], false);
    assert_eq!(b["provenance"]["certify"], true);
}

#[test]
fn seeds_never_change_reported_values() {
    let first = hpi(&[
        "graded-codim", "--catalog", "ut2_z2", "--n", "3", "--seed", "1", "--format", "csv",
    ]);
    let second = hpi(&[
        "graded-codim", "--catalog", "ut2_z2", "--n", "3", "--seed", "99", "--format", "csv",
    ]);
    assert_eq!(exit_code(&first), 0);
    let grab = |s: &str| s.lines().nth(1).unwrap().to_string();
    assert_eq!(grab(&stdout_str(&first)), grab(&stdout_str(&second)));
}

#[test]
fn mode_flags_must_match_the_document() {
    let graded = hpi(&["codim", "--catalog", "f1", "--n", "2", "--mode", "graded"]);
    assert_eq!(exit_code(&graded), 2);

    let coproducts = hpi(&["derive-coproducts", "--catalog", "ut2"]);
    assert_eq!(exit_code(&coproducts), 2);

    let missing_source = hpi(&["codim", "--n", "2"]);
    assert_eq!(exit_code(&missing_source), 2);

    let both_sources = hpi(&[
        "codim", "--catalog", "f1", "--algebra", "x.json", "--n", "2",
    ]);
    assert_eq!(exit_code(&both_sources), 2);

    let bad_path = hpi(&["validate", "--algebra", "/nonexistent/algebra.json"]);
    assert_eq!(exit_code(&bad_path), 2);
}

#[test]
fn dump_matrix_writes_the_documented_triplet_format() {
    let path = std::env::temp_dir().join(format!("hpi-test-{}-dump.txt", std::process::id()));
    let out = hpi(&[
        "codim",
        "--catalog",
        "f1",
        "--n",
        "2",
        "--dump-matrix",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let dumped = std::fs::read_to_string(&path).expect("dump file exists");
    assert_eq!(dumped, "0 0 1\n1 0 1\n");
    std::fs::remove_file(path).ok();
}

#[test]
fn grade2h_output_revalidates_as_a_document() {
    let json = hpi(&["grade2h", "--catalog", "fz2_z2", "--format", "json"]);
    assert_eq!(exit_code(&json), 0);
    let path = temp_file("derived.json", &stdout_str(&json));
    let check = hpi(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(exit_code(&check), 0, "stderr: {}", stderr_str(&check));
    assert!(stdout_str(&check).contains("action"));
    std::fs::remove_file(path).ok();
}

#[test]
fn cocharacter_csv_has_machine_friendly_rows() {
    let out = hpi(&[
        "cocharacter", "--catalog", "ut2", "--n", "2", "--format", "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,lambda,multiplicity,dim_irr,colength,codimension,method"
    );
    assert_eq!(lines.next().unwrap(), "2,2,1,1,2,2,both");
    assert_eq!(lines.next().unwrap(), "2,1 1,1,1,2,2,both");
}
