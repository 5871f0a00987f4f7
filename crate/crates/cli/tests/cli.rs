use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use semcal::*;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn semcal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semcal"))
        .args(args)
        .env_remove("SEMCAL_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = semcal(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn output<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["name"] == name)
        .unwrap_or_else(|| panic!("no output {name}"))
}

fn number(report: &Value, name: &str) -> f64 {
    output(report, name)["value"].as_f64().unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn doc_table_matches_library() {
    let report = json(&["doc", "--table", "83,57,17,686"]);
    let table = ContingencyTable::new(83.0, 57.0, 17.0, 686.0).unwrap();
    let h1 = doc_h1_from_table(&table).unwrap();
    let h2 = doc_h2_from_table(&table).unwrap();
    let inc = raven_increments(&table).unwrap();
    assert_eq!(number(&report, "h1.b_star"), h1.b_star);
    assert_eq!(number(&report, "h1.information_bits"), h1.information_bits);
    assert_eq!(number(&report, "h2.b_prime_star"), h2.b_prime_star);
    assert_eq!(number(&report, "raven.d_b1_d_n00"), inc.d_b1_d_n00);
    assert!((number(&report, "h1.b_star") - 0.908).abs() < 5e-4);
    assert!((number(&report, "h1.information_bits") - 0.921).abs() < 2e-3);
    let warnings = report["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("0.923")));
}

#[test]
fn doc_test_and_rates() {
    let report = json(&["doc", "--test", "0.917,0.999"]);
    assert!((number(&report, "positive.b_star") - 0.9989).abs() < 1e-4);
    assert!((number(&report, "negative.b_star") - 0.917).abs() < 1e-3);

    let report = json(&["doc", "--test", "0.917,0.999", "--prior-e1", "0.004"]);
    assert!((number(&report, "positive.information_bits") - 5.52).abs() < 0.01);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);

    let report = json(&["doc", "--rates", "0.2,0.8,0.01,0.99"]);
    assert!((number(&report, "h1.b_star") - 0.9596).abs() < 1e-4);
    assert_eq!(output(&report, "h0.case")["value"], "excessive-negation");
}

#[test]
fn doc_needs_exactly_one_input() {
    assert_eq!(semcal(&["doc"]).status.code(), Some(1));
    assert_eq!(
        semcal(&["doc", "--table", "1,2,3,4", "--rates", "0.5,0.5,0.5,0.5"]).status.code(),
        Some(1)
    );
    assert_eq!(semcal(&["doc", "--table", "1,2,x,4"]).status.code(), Some(1));
}

#[test]
fn degenerate_inputs_exit_two() {
    assert_eq!(semcal(&["doc", "--rates", "0,1,0.5,0.5"]).status.code(), Some(2));
    assert_eq!(semcal(&["doc", "--table", "0,0,3,4"]).status.code(), Some(2));
}

#[test]
fn info_reports_pointwise_and_average() {
    let prior = data("swans_prior.csv");
    let sampling = data("swans_sampling.csv");
    let (prior, sampling) = (prior.to_str().unwrap(), sampling.to_str().unwrap());

    let report = json(&["info", "--prior", prior, "--sampling", sampling, "--tf", "taut"]);
    assert_eq!(number(&report, "average_information"), 0.0);

    let report = json(&["info", "--prior", prior, "--sampling", sampling, "--tf", "belief:0.9596:crisp:e1"]);
    assert!((number(&report, "average_information") - 0.2611).abs() < 1e-3);

    let report = json(&["info", "--prior", prior, "--sampling", sampling, "--tf", "crisp:e1"]);
    assert_eq!(output(&report, "average_information")["value"], "-inf");
    assert_eq!(output(&report, "pointwise.e0")["value"], "-inf");

    let out = semcal(&["info", "--prior", prior, "--tf", "crisp:e1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-inf"));

    assert_eq!(semcal(&["info", "--prior", prior, "--tf", "wobble:1"]).status.code(), Some(1));
}

#[test]
fn info_rejects_mismatched_alphabets_and_honours_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let other = write(&dir, "other.csv", "x,0.5\ny,0.5\n");
    let prior = data("swans_prior.csv");
    let out = semcal(&["info", "--prior", prior.to_str().unwrap(), "--sampling", &other, "--tf", "taut"]);
    assert_eq!(out.status.code(), Some(1));

    let noisy = write(&dir, "noisy.csv", "e1,0.8001\ne0,0.2\n");
    assert_eq!(semcal(&["info", "--prior", &noisy, "--tf", "taut"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_semcal"))
        .args(["info", "--prior", &noisy, "--tf", "taut"])
        .env("SEMCAL_TOLERANCE", "1e-3")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn msie_on_birds_records() {
    let birds = data("birds.csv");
    let report = json(&["msie", "--samples", birds.to_str().unwrap()]);
    assert_eq!(number(&report, "records"), 843.0);
    assert_eq!(number(&report, "yellow.samples"), 140.0);
    assert!((number(&report, "yellow.b_star") - 0.908).abs() < 5e-4);
    assert!((number(&report, "yellow.information_bits") - 0.921).abs() < 2e-3);
    assert_eq!(output(&report, "yellow.target")["value"], "e1");

    let table = ContingencyTable::new(83.0, 57.0, 17.0, 686.0).unwrap();
    let closed = doc_h1_from_table(&table).unwrap();
    assert!((number(&report, "yellow.information_bits") - closed.information_bits).abs() < 1e-12);
}

#[test]
fn msie_single_uniform_condition() {
    let dir = tempfile::tempdir().unwrap();
    let samples = write(&dir, "s.csv", "c,a\nc,b\nc,c\n");
    let report = json(&["msie", "--samples", &samples]);
    assert_eq!(output(&report, "c.truth_function")["value"], "taut");
    assert_eq!(number(&report, "c.b_star"), 0.0);

    let unknown = write(&dir, "u.csv", "c,zzz\n");
    let prior = data("swans_prior.csv");
    let out = semcal(&["msie", "--samples", &unknown, "--prior", prior.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn msie_gps_scenario_recovers_generator() {
    let scenario = data("gps_scenario.toml");
    let report = json(&["msie", "--gps", scenario.to_str().unwrap()]);
    assert!((number(&report, "delta_e_hat") - 3.0).abs() <= 1.0);
    assert!((number(&report, "d_hat") - 6.0).abs() <= 0.3);
    assert!((number(&report, "b_hat") - number(&report, "model.expected_b")).abs() <= 0.02);
}

#[test]
fn reproduce_flags_documented_discrepancies() {
    let out = semcal(&["reproduce"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("998/999"));

    let report = json(&["reproduce"]);
    let b = output(&report, "swans-positive b'*");
    assert_eq!(b["reference"]["published"], 0.0404);
    assert!(b["reference"]["delta"].as_f64().unwrap() < 1e-4);
    let liver = output(&report, "fatty-liver information (bit)");
    assert_eq!(liver["reference"]["status"], "discrepancy");
    assert_eq!(report["warnings"].as_array().unwrap().len(), 2);
}

#[test]
fn json_output_is_deterministic_and_can_go_to_a_file() {
    let birds = data("birds.csv");
    let a = semcal(&["msie", "--samples", birds.to_str().unwrap(), "--format", "json"]);
    let b = semcal(&["msie", "--samples", birds.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = semcal(&["reproduce", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    semcal(&["reproduce", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&path).unwrap());
}
