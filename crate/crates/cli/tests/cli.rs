use std::fs;
use std::path::PathBuf;
use std::process::Command;

use schroq::acceptance::{b_tilde_identities, criteria};
use schroq::run;
use schroq_core::pbw::Generator;
use schroq_core::verma::{b_tilde_e_coeff, build_b_tilde};
use schroq_core::Scalar;
use serde_json::Value;

fn schroq(args: &[&str]) -> schroq::Outcome {
    run(std::iter::once("schroq").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--report", "json"];
    all.extend_from_slice(args);
    serde_json::from_str(&schroq(&all).stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schroq-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn relcheck_on_a_generic_verma() {
    let out = schroq(&[
        "relcheck", "--module", "verma", "--lambda", "w", "--z", "z", "--depth", "6",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("PASS EF - FE = (K - K^-1)/(q - q^-1)"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--report", "json", "casimir", "--lambda", "q^(1/2)"];
    let a = schroq(&args).stdout;
    assert_eq!(a, schroq(&args).stdout);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["inputs"]["lambda"], "t");
    assert!(v.get("wall_time_ms").is_none());
    let timed = json(&["--timing", "casimir"]);
    assert!(timed["wall_time_ms"].is_u64());
}

#[test]
fn block_reports_the_partner_discrepancy() {
    let v = json(&["block", "--xi", "q^(Z)", "--lambda", "q^2", "--z", "z"]);
    assert_eq!(v["data"]["kind"], "TwoSimplesSplit");
    assert_eq!(v["data"]["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(v["data"]["simples"][1]["weight"], "q^-5");
    let v = json(&["block", "--xi", "w*q^(Z)", "--lambda", "w*q"]);
    assert_eq!(v["data"]["kind"], "SemisimpleOneSimple");
    // Not in the coset.
    assert_eq!(schroq(&["block", "--xi", "q^(Z)", "--lambda", "w"]).code, 2);
}

#[test]
fn quiver_subcommands() {
    let bad = scratch(
        "bad.json",
        r#"{"dims":[1,1],"a":[[["1"]]],"b":[[["1"]]],"field":"Q"}"#,
    );
    let out = schroq(&["--report", "json", "quiver", "check", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["name"], "b0a0 = 0");
    assert_eq!(v["checks"][0]["witness"]["lhs"], "1");
    assert_eq!(schroq(&["quiver", "g", bad.to_str().unwrap()]).code, 1);

    let good = scratch(
        "good.json",
        r#"{"dims":[1,1,1],"a":[[["1"]],[["1"]]],"b":[[["0"]],[["0"]]],"field":"Q"}"#,
    );
    let g = good.to_str().unwrap();
    assert_eq!(schroq(&["quiver", "check", g]).code, 0);
    let module = good.with_file_name("module.json");
    let out = schroq(&["quiver", "g", g, "--out", module.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json(&["quiver", "f", module.to_str().unwrap()]);
    assert_eq!(v["data"]["dims"], serde_json::json!([1, 1, 1]));
    let v = json(&["quiver", "roundtrip", g]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["data"]["image_dims"], serde_json::json!([1, 1, 1]));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(schroq(&["nonsense"]).code, 2);
    assert_eq!(schroq(&["relcheck", "--depth", "x"]).code, 2);
    assert_eq!(schroq(&["singvec", "--lambda", "q^("]).code, 2);
    assert_eq!(schroq(&["singvec", "--z", "0"]).code, 2);
    assert_eq!(
        schroq(&["quiver", "check", "/nonexistent/rep.json"]).code,
        2
    );
    assert_eq!(schroq(&["--help"]).code, 0);
}

#[test]
fn singvec_finds_the_line() {
    let v = json(&["singvec", "--lambda", "q^(-1/2)", "--depth", "4"]);
    assert_eq!(v["data"]["reducible"], true);
    assert_eq!(v["data"]["singular"][0]["depth"], 2);
    assert_eq!(v["data"]["singular"][0]["weight"], "q^(-5/2)");
}

#[test]
fn depth_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_schroq"))
        .args(["--report", "json", "verma", "--lambda", "w"])
        .env("SCHROQ_DEPTH", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inputs"]["depth"], "3");
    assert_eq!(v["data"]["dims"].as_array().unwrap().len(), 4);
}

#[test]
fn binary_exit_codes() {
    let status = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_schroq"))
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["bmod", "--depth", "6"]), Some(0));
    assert_eq!(status(&["relcheck", "--module", "nope"]), Some(2));
}

#[test]
fn filter_selects_central_criteria() {
    let ids: Vec<u32> = criteria()
        .iter()
        .filter(|c| c.matches("casimir"))
        .map(|c| c.id)
        .collect();
    assert_eq!(ids, vec![3, 4, 5, 12]);
    let v = json(&["accept", "--filter", "3"]);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn corrupted_b_tilde_coefficient_is_caught() {
    let z = Scalar::z();
    let mut m = build_b_tilde(&z, 12).unwrap();
    assert!(b_tilde_identities(&m, 10).passed);
    let wrong = b_tilde_e_coeff(&z, 5) * Scalar::q();
    m.set_entry(Generator::E, 5, 0, 0, wrong).unwrap();
    let o = b_tilde_identities(&m, 10);
    assert!(!o.passed);
    assert!(o.detail.contains("v_"));
}
